use incr_topo::generators::{gen_lower_bound, gen_random_dag, gen_random_digraph};
use incr_topo::oracle::{is_acyclic, validate_order, StaticGraph};
use incr_topo::sweep::map_batch;
use incr_topo::{
    CycleReport, Insertion, SubsetOrdering, ThresholdStrategy, TopoConfig, TopoMaintainer,
};

fn strategies() -> Vec<ThresholdStrategy> {
    vec![
        ThresholdStrategy::median(),
        ThresholdStrategy::approx_median(0.25).unwrap(),
        ThresholdStrategy::random(7),
    ]
}

fn maintainer(n: usize, strategy: ThresholdStrategy, ordering: SubsetOrdering) -> TopoMaintainer {
    TopoMaintainer::with_config(
        n,
        TopoConfig {
            strategy,
            subset_ordering: ordering,
            record_searches: true,
        },
    )
    .unwrap()
}

fn walk_ok(m: &TopoMaintainer, report: &CycleReport) -> bool {
    let arcs = m.store().arcs();
    let last = arcs.len() - 1;
    report.is_closed_walk(arcs) && report.arcs[0] == last
}

#[test]
fn forward_arc_needs_no_search() {
    let mut m = TopoMaintainer::new(4, ThresholdStrategy::median()).unwrap();
    assert_eq!(m.insert_arc(1, 3).unwrap(), Insertion::Ok);
    assert_eq!(m.stats().searches, 0);
    assert_eq!(m.order(), vec![0, 1, 2, 3]);
}

#[test]
fn triangle_reports_walk_from_new_arc() {
    let mut m = TopoMaintainer::new(4, ThresholdStrategy::median()).unwrap();
    m.insert_arc(1, 2).unwrap();
    m.insert_arc(2, 3).unwrap();
    let Insertion::Cycle(report) = m.insert_arc(3, 1).unwrap() else {
        panic!("triangle not detected");
    };
    let walk: Vec<_> = report
        .arcs
        .iter()
        .map(|&a| (m.store().arc(a).tail, m.store().arc(a).head))
        .collect();
    assert_eq!(walk, vec![(3, 1), (1, 2), (2, 3)]);
    assert!(m.is_frozen());
    assert!(m.insert_arc(0, 1).is_err());
}

#[test]
fn two_cycle_report() {
    let mut m = TopoMaintainer::new(3, ThresholdStrategy::median()).unwrap();
    m.insert_arc(1, 2).unwrap();
    let Insertion::Cycle(report) = m.insert_arc(2, 1).unwrap() else {
        panic!("2-cycle not detected");
    };
    assert_eq!(report.arcs, vec![1, 0]);
}

#[test]
fn loop_is_a_cycle() {
    let mut m = TopoMaintainer::new(2, ThresholdStrategy::median()).unwrap();
    let Insertion::Cycle(report) = m.insert_arc(1, 1).unwrap() else {
        panic!("loop not detected");
    };
    assert_eq!(report.arcs, vec![0]);
    assert_eq!(m.rollback_cycle().map(|a| (a.tail, a.head)), Some((1, 1)));
    assert_eq!(m.insert_arc(1, 0).unwrap(), Insertion::Ok);
}

#[test]
fn backward_arc_between_isolated_vertices() {
    let mut m = maintainer(4, ThresholdStrategy::median(), SubsetOrdering::Dfs);
    assert_eq!(m.insert_arc(3, 1).unwrap(), Insertion::Ok);
    assert!(m.precedes(3, 1).unwrap());
    let rec = m.last_search().unwrap();
    assert_eq!(rec.arcs_traversed(), 0);
    assert!(rec.reordered <= 2);
    assert!(validate_order(&StaticGraph::new(4, vec![(3, 1)]), &m.order()));
}

#[test]
fn path_swap_keeps_order_valid() {
    let w = gen_lower_bound(12, 16).unwrap();
    let mut m = maintainer(w.n, ThresholdStrategy::median(), SubsetOrdering::Dfs);
    for (i, &(a, b)) in w.arcs.iter().enumerate() {
        assert_eq!(m.insert_arc(a, b).unwrap(), Insertion::Ok);
        assert!(validate_order(&w.prefix(i + 1), &m.order()));
    }
}

#[test]
fn random_insertions_match_static_oracle() {
    for strategy in strategies() {
        for ordering in [SubsetOrdering::Dfs, SubsetOrdering::RadixSort] {
            let w = gen_random_digraph(50, 1000, 11).unwrap();
            let mut m = maintainer(w.n, strategy, ordering);
            let mut kept = Vec::new();
            for &(a, b) in &w.arcs {
                kept.push((a, b));
                let g = StaticGraph::new(w.n, kept.clone());
                match m.insert_arc(a, b).unwrap() {
                    Insertion::Ok => {
                        assert!(is_acyclic(&g));
                        assert!(validate_order(&g, &m.order()));
                    }
                    Insertion::Cycle(report) => {
                        assert!(!is_acyclic(&g));
                        assert!(walk_ok(&m, &report));
                        m.rollback_cycle().unwrap();
                        kept.pop();
                    }
                }
            }
            assert_eq!(m.dual_cursor_resets(), 0);
            for rec in m.search_log() {
                assert_eq!(rec.arcs_fwd, rec.arcs_bwd);
                assert_eq!(rec.compat_violations, 0);
                assert_eq!(rec.region_violations, 0);
            }
        }
    }
}

#[test]
fn fuzzed_cycle_walks_are_closed() {
    for seed in 0..300 {
        let w = gen_random_digraph(30, 200, seed).unwrap();
        let mut m = maintainer(w.n, ThresholdStrategy::random(seed), SubsetOrdering::Dfs);
        for &(a, b) in &w.arcs {
            if let Insertion::Cycle(report) = m.insert_arc(a, b).unwrap() {
                assert!(walk_ok(&m, &report), "seed {seed}");
                let mut uniq = report.arcs.clone();
                uniq.sort();
                uniq.dedup();
                assert_eq!(uniq.len(), report.arcs.len());
                break;
            }
        }
    }
}

#[test]
fn subset_orderings_agree_on_outcomes() {
    for seed in 0..40 {
        let w = gen_random_dag(80, 400, seed).unwrap();
        let mut a = maintainer(w.n, ThresholdStrategy::median(), SubsetOrdering::Dfs);
        let mut b = maintainer(w.n, ThresholdStrategy::median(), SubsetOrdering::RadixSort);
        for (i, &(x, y)) in w.arcs.iter().enumerate() {
            assert_eq!(a.insert_arc(x, y).unwrap(), Insertion::Ok);
            assert_eq!(b.insert_arc(x, y).unwrap(), Insertion::Ok);
            let g = w.prefix(i + 1);
            assert!(validate_order(&g, &a.order()));
            assert!(validate_order(&g, &b.order()));
        }
    }
}

// Every DAG on at most 5 vertices, built in one fixed arc order, then every
// possible single-arc insertion.
#[test]
fn exhaustive_single_insertions_into_small_dags() {
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let masks: Vec<u32> = (0..1u32 << pairs.len()).collect();
        let failures: usize = map_batch(&masks, |&mask| {
            let arcs: Vec<_> = pairs
                .iter()
                .enumerate()
                .rev()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = StaticGraph::new(n, arcs.clone());
            if !is_acyclic(&g) {
                return 0;
            }
            let mut base = TopoMaintainer::new(n, ThresholdStrategy::median()).unwrap();
            for &(a, b) in &arcs {
                assert_eq!(base.insert_arc(a, b).unwrap(), Insertion::Ok);
            }
            let mut bad = 0;
            for a in 0..n {
                for b in 0..n {
                    let mut m = base.clone();
                    let mut all = arcs.clone();
                    all.push((a, b));
                    let g = StaticGraph::new(n, all);
                    let ok = match m.insert_arc(a, b).unwrap() {
                        Insertion::Ok => is_acyclic(&g) && validate_order(&g, &m.order()),
                        Insertion::Cycle(r) => !is_acyclic(&g) && walk_ok(&m, &r),
                    };
                    bad += usize::from(!ok);
                }
            }
            bad
        })
        .into_iter()
        .sum();
        assert_eq!(failures, 0, "n = {n}");
    }
}
