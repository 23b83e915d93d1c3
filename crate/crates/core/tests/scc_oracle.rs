use incr_topo::generators::gen_random_digraph;
use incr_topo::oracle::{normalize_partition, static_scc, validate_condensation, StaticGraph};
use incr_topo::sweep::map_batch;
use incr_topo::{SccConfig, SccInsertion, SccMaintainer, ThresholdStrategy};

fn maintainer(n: usize, strategy: ThresholdStrategy) -> SccMaintainer {
    SccMaintainer::with_config(
        n,
        SccConfig {
            strategy,
            record_searches: true,
        },
    )
    .unwrap()
}

// Checks the full state against the static oracle; returns the oracle's
// component count.
fn check_state(m: &mut SccMaintainer, g: &StaticGraph) -> usize {
    let part = m.partition();
    let order = m.order();
    assert!(validate_condensation(g, &part, &order), "arcs {:?}", g.arcs);
    for &rep in &order {
        let mut members = m.component_members(rep).unwrap();
        members.sort();
        let expected: Vec<_> = (0..g.n).filter(|&x| part[x] == rep).collect();
        assert_eq!(members, expected);
    }
    let oracle = static_scc(g);
    assert_eq!(m.component_count(), oracle.count());
    oracle.count()
}

#[test]
fn two_cycle_becomes_one_component() {
    let mut m = maintainer(3, ThresholdStrategy::median());
    m.insert_arc(1, 2).unwrap();
    let SccInsertion::Merged(change) = m.insert_arc(2, 1).unwrap() else {
        panic!("expected merge");
    };
    assert!(change.o_x.is_empty() && change.o_y.is_empty());
    assert_eq!(m.find(1).unwrap(), m.find(2).unwrap());
    assert_eq!(m.order().len(), 2);
    // both arcs now join one component; a repeat is aside at once
    assert_eq!(m.insert_arc(1, 2).unwrap(), SccInsertion::NoChange);
    assert_eq!(m.stats().aside, 1);
}

#[test]
fn triangle_merges_on_third_arc() {
    let mut m = maintainer(4, ThresholdStrategy::median());
    assert_eq!(m.insert_arc(1, 2).unwrap(), SccInsertion::NoChange);
    assert_eq!(m.insert_arc(2, 3).unwrap(), SccInsertion::NoChange);
    let SccInsertion::Merged(change) = m.insert_arc(3, 1).unwrap() else {
        panic!("expected merge");
    };
    let mut reps = change.merged_reps.clone();
    reps.sort();
    assert_eq!(reps, vec![1, 2, 3]);
    assert_eq!(m.component_count(), 2);
    let g = StaticGraph::new(4, vec![(1, 2), (2, 3), (3, 1)]);
    check_state(&mut m, &g);
}

#[test]
fn isolated_pair_reorders_without_merge() {
    let mut m = maintainer(4, ThresholdStrategy::median());
    assert_eq!(m.insert_arc(3, 0).unwrap(), SccInsertion::Reordered);
    let rec = m.last_search().unwrap();
    assert_eq!(rec.arcs_traversed(), 0);
    assert!(rec.reordered <= 2);
    assert!(m.order_list().precedes(3, 0).unwrap());
}

#[test]
fn merged_exactly_when_component_count_drops() {
    for strategy in [ThresholdStrategy::median(), ThresholdStrategy::random(3)] {
        for seed in 0..30 {
            let w = gen_random_digraph(40, 300, seed).unwrap();
            let mut m = maintainer(w.n, strategy);
            let mut prev = w.n;
            for (i, &(a, b)) in w.arcs.iter().enumerate() {
                let res = m.insert_arc(a, b).unwrap();
                let count = check_state(&mut m, &w.prefix(i + 1));
                assert_eq!(matches!(res, SccInsertion::Merged(_)), count < prev);
                if let SccInsertion::Merged(c) = &res {
                    assert_eq!(c.merged_reps.len() - 1, prev - count);
                }
                prev = count;
            }
        }
    }
}

#[test]
fn per_step_oracle_on_long_sequence() {
    let w = gen_random_digraph(40, 1000, 99).unwrap();
    let mut m = maintainer(w.n, ThresholdStrategy::approx_median(0.3).unwrap());
    for (i, &(a, b)) in w.arcs.iter().enumerate() {
        m.insert_arc(a, b).unwrap();
        check_state(&mut m, &w.prefix(i + 1));
    }
    for rec in m.search_log() {
        assert_eq!(rec.arcs_fwd, rec.arcs_bwd);
        assert_eq!(rec.compat_violations, 0);
        assert_eq!(rec.region_violations, 0);
    }
}

#[test]
fn aside_arcs_are_never_traversed_again() {
    for seed in 0..50 {
        let w = gen_random_digraph(30, 250, seed).unwrap();
        let mut m = maintainer(w.n, ThresholdStrategy::random(seed));
        for &(a, b) in &w.arcs {
            m.insert_arc(a, b).unwrap();
        }
        assert_eq!(m.forest().aside_traversals(), 0);
        // aside arcs join one component
        for (id, &(a, b)) in w.arcs.iter().enumerate() {
            if m.forest().is_aside(id) {
                assert_eq!(m.find(a).unwrap(), m.find(b).unwrap());
            }
        }
    }
}

#[test]
fn finds_are_linear_in_examined_arcs() {
    for seed in 0..50 {
        let w = gen_random_digraph(40, 300, seed).unwrap();
        let mut m = maintainer(w.n, ThresholdStrategy::median());
        for &(a, b) in &w.arcs {
            m.insert_arc(a, b).unwrap();
            let examined = m.last_search().map_or(0, |r| r.arcs_examined);
            assert!(m.last_insertion_finds() <= 2 * examined + 2);
        }
    }
}

#[test]
fn strategies_agree_on_partition() {
    let w = gen_random_digraph(60, 400, 5).unwrap();
    let mut parts = Vec::new();
    for strategy in [
        ThresholdStrategy::median(),
        ThresholdStrategy::approx_median(0.1).unwrap(),
        ThresholdStrategy::random(1),
        ThresholdStrategy::random(2),
    ] {
        let mut m = maintainer(w.n, strategy);
        for &(a, b) in &w.arcs {
            m.insert_arc(a, b).unwrap();
        }
        parts.push(normalize_partition(&m.partition()));
    }
    assert!(parts.windows(2).all(|p| p[0] == p[1]));
    assert_eq!(parts[0], static_scc(&w.graph()).comp);
}

// All insertion sequences of at most 6 distinct non-loop arcs on at most 4
// vertices.
#[test]
fn exhaustive_small_digraphs() {
    fn walk(m: &SccMaintainer, arcs: &mut Vec<(usize, usize)>, pairs: &[(usize, usize)], depth: usize) -> usize {
        let mut visited = 0;
        for &p in pairs {
            if arcs.contains(&p) {
                continue;
            }
            let mut next = m.clone();
            next.insert_arc(p.0, p.1).unwrap();
            arcs.push(p);
            let g = StaticGraph::new(m.vertex_count(), arcs.clone());
            check_state(&mut next, &g);
            visited += 1;
            if depth > 1 {
                visited += walk(&next, arcs, pairs, depth - 1);
            }
            arcs.pop();
        }
        visited
    }
    for n in 2..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let depth = pairs.len().min(6);
        let visited: usize = map_batch(&pairs, |&first| {
            let mut m = SccMaintainer::new(n, ThresholdStrategy::median()).unwrap();
            m.insert_arc(first.0, first.1).unwrap();
            let mut arcs = vec![first];
            1 + walk(&m, &mut arcs, &pairs, depth - 1)
        })
        .into_iter()
        .sum();
        assert!(visited > 0);
    }
}
