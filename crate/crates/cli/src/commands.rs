use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use incr_topo::generators::{gen_lower_bound, gen_random_dag, gen_random_digraph};
use incr_topo::oracle::{static_topo_sort, validate_condensation, validate_order};
use incr_topo::{
    Insertion, SccMaintainer, Stats, ThresholdStrategy, TopoMaintainer, Workload,
};

use crate::args::{Family, ModeArg, RunArgs, StrategyArg};
use crate::report::Report;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_CYCLE: u8 = 2;

/// Error that ends the program with status 1.
#[derive(Debug)]
pub struct Failure(pub String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(input: Option<&Path>) -> Result<Workload, Failure> {
    let text = match input {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| Failure(format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Workload::parse(&text).map_err(|e| Failure(format!("parse error: {e}")))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn strategy(args: &RunArgs, offset: u64) -> Result<ThresholdStrategy, Failure> {
    match args.strategy {
        StrategyArg::Median => Ok(ThresholdStrategy::approx_median(args.epsilon)?),
        StrategyArg::Random => Ok(ThresholdStrategy::random(args.seed.wrapping_add(offset))),
    }
}

fn strategy_name(s: &ThresholdStrategy) -> String {
    match s {
        ThresholdStrategy::ApproxMedian { epsilon } => format!("median(epsilon={epsilon})"),
        ThresholdStrategy::UniformRandom { seed } => format!("random(seed={seed})"),
    }
}

struct Cycle {
    /// 1-based position of the closing arc in the workload.
    index: usize,
    /// Walk as 0-based arc ids, closing arc first.
    walk: Vec<usize>,
}

struct RunResult {
    stats: Stats,
    inserted: usize,
    cycle: Option<Cycle>,
    components: Option<usize>,
    checks: usize,
    elapsed: Duration,
}

fn mismatch(i: usize) -> Failure {
    Failure(format!("oracle mismatch after arc {}", i + 1))
}

fn execute(
    w: &Workload,
    mode: ModeArg,
    strategy: ThresholdStrategy,
    check_every: usize,
) -> Result<RunResult, Failure> {
    let due = |i: usize| check_every > 0 && (i + 1) % check_every == 0;
    let mut elapsed = Duration::ZERO;
    let mut checks = 0;
    let mut inserted = 0;
    match mode {
        ModeArg::Topo => {
            let mut m = TopoMaintainer::new(w.n, strategy)?;
            let mut cycle = None;
            for (i, &(a, b)) in w.arcs.iter().enumerate() {
                let t = Instant::now();
                let res = m.insert_arc(a, b)?;
                elapsed += t.elapsed();
                inserted += 1;
                match res {
                    Insertion::Ok => {
                        if due(i) {
                            checks += 1;
                            if !validate_order(&w.prefix(i + 1), &m.order()) {
                                return Err(mismatch(i));
                            }
                        }
                    }
                    Insertion::Cycle(report) => {
                        if check_every > 0 {
                            checks += 1;
                            let closed = report.is_closed_walk(m.store().arcs());
                            if !closed || !static_topo_sort(&w.prefix(i + 1)).is_cyclic() {
                                return Err(mismatch(i));
                            }
                        }
                        cycle = Some(Cycle {
                            index: i + 1,
                            walk: report.arcs,
                        });
                        break;
                    }
                }
            }
            Ok(RunResult {
                stats: m.stats(),
                inserted,
                cycle,
                components: None,
                checks,
                elapsed,
            })
        }
        ModeArg::Scc => {
            let mut m = SccMaintainer::new(w.n, strategy)?;
            for (i, &(a, b)) in w.arcs.iter().enumerate() {
                let t = Instant::now();
                m.insert_arc(a, b)?;
                elapsed += t.elapsed();
                inserted += 1;
                if due(i) {
                    checks += 1;
                    let part = m.partition();
                    if !validate_condensation(&w.prefix(i + 1), &part, &m.order()) {
                        return Err(mismatch(i));
                    }
                }
            }
            Ok(RunResult {
                stats: m.stats(),
                inserted,
                cycle: None,
                components: Some(m.component_count()),
                checks,
                elapsed,
            })
        }
    }
}

fn millis(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

fn describe(report: &mut Report, w: &Workload, args: &RunArgs, s: &ThresholdStrategy) {
    report.put(
        "mode",
        match args.mode {
            ModeArg::Topo => "topo",
            ModeArg::Scc => "scc",
        },
    );
    report.put("strategy", strategy_name(s));
    report.put("n", w.n);
    report.put("arcs", w.arcs.len());
}

fn put_cycle(report: &mut Report, w: &Workload, cycle: &Cycle) {
    let steps: Vec<String> = cycle
        .walk
        .iter()
        .map(|&a| format!("{}->{}", w.arcs[a].0, w.arcs[a].1))
        .collect();
    let ids: Vec<String> = cycle.walk.iter().map(|a| (a + 1).to_string()).collect();
    report.put("cycle_arc", cycle.index);
    report.put("cycle_walk", steps.join(","));
    report.put("cycle_walk_arcs", ids.join(","));
    report.note(format!(
        "cycle closed by arc {} ({} -> {}); witness walk: {}",
        cycle.index,
        w.arcs[cycle.index - 1].0,
        w.arcs[cycle.index - 1].1,
        steps.join(" ")
    ));
}

/// `run` and `verify`.
pub fn run(args: &RunArgs, check_every: usize, timed: bool) -> Result<u8, Failure> {
    let w = load(args.input.as_deref())?;
    let strategy = strategy(args, 0)?;
    let r = execute(&w, args.mode, strategy, check_every)?;
    let mut report = Report::new(if timed { "run" } else { "verify" });
    describe(&mut report, &w, args, &strategy);
    report.put("inserted", r.inserted);
    report.put("status", if r.cycle.is_some() { "cycle" } else { "ok" });
    if let Some(c) = &r.cycle {
        put_cycle(&mut report, &w, c);
    }
    if let Some(c) = r.components {
        report.put("components", c);
    }
    for (k, v) in r.stats.pairs() {
        report.put(k, v);
    }
    if check_every > 0 {
        report.put("checks", r.checks);
    }
    if timed {
        report.put("time_ms", millis(r.elapsed));
    }
    emit(args.out.as_deref(), &report.render(args.format))?;
    Ok(if r.cycle.is_some() { EXIT_CYCLE } else { EXIT_OK })
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

/// Repetitions run one after another so timings stay comparable.
pub fn bench(args: &RunArgs, reps: usize) -> Result<u8, Failure> {
    if reps == 0 {
        return Err(Failure("--reps must be at least 1".into()));
    }
    let w = load(args.input.as_deref())?;
    let mut runs = Vec::with_capacity(reps);
    for i in 0..reps {
        let s = strategy(args, i as u64)?;
        runs.push(execute(&w, args.mode, s, 0)?);
    }
    let first = &runs[0];
    let mut times: Vec<Duration> = runs.iter().map(|r| r.elapsed).collect();
    times.sort();
    let median = if reps % 2 == 1 {
        times[reps / 2]
    } else {
        (times[reps / 2 - 1] + times[reps / 2]) / 2
    };
    let traversed: Vec<f64> = runs.iter().map(|r| r.stats.arcs_traversed() as f64).collect();
    let near: Vec<f64> = runs.iter().map(|r| r.stats.near_transitions as f64).collect();
    let (t_mean, t_var) = mean_var(&traversed);
    let (n_mean, n_var) = mean_var(&near);
    let m = first.inserted.max(1) as f64;

    let mut report = Report::new("bench");
    describe(&mut report, &w, args, &strategy(args, 0)?);
    report.put("reps", reps);
    report.put("inserted", first.inserted);
    report.put("status", if first.cycle.is_some() { "cycle" } else { "ok" });
    if let Some(c) = &first.cycle {
        put_cycle(&mut report, &w, c);
    }
    if let Some(c) = first.components {
        report.put("components", c);
    }
    for (k, v) in first.stats.pairs() {
        report.put(k, v);
    }
    report.put("arcs_traversed_mean", format!("{t_mean:.3}"));
    report.put("ratio", format!("{:.6}", t_mean / m.powf(1.5)));
    if args.strategy == StrategyArg::Random {
        report.put("arcs_traversed_var", format!("{t_var:.3}"));
        report.put("near_transitions_mean", format!("{n_mean:.3}"));
        report.put("near_transitions_var", format!("{n_var:.3}"));
    } else {
        let same = runs.iter().all(|r| r.stats == first.stats);
        report.put("counters_identical", same);
    }
    report.put("time_ms", millis(median));
    report.note("ratio is arcs traversed / inserted^1.5; time_ms is the median over repetitions");
    emit(args.out.as_deref(), &report.render(args.format))?;
    Ok(if first.cycle.is_some() { EXIT_CYCLE } else { EXIT_OK })
}

pub fn gen(family: Family, n: usize, m: usize, seed: u64, out: Option<&Path>) -> Result<u8, Failure> {
    let w = match family {
        Family::Lb => gen_lower_bound(n, m)?,
        Family::RandomDag => gen_random_dag(n, m, seed)?,
        Family::RandomDigraph => gen_random_digraph(n, m, seed)?,
    };
    emit(out, &w.to_text())?;
    Ok(EXIT_OK)
}
