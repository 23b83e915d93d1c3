//! Batch drivers: run many workloads or many seeds through a maintainer.
//!
//! Each run is independent, so with the `parallel` feature (on by default)
//! batches fan out over the rayon thread pool; without it they run in order.
//! Results always come back in input order.

use crate::error::Result;
use crate::generators::Workload;
use crate::scc::{SccConfig, SccInsertion, SccMaintainer};
use crate::selection::ThresholdStrategy;
use crate::stats::{SearchRecord, Stats};
use crate::topo::{Insertion, SubsetOrdering, TopoConfig, TopoMaintainer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Topo,
    Scc,
}

#[derive(Debug, Clone, Default)]
pub struct SweepConfig {
    pub mode: Mode,
    pub strategy: ThresholdStrategy,
    pub subset_ordering: SubsetOrdering,
    pub record_searches: bool,
}

/// Counters from one workload run.
#[derive(Debug, Clone, Default)]
pub struct RunSummary {
    pub stats: Stats,
    /// 1-based index of the arc that closed a cycle (topological mode).
    pub cycle_at: Option<usize>,
    /// Arcs actually inserted.
    pub inserted: usize,
    /// Final number of components (component mode).
    pub components: Option<usize>,
    pub searches: Vec<SearchRecord>,
    /// Cursor resets of one vertex in both directions within a search.
    pub dual_cursor_resets: u64,
}

/// Runs `w` to the end, or up to the first cycle in topological mode.
pub fn run_workload(w: &Workload, cfg: &SweepConfig) -> Result<RunSummary> {
    match cfg.mode {
        Mode::Topo => {
            let mut m = TopoMaintainer::with_config(
                w.n,
                TopoConfig {
                    strategy: cfg.strategy,
                    subset_ordering: cfg.subset_ordering,
                    record_searches: cfg.record_searches,
                },
            )?;
            let mut cycle_at = None;
            let mut inserted = 0;
            for (i, &(a, b)) in w.arcs.iter().enumerate() {
                inserted += 1;
                if let Insertion::Cycle(_) = m.insert_arc(a, b)? {
                    cycle_at = Some(i + 1);
                    break;
                }
            }
            Ok(RunSummary {
                stats: m.stats(),
                cycle_at,
                inserted,
                components: None,
                searches: m.search_log().to_vec(),
                dual_cursor_resets: m.dual_cursor_resets(),
            })
        }
        Mode::Scc => {
            let mut m = SccMaintainer::with_config(
                w.n,
                SccConfig {
                    strategy: cfg.strategy,
                    record_searches: cfg.record_searches,
                },
            )?;
            for &(a, b) in &w.arcs {
                let _: SccInsertion = m.insert_arc(a, b)?;
            }
            Ok(RunSummary {
                stats: m.stats(),
                cycle_at: None,
                inserted: w.arcs.len(),
                components: Some(m.component_count()),
                searches: m.search_log().to_vec(),
                dual_cursor_resets: 0,
            })
        }
    }
}

/// Applies `f` to every item, in parallel when the `parallel` feature is on.
pub fn map_batch<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential counterpart of [`map_batch`], regardless of features.
pub fn map_batch_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

pub fn run_batch(workloads: &[Workload], cfg: &SweepConfig) -> Vec<Result<RunSummary>> {
    map_batch(workloads, |w| run_workload(w, cfg))
}

pub fn run_batch_sequential(workloads: &[Workload], cfg: &SweepConfig) -> Vec<Result<RunSummary>> {
    map_batch_sequential(workloads, |w| run_workload(w, cfg))
}

/// Runs one workload once per seed with the uniform random strategy.
pub fn run_seeds(w: &Workload, seeds: &[u64], cfg: &SweepConfig) -> Vec<Result<RunSummary>> {
    map_batch(seeds, |&seed| {
        let cfg = SweepConfig {
            strategy: ThresholdStrategy::random(seed),
            ..cfg.clone()
        };
        run_workload(w, &cfg)
    })
}
