//! Incremental topological ordering with cycle detection.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph_store::{Arc, ArcId, Direction, GraphStore, VertexId};
use crate::ordered_list::OrderedList;
use crate::search::{Incidence, Outcome, Search, NO_ARC};
use crate::selection::ThresholdStrategy;
use crate::stats::{SearchRecord, Stats};

/// How the reached subsets X and Y are put into topological order before
/// reinsertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubsetOrdering {
    /// Restricted depth-first search, decreasing postorder.
    #[default]
    Dfs,
    /// Two-pass radix sort on the current order labels.
    RadixSort,
}

#[derive(Debug, Clone, Default)]
pub struct TopoConfig {
    pub strategy: ThresholdStrategy,
    pub subset_ordering: SubsetOrdering,
    /// Keep a per-search counter record (see [`TopoMaintainer::search_log`]).
    pub record_searches: bool,
}

/// A closed walk of arc ids; the inserted arc comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub arcs: Vec<ArcId>,
}

impl CycleReport {
    /// Checks that consecutive arcs chain head-to-tail and the walk closes.
    pub fn is_closed_walk(&self, arcs: &[Arc]) -> bool {
        if self.arcs.is_empty() {
            return false;
        }
        let k = self.arcs.len();
        (0..k).all(|i| arcs[self.arcs[i]].head == arcs[self.arcs[(i + 1) % k]].tail)
    }
}

/// Result of an arc insertion in topological-order mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    Ok,
    Cycle(CycleReport),
}

impl Incidence for GraphStore {
    fn begin_search(&mut self) {
        GraphStore::begin_search(self);
    }

    fn reset(&mut self, x: VertexId, dir: Direction) {
        self.reset_cursor(x, dir);
    }

    fn has_next(&mut self, x: VertexId, dir: Direction, _rec: &mut SearchRecord) -> bool {
        self.has_untraversed(x, dir)
    }

    fn advance(
        &mut self,
        x: VertexId,
        dir: Direction,
        rec: &mut SearchRecord,
    ) -> (ArcId, VertexId) {
        let id = self.next_untraversed(x, dir).expect("untraversed arc");
        rec.arcs_examined += 1;
        let arc = self.arc(id);
        match dir {
            Direction::Forward => (id, arc.head),
            Direction::Backward => (id, arc.tail),
        }
    }

    fn scan_start(&self, _x: VertexId, _dir: Direction) -> usize {
        0
    }

    fn scan_next(
        &mut self,
        x: VertexId,
        dir: Direction,
        state: &mut usize,
        rec: &mut SearchRecord,
    ) -> Option<VertexId> {
        let seq = match dir {
            Direction::Forward => self.out_arcs(x),
            Direction::Backward => self.in_arcs(x),
        };
        let id = *seq.get(*state)?;
        *state += 1;
        rec.arcs_examined += 1;
        let arc = self.arc(id);
        Some(match dir {
            Direction::Forward => arc.head,
            Direction::Backward => arc.tail,
        })
    }
}

/// Maintains a topological order of a growing DAG, stopping at the first arc
/// that closes a cycle.
#[derive(Debug, Clone)]
pub struct TopoMaintainer {
    order: OrderedList,
    store: GraphStore,
    search: Search,
    config: TopoConfig,
    rng: ChaCha8Rng,
    stats: Stats,
    log: Vec<SearchRecord>,
    last: Option<SearchRecord>,
    frozen: bool,
}

impl TopoMaintainer {
    /// `n` vertices in initial order `0, 1, ..., n - 1`.
    pub fn new(n: usize, strategy: ThresholdStrategy) -> Result<Self> {
        Self::with_config(
            n,
            TopoConfig {
                strategy,
                ..TopoConfig::default()
            },
        )
    }

    pub fn with_config(n: usize, config: TopoConfig) -> Result<Self> {
        config.strategy.validate()?;
        let ids: Vec<usize> = (0..n).collect();
        let seed = match config.strategy {
            ThresholdStrategy::UniformRandom { seed } => seed,
            ThresholdStrategy::ApproxMedian { .. } => 0,
        };
        Ok(TopoMaintainer {
            order: OrderedList::new(&ids)?,
            store: GraphStore::new(n),
            search: Search::new(n),
            config,
            rng: ChaCha8Rng::seed_from_u64(seed),
            stats: Stats::default(),
            log: Vec::new(),
            last: None,
            frozen: false,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.store.vertex_count()
    }

    pub fn store(&self) -> &GraphStore {
        &self.store
    }

    pub fn order_list(&self) -> &OrderedList {
        &self.order
    }

    /// Current vertex order.
    pub fn order(&self) -> Vec<VertexId> {
        self.order.to_vec()
    }

    pub fn precedes(&self, x: VertexId, y: VertexId) -> Result<bool> {
        self.order.precedes(x, y)
    }

    pub fn stats(&self) -> Stats {
        let mut s = self.stats.clone();
        s.renumber_work = self.order.renumber_work();
        s
    }

    /// Per-search records, when enabled in the config.
    pub fn search_log(&self) -> &[SearchRecord] {
        &self.log
    }

    /// Counters of the most recent search, if any.
    pub fn last_search(&self) -> Option<&SearchRecord> {
        self.last.as_ref()
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    /// Times a single search reset one vertex's cursor in both directions.
    pub fn dual_cursor_resets(&self) -> u64 {
        self.store.dual_resets()
    }

    /// Adds the arc `(v, w)`, restoring the order or reporting a cycle.
    pub fn insert_arc(&mut self, v: VertexId, w: VertexId) -> Result<Insertion> {
        if self.frozen {
            return Err(Error::Frozen);
        }
        let id = self.store.add_arc(v, w)?;
        self.stats.insertions += 1;
        self.last = None;
        if v == w {
            self.frozen = true;
            return Ok(Insertion::Cycle(CycleReport { arcs: vec![id] }));
        }
        if self.order.before(v, w) {
            return Ok(Insertion::Ok);
        }
        let outcome = self.search.run(
            &mut self.store,
            &self.order,
            v,
            w,
            &self.config.strategy,
            &mut self.rng,
            false,
        );
        let result = match outcome {
            Outcome::Stopped { s } => {
                self.reorder(s);
                Insertion::Ok
            }
            Outcome::Cycle { closing, .. } => {
                self.frozen = true;
                Insertion::Cycle(self.build_cycle_report(id, closing))
            }
        };
        let rec = self.search.rec;
        self.stats.absorb(&rec);
        self.last = Some(rec);
        if self.config.record_searches {
            self.log.push(rec);
        }
        Ok(result)
    }

    /// Removes the arc that closed the reported cycle and accepts insertions
    /// again. The order is untouched by a cycle-finding search, so it is still
    /// topological for the remaining arcs.
    pub fn rollback_cycle(&mut self) -> Option<Arc> {
        if !self.frozen {
            return None;
        }
        self.frozen = false;
        self.store.pop_arc()
    }

    fn reorder(&mut self, s: VertexId) {
        let (o_x, o_y) = match self.config.subset_ordering {
            SubsetOrdering::Dfs => {
                let (ox, zx) = self.search.order_subset(
                    &mut self.store,
                    &self.order,
                    self.search.w,
                    s,
                    Direction::Forward,
                );
                let (oy, zy) = self.search.order_subset(
                    &mut self.store,
                    &self.order,
                    self.search.v,
                    s,
                    Direction::Backward,
                );
                debug_assert!(zx.is_empty() && zy.is_empty());
                (ox, oy)
            }
            SubsetOrdering::RadixSort => (
                radix_sort_by_label(&self.order, &self.search.x_set),
                radix_sort_by_label(&self.order, &self.search.y_set),
            ),
        };
        debug_assert_eq!(o_x.len(), self.search.x_set.len());
        debug_assert_eq!(o_y.len(), self.search.y_set.len());
        for &x in o_x.iter().chain(&o_y) {
            self.order.delete(x).expect("reordered vertex is live");
        }
        let mut seq = o_y;
        seq.extend_from_slice(&o_x);
        if !self.search.is_fwd(s) {
            self.order.reinsert_after(s, &seq).expect("fresh reinsertion");
        } else {
            self.order.reinsert_before(s, &seq).expect("fresh reinsertion");
        }
        self.search.rec.reordered = seq.len() as u64;
    }

    // Either way the closing arc runs from a forward vertex to a backward one.
    fn build_cycle_report(&self, new_arc: ArcId, closing: ArcId) -> CycleReport {
        let arc = self.store.arc(closing);
        let (fwd_end, bwd_start) = (arc.tail, arc.head);
        let mut arcs = vec![new_arc];
        // w => fwd_end along forward reached-by arcs
        let mut chain = Vec::new();
        let mut x = fwd_end;
        while self.search.reached_fwd[x] != NO_ARC {
            let a = self.search.reached_fwd[x];
            chain.push(a);
            x = self.store.arc(a).tail;
        }
        debug_assert_eq!(x, self.search.w);
        arcs.extend(chain.iter().rev());
        arcs.push(closing);
        // bwd_start => v along backward reached-by arcs
        let mut x = bwd_start;
        while self.search.reached_bwd[x] != NO_ARC {
            let a = self.search.reached_bwd[x];
            arcs.push(a);
            x = self.store.arc(a).head;
        }
        debug_assert_eq!(x, self.search.v);
        CycleReport { arcs }
    }
}

/// Sorts `items` by their current order labels: counting sort on the slot
/// number, then a stable counting sort on the block number.
pub fn radix_sort_by_label(order: &OrderedList, items: &[VertexId]) -> Vec<VertexId> {
    if items.len() <= 1 {
        return items.to_vec();
    }
    let labels: Vec<_> = items.iter().map(|&x| order.label_unchecked(x)).collect();
    let idx: Vec<usize> = (0..items.len()).collect();
    let max_slot = labels.iter().map(|l| l.slot_number).max().unwrap() as usize;
    let by_slot = counting_sort(&idx, max_slot, |i| labels[i].slot_number as usize);
    let max_block = labels.iter().map(|l| l.block_number).max().unwrap() as usize;
    let by_block = counting_sort(&by_slot, max_block, |i| labels[i].block_number as usize);
    by_block.into_iter().map(|i| items[i]).collect()
}

fn counting_sort(idx: &[usize], max_key: usize, key: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut count = vec![0usize; max_key + 2];
    for &i in idx {
        count[key(i) + 1] += 1;
    }
    for k in 1..count.len() {
        count[k] += count[k - 1];
    }
    let mut out = vec![0; idx.len()];
    for &i in idx {
        let k = key(i);
        out[count[k]] = i;
        count[k] += 1;
    }
    out
}
