//! Strong components and a topological order of the condensation under arc
//! insertions.
//!
//! Components are union-find sets. Each representative owns singly linked,
//! catenable lists of the arcs leaving and entering its component, plus a
//! circular list of its members. Arcs keep their original endpoints and are
//! resolved with `find` when examined; an arc whose endpoints have fallen into
//! one component is set aside the first time a search meets it and is never
//! looked at again.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph_store::{ArcId, Direction, GraphStore, VertexId};
use crate::ordered_list::OrderedList;
use crate::search::{Incidence, Outcome, Search};
use crate::selection::ThresholdStrategy;
use crate::stats::{SearchRecord, Stats};

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct ListCursor {
    prev: u32,
    cur: u32,
    // component at the far end of `cur`, once it has been checked not to be a loop
    resolved: u32,
}

impl ListCursor {
    const START: ListCursor = ListCursor {
        prev: NIL,
        cur: NIL,
        resolved: NIL,
    };
}

#[derive(Debug, Clone, Copy)]
struct ArcList {
    head: u32,
    tail: u32,
}

impl ArcList {
    const EMPTY: ArcList = ArcList {
        head: NIL,
        tail: NIL,
    };
}

/// Union-find over vertices with per-component arc and member lists.
#[derive(Debug, Clone)]
pub struct ComponentForest {
    parent: Vec<u32>,
    rank: Vec<u8>,
    next_member: Vec<u32>,
    size: Vec<u32>,
    out: Vec<ArcList>,
    inc: Vec<ArcList>,
    out_cursor: Vec<ListCursor>,
    in_cursor: Vec<ListCursor>,
    // per arc
    ends: Vec<(u32, u32)>,
    next_out: Vec<u32>,
    next_in: Vec<u32>,
    aside: Vec<bool>,
    aside_count: u64,
    finds: u64,
    traversed_aside: u64,
}

impl ComponentForest {
    pub fn new(n: usize) -> Self {
        ComponentForest {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            next_member: (0..n as u32).collect(),
            size: vec![1; n],
            out: vec![ArcList::EMPTY; n],
            inc: vec![ArcList::EMPTY; n],
            out_cursor: vec![ListCursor::START; n],
            in_cursor: vec![ListCursor::START; n],
            ends: Vec::new(),
            next_out: Vec::new(),
            next_in: Vec::new(),
            aside: Vec::new(),
            aside_count: 0,
            finds: 0,
            traversed_aside: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    fn check(&self, x: VertexId) -> Result<()> {
        if x < self.parent.len() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: x,
                n: self.parent.len(),
            })
        }
    }

    /// Representative of `x`'s component, with path compression.
    pub fn find(&mut self, x: VertexId) -> Result<VertexId> {
        self.check(x)?;
        Ok(self.find_fast(x))
    }

    fn find_fast(&mut self, x: VertexId) -> VertexId {
        self.finds += 1;
        let mut root = x as u32;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut y = x as u32;
        while y != root {
            let next = self.parent[y as usize];
            self.parent[y as usize] = root;
            y = next;
        }
        root as usize
    }

    pub fn is_representative(&self, x: VertexId) -> bool {
        x < self.parent.len() && self.parent[x] == x as u32
    }

    /// Total `find` calls so far.
    pub fn finds(&self) -> u64 {
        self.finds
    }

    /// Arcs set aside as loops of the condensation.
    pub fn aside_count(&self) -> u64 {
        self.aside_count
    }

    pub fn is_aside(&self, arc: ArcId) -> bool {
        self.aside[arc]
    }

    /// Number of times a set-aside arc was handed out for traversal. Zero
    /// unless the structure is broken.
    pub fn aside_traversals(&self) -> u64 {
        self.traversed_aside
    }

    /// Members of the component of representative `rep`.
    pub fn component_size(&self, rep: VertexId) -> usize {
        self.size[rep] as usize
    }

    /// Unites the components of representatives `x` and `y` (union by rank)
    /// and returns the surviving representative. O(1) list catenation.
    pub fn link(&mut self, x: VertexId, y: VertexId) -> Result<VertexId> {
        self.check(x)?;
        self.check(y)?;
        for r in [x, y] {
            if !self.is_representative(r) {
                return Err(Error::NotRepresentative(r));
            }
        }
        if x == y {
            return Err(Error::NotRepresentative(y));
        }
        let (win, lose) = if self.rank[x] < self.rank[y] {
            (y, x)
        } else {
            (x, y)
        };
        if self.rank[win] == self.rank[lose] {
            self.rank[win] += 1;
        }
        self.parent[lose] = win as u32;
        self.size[win] += self.size[lose];
        self.next_member.swap(win, lose);
        self.out[win] = cat(&mut self.next_out, self.out[win], self.out[lose]);
        self.inc[win] = cat(&mut self.next_in, self.inc[win], self.inc[lose]);
        self.out[lose] = ArcList::EMPTY;
        self.inc[lose] = ArcList::EMPTY;
        Ok(win)
    }

    /// Iterates the members of `rep`'s component, each exactly once.
    pub fn component_members(&self, rep: VertexId) -> Result<Members<'_>> {
        self.check(rep)?;
        if !self.is_representative(rep) {
            return Err(Error::NotRepresentative(rep));
        }
        Ok(Members {
            forest: self,
            start: rep as u32,
            cur: rep as u32,
            done: false,
        })
    }

    fn register_arc(&mut self, tail: VertexId, head: VertexId) -> usize {
        self.ends.push((tail as u32, head as u32));
        self.next_out.push(NIL);
        self.next_in.push(NIL);
        self.aside.push(false);
        self.ends.len() - 1
    }

    // Adds arc `id` to the out-list of `tail_rep` and the in-list of `head_rep`.
    fn attach(&mut self, id: usize, tail_rep: VertexId, head_rep: VertexId) {
        self.out[tail_rep] = cat(&mut self.next_out, self.out[tail_rep], single(id));
        self.inc[head_rep] = cat(&mut self.next_in, self.inc[head_rep], single(id));
    }

    fn set_aside(&mut self, id: usize) {
        if !self.aside[id] {
            self.aside[id] = true;
            self.aside_count += 1;
        }
    }

    /// Arc ids in `rep`'s out- or in-list, including lazily retained loops.
    pub fn list(&self, rep: VertexId, dir: Direction) -> Vec<ArcId> {
        let (lists, next) = self.lists(dir);
        let mut a = lists[rep].head;
        let mut v = Vec::new();
        while a != NIL {
            v.push(a as usize);
            a = next[a as usize];
        }
        v
    }

    fn lists(&self, dir: Direction) -> (&[ArcList], &[u32]) {
        match dir {
            Direction::Forward => (&self.out, &self.next_out),
            Direction::Backward => (&self.inc, &self.next_in),
        }
    }

    fn cursor_mut(&mut self, dir: Direction) -> &mut Vec<ListCursor> {
        match dir {
            Direction::Forward => &mut self.out_cursor,
            Direction::Backward => &mut self.in_cursor,
        }
    }

    // Drops the arc under `x`'s cursor from the list.
    fn unlink_current(&mut self, x: VertexId, dir: Direction) {
        let c = self.cursor_mut(dir)[x];
        let (lists, next) = match dir {
            Direction::Forward => (&mut self.out, &mut self.next_out),
            Direction::Backward => (&mut self.inc, &mut self.next_in),
        };
        let after = next[c.cur as usize];
        if c.prev == NIL {
            lists[x].head = after;
        } else {
            next[c.prev as usize] = after;
        }
        if lists[x].tail == c.cur {
            lists[x].tail = c.prev;
        }
        next[c.cur as usize] = NIL;
        self.cursor_mut(dir)[x] = ListCursor {
            prev: c.prev,
            cur: after,
            resolved: NIL,
        };
    }

    fn far_end(&self, arc: usize, dir: Direction) -> VertexId {
        let (t, h) = self.ends[arc];
        match dir {
            Direction::Forward => h as usize,
            Direction::Backward => t as usize,
        }
    }
}

fn single(id: usize) -> ArcList {
    ArcList {
        head: id as u32,
        tail: id as u32,
    }
}

fn cat(next: &mut [u32], a: ArcList, b: ArcList) -> ArcList {
    if a.head == NIL {
        return b;
    }
    if b.head == NIL {
        return a;
    }
    next[a.tail as usize] = b.head;
    ArcList {
        head: a.head,
        tail: b.tail,
    }
}

/// Iterator over the members of one component.
pub struct Members<'a> {
    forest: &'a ComponentForest,
    start: u32,
    cur: u32,
    done: bool,
}

impl Iterator for Members<'_> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        if self.done {
            return None;
        }
        let x = self.cur;
        self.cur = self.forest.next_member[x as usize];
        if self.cur == self.start {
            self.done = true;
        }
        Some(x as usize)
    }
}

impl Incidence for ComponentForest {
    fn begin_search(&mut self) {}

    fn reset(&mut self, x: VertexId, dir: Direction) {
        let head = self.lists(dir).0[x].head;
        self.cursor_mut(dir)[x] = ListCursor {
            prev: NIL,
            cur: head,
            resolved: NIL,
        };
    }

    fn has_next(&mut self, x: VertexId, dir: Direction, rec: &mut SearchRecord) -> bool {
        loop {
            let c = self.cursor_mut(dir)[x];
            if c.cur == NIL {
                return false;
            }
            if c.resolved != NIL {
                return true;
            }
            let a = c.cur as usize;
            if self.aside[a] {
                self.unlink_current(x, dir);
                continue;
            }
            rec.arcs_examined += 1;
            rec.finds += 2;
            let (t, h) = self.ends[a];
            let ct = self.find_fast(t as usize);
            let ch = self.find_fast(h as usize);
            if ct == ch {
                self.set_aside(a);
                self.unlink_current(x, dir);
                continue;
            }
            let far = match dir {
                Direction::Forward => ch,
                Direction::Backward => ct,
            };
            self.cursor_mut(dir)[x].resolved = far as u32;
            return true;
        }
    }

    fn advance(
        &mut self,
        x: VertexId,
        dir: Direction,
        rec: &mut SearchRecord,
    ) -> (ArcId, VertexId) {
        let ok = self.has_next(x, dir, rec);
        debug_assert!(ok);
        let c = self.cursor_mut(dir)[x];
        let a = c.cur as usize;
        if self.aside[a] {
            self.traversed_aside += 1;
        }
        let after = self.lists(dir).1[a];
        self.cursor_mut(dir)[x] = ListCursor {
            prev: c.cur,
            cur: after,
            resolved: NIL,
        };
        (a, c.resolved as usize)
    }

    fn scan_start(&self, x: VertexId, dir: Direction) -> usize {
        let head = self.lists(dir).0[x].head;
        if head == NIL {
            usize::MAX
        } else {
            head as usize
        }
    }

    fn scan_next(
        &mut self,
        x: VertexId,
        dir: Direction,
        state: &mut usize,
        rec: &mut SearchRecord,
    ) -> Option<VertexId> {
        while *state != usize::MAX {
            let a = *state;
            let next = self.lists(dir).1[a];
            *state = if next == NIL { usize::MAX } else { next as usize };
            if self.aside[a] {
                continue;
            }
            rec.arcs_examined += 1;
            rec.finds += 1;
            let far = self.find_fast(self.far_end(a, dir));
            if far != x {
                return Some(far);
            }
        }
        None
    }
}

/// Outcome of an insertion in component mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SccInsertion {
    /// The order of the condensation is still topological.
    NoChange,
    /// A search ran and reordered components; no new component formed.
    Reordered,
    /// A new component formed.
    Merged(ComponentChange),
}

/// Description of a newly formed component and the reorder around it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentChange {
    /// Former representatives absorbed into the new component.
    pub merged_reps: Vec<VertexId>,
    pub new_rep: VertexId,
    /// Final soft threshold of the search.
    pub anchor: VertexId,
    /// Forward-side vertices outside the component, in reinsertion order.
    pub o_x: Vec<VertexId>,
    /// Backward-side vertices outside the component, in reinsertion order.
    pub o_y: Vec<VertexId>,
}

#[derive(Debug, Clone, Default)]
pub struct SccConfig {
    pub strategy: ThresholdStrategy,
    pub record_searches: bool,
}

/// Maintains strong components and a topological order of them.
#[derive(Debug, Clone)]
pub struct SccMaintainer {
    order: OrderedList,
    store: GraphStore,
    forest: ComponentForest,
    search: Search,
    config: SccConfig,
    rng: ChaCha8Rng,
    stats: Stats,
    log: Vec<SearchRecord>,
    last: Option<SearchRecord>,
    last_finds: u64,
    components: usize,
}

impl SccMaintainer {
    pub fn new(n: usize, strategy: ThresholdStrategy) -> Result<Self> {
        Self::with_config(
            n,
            SccConfig {
                strategy,
                ..SccConfig::default()
            },
        )
    }

    pub fn with_config(n: usize, config: SccConfig) -> Result<Self> {
        config.strategy.validate()?;
        let ids: Vec<usize> = (0..n).collect();
        let seed = match config.strategy {
            ThresholdStrategy::UniformRandom { seed } => seed,
            ThresholdStrategy::ApproxMedian { .. } => 0,
        };
        Ok(SccMaintainer {
            order: OrderedList::new(&ids)?,
            store: GraphStore::new(n),
            forest: ComponentForest::new(n),
            search: Search::new(n),
            config,
            rng: ChaCha8Rng::seed_from_u64(seed),
            stats: Stats::default(),
            log: Vec::new(),
            last: None,
            last_finds: 0,
            components: n,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.store.vertex_count()
    }

    /// The original graph (arc log).
    pub fn store(&self) -> &GraphStore {
        &self.store
    }

    pub fn forest(&self) -> &ComponentForest {
        &self.forest
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Representatives in topological order of the condensation.
    pub fn order(&self) -> Vec<VertexId> {
        self.order.to_vec()
    }

    pub fn order_list(&self) -> &OrderedList {
        &self.order
    }

    pub fn find(&mut self, x: VertexId) -> Result<VertexId> {
        self.forest.find(x)
    }

    /// Representative of every vertex.
    pub fn partition(&mut self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .map(|x| self.forest.find_fast(x))
            .collect()
    }

    pub fn component_members(&self, rep: VertexId) -> Result<Vec<VertexId>> {
        Ok(self.forest.component_members(rep)?.collect())
    }

    pub fn stats(&self) -> Stats {
        let mut s = self.stats.clone();
        s.finds = self.forest.finds();
        s.aside = self.forest.aside_count();
        s.renumber_work = self.order.renumber_work();
        s
    }

    pub fn search_log(&self) -> &[SearchRecord] {
        &self.log
    }

    /// Counters of the search run by the latest insertion, if any.
    pub fn last_search(&self) -> Option<&SearchRecord> {
        self.last.as_ref()
    }

    /// `find` calls made by the latest insertion.
    pub fn last_insertion_finds(&self) -> u64 {
        self.last_finds
    }

    /// Adds the arc `(v, w)` and updates components and their order.
    pub fn insert_arc(&mut self, v: VertexId, w: VertexId) -> Result<SccInsertion> {
        let id = self.store.add_arc(v, w)?;
        self.stats.insertions += 1;
        self.last = None;
        let finds_before = self.forest.finds();
        let fid = self.forest.register_arc(v, w);
        debug_assert_eq!(fid, id);
        let cv = self.forest.find_fast(v);
        let cw = self.forest.find_fast(w);
        if cv == cw {
            self.forest.set_aside(id);
            self.last_finds = self.forest.finds() - finds_before;
            return Ok(SccInsertion::NoChange);
        }
        self.forest.attach(id, cv, cw);
        if self.order.before(cv, cw) {
            self.last_finds = self.forest.finds() - finds_before;
            return Ok(SccInsertion::NoChange);
        }
        let Outcome::Stopped { s } = self.search.run(
            &mut self.forest,
            &self.order,
            cv,
            cw,
            &self.config.strategy,
            &mut self.rng,
            true,
        ) else {
            unreachable!("search in merge mode never stops on a cycle");
        };
        let dual = self.search.forward.iter().any(|&x| self.search.is_bwd(x));
        let result = if dual {
            SccInsertion::Merged(self.condense_and_reorder(s))
        } else {
            self.reorder(s);
            SccInsertion::Reordered
        };
        let rec = self.search.rec;
        self.stats.absorb(&rec);
        self.last = Some(rec);
        if self.config.record_searches {
            self.log.push(rec);
        }
        self.last_finds = self.forest.finds() - finds_before;
        Ok(result)
    }

    fn reorder(&mut self, s: VertexId) {
        let (w, v) = (self.search.w, self.search.v);
        let (o_x, _) =
            self.search
                .order_subset(&mut self.forest, &self.order, w, s, Direction::Forward);
        let (o_y, _) =
            self.search
                .order_subset(&mut self.forest, &self.order, v, s, Direction::Backward);
        for &x in o_x.iter().chain(&o_y) {
            self.order.delete(x).expect("live representative");
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

    fn condense_and_reorder(&mut self, s: VertexId) -> ComponentChange {
        let (w, v) = (self.search.w, self.search.v);
        let (o_x, z_x) =
            self.search
                .order_subset(&mut self.forest, &self.order, w, s, Direction::Forward);
        let (o_y, z_y) =
            self.search
                .order_subset(&mut self.forest, &self.order, v, s, Direction::Backward);
        debug_assert_eq!(o_x.len() + z_x.len(), self.search.x_set.len());
        debug_assert_eq!(o_y.len() + z_y.len(), self.search.y_set.len());
        let s_in_z = self.search.is_fwd(s) && self.search.is_bwd(s);
        let s_forward = self.search.is_fwd(s);

        for &x in self.search.x_set.iter().chain(&self.search.y_set) {
            self.order.delete(x).expect("live representative");
        }
        let mut merged: Vec<VertexId> = z_x.iter().chain(&z_y).copied().collect();
        if s_in_z {
            merged.push(s);
        }
        let mut rep = merged[0];
        for &m in &merged[1..] {
            rep = self.forest.link(rep, m).expect("distinct representatives");
        }
        if s_in_z {
            if rep != s {
                self.order.reinsert_after(s, &[rep]).expect("fresh reinsertion");
                self.order.delete(s).expect("anchor is live");
            }
        } else if !s_forward {
            self.order.reinsert_after(s, &[rep]).expect("fresh reinsertion");
        } else {
            self.order.reinsert_before(s, &[rep]).expect("fresh reinsertion");
        }
        self.order.reinsert_after(rep, &o_x).expect("fresh reinsertion");
        self.order.reinsert_before(rep, &o_y).expect("fresh reinsertion");

        self.components -= merged.len() - 1;
        self.stats.merges += 1;
        self.search.rec.reordered = (self.search.x_set.len() + self.search.y_set.len()) as u64;
        ComponentChange {
            merged_reps: merged,
            new_rep: rep,
            anchor: s,
            o_x,
            o_y,
        }
    }
}
