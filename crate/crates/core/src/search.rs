//! Compatible bidirectional search with a soft threshold, shared by the
//! topological-order and strong-component maintainers.
//!
//! Candidate forward vertices live in the steque `f`: the first `f_near`
//! entries form the near set A, the rest the far set B. New vertices are pushed
//! on the front, bypassed vertices move from the front to the back. `r`, with
//! C and D, is the mirror image for backward vertices.

use std::collections::VecDeque;

use rand_chacha::ChaCha8Rng;

use crate::graph_store::{ArcId, Direction, VertexId};
use crate::ordered_list::OrderedList;
use crate::selection::{self, ThresholdStrategy};
use crate::stats::SearchRecord;

pub(crate) const NO_ARC: ArcId = usize::MAX;

/// Incidence access the search needs from a graph representation.
pub(crate) trait Incidence {
    fn begin_search(&mut self);
    fn reset(&mut self, x: VertexId, dir: Direction);
    /// True if `x` still has an arc to traverse in `dir`. May set loops aside.
    fn has_next(&mut self, x: VertexId, dir: Direction, rec: &mut SearchRecord) -> bool;
    /// Traverses the next arc of `x` in `dir`; returns it with its resolved
    /// opposite endpoint. Only called after `has_next` returned true.
    fn advance(&mut self, x: VertexId, dir: Direction, rec: &mut SearchRecord)
        -> (ArcId, VertexId);
    /// Opaque iteration state for a full scan of `x`'s arcs in `dir`.
    fn scan_start(&self, x: VertexId, dir: Direction) -> usize;
    /// Next resolved neighbor during a full scan, skipping loops.
    fn scan_next(
        &mut self,
        x: VertexId,
        dir: Direction,
        state: &mut usize,
        rec: &mut SearchRecord,
    ) -> Option<VertexId>;
}

/// How a search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    /// Stopped at final threshold `s`; `x_set`/`y_set` hold X and Y.
    Stopped { s: VertexId },
    /// Traversing `closing` reached a vertex of the opposite kind.
    Cycle {
        closing: ArcId,
        via: Direction,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Search {
    epoch: u32,
    fwd_mark: Vec<u32>,
    bwd_mark: Vec<u32>,
    pub(crate) reached_fwd: Vec<ArcId>,
    pub(crate) reached_bwd: Vec<ArcId>,
    f: VecDeque<VertexId>,
    f_near: usize,
    r: VecDeque<VertexId>,
    r_near: usize,
    pub(crate) x_set: Vec<VertexId>,
    pub(crate) y_set: Vec<VertexId>,
    pub(crate) forward: Vec<VertexId>,
    pub(crate) backward: Vec<VertexId>,
    // scratch for subset ordering
    visit: Vec<u32>,
    in_z: Vec<u32>,
    visit_epoch: u32,
    scratch: Vec<(VertexId, usize)>,
    pub(crate) rec: SearchRecord,
    pub(crate) v: VertexId,
    pub(crate) w: VertexId,
}

impl Search {
    pub(crate) fn new(n: usize) -> Self {
        Search {
            epoch: 0,
            fwd_mark: vec![0; n],
            bwd_mark: vec![0; n],
            reached_fwd: vec![NO_ARC; n],
            reached_bwd: vec![NO_ARC; n],
            f: VecDeque::new(),
            f_near: 0,
            r: VecDeque::new(),
            r_near: 0,
            x_set: Vec::new(),
            y_set: Vec::new(),
            forward: Vec::new(),
            backward: Vec::new(),
            visit: vec![0; n],
            in_z: vec![0; n],
            visit_epoch: 0,
            scratch: Vec::new(),
            rec: SearchRecord::default(),
            v: 0,
            w: 0,
        }
    }

    #[inline]
    pub(crate) fn is_fwd(&self, x: VertexId) -> bool {
        self.fwd_mark[x] == self.epoch
    }

    #[inline]
    pub(crate) fn is_bwd(&self, x: VertexId) -> bool {
        self.bwd_mark[x] == self.epoch
    }

    fn mark_fwd<G: Incidence>(&mut self, g: &mut G, x: VertexId, by: ArcId) {
        self.fwd_mark[x] = self.epoch;
        self.reached_fwd[x] = by;
        self.forward.push(x);
        g.reset(x, Direction::Forward);
        self.f.push_front(x);
        self.f_near += 1;
        self.rec.near_transitions += 1;
    }

    fn mark_bwd<G: Incidence>(&mut self, g: &mut G, x: VertexId, by: ArcId) {
        self.bwd_mark[x] = self.epoch;
        self.reached_bwd[x] = by;
        self.backward.push(x);
        g.reset(x, Direction::Backward);
        self.r.push_front(x);
        self.r_near += 1;
        self.rec.near_transitions += 1;
    }

    /// Runs the search for a new arc `(v, w)` with `w` before `v`.
    ///
    /// With `merge_mode` set, meeting a vertex of the opposite kind does not
    /// stop the search; the vertex simply gains the second mark.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn run<G: Incidence>(
        &mut self,
        g: &mut G,
        order: &OrderedList,
        v: VertexId,
        w: VertexId,
        strategy: &ThresholdStrategy,
        rng: &mut ChaCha8Rng,
        merge_mode: bool,
    ) -> Outcome {
        debug_assert!(order.before(w, v));
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.fwd_mark.fill(0);
            self.bwd_mark.fill(0);
            self.epoch = 1;
        }
        self.f.clear();
        self.r.clear();
        self.f_near = 0;
        self.r_near = 0;
        self.x_set.clear();
        self.y_set.clear();
        self.forward.clear();
        self.backward.clear();
        self.rec = SearchRecord::default();
        self.v = v;
        self.w = w;
        g.begin_search();

        self.mark_fwd(g, w, NO_ARC);
        self.mark_bwd(g, v, NO_ARC);
        let (mut l, mut s, mut h) = (w, v, v);
        let before = |a: VertexId, b: VertexId| order.before(a, b);

        while !self.f.is_empty() && !self.r.is_empty() {
            // Case 1f
            if self.f_near == 0 {
                self.f_near = self.f.len();
                self.rec.near_transitions += self.f.len() as u64;
                debug_assert!(l == s || before(l, s));
                l = s;
                let pick = choose_soft_threshold(self.f.make_contiguous(), strategy, rng, order);
                s = if before(h, pick) { h } else { pick };
                continue;
            }
            // Case 1b
            if self.r_near == 0 {
                self.r_near = self.r.len();
                self.rec.near_transitions += self.r.len() as u64;
                debug_assert!(h == s || before(s, h));
                h = s;
                let pick = choose_soft_threshold(self.r.make_contiguous(), strategy, rng, order);
                s = if before(pick, l) { l } else { pick };
                continue;
            }
            let u = self.f[0];
            let z = self.r[0];
            // Case 2f: u >= h
            if !before(u, h) {
                self.f.pop_front();
                self.f_near -= 1;
                continue;
            }
            // Case 2b: z <= l
            if !before(l, z) {
                self.r.pop_front();
                self.r_near -= 1;
                continue;
            }
            let z_le_u = !before(u, z);
            // Case 3f: max(z, s) <= u < h
            if z_le_u && !before(u, s) {
                self.f.pop_front();
                self.f.push_back(u);
                self.f_near -= 1;
                continue;
            }
            // Case 3b: l < z <= min(u, s)
            if z_le_u && !before(s, z) {
                self.r.pop_front();
                self.r.push_back(z);
                self.r_near -= 1;
                continue;
            }
            // remaining cases: l <= u < z <= h
            debug_assert!((l == u || before(l, u)) && (z == h || before(z, h)));
            // Case 4f
            if !g.has_next(u, Direction::Forward, &mut self.rec) {
                self.f.pop_front();
                self.f_near -= 1;
                self.x_set.push(u);
                continue;
            }
            // Case 4b
            if !g.has_next(z, Direction::Backward, &mut self.rec) {
                self.r.pop_front();
                self.r_near -= 1;
                self.y_set.push(z);
                continue;
            }
            // Case 5
            if !before(u, z) {
                self.rec.compat_violations += 1;
            }
            if !before(u, v) || !before(w, z) {
                self.rec.region_violations += 1;
            }
            let (a_fwd, x) = g.advance(u, Direction::Forward, &mut self.rec);
            let (a_bwd, y) = g.advance(z, Direction::Backward, &mut self.rec);
            self.rec.arcs_fwd += 1;
            self.rec.arcs_bwd += 1;
            if merge_mode {
                if !self.is_fwd(x) {
                    self.mark_fwd(g, x, a_fwd);
                }
                if !self.is_bwd(y) {
                    self.mark_bwd(g, y, a_bwd);
                }
            } else {
                if self.is_bwd(x) {
                    return Outcome::Cycle {
                        closing: a_fwd,
                        via: Direction::Forward,
                    };
                }
                if !self.is_fwd(x) {
                    self.mark_fwd(g, x, a_fwd);
                }
                if self.is_fwd(y) {
                    return Outcome::Cycle {
                        closing: a_bwd,
                        via: Direction::Backward,
                    };
                }
                if !self.is_bwd(y) {
                    self.mark_bwd(g, y, a_bwd);
                }
            }
        }

        let s = if self.f.is_empty() { h } else { l };
        self.x_set.retain(|&x| order.before(x, s));
        self.y_set.retain(|&y| order.before(s, y));
        Outcome::Stopped { s }
    }

    /// Depth-first pass from `start` in `dir`, expanding only vertices
    /// strictly on the near side of `s` (before it going forward, after it
    /// going backward).
    ///
    /// Vertices that reach a vertex carrying the opposite mark inherit that
    /// mark; they form the part of a new component on this side. Returns the
    /// remaining reached vertices as a topological order and the inherited set.
    pub(crate) fn order_subset<G: Incidence>(
        &mut self,
        g: &mut G,
        order: &OrderedList,
        start: VertexId,
        s: VertexId,
        dir: Direction,
    ) -> (Vec<VertexId>, Vec<VertexId>) {
        let inside = |x: VertexId| match dir {
            Direction::Forward => order.before(x, s),
            Direction::Backward => order.before(s, x),
        };
        let mut post = Vec::new();
        let mut component = Vec::new();
        if !inside(start) {
            return (post, component);
        }
        self.visit_epoch = self.visit_epoch.wrapping_add(1);
        if self.visit_epoch == 0 {
            self.visit.fill(0);
            self.in_z.fill(0);
            self.visit_epoch = 1;
        }
        let ep = self.visit_epoch;
        let opposite = |me: &Self, x: VertexId| match dir {
            Direction::Forward => me.is_bwd(x) || me.in_z[x] == ep,
            Direction::Backward => me.is_fwd(x) || me.in_z[x] == ep,
        };

        let mut stack = std::mem::take(&mut self.scratch);
        stack.clear();
        self.visit[start] = ep;
        stack.push((start, g.scan_start(start, dir)));
        while let Some(&mut (x, ref mut state)) = stack.last_mut() {
            match g.scan_next(x, dir, state, &mut self.rec) {
                Some(y) => {
                    if self.visit[y] != ep && inside(y) {
                        self.visit[y] = ep;
                        let st = g.scan_start(y, dir);
                        stack.push((y, st));
                    } else if opposite(self, y) {
                        self.in_z[x] = ep;
                    }
                }
                None => {
                    stack.pop();
                    if opposite(self, x) {
                        self.in_z[x] = ep;
                        component.push(x);
                    } else {
                        post.push(x);
                    }
                    if let Some(&(p, _)) = stack.last() {
                        if self.in_z[x] == ep {
                            self.in_z[p] = ep;
                        }
                    }
                }
            }
        }
        self.scratch = stack;
        if dir == Direction::Forward {
            post.reverse();
        }
        (post, component)
    }
}

/// Picks a soft threshold from `candidates` (all live in `order`).
pub(crate) fn choose_soft_threshold(
    candidates: &[VertexId],
    strategy: &ThresholdStrategy,
    rng: &mut ChaCha8Rng,
    order: &OrderedList,
) -> VertexId {
    match *strategy {
        ThresholdStrategy::ApproxMedian { epsilon } => {
            let keyed: Vec<(crate::ordered_list::OrderLabel, VertexId)> = candidates
                .iter()
                .map(|&x| (order.label_unchecked(x), x))
                .collect();
            selection::approx_median(&keyed, epsilon, |a, b| a.cmp(b))
                .expect("nonempty candidates")
                .1
        }
        ThresholdStrategy::UniformRandom { .. } => {
            selection::random_pick(candidates, rng).expect("nonempty candidates")
        }
    }
}
