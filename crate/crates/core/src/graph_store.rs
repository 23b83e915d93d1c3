//! Vertices, the append-only arc log, and per-vertex incidence sequences with
//! an untraversed-arc cursor.

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArcId = usize;

/// A directed arc `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
}

/// Search direction: forward follows out-arcs, backward follows in-arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy)]
struct Cursor {
    pos: u32,
    dir: Direction,
    epoch: u32,
}

/// Graph storage for topological-order mode.
///
/// A vertex is never both forward and backward during one search, so a single
/// cursor slot per vertex serves whichever direction the search assigns it.
#[derive(Debug, Clone)]
pub struct GraphStore {
    arcs: Vec<Arc>,
    out: Vec<Vec<ArcId>>,
    inc: Vec<Vec<ArcId>>,
    cursor: Vec<Cursor>,
    epoch: u32,
    dual_resets: u64,
}

impl GraphStore {
    pub fn new(n: usize) -> Self {
        GraphStore {
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            cursor: vec![
                Cursor {
                    pos: 0,
                    dir: Direction::Forward,
                    epoch: 0,
                };
                n
            ],
            epoch: 0,
            dual_resets: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn check_vertex(&self, x: VertexId) -> Result<()> {
        if x < self.out.len() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: x,
                n: self.out.len(),
            })
        }
    }

    /// Appends `(v, w)` to the log and to both incidence sequences.
    pub fn add_arc(&mut self, v: VertexId, w: VertexId) -> Result<ArcId> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        let id = self.arcs.len();
        self.arcs.push(Arc { tail: v, head: w });
        self.out[v].push(id);
        self.inc[w].push(id);
        Ok(id)
    }

    // Undo of the latest `add_arc`; used to roll a maintainer back after a
    // reported cycle.
    pub(crate) fn pop_arc(&mut self) -> Option<Arc> {
        let arc = self.arcs.pop()?;
        self.out[arc.tail].pop();
        self.inc[arc.head].pop();
        Some(arc)
    }

    #[inline]
    pub fn arc(&self, id: ArcId) -> Arc {
        self.arcs[id]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn out_arcs(&self, x: VertexId) -> &[ArcId] {
        &self.out[x]
    }

    pub fn in_arcs(&self, x: VertexId) -> &[ArcId] {
        &self.inc[x]
    }

    /// Starts a new search: cursor resets from earlier searches stop counting
    /// toward the one-direction-per-vertex audit.
    pub fn begin_search(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
    }

    /// Number of times one vertex had its cursor reset in both directions
    /// within a single search. Always zero in topological-order mode.
    pub fn dual_resets(&self) -> u64 {
        self.dual_resets
    }

    /// Moves the cursor of `x` to the front of its `dir` incidence sequence.
    pub fn reset_cursor(&mut self, x: VertexId, dir: Direction) {
        let c = &mut self.cursor[x];
        if c.epoch == self.epoch && c.dir != dir {
            self.dual_resets += 1;
        }
        *c = Cursor {
            pos: 0,
            dir,
            epoch: self.epoch,
        };
    }

    fn seq(&self, x: VertexId, dir: Direction) -> &[ArcId] {
        match dir {
            Direction::Forward => &self.out[x],
            Direction::Backward => &self.inc[x],
        }
    }

    /// True if the cursor of `x` has not reached the end of its sequence.
    #[inline]
    pub fn has_untraversed(&self, x: VertexId, dir: Direction) -> bool {
        (self.cursor[x].pos as usize) < self.seq(x, dir).len()
    }

    /// Returns the first untraversed arc in direction `dir` and advances past it.
    pub fn next_untraversed(&mut self, x: VertexId, dir: Direction) -> Option<ArcId> {
        let pos = self.cursor[x].pos as usize;
        let id = *self.seq(x, dir).get(pos)?;
        self.cursor[x].pos += 1;
        Some(id)
    }
}
