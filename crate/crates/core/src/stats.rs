//! Work counters shared by both maintainers.

use std::fmt;

/// Counters for a single bidirectional search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchRecord {
    pub arcs_fwd: u64,
    pub arcs_bwd: u64,
    /// Times a vertex became near: on being reached, and on each move from a
    /// far set back to its near set.
    pub near_transitions: u64,
    /// Vertices deleted from and reinserted into the order.
    pub reordered: u64,
    /// Traversal steps whose pair was not compatible (must stay zero).
    pub compat_violations: u64,
    /// Traversals outside the affected region (must stay zero).
    pub region_violations: u64,
    /// Union-find lookups (component mode only).
    pub finds: u64,
    /// Arcs looked at, traversed or set aside, including the ordering pass.
    pub arcs_examined: u64,
}

impl SearchRecord {
    pub fn arcs_traversed(&self) -> u64 {
        self.arcs_fwd + self.arcs_bwd
    }
}

/// Cumulative counters for a maintainer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub insertions: u64,
    pub searches: u64,
    pub arcs_fwd: u64,
    pub arcs_bwd: u64,
    pub near_transitions: u64,
    pub reorders: u64,
    pub merges: u64,
    pub finds: u64,
    pub aside: u64,
    pub compat_violations: u64,
    pub region_violations: u64,
    pub renumber_work: u64,
}

impl Stats {
    pub fn arcs_traversed(&self) -> u64 {
        self.arcs_fwd + self.arcs_bwd
    }

    pub(crate) fn absorb(&mut self, r: &SearchRecord) {
        self.searches += 1;
        self.arcs_fwd += r.arcs_fwd;
        self.arcs_bwd += r.arcs_bwd;
        self.near_transitions += r.near_transitions;
        self.reorders += r.reordered;
        self.compat_violations += r.compat_violations;
        self.region_violations += r.region_violations;
    }

    /// Stable `key=value` pairs for machine-readable reports.
    pub fn pairs(&self) -> Vec<(&'static str, u64)> {
        vec![
            ("insertions", self.insertions),
            ("searches", self.searches),
            ("arcs_fwd", self.arcs_fwd),
            ("arcs_bwd", self.arcs_bwd),
            ("near_transitions", self.near_transitions),
            ("reorders", self.reorders),
            ("merges", self.merges),
            ("finds", self.finds),
            ("aside", self.aside),
            ("renumber_work", self.renumber_work),
        ]
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
