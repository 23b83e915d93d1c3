//! Arc-insertion workloads and their text format.
//!
//! File format: the first line holds `n`; every following line holds one arc
//! as `tail head`, decimal 0-based ids separated by a space, each line
//! newline-terminated.

use std::fmt::Write as _;
use std::io;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::StaticGraph;

/// Where a workload came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WorkloadMeta {
    pub family: String,
    pub params: Vec<(String, u64)>,
    pub seed: Option<u64>,
    pub note: Option<String>,
}

/// A vertex count and an ordered sequence of arcs to insert.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Workload {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    pub meta: WorkloadMeta,
}

impl Workload {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        Workload {
            n,
            arcs,
            meta: WorkloadMeta::default(),
        }
    }

    pub fn graph(&self) -> StaticGraph {
        StaticGraph::new(self.n, self.arcs.clone())
    }

    /// Snapshot of the first `len` arcs.
    pub fn prefix(&self, len: usize) -> StaticGraph {
        StaticGraph::new(self.n, self.arcs[..len].to_vec())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(8 + self.arcs.len() * 8);
        writeln!(s, "{}", self.n).unwrap();
        for &(a, b) in &self.arcs {
            writeln!(s, "{a} {b}").unwrap();
        }
        s
    }

    pub fn write_to<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        out.write_all(self.to_text().as_bytes())
    }

    /// Parses the workload text format. Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (i, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing vertex count".into(),
        })?;
        let n: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("bad vertex count {:?}", first.trim()),
        })?;
        let mut arcs = Vec::new();
        for (i, line) in lines {
            let bad = |msg: String| Error::Parse { line: i + 1, msg };
            let mut parts = line.split_whitespace();
            let mut id = |what: &str| -> Result<usize> {
                let tok = parts.next().ok_or_else(|| bad(format!("missing {what}")))?;
                let x: usize = tok
                    .parse()
                    .map_err(|_| bad(format!("bad {what} {tok:?}")))?;
                if x >= n {
                    return Err(bad(format!("{what} {x} out of range for n = {n}")));
                }
                Ok(x)
            };
            let tail = id("tail")?;
            let head = id("head")?;
            if parts.next().is_some() {
                return Err(bad("trailing tokens".into()));
            }
            arcs.push((tail, head));
        }
        Ok(Workload::new(n, arcs))
    }
}

fn integer_sqrt(m: usize) -> Option<usize> {
    let r = (m as f64).sqrt().round() as usize;
    (r * r == m).then_some(r)
}

/// The forced-reordering family: `sqrt(m)` paths of `k = n / sqrt(m)`
/// consecutive vertices, then arcs from the last vertex of each later path to
/// the first vertex of each earlier path, in the order
/// `(2k, 1), (3k, 1), ..., (n, 1), (3k, k+1), ..., (n, k+1), ...` (1-based).
pub fn gen_lower_bound(n: usize, m: usize) -> Result<Workload> {
    let r = integer_sqrt(m)
        .filter(|&r| r > 0)
        .ok_or_else(|| Error::InvalidParams(format!("m = {m} is not a positive perfect square")))?;
    if n == 0 || n % r != 0 {
        return Err(Error::InvalidParams(format!(
            "sqrt(m) = {r} must divide n = {n}"
        )));
    }
    if 2 * n > m + 3 * r {
        return Err(Error::InvalidParams(format!(
            "n = {n} exceeds m/2 + 3 sqrt(m)/2 for m = {m}"
        )));
    }
    let k = n / r;
    let mut arcs = Vec::with_capacity(n - r + r * (r - 1) / 2);
    for p in 0..r {
        for i in 0..k - 1 {
            arcs.push((p * k + i, p * k + i + 1));
        }
    }
    // 1-based (j*k, i*k + 1) becomes 0-based (j*k - 1, i*k)
    for i in 0..r {
        for j in i + 2..=r {
            arcs.push((j * k - 1, i * k));
        }
    }
    Ok(Workload {
        n,
        arcs,
        meta: WorkloadMeta {
            family: "lb".into(),
            params: vec![("n".into(), n as u64), ("m".into(), m as u64), ("k".into(), k as u64)],
            seed: None,
            note: Some("1-based vertex i is id i - 1".into()),
        },
    })
}

/// `m` arcs between distinct vertices, oriented along a hidden random
/// permutation, so the graph stays acyclic.
pub fn gen_random_dag(n: usize, m: usize, seed: u64) -> Result<Workload> {
    if n == 0 || (n == 1 && m > 0) {
        return Err(Error::InvalidParams(format!(
            "cannot draw {m} non-loop arcs on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(&mut rng);
    let mut arcs = Vec::with_capacity(m);
    while arcs.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        arcs.push(if rank[a] < rank[b] { (a, b) } else { (b, a) });
    }
    Ok(Workload {
        n,
        arcs,
        meta: WorkloadMeta {
            family: "random-dag".into(),
            params: vec![("n".into(), n as u64), ("m".into(), m as u64)],
            seed: Some(seed),
            note: None,
        },
    })
}

/// `m` arcs with uniformly random endpoints; loops and cycles allowed.
pub fn gen_random_digraph(n: usize, m: usize, seed: u64) -> Result<Workload> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    Ok(Workload {
        n,
        arcs,
        meta: WorkloadMeta {
            family: "random-digraph".into(),
            params: vec![("n".into(), n as u64), ("m".into(), m as u64)],
            seed: Some(seed),
            note: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_acyclic;

    #[test]
    fn lower_bound_n12_m16() {
        let w = gen_lower_bound(12, 16).unwrap();
        assert_eq!(w.arcs.len(), 14);
        assert_eq!(
            &w.arcs[..8],
            &[(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (9, 10), (10, 11)]
        );
        // 1-based: (6,1) (9,1) (12,1) (9,4) (12,4) (12,7)
        assert_eq!(
            &w.arcs[8..],
            &[(5, 0), (8, 0), (11, 0), (8, 3), (11, 3), (11, 6)]
        );
        assert!(is_acyclic(&w.graph()));
    }

    #[test]
    fn lower_bound_degenerate_k1() {
        let w = gen_lower_bound(4, 16).unwrap();
        assert_eq!(w.arcs.len(), 6);
        assert!(w.arcs.iter().all(|&(a, b)| a > b));
    }

    #[test]
    fn lower_bound_rejects_bad_params() {
        assert!(gen_lower_bound(12, 15).is_err());
        assert!(gen_lower_bound(10, 16).is_err());
        assert!(gen_lower_bound(16, 16).is_err());
        assert!(gen_lower_bound(0, 16).is_err());
    }

    #[test]
    fn lower_bound_counts_and_acyclicity() {
        for (n, m) in [(32, 64), (512, 4096), (48, 144), (40, 100)] {
            let w = gen_lower_bound(n, m).unwrap();
            let r = integer_sqrt(m).unwrap();
            assert_eq!(w.arcs.len(), n - r + r * (r - 1) / 2);
            assert!(w.arcs.len() < m);
            assert!(is_acyclic(&w.graph()));
        }
    }

    #[test]
    fn random_families() {
        assert!(gen_random_dag(5, 0, 1).unwrap().arcs.is_empty());
        assert!(gen_random_digraph(5, 0, 1).unwrap().arcs.is_empty());
        for seed in 0..50 {
            let w = gen_random_dag(30, 200, seed).unwrap();
            assert!(is_acyclic(&w.graph()));
        }
        assert_eq!(
            gen_random_dag(20, 50, 9).unwrap().to_text(),
            gen_random_dag(20, 50, 9).unwrap().to_text()
        );
        assert_eq!(
            gen_random_digraph(20, 50, 9).unwrap(),
            gen_random_digraph(20, 50, 9).unwrap()
        );
        assert!(gen_random_dag(1, 3, 0).is_err());
    }

    #[test]
    fn text_format() {
        let w = Workload::new(3, vec![(0, 1), (2, 0)]);
        assert_eq!(w.to_text(), "3\n0 1\n2 0\n");
        assert_eq!(Workload::parse(&w.to_text()).unwrap(), w);
        assert_eq!(Workload::parse("5\n").unwrap().arcs.len(), 0);

        let err = Workload::parse("3\n0 1\n0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = Workload::parse("3\n0 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(Workload::parse("").is_err());
        assert!(Workload::parse("x\n").is_err());
        assert!(Workload::parse("3\n0 1 2\n").is_err());
    }

    #[test]
    fn text_roundtrip_property() {
        use proptest::prelude::*;
        proptest!(|(n in 1usize..50, raw in proptest::collection::vec((0usize..1000, 0usize..1000), 0..60))| {
            let arcs: Vec<_> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
            let w = Workload::new(n, arcs);
            prop_assert_eq!(Workload::parse(&w.to_text()).unwrap(), w);
        });
    }
}
