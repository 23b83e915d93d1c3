//! Soft-threshold selection: worst-case linear approximate median and uniform
//! random choice.

use std::cmp::Ordering;

use rand::Rng;

use crate::error::{Error, Result};

/// How the soft threshold is picked from a candidate set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdStrategy {
    /// An `epsilon`-approximate median, `0 < epsilon <= 1/2`.
    ApproxMedian { epsilon: f64 },
    /// Uniform choice driven by a ChaCha8 stream seeded with `seed`.
    UniformRandom { seed: u64 },
}

impl ThresholdStrategy {
    /// Exact median (epsilon = 1/2).
    pub fn median() -> Self {
        ThresholdStrategy::ApproxMedian { epsilon: 0.5 }
    }

    pub fn approx_median(epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        Ok(ThresholdStrategy::ApproxMedian { epsilon })
    }

    pub fn random(seed: u64) -> Self {
        ThresholdStrategy::UniformRandom { seed }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ThresholdStrategy::ApproxMedian { epsilon } => check_epsilon(epsilon),
            ThresholdStrategy::UniformRandom { .. } => Ok(()),
        }
    }
}

impl Default for ThresholdStrategy {
    fn default() -> Self {
        ThresholdStrategy::median()
    }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

/// Zero-based rank selected for an `epsilon`-approximate median of `g` items:
/// the smallest rank with at least `epsilon * g` items at or below it. Any
/// `epsilon <= 1/2` then also leaves at least `epsilon * g` items at or above.
pub fn target_rank(g: usize, epsilon: f64) -> usize {
    debug_assert!(g > 0);
    let need = (epsilon * g as f64 - 1e-9).ceil().max(1.0) as usize;
    (need - 1).min(g - 1)
}

/// Returns an `epsilon`-approximate median of `items` under `cmp` using
/// median-of-medians selection (worst-case linear comparisons).
pub fn approx_median<T, F>(items: &[T], epsilon: f64, mut cmp: F) -> Result<T>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    if items.is_empty() {
        return Err(Error::EmptySelection);
    }
    check_epsilon(epsilon)?;
    let mut work = items.to_vec();
    let k = target_rank(work.len(), epsilon);
    let at = select_nth(&mut work, k, &mut cmp);
    Ok(work[at].clone())
}

/// Uniformly random element of `items`.
pub fn random_pick<T: Clone, R: Rng + ?Sized>(items: &[T], rng: &mut R) -> Result<T> {
    if items.is_empty() {
        return Err(Error::EmptySelection);
    }
    Ok(items[rng.gen_range(0..items.len())].clone())
}

fn insertion_sort<T, F: FnMut(&T, &T) -> Ordering>(v: &mut [T], cmp: &mut F) {
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && cmp(&v[j], &v[j - 1]) == Ordering::Less {
            v.swap(j, j - 1);
            j -= 1;
        }
    }
}

/// Rearranges `v` so that position `k` (returned) holds the element of rank
/// `k`. Groups of five, median of medians as pivot, three-way partition.
pub fn select_nth<T, F>(v: &mut [T], k: usize, cmp: &mut F) -> usize
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    assert!(k < v.len());
    let (mut lo, mut hi, mut k) = (0usize, v.len(), k);
    loop {
        let s = &mut v[lo..hi];
        let n = s.len();
        if n <= 5 {
            insertion_sort(s, cmp);
            return lo + k;
        }
        let groups = n.div_ceil(5);
        for g in 0..groups {
            let a = 5 * g;
            let b = (a + 5).min(n);
            insertion_sort(&mut s[a..b], cmp);
            s.swap(g, a + (b - a - 1) / 2);
        }
        let p = select_nth(&mut s[..groups], (groups - 1) / 2, cmp);
        let pivot = s[p].clone();

        // [0, lt) < pivot, [lt, i) == pivot, [gt, n) > pivot
        let (mut lt, mut i, mut gt) = (0, 0, n);
        while i < gt {
            match cmp(&s[i], &pivot) {
                Ordering::Less => {
                    s.swap(lt, i);
                    lt += 1;
                    i += 1;
                }
                Ordering::Greater => {
                    gt -= 1;
                    s.swap(i, gt);
                }
                Ordering::Equal => i += 1,
            }
        }
        if k < lt {
            hi = lo + lt;
        } else if k < gt {
            return lo + k;
        } else {
            k -= gt;
            lo += gt;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rank_ok(items: &[i64], r: i64, eps: f64) -> bool {
        let g = items.len() as f64;
        let le = items.iter().filter(|&&x| x <= r).count() as f64;
        let ge = items.iter().filter(|&&x| x >= r).count() as f64;
        le >= eps * g && ge >= eps * g
    }

    #[test]
    fn exact_median_examples() {
        assert_eq!(approx_median(&[5, 1, 3, 2, 4], 0.5, i32::cmp).unwrap(), 3);
        assert_eq!(approx_median(&[7], 0.5, i32::cmp).unwrap(), 7);
        assert_eq!(
            approx_median::<i32, _>(&[], 0.5, i32::cmp),
            Err(Error::EmptySelection)
        );
        assert_eq!(
            approx_median(&[1], 0.6, i32::cmp),
            Err(Error::InvalidEpsilon(0.6))
        );
    }

    #[test]
    fn random_pick_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_pick(&[9], &mut rng).unwrap(), 9);
        assert!(random_pick::<u8, _>(&[], &mut rng).is_err());

        let items: Vec<u32> = (0..10).collect();
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50)
                .map(|_| random_pick(&items, &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(run(42), run(42));
    }

    #[test]
    fn random_pick_is_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let items: Vec<usize> = (0..10).collect();
        let draws = 100_000;
        let mut counts = [0u32; 10];
        for _ in 0..draws {
            counts[random_pick(&items, &mut rng).unwrap()] += 1;
        }
        let expected = draws as f64 / 10.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // chi-square critical value, 9 degrees of freedom, alpha = 0.001
        assert!(chi2 < 27.877, "chi2 = {chi2}");
    }

    #[test]
    fn rank_bounds_against_sort_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for round in 0..1000 {
            let g = rng.gen_range(1..200);
            let items: Vec<i64> = (0..g).map(|_| rng.gen_range(0..50)).collect();
            let eps = [0.5, 0.25, 0.1, 1.0 / 3.0][round % 4];
            let r = approx_median(&items, eps, i64::cmp).unwrap();
            assert!(rank_ok(&items, r, eps), "g={g} eps={eps} r={r}");
        }
    }

    // Comparison bound: approx_median uses at most COMPARISON_CONSTANT * g
    // comparisons.
    const COMPARISON_CONSTANT: usize = 40;

    #[test]
    fn comparisons_are_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in [1usize, 2, 5, 6, 17, 100, 1000, 10_000, 50_000] {
            for _ in 0..5 {
                let items: Vec<u64> = (0..g).map(|_| rng.gen()).collect();
                let mut count = 0usize;
                approx_median(&items, 0.5, |a, b| {
                    count += 1;
                    a.cmp(b)
                })
                .unwrap();
                assert!(count <= COMPARISON_CONSTANT * g, "g={g} count={count}");
            }
        }
        // sorted and reversed inputs
        for g in [1000usize, 4096] {
            let up: Vec<u64> = (0..g as u64).collect();
            let down: Vec<u64> = up.iter().rev().copied().collect();
            for items in [up, down] {
                let mut count = 0usize;
                approx_median(&items, 0.5, |a, b| {
                    count += 1;
                    a.cmp(b)
                })
                .unwrap();
                assert!(count <= COMPARISON_CONSTANT * g);
            }
        }
    }

    proptest! {
        #[test]
        fn exact_median_for_odd_distinct(mut xs in proptest::collection::hash_set(any::<i32>(), 1..120)) {
            let mut v: Vec<i32> = xs.drain().collect();
            if v.len() % 2 == 0 {
                v.pop();
            }
            let m = approx_median(&v, 0.5, i32::cmp).unwrap();
            let mut sorted = v.clone();
            sorted.sort();
            prop_assert_eq!(m, sorted[sorted.len() / 2]);
        }

        #[test]
        fn rank_bounds_hold(items in proptest::collection::vec(0i64..30, 1..300), eps in 0.01f64..=0.5) {
            let r = approx_median(&items, eps, i64::cmp).unwrap();
            prop_assert!(rank_ok(&items, r, eps));
        }
    }
}
