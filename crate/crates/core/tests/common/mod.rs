#![allow(dead_code)]

use fnrate::DemandFunction;
use proptest::prelude::*;
use rand::Rng;

/// Random non-constant demand functions with small alphabets.
pub fn demand_function(max_a: usize, max_b: usize) -> impl Strategy<Value = DemandFunction> {
    (2..=max_a, 2..=max_b)
        .prop_flat_map(|(a, b)| (Just(a), Just(b), prop::collection::vec(0..b, a * a * a)))
        .prop_filter_map("constant in some argument", |(a, b, table)| {
            DemandFunction::new(a, b, table).ok()
        })
}

/// Random `f` with `f(x, y, z) = f(y, x, z)`.
pub fn symmetric_demand_function() -> impl Strategy<Value = DemandFunction> {
    (2usize..=3, 2usize..=4)
        .prop_flat_map(|(a, b)| (Just(a), Just(b), prop::collection::vec(0..b, a * a * a)))
        .prop_filter_map("constant in some argument", |(a, b, seed)| {
            DemandFunction::from_fn(a, b, |x, y, z| {
                let (lo, hi) = (x.min(y), x.max(y));
                seed[(lo * a + hi) * a + z]
            })
            .ok()
        })
}

/// Positive integer weights, 1 to `max_len` entries.
pub fn counts(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=100, 1..=max_len)
}

/// Applies random Robin-Hood transfers (move at most half the gap from a
/// larger entry to a smaller one). Each step yields a vector majorized by
/// the previous one, with the same total.
pub fn robin_hood<R: Rng>(counts: &mut [u64], steps: usize, rng: &mut R) {
    let n = counts.len();
    if n < 2 {
        return;
    }
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (hi, lo) = if counts[i] >= counts[j] { (i, j) } else { (j, i) };
        let gap = counts[hi] - counts[lo];
        if gap < 2 {
            continue;
        }
        let t = rng.gen_range(1..=gap / 2);
        counts[hi] -= t;
        counts[lo] += t;
    }
}
