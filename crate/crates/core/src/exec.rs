//! Parallel / sequential execution of index-space sweeps.
//!
//! All exhaustive enumerations in the crate walk a dense index range
//! `0..n` and either reduce exactly (integer counts, predicates) or collect
//! per-index floating values that are then summed in index order. The
//! second form keeps floating results bit-identical between the two
//! execution modes and across thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a sweep is executed.
///
/// `Parallel` silently degrades to `Sequential` when the crate is built
/// without the `parallel` feature.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `f(i)` for every `i` in `0..n`, in index order.
    pub fn map_collect<T, F>(self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Sum of `f(i)` over `0..n` for exact (integer) accumulators.
    pub fn sum_u128<F>(self, n: u64, f: F) -> u128
    where
        F: Fn(u64) -> u128 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).sum();
        }
        (0..n).map(f).sum()
    }

    /// Floating sum of `f(i)` over `0..n`, accumulated in index order.
    pub fn sum_f64<F>(self, n: u64, f: F) -> f64
    where
        F: Fn(u64) -> f64 + Sync + Send,
    {
        self.map_collect(n, f).into_iter().sum()
    }

    pub fn all<F>(self, n: u64, pred: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().all(pred);
        }
        (0..n).all(pred)
    }
}

/// Decode `index` into `len` base-`radix` digits, most significant first.
pub(crate) fn digits(mut index: u64, radix: usize, len: usize, out: &mut [usize]) {
    debug_assert_eq!(out.len(), len);
    let r = radix as u64;
    for slot in out.iter_mut().rev() {
        *slot = (index % r) as usize;
        index /= r;
    }
}

/// Inverse of [`digits`].
pub(crate) fn index_of(digits: &[usize], radix: usize) -> u64 {
    digits
        .iter()
        .fold(0u64, |acc, &d| acc * radix as u64 + d as u64)
}

/// `base^exp` as u128, saturating.
pub(crate) fn pow_u128(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_roundtrip() {
        let mut buf = [0usize; 3];
        for i in 0..27 {
            digits(i, 3, 3, &mut buf);
            assert_eq!(index_of(&buf, 3), i);
        }
        digits(5, 2, 3, &mut buf);
        assert_eq!(buf, [1, 0, 1]);
    }

    #[test]
    fn modes_agree() {
        let f = |i: u64| (i as f64).sqrt();
        let a = Execution::Sequential.sum_f64(10_000, f);
        let b = Execution::Parallel.sum_f64(10_000, f);
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(
            Execution::Sequential.sum_u128(1000, u128::from),
            Execution::Parallel.sum_u128(1000, u128::from)
        );
        assert!(!Execution::Parallel.all(100, |i| i < 99));
    }
}
