//! Exact majorization checks and entropy in arbitrary bases.
//!
//! Prefix sums are compared in exact rational arithmetic; the logarithm in
//! the entropy is the only floating-point step.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::equivalence::ClassSizeVector;
use crate::pmf::ratio_to_f64;
use crate::{Error, Pmf, Result};

/// Non-negative rational vector with at least one positive entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    entries: Vec<BigRational>,
}

impl WeightVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.iter().any(Signed::is_negative) {
            return Err(Error::InvalidParameter("weights must be non-negative".into()));
        }
        if !entries.iter().any(Signed::is_positive) {
            return Err(Error::InvalidParameter("weights need a positive entry".into()));
        }
        Ok(WeightVector { entries })
    }

    pub fn from_integers(values: &[u64]) -> Result<Self> {
        WeightVector::new(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Descending prefix sums, zero-padded to `len`.
    fn prefix_sums(&self, len: usize) -> Vec<BigRational> {
        let mut sorted = self.entries.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        sorted.resize(len, BigRational::zero());
        let mut acc = BigRational::zero();
        sorted
            .into_iter()
            .map(|x| {
                acc += x;
                acc.clone()
            })
            .collect()
    }
}

impl From<&Pmf> for WeightVector {
    fn from(p: &Pmf) -> Self {
        WeightVector {
            entries: p.weights().to_vec(),
        }
    }
}

/// `p ≺ q`: every descending prefix sum of `p` is at most that of `q`, and
/// the totals are equal. The shorter vector is zero-padded.
pub fn is_majorized(p: &WeightVector, q: &WeightVector) -> bool {
    let len = p.entries.len().max(q.entries.len());
    let ps = p.prefix_sums(len);
    let qs = q.prefix_sums(len);
    ps.last() == qs.last() && ps.iter().zip(&qs).all(|(a, b)| a <= b)
}

/// Shannon entropy of `p` in base `base`, with `0 log 0 = 0`.
pub fn entropy(p: &Pmf, base: u32) -> f64 {
    assert!(base >= 2, "entropy base must be >= 2");
    let ln_base = f64::from(base).ln();
    p.weights()
        .iter()
        .filter(|w| !w.is_zero())
        .map(|w| {
            let x = ratio_to_f64(w);
            -x * x.ln()
        })
        .sum::<f64>()
        / ln_base
}

/// Entropy of `counts / sum(counts)` in base `base`.
pub fn entropy_of_counts(counts: &[u64], base: u32) -> f64 {
    assert!(base >= 2, "entropy base must be >= 2");
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let t = total as f64;
    let ln_t = t.ln();
    let nats: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let c = c as f64;
            (c / t) * (ln_t - c.ln())
        })
        .sum();
    nats / f64::from(base).ln()
}

/// Minimum entropy over all pmfs majorized by `d / total`, which is the
/// entropy of `d / total` itself.
pub fn entropy_lower_bound(d: &ClassSizeVector, base: u32) -> f64 {
    debug_assert_eq!(d.sizes.iter().sum::<u64>(), d.alphabet_total);
    entropy_of_counts(&d.sizes, base)
}

/// `log_base(x)`.
pub fn log_base(x: f64, base: u32) -> f64 {
    x.ln() / f64::from(base).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn wv(v: &[(i64, i64)]) -> WeightVector {
        WeightVector::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn majorization_examples() {
        assert!(is_majorized(&wv(&[(1, 2), (1, 2)]), &wv(&[(1, 4), (3, 4)])));
        assert!(!is_majorized(&wv(&[(1, 4), (3, 4)]), &wv(&[(1, 2), (1, 2)])));
        let p = wv(&[(1, 7), (4, 7), (2, 7)]);
        assert!(is_majorized(&p, &p));
        assert!(!is_majorized(&wv(&[(7, 10), (3, 10)]), &wv(&[(6, 10), (4, 10)])));
    }

    #[test]
    fn majorization_pads_and_checks_totals() {
        // (1/3,1/3,1/3) ≺ (2/3,1/3)
        assert!(is_majorized(&wv(&[(1, 3), (1, 3), (1, 3)]), &wv(&[(2, 3), (1, 3)])));
        assert!(!is_majorized(&wv(&[(1, 3), (1, 3)]), &wv(&[(2, 3), (1, 3)])));
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![q(0, 1)]).is_err());
        assert!(WeightVector::new(vec![q(-1, 2), q(1, 1)]).is_err());
    }

    #[test]
    fn entropy_examples() {
        let h = entropy(&Pmf::from_counts(&[1, 1]).unwrap(), 2);
        assert!((h - 1.0).abs() < 1e-15);
        let h = entropy(&Pmf::from_counts(&[1, 2, 1]).unwrap(), 2);
        assert!((h - 1.5).abs() < 1e-15);
        let h = entropy(&Pmf::from_counts(&[2, 1]).unwrap(), 3);
        let expected = 1.0 - (2.0 / 3.0) * 2f64.ln() / 3f64.ln();
        assert!((h - expected).abs() < 1e-14);
        assert!((h - 0.57938).abs() < 1e-5);
    }

    #[test]
    fn entropy_zero_atoms_ignored() {
        let a = entropy(&Pmf::from_counts(&[3, 0, 1]).unwrap(), 2);
        let b = entropy(&Pmf::from_counts(&[3, 1]).unwrap(), 2);
        assert_eq!(a, b);
        assert_eq!(entropy(&Pmf::from_counts(&[5]).unwrap(), 2), 0.0);
    }

    #[test]
    fn lower_bound_examples() {
        let d = ClassSizeVector { sizes: vec![2, 1], alphabet_total: 3 };
        let expected = 1.0 - (2.0 / 3.0) * log_base(2.0, 3);
        assert!((entropy_lower_bound(&d, 3) - expected).abs() < 1e-14);

        let d = ClassSizeVector { sizes: vec![1; 5], alphabet_total: 5 };
        assert!((entropy_lower_bound(&d, 5) - 1.0).abs() < 1e-14);

        let d = ClassSizeVector { sizes: vec![4, 2, 2, 1], alphabet_total: 9 };
        let expected = (4.0 / 9.0) * (9.0f64 / 4.0).log2()
            + (4.0 / 9.0) * (9.0f64 / 2.0).log2()
            + (1.0 / 9.0) * 9.0f64.log2();
        assert!((entropy_lower_bound(&d, 2) - expected).abs() < 1e-14);
        // two independent (2/3, 1/3) components
        assert!((expected - 2.0 * entropy(&Pmf::from_counts(&[2, 1]).unwrap(), 2)).abs() < 1e-14);
        assert!((expected - 1.836592).abs() < 1e-6);
    }
}
