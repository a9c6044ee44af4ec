//! Exact probability mass functions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact non-negative rational weights summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pmf {
    weights: Vec<BigRational>,
}

impl Pmf {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter("pmf must have at least one atom".into()));
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidParameter("pmf weights must be non-negative".into()));
        }
        let total: BigRational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!(
                "pmf weights sum to {total}, expected 1"
            )));
        }
        Ok(Pmf { weights })
    }

    /// Normalizes non-negative integer counts; at least one count must be positive.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u128 = counts.iter().map(|&c| u128::from(c)).sum();
        if total == 0 {
            return Err(Error::InvalidParameter("all counts are zero".into()));
        }
        let denom = BigInt::from(total);
        let weights = counts
            .iter()
            .map(|&c| BigRational::new(BigInt::from(c), denom.clone()))
            .collect();
        Ok(Pmf { weights })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Pmf::from_counts(&vec![1; n])
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.weights.iter().filter(|w| !w.is_zero()).count()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.weights.iter().map(ratio_to_f64).collect()
    }

    /// Weights sorted non-increasing.
    pub fn sorted_desc(&self) -> Vec<BigRational> {
        let mut w = self.weights.clone();
        w.sort_by(|a, b| b.cmp(a));
        w
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for magnitudes outside f64 range in either part.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}
