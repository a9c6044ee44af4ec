//! Joint-label structure for the pair `(Z1, Z2)` given `x3 = a3` and the
//! function value `b`.
//!
//! A class pair `(v, w)` belongs to the pair index set when some
//! `(x1, x2)` in `class_1(v) x class_2(w)` evaluates to `b`. Every member of
//! such a product then evaluates to `b`, so its message count `h` is the
//! product of the two class sizes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::equivalence::{scalar_partition, Partition};
use crate::{DemandFunction, Error, Pmf, Result, Side, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassPair {
    /// Zero-based class index on side 1.
    pub v: usize,
    /// Zero-based class index on side 2.
    pub w: usize,
    pub h: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairIndexSet {
    pub a3: Symbol,
    pub b: Symbol,
    /// Sorted by `(v, w)`.
    pub pairs: Vec<ClassPair>,
}

impl PairIndexSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn h_total(&self) -> u64 {
        self.pairs.iter().map(|p| p.h).sum()
    }
}

/// Message counts of the class pairs, non-increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector {
    pub counts: Vec<u64>,
    pub total: u64,
}

impl HVector {
    pub fn entropy(&self, base: u32) -> f64 {
        crate::majorization::entropy_of_counts(&self.counts, base)
    }

    pub(crate) fn from_unsorted(mut counts: Vec<u64>) -> HVector {
        counts.sort_unstable_by(|a, b| b.cmp(a));
        let total = counts.iter().sum();
        HVector { counts, total }
    }
}

/// Values of `x3` that can produce `b`, ascending.
pub fn a3_support(f: &DemandFunction, b: Symbol) -> Vec<Symbol> {
    (0..f.a_size())
        .filter(|&a3| preimage_count_given_a3(f, b, a3) > 0)
        .collect()
}

/// `|{(x1, x2) : f(x1, x2, a3) = b}|`.
pub fn preimage_count_given_a3(f: &DemandFunction, b: Symbol, a3: Symbol) -> u64 {
    let a = f.a_size();
    let mut n = 0;
    for x1 in 0..a {
        for x2 in 0..a {
            if f.eval(x1, x2, a3) == b {
                n += 1;
            }
        }
    }
    n
}

/// Pair index set built against precomputed partitions.
pub(crate) fn pair_index_set_with(
    f: &DemandFunction,
    p1: &Partition,
    p2: &Partition,
    a3: Symbol,
    b: Symbol,
) -> Result<PairIndexSet> {
    let a = f.a_size();
    let mut seen = BTreeSet::new();
    for x1 in 0..a {
        for x2 in 0..a {
            if f.eval(x1, x2, a3) == b {
                seen.insert((p1.class_of(x1), p2.class_of(x2)));
            }
        }
    }
    if seen.is_empty() {
        return Err(Error::EmptySupport { b, a3 });
    }
    let mut pairs = Vec::with_capacity(seen.len());
    for (v, w) in seen {
        for &x1 in &p1.classes()[v] {
            for &x2 in &p2.classes()[w] {
                let got = f.eval(x1, x2, a3);
                if got != b {
                    return Err(Error::Invariant(format!(
                        "class pair ({v},{w}) at a3={a3} mixes values {b} and {got}"
                    )));
                }
            }
        }
        let h = (p1.class_size(v) * p2.class_size(w)) as u64;
        pairs.push(ClassPair { v, w, h });
    }
    Ok(PairIndexSet { a3, b, pairs })
}

pub fn pair_index_set(f: &DemandFunction, a3: Symbol, b: Symbol) -> Result<PairIndexSet> {
    let p1 = scalar_partition(f, Side::One, a3);
    let p2 = scalar_partition(f, Side::Two, a3);
    pair_index_set_with(f, &p1, &p2, a3, b)
}

pub fn h_vector(f: &DemandFunction, a3: Symbol, b: Symbol) -> Result<HVector> {
    let set = pair_index_set(f, a3, b)?;
    Ok(HVector::from_unsorted(set.pairs.iter().map(|p| p.h).collect()))
}

/// Conditional distribution of `x3` given `f = b`, over [`a3_support`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalPmf {
    pub support: Vec<Symbol>,
    pub pmf: Pmf,
}

impl ConditionalPmf {
    pub fn prob(&self, a3: Symbol) -> Option<&BigRational> {
        self.support
            .iter()
            .position(|&s| s == a3)
            .map(|i| &self.pmf.weights()[i])
    }
}

pub fn a3_conditional_pmf(f: &DemandFunction, b: Symbol) -> Result<ConditionalPmf> {
    let total = f.preimage_count(b);
    if total == 0 {
        return Err(Error::ZeroProbability(b));
    }
    let support = a3_support(f, b);
    let weights = support
        .iter()
        .map(|&a3| {
            BigRational::new(
                BigInt::from(preimage_count_given_a3(f, b, a3)),
                BigInt::from(total),
            )
        })
        .collect();
    Ok(ConditionalPmf {
        support,
        pmf: Pmf::new(weights)?,
    })
}
