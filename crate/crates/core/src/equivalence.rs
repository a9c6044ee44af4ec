//! Equivalence partitions of the message alphabet induced by a demand
//! function.
//!
//! For a fixed `x3 = a3`, two values of `x_u` are equivalent when the slice
//! `f(., ., a3)` cannot tell them apart for any value of the other relay's
//! message. Classes are ordered by size, largest first, with ties broken
//! by the smallest member.

use std::collections::BTreeMap;
use std::fmt;

use crate::exec::pow_u128;
use crate::{DemandFunction, Error, Result, Symbol};

/// Which relay message a partition refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::One, Side::Two];

    pub fn index(self) -> usize {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }

    pub fn from_index(u: usize) -> Option<Side> {
        match u {
            1 => Some(Side::One),
            2 => Some(Side::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Ordered set of disjoint classes covering `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<Symbol>>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Groups `0..n` by `key`, then orders classes by (size desc, min member asc).
    pub fn from_keys<K: Ord>(n: usize, key: impl Fn(Symbol) -> K) -> Partition {
        let mut groups: BTreeMap<K, Vec<Symbol>> = BTreeMap::new();
        for x in 0..n {
            groups.entry(key(x)).or_default().push(x);
        }
        let mut classes: Vec<Vec<Symbol>> = groups.into_values().collect();
        // members are pushed in increasing order, so c[0] is the minimum
        classes.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let mut class_of = vec![0; n];
        for (j, class) in classes.iter().enumerate() {
            for &x in class {
                class_of[x] = j;
            }
        }
        Partition { classes, class_of }
    }

    pub fn classes(&self) -> &[Vec<Symbol>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Zero-based index of the class containing `x`.
    pub fn class_of(&self, x: Symbol) -> usize {
        self.class_of[x]
    }

    pub fn class_size(&self, j: usize) -> usize {
        self.classes[j].len()
    }

    pub fn universe(&self) -> usize {
        self.class_of.len()
    }

    pub fn sizes(&self) -> ClassSizeVector {
        ClassSizeVector {
            sizes: self.classes.iter().map(|c| c.len() as u64).collect(),
            alphabet_total: self.universe() as u64,
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, class) in self.classes.iter().enumerate() {
            if j > 0 {
                f.write_str(" ∪ ")?;
            }
            f.write_str("{")?;
            for (i, x) in class.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Class sizes, non-increasing. Zero padding is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSizeVector {
    pub sizes: Vec<u64>,
    pub alphabet_total: u64,
}

impl ClassSizeVector {
    /// Entropy of `sizes / alphabet_total` in the given base.
    pub fn entropy(&self, base: u32) -> f64 {
        crate::majorization::entropy_of_counts(&self.sizes, base)
    }
}

/// Partition of `A` under `a3`-equivalence for side `u`.
pub fn scalar_partition(f: &DemandFunction, u: Side, a3: Symbol) -> Partition {
    assert!(a3 < f.a_size(), "a3 out of range");
    let a = f.a_size();
    Partition::from_keys(a, |x| {
        (0..a)
            .map(|other| f.eval_side(u, x, other, a3))
            .collect::<Vec<_>>()
    })
}

/// Number of classes `V_u(a3)`.
pub fn v_count(f: &DemandFunction, u: Side, a3: Symbol) -> usize {
    scalar_partition(f, u, a3).len()
}

pub fn d_vector(f: &DemandFunction, u: Side, a3: Symbol) -> ClassSizeVector {
    scalar_partition(f, u, a3).sizes()
}

/// Partition of `A` where `x3 ~ x3'` iff the slices `f(., ., x3)` and
/// `f(., ., x3')` coincide.
pub fn x3_partition(f: &DemandFunction) -> Partition {
    let a = f.a_size();
    Partition::from_keys(a, |x3| {
        let mut key = Vec::with_capacity(a * a);
        for x1 in 0..a {
            for x2 in 0..a {
                key.push(f.eval(x1, x2, x3));
            }
        }
        key
    })
}

/// Sorted class sizes of the block partition of `A^k` for `a3_vec`.
///
/// Block classes are cartesian products of per-component classes, so the
/// sizes are all k-fold products of per-component sizes. `cap` bounds the
/// number of block classes materialized.
pub fn block_d_vector(
    f: &DemandFunction,
    u: Side,
    a3_vec: &[Symbol],
    cap: u64,
) -> Result<ClassSizeVector> {
    if a3_vec.is_empty() {
        return Err(Error::InvalidParameter("block length must be >= 1".into()));
    }
    if let Some(&bad) = a3_vec.iter().find(|&&s| s >= f.a_size()) {
        return Err(Error::InvalidParameter(format!("a3 component {bad} out of range")));
    }
    let per_component: Vec<ClassSizeVector> =
        a3_vec.iter().map(|&a3| d_vector(f, u, a3)).collect();
    let count: u128 = per_component
        .iter()
        .map(|d| d.sizes.len() as u128)
        .product();
    Error::check_cap("block class count", count, cap)?;

    let mut sizes: Vec<u64> = vec![1];
    for d in &per_component {
        sizes = sizes
            .iter()
            .flat_map(|&s| d.sizes.iter().map(move |&t| s * t))
            .collect();
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let total = pow_u128(f.a_size(), a3_vec.len());
    Ok(ClassSizeVector {
        sizes,
        alphabet_total: u64::try_from(total)
            .map_err(|_| Error::InvalidParameter("block alphabet exceeds u64".into()))?,
    })
}
