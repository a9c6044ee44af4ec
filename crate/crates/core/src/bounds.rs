//! Rate-region outer bound for the diamond network.
//!
//! All rates are normalized by `k log|A|`. Bounds are the limits as the
//! slack terms vanish; the `O(log k / k)` non-singular-code correction is
//! dropped.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::equivalence::{d_vector, scalar_partition, x3_partition};
use crate::majorization::{entropy, entropy_lower_bound, log_base};
use crate::pair_structure::{pair_index_set_with, preimage_count_given_a3, HVector};
use crate::{DemandFunction, Error, Pmf, Result, Side};

pub const LIMIT_NOTE: &str =
    "bounds taken as block length grows: slack terms -> 0, non-singular code correction dropped";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateBoundReport {
    pub a_size: usize,
    pub b_size: usize,
    pub z_size: u32,
    /// Lower bound on `R31 + R32`.
    pub r3_sum_lb: f64,
    pub r1_lb: f64,
    pub r2_lb: f64,
    /// Lower bound on `(R1 + R2) / 2`.
    pub sum_rate_avg_lb: f64,
    pub gamma_1: f64,
    pub gamma_2: f64,
    pub alpha: f64,
    /// Entropy of `f(X1, X2, X3)` in base `z_size`.
    pub h_f: f64,
    pub note: &'static str,
}

fn check_z(z_size: u32) -> Result<()> {
    if z_size < 2 {
        return Err(Error::InvalidParameter(format!("z_size must be >= 2, got {z_size}")));
    }
    Ok(())
}

/// Per-letter lower bound on `H(Z_u | X3^k) / k`, in base `z_size`.
pub fn gamma(f: &DemandFunction, u: Side, z_size: u32) -> Result<f64> {
    check_z(z_size)?;
    let a = f.a_size();
    let sum: f64 = (0..a)
        .map(|a3| entropy_lower_bound(&d_vector(f, u, a3), z_size))
        .sum();
    Ok(sum / a as f64)
}

/// Per-letter lower bound on `H(Z1, Z2 | f, X3^k) / k`, in base `z_size`.
///
/// `P(f = b) P(x3 = a3 | f = b) = |A123(b, a3)| / |A|^3`, so each `(b, a3)`
/// term is weighted by its preimage count.
pub fn alpha(f: &DemandFunction, z_size: u32) -> Result<f64> {
    check_z(z_size)?;
    let a = f.a_size();
    let cube = (a * a * a) as f64;
    let mut sum = 0.0;
    for a3 in 0..a {
        let p1 = scalar_partition(f, Side::One, a3);
        let p2 = scalar_partition(f, Side::Two, a3);
        for b in 0..f.b_size() {
            let count = preimage_count_given_a3(f, b, a3);
            if count == 0 {
                continue;
            }
            let set = pair_index_set_with(f, &p1, &p2, a3, b)?;
            let h = HVector::from_unsorted(set.pairs.iter().map(|p| p.h).collect());
            if h.total != count {
                return Err(Error::Invariant(format!(
                    "h-counts at (a3={a3}, b={b}) sum to {}, preimage has {count}",
                    h.total
                )));
            }
            sum += count as f64 / cube * h.entropy(z_size);
        }
    }
    Ok(sum)
}

/// Lower bound on `R31 + R32`: entropy of the x3 equivalence classes in
/// base `|A|`.
pub fn r3_sum_bound(f: &DemandFunction) -> f64 {
    x3_partition(f).sizes().entropy(f.a_size() as u32)
}

pub fn rate_report(f: &DemandFunction, z_size: u32) -> Result<RateBoundReport> {
    check_z(z_size)?;
    let gamma_1 = gamma(f, Side::One, z_size)?;
    let gamma_2 = gamma(f, Side::Two, z_size)?;
    let alpha = alpha(f, z_size)?;
    let h_f = entropy(&f.function_pmf(), z_size);
    let log_a = log_base(f.a_size() as f64, z_size);
    Ok(RateBoundReport {
        a_size: f.a_size(),
        b_size: f.b_size(),
        z_size,
        r3_sum_lb: r3_sum_bound(f),
        r1_lb: gamma_1 / log_a,
        r2_lb: gamma_2 / log_a,
        sum_rate_avg_lb: (alpha + h_f) / (2.0 * log_a),
        gamma_1,
        gamma_2,
        alpha,
        h_f,
        note: LIMIT_NOTE,
    })
}

/// `h - 2 log_z(h + z)`: lower bound on the expected length of any
/// non-singular code for a source of entropy `h` (base `z`). May be
/// negative.
pub fn ns_code_length_lower_bound(h: f64, z_size: u32) -> f64 {
    h - 2.0 * log_base(h + f64::from(z_size), z_size)
}

/// Expected length of the best non-singular code: the most probable atoms
/// get the `z` strings of length 1, the next `z^2` get length 2, and so on.
/// The empty string is not a codeword.
pub fn best_ns_code_expected_length(p: &Pmf, z_size: u32) -> Result<BigRational> {
    check_z(z_size)?;
    let z = u128::from(z_size);
    let mut len: u64 = 1;
    let mut slots_left: u128 = z;
    let mut slots_at_len: u128 = z;
    let mut acc = BigRational::zero();
    for w in p.sorted_desc() {
        if slots_left == 0 {
            len += 1;
            slots_at_len = slots_at_len.saturating_mul(z);
            slots_left = slots_at_len;
        }
        slots_left -= 1;
        acc += w * BigRational::from_integer(BigInt::from(len));
    }
    Ok(acc)
}
