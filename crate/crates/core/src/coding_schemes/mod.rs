//! Executable variable-length source-network codes.
//!
//! A code is four encoders and a decoder over strings of `z_size`-ary
//! symbols. [`check_zero_error`] and [`expected_lengths`] sweep the full
//! message space; codes too large for that can supply a structural
//! correctness argument and closed-form lengths instead.

mod arith;
mod gf2;
pub mod huffman;
mod identity;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

pub use arith::{arith_scheme, ArithScheme};
pub use gf2::{gf2_scheme, Gf2Scheme};
pub use huffman::{huffman_expected_length, HuffmanCode};
pub use identity::{identity_forwarding, IdentityForwarding};

use crate::bounds::ns_code_length_lower_bound;
use crate::exec::{digits, pow_u128};
use crate::majorization::entropy_of_counts;
use crate::pmf::ratio_to_f64;
use crate::{DemandFunction, Error, Execution, Result, Symbol};

/// A string over `{0, .., z_size - 1}`.
pub type Codeword = Vec<u8>;

/// Encoders `(enc_31, enc_32, enc_1, enc_2)` and decoder of a source-network
/// code with block length `k`.
pub trait SourceNetworkCode: Sync {
    fn name(&self) -> &str;
    fn k(&self) -> usize;
    fn z_size(&self) -> u32;
    fn a_size(&self) -> usize;

    fn enc_31(&self, x3: &[Symbol]) -> Codeword;
    fn enc_32(&self, x3: &[Symbol]) -> Codeword;
    fn enc_1(&self, x1: &[Symbol], z31: &[u8]) -> Codeword;
    fn enc_2(&self, x2: &[Symbol], z32: &[u8]) -> Codeword;
    /// `None` if the pair is not a valid codeword pair.
    fn dec(&self, z1: &[u8], z2: &[u8]) -> Option<Vec<Symbol>>;

    /// Exact expected lengths `(Z31, Z32, Z1, Z2)` when known analytically.
    fn closed_form_lengths(&self) -> Option<[BigRational; 4]> {
        None
    }

    /// Zero-error argument that does not enumerate all message tuples.
    fn structural_check(&self, _f: &DemandFunction, _exec: Execution) -> Option<Result<bool>> {
        None
    }
}

/// Runs the full code on one message tuple.
pub fn run_code<C: SourceNetworkCode + ?Sized>(
    code: &C,
    x1: &[Symbol],
    x2: &[Symbol],
    x3: &[Symbol],
) -> Option<Vec<Symbol>> {
    let z1 = code.enc_1(x1, &code.enc_31(x3));
    let z2 = code.enc_2(x2, &code.enc_32(x3));
    code.dec(&z1, &z2)
}

fn check_shape<C: SourceNetworkCode + ?Sized>(code: &C, f: &DemandFunction) -> Result<()> {
    if code.a_size() != f.a_size() {
        return Err(Error::InvalidParameter(format!(
            "code alphabet {} does not match demand function alphabet {}",
            code.a_size(),
            f.a_size()
        )));
    }
    Ok(())
}

fn block(index: u64, a: usize, k: usize) -> Vec<Symbol> {
    let mut v = vec![0; k];
    digits(index, a, k, &mut v);
    v
}

/// True iff the decoder returns `f^k` on every message tuple.
pub fn check_zero_error<C: SourceNetworkCode + ?Sized>(
    code: &C,
    f: &DemandFunction,
    cap: u64,
    exec: Execution,
) -> Result<bool> {
    check_shape(code, f)?;
    let (a, k) = (f.a_size(), code.k());
    Error::check_cap("zero-error sweep", pow_u128(a, 3 * k), cap)?;
    let n = pow_u128(a, k) as u64;
    let blocks: Vec<Vec<Symbol>> = (0..n).map(|i| block(i, a, k)).collect();
    Ok(exec.all(n, |i3| {
        let x3 = &blocks[i3 as usize];
        let (z31, z32) = (code.enc_31(x3), code.enc_32(x3));
        let z1s: Vec<Codeword> = blocks.iter().map(|x1| code.enc_1(x1, &z31)).collect();
        let z2s: Vec<Codeword> = blocks.iter().map(|x2| code.enc_2(x2, &z32)).collect();
        blocks.iter().zip(&z1s).all(|(x1, z1)| {
            blocks.iter().zip(&z2s).all(|(x2, z2)| {
                code.dec(z1, z2).as_deref() == Some(f.eval_block(x1, x2, x3).as_slice())
            })
        })
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationMethod {
    Exhaustive,
    Structural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroErrorVerdict {
    pub zero_error: bool,
    pub method: VerificationMethod,
}

/// Exhaustive check when the sweep fits in `cap`, otherwise the code's
/// structural check.
pub fn verify_zero_error<C: SourceNetworkCode + ?Sized>(
    code: &C,
    f: &DemandFunction,
    cap: u64,
    exec: Execution,
) -> Result<ZeroErrorVerdict> {
    match check_zero_error(code, f, cap, exec) {
        Ok(zero_error) => Ok(ZeroErrorVerdict {
            zero_error,
            method: VerificationMethod::Exhaustive,
        }),
        Err(cap_err @ Error::ResourceCap { .. }) => match code.structural_check(f, exec) {
            Some(r) => Ok(ZeroErrorVerdict {
                zero_error: r?,
                method: VerificationMethod::Structural,
            }),
            None => Err(cap_err),
        },
        Err(e) => Err(e),
    }
}

fn ratio_str<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthMethod {
    Exhaustive,
    ClosedForm,
}

/// Expected per-edge codeword lengths under uniform i.i.d. messages.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedLengthReport {
    pub scheme: String,
    pub k: usize,
    pub a_size: usize,
    pub z_size: u32,
    #[serde(serialize_with = "ratio_str")]
    pub e_len_31: BigRational,
    #[serde(serialize_with = "ratio_str")]
    pub e_len_32: BigRational,
    #[serde(serialize_with = "ratio_str")]
    pub e_len_1: BigRational,
    #[serde(serialize_with = "ratio_str")]
    pub e_len_2: BigRational,
    pub r31: f64,
    pub r32: f64,
    pub r1: f64,
    pub r2: f64,
    /// `k log|A| / (log|Z| max_e E l(Z_e))`; `None` if every edge is empty.
    pub computation_rate: Option<f64>,
    pub method: LengthMethod,
}

impl ExpectedLengthReport {
    fn new<C: SourceNetworkCode + ?Sized>(
        code: &C,
        lens: [BigRational; 4],
        method: LengthMethod,
    ) -> Self {
        let (z, a) = (code.z_size(), code.a_size());
        let k = BigRational::from_integer(BigInt::from(code.k()));
        let rate = |l: &BigRational| {
            let per_letter = ratio_to_f64(&(l / &k));
            if z as usize == a {
                per_letter
            } else {
                per_letter * f64::from(z).ln() / (a as f64).ln()
            }
        };
        let max = lens.iter().max().expect("four edges");
        let computation_rate = (!max.is_zero()).then(|| 1.0 / rate(max));
        let [e31, e32, e1, e2] = lens;
        ExpectedLengthReport {
            scheme: code.name().to_string(),
            k: code.k(),
            a_size: code.a_size(),
            z_size: code.z_size(),
            r31: rate(&e31),
            r32: rate(&e32),
            r1: rate(&e1),
            r2: rate(&e2),
            e_len_31: e31,
            e_len_32: e32,
            e_len_1: e1,
            e_len_2: e2,
            computation_rate,
            method,
        }
    }

    pub fn lengths(&self) -> [&BigRational; 4] {
        [&self.e_len_31, &self.e_len_32, &self.e_len_1, &self.e_len_2]
    }

    pub fn rates(&self) -> [f64; 4] {
        [self.r31, self.r32, self.r1, self.r2]
    }
}

/// Multiplicity of every distinct codeword on each edge `(Z31, Z32, Z1, Z2)`,
/// counted over `A^k` for the relay-3 edges and `A^k x A^k` for the others.
pub fn codeword_counts<C: SourceNetworkCode + ?Sized>(
    code: &C,
    cap: u64,
    exec: Execution,
) -> Result<[HashMap<Codeword, u64>; 4]> {
    let (a, k) = (code.a_size(), code.k());
    Error::check_cap("codeword sweep", pow_u128(a, 2 * k), cap)?;
    let n = pow_u128(a, k) as u64;
    let blocks: Vec<Vec<Symbol>> = (0..n).map(|i| block(i, a, k)).collect();
    let per_x3 = exec.map_collect(n, |i3| {
        let x3 = &blocks[i3 as usize];
        let (z31, z32) = (code.enc_31(x3), code.enc_32(x3));
        let mut m1: HashMap<Codeword, u64> = HashMap::new();
        let mut m2: HashMap<Codeword, u64> = HashMap::new();
        for x in &blocks {
            *m1.entry(code.enc_1(x, &z31)).or_default() += 1;
            *m2.entry(code.enc_2(x, &z32)).or_default() += 1;
        }
        (z31, z32, m1, m2)
    });
    let mut out: [HashMap<Codeword, u64>; 4] = Default::default();
    for (z31, z32, m1, m2) in per_x3 {
        *out[0].entry(z31).or_default() += 1;
        *out[1].entry(z32).or_default() += 1;
        for (edge, m) in [(2, m1), (3, m2)] {
            for (c, n) in m {
                *out[edge].entry(c).or_default() += n;
            }
        }
    }
    Ok(out)
}

/// Exact expected lengths. Sweeps the message space when it fits in `cap`
/// and falls back to the code's closed form otherwise.
pub fn expected_lengths<C: SourceNetworkCode + ?Sized>(
    code: &C,
    f: &DemandFunction,
    cap: u64,
    exec: Execution,
) -> Result<ExpectedLengthReport> {
    check_shape(code, f)?;
    match codeword_counts(code, cap, exec) {
        Ok(counts) => {
            let n = pow_u128(code.a_size(), code.k());
            let lens = counts.map(|m| {
                let total: u128 = m.values().map(|&c| c as u128).sum();
                let weighted: u128 = m.iter().map(|(c, &n)| c.len() as u128 * n as u128).sum();
                debug_assert!(total == n || total == n * n);
                BigRational::new(BigInt::from(weighted), BigInt::from(total))
            });
            Ok(ExpectedLengthReport::new(code, lens, LengthMethod::Exhaustive))
        }
        Err(cap_err @ Error::ResourceCap { .. }) => match code.closed_form_lengths() {
            Some(lens) => Ok(ExpectedLengthReport::new(code, lens, LengthMethod::ClosedForm)),
            None => Err(cap_err),
        },
        Err(e) => Err(e),
    }
}

/// Per-edge codeword entropy (base `z_size`) next to the non-singular code
/// lower bound it implies and the actual expected length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeLengthCheck {
    pub entropy: f64,
    pub lower_bound: f64,
    pub expected_length: f64,
}

impl EdgeLengthCheck {
    pub fn holds(&self) -> bool {
        self.expected_length + 1e-12 >= self.lower_bound
    }
}

/// Compares each edge's expected length with the lower bound derived from
/// the entropy of its exact codeword distribution.
pub fn edge_length_checks<C: SourceNetworkCode + ?Sized>(
    code: &C,
    cap: u64,
    exec: Execution,
) -> Result<[EdgeLengthCheck; 4]> {
    let z = code.z_size();
    let counts = codeword_counts(code, cap, exec)?;
    Ok(counts.map(|m| {
        let mut entries: Vec<(&Codeword, &u64)> = m.iter().collect();
        entries.sort();
        let cs: Vec<u64> = entries.iter().map(|(_, &c)| c).collect();
        let total: u64 = cs.iter().sum();
        let weighted: u64 = entries.iter().map(|(w, &c)| w.len() as u64 * c).sum();
        let entropy = entropy_of_counts(&cs, z);
        EdgeLengthCheck {
            entropy,
            lower_bound: ns_code_length_lower_bound(entropy, z),
            expected_length: weighted as f64 / total as f64,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const CAP: u64 = 10_000_000;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_is_zero_error_with_concatenation_lengths() {
        for (_, f) in fixtures::all() {
            for k in 1..=2 {
                let code = identity_forwarding(&f, k).unwrap();
                assert!(check_zero_error(&code, &f, CAP, Execution::Parallel).unwrap());
                let r = expected_lengths(&code, &f, CAP, Execution::Parallel).unwrap();
                let k = k as i64;
                assert_eq!(r.lengths(), [&q(k, 1), &q(k, 1), &q(2 * k, 1), &q(2 * k, 1)]);
            }
        }
    }

    #[test]
    fn gf2_rates_and_zero_error() {
        let f = fixtures::gf2_sum();
        let code = gf2_scheme(4, 2).unwrap();
        assert!(check_zero_error(&code, &f, CAP, Execution::Parallel).unwrap());
        let r = expected_lengths(&code, &f, CAP, Execution::Sequential).unwrap();
        assert_eq!(r.rates(), [0.5, 0.5, 1.0, 1.0]);
        assert_eq!(r.computation_rate, Some(1.0));
        assert!(!check_zero_error(&code, &fixtures::arithmetic_sum(), CAP, Execution::Parallel).unwrap());
    }

    #[test]
    fn alphabet_mismatch_rejected() {
        let code = gf2_scheme(1, 0).unwrap();
        assert!(check_zero_error(&code, &fixtures::gf3(), CAP, Execution::Parallel).is_err());
    }

    #[test]
    fn cap_errors_and_fallbacks() {
        let f = fixtures::gf2_sum();
        let code = gf2_scheme(8, 3).unwrap();
        assert!(matches!(
            check_zero_error(&code, &f, 1000, Execution::Parallel),
            Err(Error::ResourceCap { .. })
        ));
        let v = verify_zero_error(&code, &f, 1000, Execution::Parallel).unwrap();
        assert_eq!(v, ZeroErrorVerdict { zero_error: true, method: VerificationMethod::Structural });
        let r = expected_lengths(&code, &f, 1000, Execution::Parallel).unwrap();
        assert_eq!(r.method, LengthMethod::ClosedForm);
        assert_eq!(r.e_len_31, q(3, 1));

        let id = identity_forwarding(&f, 8).unwrap();
        assert!(matches!(
            verify_zero_error(&id, &f, 1000, Execution::Parallel),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn non_singular_bound_holds_on_every_edge() {
        let f = fixtures::arithmetic_sum();
        for k in [2, 4] {
            for check in edge_length_checks(&arith_scheme(k, CAP).unwrap(), CAP, Execution::Parallel).unwrap() {
                assert!(check.holds(), "{check:?}");
            }
        }
        for check in edge_length_checks(&identity_forwarding(&f, 2).unwrap(), CAP, Execution::Parallel).unwrap() {
            assert!(check.holds());
        }
    }
}
