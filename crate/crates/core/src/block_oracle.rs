//! Brute-force k-block verification.
//!
//! The closed-form bounds work per letter. This module recomputes them
//! literally over blocks of length k, building block classes either as
//! products of per-letter classes or directly from the definition over
//! `A^k`. The two routes are kept separate so one can check the other.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds;
use crate::equivalence::{block_d_vector, v_count, Partition};
use crate::exec::{digits, index_of, pow_u128};
use crate::pair_structure::{h_vector, preimage_count_given_a3, HVector};
use crate::{DemandFunction, Error, Execution, Result, Side, Symbol};

pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub k: usize,
    pub enumeration_cap: u64,
    pub z_size: u32,
    pub execution: Execution,
}

impl OracleConfig {
    pub fn new(k: usize) -> Self {
        OracleConfig {
            k,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("block length k must be >= 1".into()));
        }
        if self.z_size < 2 {
            return Err(Error::InvalidParameter("z_size must be >= 2".into()));
        }
        Ok(())
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            k: 2,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            z_size: 2,
            execution: Execution::default(),
        }
    }
}

/// `sum over a3 in A^k of |A|^-k H(d_u(a3) / |A|^k)`, divided by k.
pub fn gamma_block(f: &DemandFunction, u: Side, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let (a, k) = (f.a_size(), cfg.k);
    // each a3 materializes up to |A|^k block classes
    Error::check_cap("gamma_block sweep", pow_u128(a, 2 * k), cfg.enumeration_cap)?;
    let n = pow_u128(a, k) as u64;
    let cap = cfg.enumeration_cap;
    let terms = cfg.execution.map_collect(n, |idx| {
        let mut a3 = vec![0; k];
        digits(idx, a, k, &mut a3);
        block_d_vector(f, u, &a3, cap).map(|d| d.entropy(cfg.z_size))
    });
    let mut sum = 0.0;
    for t in terms {
        sum += t?;
    }
    Ok(sum / n as f64 / k as f64)
}

/// Per-letter scalar data used by the product route.
struct ScalarTables {
    /// `count[b][a3] = |A123(b, a3)|`
    count: Vec<Vec<u64>>,
    /// `h[b][a3]`, present iff `count > 0`
    h: Vec<Vec<Option<HVector>>>,
    preimage: Vec<u64>,
}

impl ScalarTables {
    fn new(f: &DemandFunction) -> Result<Self> {
        let (a, bs) = (f.a_size(), f.b_size());
        let mut count = vec![vec![0; a]; bs];
        let mut h = vec![vec![None; a]; bs];
        for b in 0..bs {
            for a3 in 0..a {
                count[b][a3] = preimage_count_given_a3(f, b, a3);
                if count[b][a3] > 0 {
                    h[b][a3] = Some(h_vector(f, a3, b)?);
                }
            }
        }
        Ok(ScalarTables {
            count,
            h,
            preimage: f.preimage_counts(),
        })
    }
}

fn multiset_product(parts: &[&[u64]]) -> Vec<u64> {
    let mut acc = vec![1u64];
    for part in parts {
        acc = acc
            .iter()
            .flat_map(|&x| part.iter().map(move |&y| x * y))
            .collect();
    }
    acc.sort_unstable_by(|a, b| b.cmp(a));
    acc
}

/// Block h-vector as the product of per-letter h-vectors.
pub fn block_h_vector_product(
    f: &DemandFunction,
    b_vec: &[Symbol],
    a3_vec: &[Symbol],
) -> Result<HVector> {
    check_block_args(f, b_vec, a3_vec)?;
    let mut parts = Vec::with_capacity(b_vec.len());
    for (&b, &a3) in b_vec.iter().zip(a3_vec) {
        parts.push(h_vector(f, a3, b)?);
    }
    let refs: Vec<&[u64]> = parts.iter().map(|h| h.counts.as_slice()).collect();
    Ok(HVector::from_unsorted(multiset_product(&refs)))
}

fn check_block_args(f: &DemandFunction, b_vec: &[Symbol], a3_vec: &[Symbol]) -> Result<()> {
    if b_vec.is_empty() || b_vec.len() != a3_vec.len() {
        return Err(Error::InvalidParameter(
            "b and a3 blocks must be non-empty and of equal length".into(),
        ));
    }
    if b_vec.iter().any(|&b| b >= f.b_size()) || a3_vec.iter().any(|&s| s >= f.a_size()) {
        return Err(Error::InvalidParameter("block symbol out of range".into()));
    }
    Ok(())
}

/// Partition of `A^k` (vectors encoded as base-|A| indices) under block
/// equivalence for side `u`, computed from the definition: `x ~ y` iff
/// `f^k(x, v, a3) = f^k(y, v, a3)` for every `v` in `A^k`.
pub fn block_partition_direct(f: &DemandFunction, u: Side, a3_vec: &[Symbol]) -> Partition {
    let (a, k) = (f.a_size(), a3_vec.len());
    let n = pow_u128(a, k) as usize;
    let vectors: Vec<Vec<Symbol>> = (0..n as u64)
        .map(|i| {
            let mut v = vec![0; k];
            digits(i, a, k, &mut v);
            v
        })
        .collect();
    Partition::from_keys(n, |x| {
        let xv = &vectors[x];
        let mut key = Vec::with_capacity(n * k);
        for other in &vectors {
            for i in 0..k {
                key.push(f.eval_side(u, xv[i], other[i], a3_vec[i]));
            }
        }
        key
    })
}

/// Block h-vector by direct enumeration of `(x1, x2)` in `A^k x A^k`.
pub fn block_h_vector_direct(
    f: &DemandFunction,
    b_vec: &[Symbol],
    a3_vec: &[Symbol],
) -> Result<HVector> {
    check_block_args(f, b_vec, a3_vec)?;
    let p1 = block_partition_direct(f, Side::One, a3_vec);
    let p2 = block_partition_direct(f, Side::Two, a3_vec);
    let counts = pair_counts_direct(f, &p1, &p2, a3_vec);
    let b_idx = index_of(b_vec, f.b_size());
    let h: Vec<u64> = counts
        .into_iter()
        .filter(|((b, _, _), _)| *b == b_idx)
        .map(|(_, c)| c)
        .collect();
    if h.is_empty() {
        let pos = (0..b_vec.len())
            .find(|&i| preimage_count_given_a3(f, b_vec[i], a3_vec[i]) == 0)
            .unwrap_or(0);
        return Err(Error::EmptySupport {
            b: b_vec[pos],
            a3: a3_vec[pos],
        });
    }
    Ok(HVector::from_unsorted(h))
}

/// `(b index, class_1, class_2) -> message count` over all `(x1, x2)`.
fn pair_counts_direct(
    f: &DemandFunction,
    p1: &Partition,
    p2: &Partition,
    a3_vec: &[Symbol],
) -> BTreeMap<(u64, usize, usize), u64> {
    let (a, k) = (f.a_size(), a3_vec.len());
    let n = p1.universe() as u64;
    let mut x1 = vec![0; k];
    let mut x2 = vec![0; k];
    let mut counts = BTreeMap::new();
    for i in 0..n {
        digits(i, a, k, &mut x1);
        for j in 0..n {
            digits(j, a, k, &mut x2);
            let b = f.eval_block(&x1, &x2, a3_vec);
            let key = (
                index_of(&b, f.b_size()),
                p1.class_of(i as usize),
                p2.class_of(j as usize),
            );
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    counts
}

/// Product-form and directly enumerated block h-vectors agree.
pub fn h_block_check(f: &DemandFunction, b_vec: &[Symbol], a3_vec: &[Symbol]) -> Result<bool> {
    if b_vec.len() > 3 {
        return Err(Error::InvalidParameter("h_block_check supports k <= 3".into()));
    }
    Ok(block_h_vector_product(f, b_vec, a3_vec)? == block_h_vector_direct(f, b_vec, a3_vec)?)
}

/// `alpha` over blocks, with block h-vectors built as per-letter products.
pub fn alpha_block(f: &DemandFunction, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let (a, bs, k) = (f.a_size(), f.b_size(), cfg.k);
    Error::check_cap(
        "alpha_block sweep",
        pow_u128(bs, k).saturating_mul(pow_u128(a, k)),
        cfg.enumeration_cap,
    )?;
    let tables = ScalarTables::new(f)?;
    let cube_k = pow_u128(a, 3 * k) as f64;
    let n_b = pow_u128(bs, k) as u64;
    let z = cfg.z_size;
    let sum = cfg.execution.sum_f64(n_b, |b_idx| {
        let mut b = vec![0; k];
        digits(b_idx, bs, k, &mut b);
        if b.iter().any(|&bi| tables.preimage[bi] == 0) {
            return 0.0;
        }
        let supports: Vec<Vec<Symbol>> = b
            .iter()
            .map(|&bi| (0..a).filter(|&a3| tables.count[bi][a3] > 0).collect())
            .collect();
        let mut total = 0.0;
        for_each_in_product(&supports, |a3| {
            let weight: f64 = b
                .iter()
                .zip(a3)
                .map(|(&bi, &ai)| tables.count[bi][ai] as f64)
                .product();
            let parts: Vec<&[u64]> = b
                .iter()
                .zip(a3)
                .map(|(&bi, &ai)| tables.h[bi][ai].as_ref().expect("in support").counts.as_slice())
                .collect();
            let h = multiset_product(&parts);
            total += weight / cube_k * crate::majorization::entropy_of_counts(&h, z);
        });
        total
    });
    Ok(sum / k as f64)
}

/// `alpha` over blocks from first principles: block classes from
/// [`block_partition_direct`], h-counts by enumerating every message tuple.
pub fn alpha_block_direct(f: &DemandFunction, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let (a, k) = (f.a_size(), cfg.k);
    Error::check_cap("alpha_block_direct sweep", pow_u128(a, 3 * k), cfg.enumeration_cap)?;
    let cube_k = pow_u128(a, 3 * k) as f64;
    let n = pow_u128(a, k) as u64;
    let z = cfg.z_size;
    let sum = cfg.execution.sum_f64(n, |idx| {
        let mut a3 = vec![0; k];
        digits(idx, a, k, &mut a3);
        let p1 = block_partition_direct(f, Side::One, &a3);
        let p2 = block_partition_direct(f, Side::Two, &a3);
        let counts = pair_counts_direct(f, &p1, &p2, &a3);
        let mut by_b: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for ((b, _, _), c) in counts {
            by_b.entry(b).or_default().push(c);
        }
        by_b.values()
            .map(|h| {
                let total: u64 = h.iter().sum();
                total as f64 / cube_k * crate::majorization::entropy_of_counts(h, z)
            })
            .sum::<f64>()
    });
    Ok(sum / k as f64)
}

fn for_each_in_product(sets: &[Vec<Symbol>], mut visit: impl FnMut(&[Symbol])) {
    if sets.iter().any(Vec::is_empty) {
        return;
    }
    let mut pos = vec![0usize; sets.len()];
    let mut current: Vec<Symbol> = sets.iter().map(|s| s[0]).collect();
    loop {
        visit(&current);
        let mut i = sets.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < sets[i].len() {
                current[i] = sets[i][pos[i]];
                break;
            }
            pos[i] = 0;
            current[i] = sets[i][0];
        }
    }
}

/// Whether `labels` (one per value of `x_u`) lets the terminal decode `f`
/// with `x3 = a3` known and the other relay sending its message verbatim.
/// A decoder exists iff no `(label, other)` cell is asked for two values.
fn labels_admit_decoder(f: &DemandFunction, u: Side, a3: Symbol, labels: &[usize]) -> bool {
    let a = f.a_size();
    for x in 0..a {
        for y in (x + 1)..a {
            if labels[x] == labels[y]
                && (0..a).any(|other| f.eval_side(u, x, other, a3) != f.eval_side(u, y, other, a3))
            {
                return false;
            }
        }
    }
    true
}

pub const MIN_LABELS_MAX_ALPHABET: usize = 4;

/// Smallest number of `Z_u` labels admitting a zero-error decoder for a
/// single letter, by exhaustive search over label assignments.
pub fn min_labels_search(f: &DemandFunction, u: Side, a3: Symbol) -> Result<usize> {
    let a = f.a_size();
    if a > MIN_LABELS_MAX_ALPHABET {
        return Err(Error::ResourceCap {
            what: "min_labels_search assignments",
            needed: pow_u128(a, a),
            cap: pow_u128(MIN_LABELS_MAX_ALPHABET, MIN_LABELS_MAX_ALPHABET) as u64,
        });
    }
    if a3 >= a {
        return Err(Error::InvalidParameter(format!("a3 = {a3} out of range")));
    }
    let mut labels = vec![0; a];
    for l in 1..=a {
        let assignments = pow_u128(l, a) as u64;
        for idx in 0..assignments {
            digits(idx, l, a, &mut labels);
            if labels_admit_decoder(f, u, a3, &labels) {
                return Ok(l);
            }
        }
    }
    Err(Error::Invariant("identity labelling must always decode".into()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelCheck {
    pub side: usize,
    pub a3: Symbol,
    pub v_count: usize,
    pub min_labels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSummary {
    pub k: usize,
    pub z_size: u32,
    pub gamma_1: f64,
    pub gamma_2: f64,
    pub gamma_block_1: f64,
    pub gamma_block_2: f64,
    pub alpha: f64,
    pub alpha_block: f64,
    /// `None` when the full-tuple sweep exceeds the cap.
    pub alpha_block_direct: Option<f64>,
    pub max_deviation: f64,
    /// Empty when `|A|` is too large for the exhaustive label search.
    pub label_checks: Vec<LabelCheck>,
    pub h_block_samples: usize,
    pub h_block_failures: usize,
    pub all_pass: bool,
}

pub const ORACLE_TOLERANCE: f64 = 1e-9;
const H_BLOCK_SAMPLES: usize = 100;

/// Runs every oracle for `f` at block length `cfg.k`.
pub fn run_oracle(f: &DemandFunction, cfg: &OracleConfig) -> Result<OracleSummary> {
    cfg.validate()?;
    let z = cfg.z_size;
    let gamma_1 = bounds::gamma(f, Side::One, z)?;
    let gamma_2 = bounds::gamma(f, Side::Two, z)?;
    let alpha = bounds::alpha(f, z)?;
    let gamma_block_1 = gamma_block(f, Side::One, cfg)?;
    let gamma_block_2 = gamma_block(f, Side::Two, cfg)?;
    let alpha_block = alpha_block(f, cfg)?;
    let alpha_block_direct = match alpha_block_direct(f, cfg) {
        Ok(v) => Some(v),
        Err(Error::ResourceCap { .. }) => None,
        Err(e) => return Err(e),
    };

    let mut max_deviation = (gamma_1 - gamma_block_1)
        .abs()
        .max((gamma_2 - gamma_block_2).abs())
        .max((alpha - alpha_block).abs());
    if let Some(d) = alpha_block_direct {
        max_deviation = max_deviation.max((alpha - d).abs());
    }

    let mut label_checks = Vec::new();
    if f.a_size() <= MIN_LABELS_MAX_ALPHABET {
        for u in Side::BOTH {
            for a3 in 0..f.a_size() {
                label_checks.push(LabelCheck {
                    side: u.index(),
                    a3,
                    v_count: v_count(f, u, a3),
                    min_labels: min_labels_search(f, u, a3)?,
                });
            }
        }
    }

    let (h_block_samples, h_block_failures) = if cfg.k <= 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut failures = 0;
        let samples = sample_block_pairs(f, cfg.k, H_BLOCK_SAMPLES, &mut rng);
        for (b, a3) in &samples {
            if !h_block_check(f, b, a3)? {
                failures += 1;
            }
        }
        (samples.len(), failures)
    } else {
        (0, 0)
    };

    let all_pass = max_deviation <= ORACLE_TOLERANCE
        && label_checks.iter().all(|c| c.v_count == c.min_labels)
        && h_block_failures == 0;
    Ok(OracleSummary {
        k: cfg.k,
        z_size: z,
        gamma_1,
        gamma_2,
        gamma_block_1,
        gamma_block_2,
        alpha,
        alpha_block,
        alpha_block_direct,
        max_deviation,
        label_checks,
        h_block_samples,
        h_block_failures,
        all_pass,
    })
}

/// Random `(b, a3)` blocks with `a3` in the support of `b`, componentwise.
pub fn sample_block_pairs<R: Rng>(
    f: &DemandFunction,
    k: usize,
    count: usize,
    rng: &mut R,
) -> Vec<(Vec<Symbol>, Vec<Symbol>)> {
    let attained: Vec<Symbol> = (0..f.b_size()).filter(|&b| f.preimage_count(b) > 0).collect();
    let supports: Vec<Vec<Symbol>> = (0..f.b_size())
        .map(|b| crate::pair_structure::a3_support(f, b))
        .collect();
    (0..count)
        .map(|_| {
            let b: Vec<Symbol> = (0..k).map(|_| attained[rng.gen_range(0..attained.len())]).collect();
            let a3 = b
                .iter()
                .map(|&bi| supports[bi][rng.gen_range(0..supports[bi].len())])
                .collect();
            (b, a3)
        })
        .collect()
}
