use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{huffman::HuffmanCode, run_code, Codeword, SourceNetworkCode};
use crate::exec::{digits, index_of, pow_u128};
use crate::{DemandFunction, Error, Execution, Result, Symbol};

/// Per-letter weights of `x + y` for independent uniform bits.
const SUM_WEIGHTS: [u64; 3] = [1, 2, 1];
const MONTE_CARLO_SAMPLES: u64 = 20_000;
const MONTE_CARLO_SEED: u64 = 0x00a7_1e5e;

/// Block code for the integer sum `x1 + x2 + x3` of three bits.
///
/// Relay 3 sends `x3` to both relays. Relay 1 Huffman-codes the ternary
/// sums `x1 + x3` over the first half of the block and sends the second
/// half of `x1` raw; relay 2 mirrors this, sending the first half of `x2`
/// raw and coding `x2 + x3` over the second half.
#[derive(Debug, Clone)]
pub struct ArithScheme {
    k: usize,
    huffman: HuffmanCode,
}

pub fn arith_scheme(k: usize, cap: u64) -> Result<ArithScheme> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "arith scheme needs an even k >= 2 (k = {k})"
        )));
    }
    let half = k / 2;
    Error::check_cap("huffman table", pow_u128(3, half), cap)?;
    let mut d = vec![0; half];
    let weights: Vec<u64> = (0..3u64.pow(half as u32))
        .map(|s| {
            digits(s, 3, half, &mut d);
            d.iter().map(|&t| SUM_WEIGHTS[t]).product()
        })
        .collect();
    Ok(ArithScheme {
        k,
        huffman: HuffmanCode::from_weights(&weights),
    })
}

impl ArithScheme {
    pub fn huffman(&self) -> &HuffmanCode {
        &self.huffman
    }

    fn half(&self) -> usize {
        self.k / 2
    }

    fn sums_codeword(&self, x: &[Symbol], z: &[u8]) -> &[u8] {
        let sums: Vec<usize> = x.iter().zip(z).map(|(&a, &b)| a + b as usize).collect();
        self.huffman.codeword(index_of(&sums, 3) as usize)
    }

    fn decode_sums(&self, bits: &[u8]) -> Option<(Vec<usize>, usize)> {
        let (s, used) = self.huffman.decode_prefix(bits)?;
        let mut sums = vec![0; self.half()];
        digits(s as u64, 3, self.half(), &mut sums);
        Some((sums, used))
    }

    /// Exact `E l(Z1)` (equal to `E l(Z2)`).
    pub fn relay_expected_length(&self) -> BigRational {
        let half = self.half();
        let mut d = vec![0; half];
        let weighted: u64 = self
            .huffman
            .lengths()
            .iter()
            .enumerate()
            .map(|(s, &l)| {
                digits(s as u64, 3, half, &mut d);
                l as u64 * d.iter().map(|&t| SUM_WEIGHTS[t]).product::<u64>()
            })
            .sum();
        BigRational::new(BigInt::from(weighted), BigInt::from(4u64.pow(half as u32)))
            + BigRational::from_integer(BigInt::from(half))
    }
}

fn bits(x: &[Symbol]) -> Codeword {
    x.iter().map(|&s| s as u8).collect()
}

impl SourceNetworkCode for ArithScheme {
    fn name(&self) -> &str {
        "arith"
    }

    fn k(&self) -> usize {
        self.k
    }

    fn z_size(&self) -> u32 {
        2
    }

    fn a_size(&self) -> usize {
        2
    }

    fn enc_31(&self, x3: &[Symbol]) -> Codeword {
        bits(x3)
    }

    fn enc_32(&self, x3: &[Symbol]) -> Codeword {
        bits(x3)
    }

    fn enc_1(&self, x1: &[Symbol], z31: &[u8]) -> Codeword {
        let h = self.half();
        let mut out = self.sums_codeword(&x1[..h], &z31[..h]).to_vec();
        out.extend(bits(&x1[h..]));
        out
    }

    fn enc_2(&self, x2: &[Symbol], z32: &[u8]) -> Codeword {
        let h = self.half();
        let mut out = bits(&x2[..h]);
        out.extend_from_slice(self.sums_codeword(&x2[h..], &z32[h..]));
        out
    }

    fn dec(&self, z1: &[u8], z2: &[u8]) -> Option<Vec<Symbol>> {
        let h = self.half();
        let (first_sums, used) = self.decode_sums(z1)?;
        let x1_tail = &z1[used..];
        if x1_tail.len() != h || z2.len() < h {
            return None;
        }
        let (x2_head, coded) = z2.split_at(h);
        let (second_sums, used) = self.decode_sums(coded)?;
        if used != coded.len() {
            return None;
        }
        let mut out: Vec<Symbol> = first_sums
            .iter()
            .zip(x2_head)
            .map(|(&s, &x2)| s + x2 as Symbol)
            .collect();
        out.extend(
            x1_tail
                .iter()
                .zip(&second_sums)
                .map(|(&x1, &s)| x1 as Symbol + s),
        );
        Some(out)
    }

    fn closed_form_lengths(&self) -> Option<[BigRational; 4]> {
        let k = BigRational::from_integer(BigInt::from(self.k));
        let relay = self.relay_expected_length();
        Some([k.clone(), k, relay.clone(), relay])
    }

    /// Decodability reduces to the Huffman code being prefix-free and
    /// round-tripping every half-block sum pattern, plus the two letter
    /// identities `(x1 + x3) + x2 = f = x1 + (x2 + x3)`. A seeded random
    /// sample of full message tuples is run end to end as a smoke check.
    fn structural_check(&self, f: &DemandFunction, exec: Execution) -> Option<Result<bool>> {
        if f.a_size() != 2 {
            return Some(Err(Error::InvalidParameter("arith scheme needs |A| = 2".into())));
        }
        let mut letters_ok = true;
        for x1 in 0..2 {
            for x2 in 0..2 {
                for x3 in 0..2 {
                    let want = f.eval(x1, x2, x3);
                    letters_ok &= (x1 + x3) + x2 == want && x1 + (x2 + x3) == want;
                }
            }
        }
        let h = self.half();
        let tail = vec![1u8; h];
        let roundtrip = exec.all(self.huffman.len() as u64, |s| {
            let mut bits = self.huffman.codeword(s as usize).to_vec();
            let len = bits.len();
            bits.extend_from_slice(&tail);
            self.huffman.decode_prefix(&bits) == Some((s as usize, len))
        });
        let k = self.k;
        let sampled = exec.all(MONTE_CARLO_SAMPLES, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(MONTE_CARLO_SEED.wrapping_add(i));
            let mut draw = || (0..k).map(|_| rng.gen_range(0..2)).collect::<Vec<Symbol>>();
            let (x1, x2, x3) = (draw(), draw(), draw());
            run_code(self, &x1, &x2, &x3) == Some(f.eval_block(&x1, &x2, &x3))
        });
        Some(Ok(letters_ok && self.huffman.is_prefix_free() && roundtrip && sampled))
    }
}
