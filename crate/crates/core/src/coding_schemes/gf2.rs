use num_rational::BigRational;

use super::{Codeword, SourceNetworkCode};
use crate::{DemandFunction, Error, Execution, Result, Symbol};

/// Split-and-add code for `x1 + x2 + x3 (mod 2)`: relay 3 sends its first
/// `c` bits to relay 1 and the rest to relay 2, each relay adds what it
/// receives onto the matching part of its own block, and the terminal adds
/// the two relay strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Scheme {
    k: usize,
    c: usize,
}

pub fn gf2_scheme(k: usize, c: usize) -> Result<Gf2Scheme> {
    if k == 0 || c > k {
        return Err(Error::InvalidParameter(format!(
            "gf2 scheme needs k >= 1 and 0 <= c <= k (k = {k}, c = {c})"
        )));
    }
    Ok(Gf2Scheme { k, c })
}

impl Gf2Scheme {
    pub fn c(&self) -> usize {
        self.c
    }
}

fn bits(x: &[Symbol]) -> Codeword {
    x.iter().map(|&s| s as u8).collect()
}

impl SourceNetworkCode for Gf2Scheme {
    fn name(&self) -> &str {
        "gf2"
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
        bits(&x3[..self.c])
    }

    fn enc_32(&self, x3: &[Symbol]) -> Codeword {
        bits(&x3[self.c..])
    }

    fn enc_1(&self, x1: &[Symbol], z31: &[u8]) -> Codeword {
        let mut out: Codeword = x1[..self.c]
            .iter()
            .zip(z31)
            .map(|(&x, &z)| x as u8 ^ z)
            .collect();
        out.extend(bits(&x1[self.c..]));
        out
    }

    fn enc_2(&self, x2: &[Symbol], z32: &[u8]) -> Codeword {
        let mut out = bits(&x2[..self.c]);
        out.extend(x2[self.c..].iter().zip(z32).map(|(&x, &z)| x as u8 ^ z));
        out
    }

    fn dec(&self, z1: &[u8], z2: &[u8]) -> Option<Vec<Symbol>> {
        if z1.len() != self.k || z2.len() != self.k {
            return None;
        }
        Some(z1.iter().zip(z2).map(|(&a, &b)| (a ^ b) as Symbol).collect())
    }

    fn closed_form_lengths(&self) -> Option<[BigRational; 4]> {
        Some([self.c, self.k - self.c, self.k, self.k].map(|n| BigRational::from_integer(n.into())))
    }

    /// Every output letter depends on one message triple only, through one
    /// of two fixed letter maps; checking both maps on all 8 triples covers
    /// every block length.
    fn structural_check(&self, f: &DemandFunction, _exec: Execution) -> Option<Result<bool>> {
        if f.a_size() != 2 {
            return Some(Err(Error::InvalidParameter("gf2 scheme needs |A| = 2".into())));
        }
        let mut ok = true;
        for x1 in 0..2 {
            for x2 in 0..2 {
                for x3 in 0..2 {
                    let first = (x1 ^ x3) ^ x2;
                    let second = x1 ^ (x2 ^ x3);
                    let want = f.eval(x1, x2, x3);
                    ok &= (self.c == 0 || first == want) && (self.c == self.k || second == want);
                }
            }
        }
        Some(Ok(ok))
    }
}
