use num_rational::BigRational;

use super::{Codeword, SourceNetworkCode};
use crate::{DemandFunction, Error, Result, Symbol};

/// Every node forwards everything it knows; the terminal evaluates `f`.
/// Codeword symbols are message symbols, so `|Z| = |A|`.
#[derive(Debug, Clone)]
pub struct IdentityForwarding {
    f: DemandFunction,
    k: usize,
}

pub fn identity_forwarding(f: &DemandFunction, k: usize) -> Result<IdentityForwarding> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if f.a_size() > 256 {
        return Err(Error::InvalidParameter("identity forwarding needs |A| <= 256".into()));
    }
    Ok(IdentityForwarding { f: f.clone(), k })
}

fn symbols(x: &[Symbol]) -> Codeword {
    x.iter().map(|&s| s as u8).collect()
}

impl SourceNetworkCode for IdentityForwarding {
    fn name(&self) -> &str {
        "identity"
    }

    fn k(&self) -> usize {
        self.k
    }

    fn z_size(&self) -> u32 {
        self.f.a_size() as u32
    }

    fn a_size(&self) -> usize {
        self.f.a_size()
    }

    fn enc_31(&self, x3: &[Symbol]) -> Codeword {
        symbols(x3)
    }

    fn enc_32(&self, x3: &[Symbol]) -> Codeword {
        symbols(x3)
    }

    fn enc_1(&self, x1: &[Symbol], z31: &[u8]) -> Codeword {
        let mut out = symbols(x1);
        out.extend_from_slice(z31);
        out
    }

    fn enc_2(&self, x2: &[Symbol], z32: &[u8]) -> Codeword {
        let mut out = symbols(x2);
        out.extend_from_slice(z32);
        out
    }

    fn dec(&self, z1: &[u8], z2: &[u8]) -> Option<Vec<Symbol>> {
        let k = self.k;
        if z1.len() != 2 * k || z2.len() != 2 * k || z1[k..] != z2[k..] {
            return None;
        }
        let s = |z: &[u8]| z.iter().map(|&v| v as Symbol).collect::<Vec<_>>();
        Some(self.f.eval_block(&s(&z1[..k]), &s(&z2[..k]), &s(&z1[k..])))
    }

    fn closed_form_lengths(&self) -> Option<[BigRational; 4]> {
        let k = self.k;
        Some([k, k, 2 * k, 2 * k].map(|n| BigRational::from_integer(n.into())))
    }
}
