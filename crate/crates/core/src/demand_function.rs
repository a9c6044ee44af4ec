//! Demand-function tables `f: A x A x A -> B` and their uniform-source
//! statistics.

use serde::{Deserialize, Serialize};

use crate::{Error, Pmf, Result};

/// Index into an alphabet `{0, .., n-1}`.
pub type Symbol = usize;

/// A validated, dense demand-function table.
///
/// Entries are stored row-major in `(x1, x2, x3)`, i.e. at
/// `x1 * |A|^2 + x2 * |A| + x3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandFunction {
    name: Option<String>,
    a_size: usize,
    b_size: usize,
    table: Vec<Symbol>,
}

#[derive(Serialize, Deserialize)]
struct FileRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    a_size: usize,
    b_size: usize,
    table: Vec<Symbol>,
}

impl DemandFunction {
    pub fn new(a_size: usize, b_size: usize, table: Vec<Symbol>) -> Result<Self> {
        if a_size < 2 {
            return Err(Error::Invalid(format!("a_size must be > 1, got {a_size}")));
        }
        if b_size < 2 {
            return Err(Error::Invalid(format!("b_size must be > 1, got {b_size}")));
        }
        let expected = a_size
            .checked_pow(3)
            .ok_or_else(|| Error::Invalid(format!("a_size {a_size} too large")))?;
        if table.len() != expected {
            return Err(Error::Invalid(format!(
                "table has {} entries, expected a_size^3 = {expected}",
                table.len()
            )));
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= b_size) {
            return Err(Error::EntryOutOfRange {
                index,
                value,
                b_size,
            });
        }
        let f = DemandFunction {
            name: None,
            a_size,
            b_size,
            table,
        };
        for arg in 1..=3 {
            if f.is_constant_in(arg) {
                return Err(Error::ConstantArgument(arg));
            }
        }
        Ok(f)
    }

    /// Builds the table by evaluating `eval` on every input triple.
    pub fn from_fn<F>(a_size: usize, b_size: usize, eval: F) -> Result<Self>
    where
        F: Fn(Symbol, Symbol, Symbol) -> Symbol,
    {
        let mut table = Vec::with_capacity(a_size.saturating_pow(3));
        for x1 in 0..a_size {
            for x2 in 0..a_size {
                for x3 in 0..a_size {
                    table.push(eval(x1, x2, x3));
                }
            }
        }
        DemandFunction::new(a_size, b_size, table)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Parses and validates the JSON file format.
    pub fn load(text: &str) -> Result<Self> {
        let repr: FileRepr =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let f = DemandFunction::new(repr.a_size, repr.b_size, repr.table)?;
        Ok(match repr.name {
            Some(name) => f.with_name(name),
            None => f,
        })
    }

    /// Canonical single-line JSON; `load(emit(f)) == f`.
    pub fn emit(&self) -> String {
        let repr = FileRepr {
            name: self.name.clone(),
            a_size: self.a_size,
            b_size: self.b_size,
            table: self.table.clone(),
        };
        serde_json::to_string(&repr).expect("table serializes")
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn a_size(&self) -> usize {
        self.a_size
    }

    pub fn b_size(&self) -> usize {
        self.b_size
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    #[inline]
    pub fn eval(&self, x1: Symbol, x2: Symbol, x3: Symbol) -> Symbol {
        let a = self.a_size;
        self.table[(x1 * a + x2) * a + x3]
    }

    /// Evaluates `f` on a side-indexed pair: `side_value` is `x_u`, `other`
    /// is the remaining relay message.
    #[inline]
    pub(crate) fn eval_side(&self, u: crate::Side, side_value: Symbol, other: Symbol, a3: Symbol) -> Symbol {
        match u {
            crate::Side::One => self.eval(side_value, other, a3),
            crate::Side::Two => self.eval(other, side_value, a3),
        }
    }

    /// Componentwise evaluation on blocks of equal length.
    pub fn eval_block(&self, x1: &[Symbol], x2: &[Symbol], x3: &[Symbol]) -> Vec<Symbol> {
        assert!(x1.len() == x2.len() && x2.len() == x3.len());
        x1.iter()
            .zip(x2)
            .zip(x3)
            .map(|((&a, &b), &c)| self.eval(a, b, c))
            .collect()
    }

    /// `|{(x1, x2, x3) : f = b}|`.
    pub fn preimage_count(&self, b: Symbol) -> u64 {
        self.table.iter().filter(|&&v| v == b).count() as u64
    }

    pub fn preimage_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.b_size];
        for &v in &self.table {
            counts[v] += 1;
        }
        counts
    }

    /// Distribution of `f(X1, X2, X3)` under i.i.d. uniform sources.
    pub fn function_pmf(&self) -> Pmf {
        Pmf::from_counts(&self.preimage_counts()).expect("table is non-empty")
    }

    fn is_constant_in(&self, arg: usize) -> bool {
        let a = self.a_size;
        for p in 0..a {
            for q in 0..a {
                let at = |v: Symbol| match arg {
                    1 => self.eval(v, p, q),
                    2 => self.eval(p, v, q),
                    _ => self.eval(p, q, v),
                };
                let first = at(0);
                if (1..a).any(|v| at(v) != first) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gf3_table_lookup() {
        let f = fixtures::gf3();
        assert_eq!((f.a_size(), f.b_size()), (3, 3));
        assert_eq!(f.eval(0, 1, 0), 2);
        assert_eq!(f.name(), Some("gf3-example"));
    }

    #[test]
    fn arithmetic_sum_lookup() {
        assert_eq!(fixtures::arithmetic_sum().eval(1, 1, 1), 3);
    }

    #[test]
    fn constant_function_rejected() {
        let err = DemandFunction::load(r#"{"a_size":2,"b_size":2,"table":[0,0,0,0,0,0,0,0]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::ConstantArgument(1)));
        assert!(err.to_string().contains("constant in argument 1"));
    }

    #[test]
    fn product_ignoring_x3_rejected() {
        let err = DemandFunction::from_fn(2, 2, |x1, x2, _| x1 * x2).unwrap_err();
        assert!(matches!(err, Error::ConstantArgument(3)));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            DemandFunction::load("{not json"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            DemandFunction::load(r#"{"a_size":2,"b_size":2,"table":[0,1,1,0,1,0,0,2]}"#),
            Err(Error::EntryOutOfRange { index: 7, value: 2, .. })
        ));
        assert!(matches!(
            DemandFunction::load(r#"{"a_size":2,"b_size":2,"table":[0,1]}"#),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            DemandFunction::new(1, 2, vec![0]),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn function_pmfs() {
        assert_eq!(
            fixtures::gf3().function_pmf().weights(),
            &[q(12, 27), q(12, 27), q(3, 27)]
        );
        assert_eq!(
            fixtures::arithmetic_sum().function_pmf().weights(),
            &[q(1, 8), q(3, 8), q(3, 8), q(1, 8)]
        );
        assert_eq!(
            fixtures::gf2_sum().function_pmf().weights(),
            &[q(1, 2), q(1, 2)]
        );
    }

    #[test]
    fn preimage_counts() {
        let f = fixtures::gf3();
        assert_eq!(f.preimage_count(2), 3);
        assert_eq!(f.preimage_count(0), 12);
        assert_eq!(fixtures::arithmetic_sum().preimage_count(0), 1);
    }

    #[test]
    fn emit_is_canonical() {
        let f = fixtures::gf2_sum();
        let text = f.emit();
        assert_eq!(DemandFunction::load(&text).unwrap(), f);
        assert_eq!(DemandFunction::load(&text).unwrap().emit(), text);
    }
}
