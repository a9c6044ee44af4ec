use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid demand function: {0}")]
    Invalid(String),

    #[error("table entry {index} has value {value}, expected < {b_size}")]
    EntryOutOfRange {
        index: usize,
        value: usize,
        b_size: usize,
    },

    /// Arguments are numbered 1, 2, 3.
    #[error("demand function is constant in argument {0}")]
    ConstantArgument(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("value b={b} is not attained with x3={a3}")]
    EmptySupport { b: usize, a3: usize },

    #[error("value b={0} has zero probability")]
    ZeroProbability(usize),

    #[error("{what} needs {needed} states, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        needed: u128,
        cap: u64,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Guard used by every enumeration: `needed` must not exceed `cap`.
    pub(crate) fn check_cap(what: &'static str, needed: u128, cap: u64) -> Result<()> {
        if needed > u128::from(cap) {
            Err(Error::ResourceCap { what, needed, cap })
        } else {
            Ok(())
        }
    }
}
