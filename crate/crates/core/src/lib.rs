//! Zero-error rate-region outer bounds for computing a demand function
//! `f(x1, x2, x3)` over the three-source diamond network.
//!
//! Source `s3` feeds relays `s1` and `s2`, which forward to the terminal:
//!
//! ```text
//!        s3
//!       /  \
//!     s1    s2
//!       \  /
//!        t
//! ```
//!
//! The crate computes the equivalence-class structure of a demand-function
//! table, turns it into entropy lower bounds through majorization, and
//! assembles per-edge and sum-rate outer bounds. Every closed-form quantity
//! has a brute-force counterpart in [`block_oracle`], and [`coding_schemes`]
//! provides executable variable-length codes that can be checked against
//! the bounds.
//!
//! Exhaustive sweeps run on rayon when the `parallel` feature is enabled
//! (the default); see [`exec::Execution`].

pub mod block_oracle;
pub mod bounds;
pub mod coding_schemes;
pub mod demand_function;
pub mod equivalence;
mod error;
pub mod exec;
pub mod fixtures;
pub mod majorization;
pub mod pair_structure;
pub mod pmf;

pub use demand_function::{DemandFunction, Symbol};
pub use equivalence::{ClassSizeVector, Partition, Side};
pub use error::{Error, Result};
pub use exec::Execution;
pub use pair_structure::{HVector, PairIndexSet};
pub use pmf::Pmf;
