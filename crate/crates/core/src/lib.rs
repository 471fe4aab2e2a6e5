//! Explicit-constant derivations, sieve experiments and the Maynard
//! variational problem behind lower bounds for `G_k(X)`, the largest minimal
//! gap among `k` consecutive prime gaps below `X`.
//!
//! Modules:
//! - [`interval`]: outward-rounded high-precision interval arithmetic.
//! - [`constants`]: the constant chain leading to `c_LG`, with an audit trace.
//! - [`zero_region`]: zero-free-region, zero-density and Selberg-sieve constants.
//! - [`maynard`]: exact simplex integrals and the `J_r / I_r` maximization.
//! - [`sieve_lab`]: prime tables, gap records and finite checks of the sieve assumptions.
//! - [`construction`]: a desk-scale simulator of the residue-class interval construction.

pub mod constants;
pub mod construction;
pub mod error;
pub mod interval;
pub mod kv;
pub mod maynard;
pub mod scale;
pub mod sieve_lab;
pub mod trace;
pub mod zero_region;

pub use error::{LabError, Result};
pub use interval::Interval;
