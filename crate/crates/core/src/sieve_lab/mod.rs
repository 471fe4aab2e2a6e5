//! Prime tables and finite-range checks of the sieve-theoretic inputs.
//!
//! Everything here is exact enumeration: maximal gap records, Mertens
//! products, Brun–Titchmarsh counts, and prime (pair) counts in progressions
//! with primorial moduli.

pub mod gaps;
pub mod primality;
pub mod surrogates;
pub mod table;

pub use gaps::{gap_records, max_gap_gk, GapRecord};
pub use primality::{is_prime, is_prime_u64, primorial};
pub use surrogates::{
    ap_prime_count, brun_titchmarsh_check, brun_titchmarsh_sweep, mertens_grid, mertens_product, random_coprime_pairs,
    ub_pair_count, ApCount, BtCheck, MertensProduct, UbPairCount,
};
pub use table::{segmented_sieve, segmented_sieve_with, simple_sieve, PrimeTable, SieveLimits};
