//! Finite surrogates of the analytic inputs: Mertens, Brun–Titchmarsh, and
//! prime counts along `P z + a` for primorial `P`.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, LabError, Result};
use crate::interval::Interval;
use crate::sieve_lab::primality::{euler_phi, gcd, is_prime, is_prime_u64, primorial, MR_DETERMINISTIC_BOUND};
use crate::sieve_lab::table::{segmented_sieve, PrimeTable};
use crate::zero_region::{hr_pair_upper_bound_relaxed, selberg_c_ub};

fn euler_gamma_f64() -> f64 {
    Interval::euler_gamma().mid()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MertensProduct {
    pub x: u64,
    /// `prod_{p <= x} (1 - 1/p)^-1`
    pub product: f64,
    /// `product / (e^gamma log x)`
    pub ratio: f64,
}

fn mertens_from(primes: &[u64], x: u64) -> MertensProduct {
    let log_sum: f64 = primes.iter().take_while(|&&p| p <= x).map(|&p| -(-1.0 / p as f64).ln_1p()).sum();
    let product = log_sum.exp();
    let ratio = product / (euler_gamma_f64().exp() * (x as f64).ln());
    MertensProduct { x, product, ratio }
}

pub fn mertens_product(x: u64) -> Result<MertensProduct> {
    if x < 2 {
        return Err(domain("mertens_product", "x must be >= 2"));
    }
    Ok(mertens_from(&segmented_sieve(0, x)?.primes(), x))
}

/// Mertens products at several limits from a single sieve.
pub fn mertens_grid(xs: &[u64]) -> Result<Vec<MertensProduct>> {
    if xs.iter().any(|&x| x < 2) {
        return Err(domain("mertens_product", "x must be >= 2"));
    }
    let top = xs.iter().copied().max().unwrap_or(2);
    let primes = segmented_sieve(0, top)?.primes();
    Ok(xs.iter().map(|&x| mertens_from(&primes, x)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BtCheck {
    pub x: u64,
    pub q: u64,
    pub a: u64,
    /// `pi(x; q, a)`
    pub count: u64,
    /// `2 x / (phi(q) log(x / q))`
    pub bound: f64,
    pub holds: bool,
}

fn bt_validate(x: u64, q: u64, a: u64) -> Result<()> {
    if q < 1 || q >= x {
        return Err(domain("brun_titchmarsh_check", format!("need x > q >= 1, got x = {x}, q = {q}")));
    }
    if gcd(a as u128, q as u128) != 1 {
        return Err(domain("brun_titchmarsh_check", format!("gcd({a}, {q}) > 1")));
    }
    Ok(())
}

fn bt_from(primes: &PrimeTable, x: u64, q: u64, a: u64) -> BtCheck {
    let r = a % q;
    let count = primes.iter().take_while(|&p| p <= x).filter(|p| p % q == r).count() as u64;
    let bound = 2.0 * x as f64 / (euler_phi(q) as f64 * (x as f64 / q as f64).ln());
    BtCheck { x, q, a, count, bound, holds: count as f64 <= bound }
}

/// Compares `pi(x; q, a)` with the Brun–Titchmarsh bound.
pub fn brun_titchmarsh_check(x: u64, q: u64, a: u64) -> Result<BtCheck> {
    bt_validate(x, q, a)?;
    Ok(bt_from(&segmented_sieve(0, x)?, x, q, a))
}

/// All `q <= q_max` and all reduced residues `a mod q`.
pub fn brun_titchmarsh_sweep(x: u64, q_max: u64) -> Result<Vec<BtCheck>> {
    let table = segmented_sieve(0, x)?;
    let mut jobs = Vec::new();
    for q in 1..=q_max {
        for a in 0..q {
            if gcd(a as u128, q as u128) == 1 {
                bt_validate(x, q, a)?;
                jobs.push((q, a));
            }
        }
    }
    Ok(jobs.par_iter().map(|&(q, a)| bt_from(&table, x, q, a)).collect())
}

/// `P = P(x) / B0`, validated and small enough for exact testing.
fn primorial_quotient(op: &'static str, x: u64, b0: u64) -> Result<u128> {
    if x < 2 {
        return Err(domain(op, "x must be >= 2"));
    }
    if b0 != 1 && !(is_prime_u64(b0) && b0 <= x) {
        return Err(domain(op, format!("B0 = {b0} must be 1 or a prime <= x")));
    }
    let p = primorial(x) / b0;
    p.to_u128().ok_or_else(|| LabError::Resource(format!("P(x)/B0 for x = {x} does not fit in 128 bits")))
}

fn check_range(p: u128, z: u64, a: u128) -> Result<()> {
    let top = p.checked_mul(z as u128).and_then(|v| v.checked_add(a));
    match top {
        Some(t) if t < MR_DETERMINISTIC_BOUND => Ok(()),
        _ => Err(LabError::Resource(format!("P z + a exceeds the exact primality range for P = {p}, Z = {z}"))),
    }
}

fn count_primes_along(p: u128, z: u64, a: u128) -> u64 {
    (1..=z).into_par_iter().filter(|&t| is_prime(p * t as u128 + a).expect("range checked")).count() as u64
}

#[derive(Clone, Debug, PartialEq)]
pub struct UbPairCount {
    pub x: u64,
    pub b0: u64,
    pub z: u64,
    pub a: u128,
    pub b: u128,
    /// `#{z' <= Z : P z' + a and P z' + b both prime}`
    pub count: u64,
    /// `C_UB (log x / log Z)^2 Z`
    pub bound: f64,
    pub holds: bool,
    /// Whether `log Z >= 10 log x` held; the bound is evaluated regardless.
    pub precondition_met: bool,
    /// Set when a prime `p <= x`, `p != B0` divides `a b`, forcing a zero count.
    pub short_circuit: bool,
}

/// Counts simultaneous primes `P z + a`, `P z + b` and compares with the
/// upper-bound sieve estimate.
pub fn ub_pair_count(x: u64, b0: u64, z: u64, a: u128, b: u128) -> Result<UbPairCount> {
    if a == b {
        return Err(domain("ub_pair_count", "a and b must differ"));
    }
    if z < 2 {
        return Err(domain("ub_pair_count", "Z must be >= 2"));
    }
    let p = primorial_quotient("ub_pair_count", x, b0)?;
    if a < 1 || a > p || b < 1 || b > p {
        return Err(domain("ub_pair_count", format!("a, b must lie in [1, {p}]")));
    }
    let (bound, precondition_met) = hr_pair_upper_bound_relaxed(x as f64, z as f64, selberg_c_ub().mid())?;
    let short_circuit = (2..=x).filter(|&q| is_prime_u64(q) && q != b0).any(|q| a % q as u128 == 0 || b % q as u128 == 0);
    let count = if short_circuit {
        0
    } else {
        check_range(p, z, a.max(b))?;
        (1..=z)
            .into_par_iter()
            .filter(|&t| {
                let base = p * t as u128;
                is_prime(base + a).expect("range checked") && is_prime(base + b).expect("range checked")
            })
            .count() as u64
    };
    Ok(UbPairCount { x, b0, z, a, b, count, bound, holds: count as f64 <= bound, precondition_met, short_circuit })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApCount {
    /// `#{z' <= Z : P z' + a prime}`
    pub count: u64,
    /// `e^gamma / (1 + 1/D_PAP) (log x / log Z) Z` with `D_PAP = 160`; a
    /// reference value only, its `1 + o(1)` is uncontrolled at this scale.
    pub reference_lower: f64,
}

pub fn ap_prime_count(x: u64, b0: u64, a: u128, z: u64) -> Result<ApCount> {
    if z < 2 {
        return Err(domain("ap_prime_count", "Z must be >= 2"));
    }
    let p = primorial_quotient("ap_prime_count", x, b0)?;
    if gcd(a, p) != 1 {
        return Err(domain("ap_prime_count", format!("gcd({a}, {p}) > 1")));
    }
    check_range(p, z, a)?;
    let count = count_primes_along(p, z, a);
    let d_pap = 160.0;
    let reference_lower = euler_gamma_f64().exp() / (1.0 + 1.0 / d_pap) * ((x as f64).ln() / (z as f64).ln()) * z as f64;
    Ok(ApCount { count, reference_lower })
}

/// `n` distinct pairs `a != b` in `[1, modulus]` with `gcd(a b, modulus) = 1`,
/// drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_coprime_pairs(modulus: u128, n: usize, seed: u64) -> Result<Vec<(u128, u128)>> {
    let reduced = (1..=modulus.min(1 << 20)).filter(|&v| gcd(v, modulus) == 1).take(3).count();
    if modulus < 3 || reduced < 2 {
        return Err(domain("random_coprime_pairs", format!("modulus {modulus} has fewer than two reduced residues")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || loop {
        let v = rng.random_range(1..=modulus);
        if gcd(v, modulus) == 1 {
            break v;
        }
    };
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (a, b) = (draw(), draw());
        if a != b {
            out.push((a, b));
        }
    }
    Ok(out)
}
