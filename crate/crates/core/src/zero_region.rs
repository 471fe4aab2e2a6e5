//! Where `C_PAP`, `D_PAP` and `C_UB` come from.
//!
//! The progression constants follow a zero-free region, a Gallagher-type
//! exponent and a zero-density exponent; `C_UB` is the Selberg sieve constant
//! for prime pairs. Only the arithmetic of those steps is reproduced here.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{constraint, domain, Result};
use crate::interval::Interval;
use crate::kv::parse_rational;
use crate::sieve_lab::primality::is_prime_u64;
use crate::sieve_lab::surrogates::mertens_product;
use crate::trace::{DerivationTrace, TraceNode};

/// Literal value of the single-zero constant `R`, known only to these digits.
pub const R_LITERAL: &str = "9.6459";

/// Ratio demanded between `log Z` and `log x` before the pair bound is applied.
pub const HR_LOG_RATIO: f64 = 10.0;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact inputs of the chain; everything else is derived.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroRegionInputs {
    pub r: BigRational,
    pub c_zfr: BigRational,
    pub jutila_exp: BigRational,
    pub trivial_exp: BigRational,
}

/// Keys accepted in a zero-region constants file.
pub const ZERO_REGION_KEYS: [&str; 4] = ["R", "c_ZFR", "jutila_exp", "trivial_exp"];

impl Default for ZeroRegionInputs {
    fn default() -> Self {
        ZeroRegionInputs {
            r: parse_rational(R_LITERAL).expect("literal parses"),
            c_zfr: ratio(1, 24),
            jutila_exp: BigRational::from_integer(6.into()),
            trivial_exp: BigRational::from_integer(15.into()),
        }
    }
}

impl ZeroRegionInputs {
    pub fn from_overrides(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut z = Self::default();
        for (k, v) in map {
            let q = parse_rational(v)?;
            match k.as_str() {
                "R" => z.r = q,
                "c_ZFR" => z.c_zfr = q,
                "jutila_exp" => z.jutila_exp = q,
                "trivial_exp" => z.trivial_exp = q,
                other => {
                    return Err(domain(
                        "zero_region",
                        format!("unknown constant `{other}` (expected one of {ZERO_REGION_KEYS:?})"),
                    ))
                }
            }
        }
        Ok(z)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroRegionConstants {
    pub r: Interval,
    pub r1: Interval,
    pub c_zfr: BigRational,
    /// Gallagher exponent.
    pub a: BigRational,
    pub c_zd: u64,
    pub jutila_exp: BigRational,
    pub trivial_exp: BigRational,
}

/// `(R, R1)`: `R` is the truncated literal, `R1 = (5 - sqrt 5)/(15 - 10 sqrt 2)`.
pub fn mccurley_constants() -> (Interval, Interval) {
    let r = Interval::from_ratio(&parse_rational(R_LITERAL).expect("literal parses"));
    let s5 = Interval::from_i64(5).sqrt().expect("5 > 0");
    let s2 = Interval::from_i64(2).sqrt().expect("2 > 0");
    let r1 = (Interval::from_i64(5) - s5) / (Interval::from_i64(15) - Interval::from_i64(10) * s2);
    (r, r1)
}

/// `a = (3/10) c_ZFR`.
pub fn gallagher_a(c_zfr: &BigRational) -> Result<BigRational> {
    if !c_zfr.is_positive() {
        return Err(domain("gallagher_a", "c_ZFR must be positive"));
    }
    Ok(c_zfr * ratio(3, 10))
}

/// Smallest integer strictly above both exponents.
pub fn zero_density_exponent(jutila_exp: &BigRational, trivial_exp: &BigRational) -> Result<u64> {
    if !jutila_exp.is_positive() || !trivial_exp.is_positive() {
        return Err(domain("zero_density_exponent", "exponents must be positive"));
    }
    let m = jutila_exp.max(trivial_exp);
    let next = m.numer().div_floor(m.denom()) + BigInt::one();
    next.to_u64().ok_or_else(|| domain("zero_density_exponent", "exponent too large"))
}

/// `(D_PAP, C_PAP) = (10 c_ZD, 1 - exp(-a D_PAP))`.
pub fn derive_pap(c_zd: u64, a: &BigRational) -> Result<(Interval, Interval)> {
    if c_zd == 0 || !a.is_positive() {
        return Err(domain("derive_pap", "inputs must be positive"));
    }
    let d_pap = Interval::from_i64(10 * c_zd as i64);
    let c_pap = Interval::one() - (-(Interval::from_ratio(a) * &d_pap)).exp();
    Ok((d_pap, c_pap))
}

/// `C_UB = 2^2 * 2! * e^{2 gamma}`.
pub fn selberg_c_ub() -> Interval {
    Interval::from_i64(8) * (Interval::euler_gamma() * Interval::from_i64(2)).exp()
}

/// `C_UB` together with `prod_{p<=x} (1 - 1/p)^-2 / (e^gamma log x)^2`,
/// the finite counterpart of the Mertens factor it absorbs.
pub fn selberg_cub(x: u64) -> Result<(Interval, f64)> {
    if x < 10 {
        return Err(domain("selberg_CUB", "x must be >= 10"));
    }
    let m = mertens_product(x)?;
    Ok((selberg_c_ub(), m.ratio * m.ratio))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoInput {
    pub p: u64,
    pub a: u128,
    pub b: u128,
    pub b0: u64,
    pub x: u64,
}

/// Number of residues `z mod p` with `p | (P z + a)(P z + b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rho {
    /// `p <= x`, `p != B0`, `p` does not divide `a b`: no solutions.
    Small,
    /// `p = B0`.
    Exceptional,
    /// `p > x`: one solution if `a = b mod p`, two otherwise.
    Large(u8),
    /// `p <= x`, `p != B0`, `p | a b`: the pair count itself vanishes.
    PairCountZero,
}

impl Rho {
    pub fn count(self) -> Option<u8> {
        match self {
            Rho::Small => Some(0),
            Rho::Exceptional => Some(2),
            Rho::Large(n) => Some(n),
            Rho::PairCountZero => None,
        }
    }
}

/// `modulus` is `P = P(x)/B0`; it must be prime to `p` whenever `p` is not
/// one of its factors.
pub fn rho_classify(input: &RhoInput, modulus: u128) -> Result<Rho> {
    let RhoInput { p, a, b, b0, x } = *input;
    if !is_prime_u64(p) {
        return Err(domain("rho_classify", format!("{p} is not prime")));
    }
    if b0 != 1 && !is_prime_u64(b0) {
        return Err(domain("rho_classify", format!("B0 = {b0} must be 1 or prime")));
    }
    let pp = p as u128;
    let small = p <= x && p != b0;
    if !small && modulus % pp == 0 {
        return Err(domain("rho_classify", format!("P must be prime to p = {p}")));
    }
    Ok(if p == b0 {
        Rho::Exceptional
    } else if p > x {
        Rho::Large(if a % pp == b % pp { 1 } else { 2 })
    } else if a % pp == 0 || b % pp == 0 {
        Rho::PairCountZero
    } else {
        Rho::Small
    })
}

fn hr_validate(x: f64, z: f64, c_ub: f64) -> Result<()> {
    if !(x > 1.0 && z > 1.0 && c_ub > 0.0) || !x.is_finite() || !z.is_finite() {
        return Err(domain("hr_pair_upper_bound", "need x > 1, Z > 1, C_UB > 0"));
    }
    Ok(())
}

/// `C_UB (log x / log Z)^2 Z`, only where `log x = o(log Z)` is taken to
/// hold, namely `log Z >= 10 log x`.
pub fn hr_pair_upper_bound(x: f64, z: f64, c_ub: f64) -> Result<f64> {
    let (v, ok) = hr_pair_upper_bound_relaxed(x, z, c_ub)?;
    if !ok {
        return Err(domain(
            "hr_pair_upper_bound",
            format!("log x = o(log Z) read as log Z >= {HR_LOG_RATIO} log x; got x = {x}, Z = {z}"),
        ));
    }
    Ok(v)
}

/// The same bound evaluated regardless of the size condition, with a flag
/// telling whether it held.
pub fn hr_pair_upper_bound_relaxed(x: f64, z: f64, c_ub: f64) -> Result<(f64, bool)> {
    hr_validate(x, z, c_ub)?;
    let (lx, lz) = (x.ln(), z.ln());
    Ok((c_ub * (lx / lz).powi(2) * z, lz >= HR_LOG_RATIO * lx))
}

/// The re-derived component constants with their audit trail.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroChain {
    pub constants: ZeroRegionConstants,
    pub c_pap: Interval,
    pub d_pap: Interval,
    pub c_ub: Interval,
    pub trace: DerivationTrace,
}

pub fn default_chain() -> Result<ZeroChain> {
    derive_chain(&ZeroRegionInputs::default())
}

pub fn derive_chain(inputs: &ZeroRegionInputs) -> Result<ZeroChain> {
    if !inputs.r.is_positive() {
        return Err(domain("zero_region", "R must be positive"));
    }
    let mut tr = DerivationTrace::default();
    let (_, r1) = mccurley_constants();
    let r = Interval::from_ratio(&inputs.r);
    tr.push(TraceNode::new("R", r.clone(), "external literal 9.6459 (truncated, not derived)"));
    tr.push(TraceNode::new("R1", r1.clone(), "(5-sqrt 5)/(15-10*sqrt 2)"));
    let cap = (Interval::from_i64(4) * &r1).recip();
    tr.push(TraceNode::new("1/(4*R1)", cap.clone(), "1/(4*R1)"));

    let c_zfr = Interval::from_ratio(&inputs.c_zfr);
    tr.push(TraceNode::new("c_ZFR", c_zfr.clone(), "input"));
    let ok = c_zfr.certainly_lt(&cap);
    tr.check("c_ZFR < 1/(4 R1)", "c_ZFR < 1/(4*R1)", ok);
    if !ok {
        return Err(constraint("c_ZFR < 1/(4 R1)", format!("c_ZFR = {} is too large", c_zfr.mid())));
    }

    let a = gallagher_a(&inputs.c_zfr)?;
    tr.push(TraceNode::new("a", Interval::from_ratio(&a), "(3/10)*c_ZFR"));
    let c_zd = zero_density_exponent(&inputs.jutila_exp, &inputs.trivial_exp)?;
    tr.push(TraceNode::new("jutila_exp", Interval::from_ratio(&inputs.jutila_exp), "input"));
    tr.push(TraceNode::new("trivial_exp", Interval::from_ratio(&inputs.trivial_exp), "input"));
    tr.push(TraceNode::new(
        "c_ZD",
        Interval::from_i64(c_zd as i64),
        "smallest integer > max(jutila_exp, trivial_exp)",
    ));
    let max_exp = inputs.jutila_exp.clone().max(inputs.trivial_exp.clone());
    tr.check(
        "c_ZD > max exponents",
        "c_ZD > max(jutila_exp, trivial_exp)",
        BigRational::from_integer(c_zd.into()) > max_exp,
    );

    let (d_pap, c_pap) = derive_pap(c_zd, &a)?;
    tr.push(TraceNode::new("D_PAP", d_pap.clone(), "10*c_ZD"));
    tr.push(TraceNode::new("C_PAP", c_pap.clone(), "1-exp(-a*D_PAP)"));

    let c_ub = selberg_c_ub();
    tr.push(
        TraceNode::new("C_UB", c_ub.clone(), "2^2*2!*exp(2*gamma)")
            .child(TraceNode::new("2^2*2!", Interval::from_i64(8), "2^2*2!"))
            .child(TraceNode::new("exp(2*gamma)", (Interval::euler_gamma() * Interval::from_i64(2)).exp(), "exp(2*gamma)")),
    );

    let constants = ZeroRegionConstants {
        r,
        r1,
        c_zfr: inputs.c_zfr.clone(),
        a,
        c_zd,
        jutila_exp: inputs.jutila_exp.clone(),
        trivial_exp: inputs.trivial_exp.clone(),
    };
    Ok(ZeroChain { constants, c_pap, d_pap, c_ub, trace: tr })
}
