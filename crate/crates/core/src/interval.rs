//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! Every value is an enclosure `[lo, hi]` whose endpoints are exact
//! `mantissa * 2^exponent` numbers. Each operation rounds its lower endpoint
//! toward negative infinity and its upper endpoint toward positive infinity,
//! so the true real result always lies inside the returned interval.
//! Transcendental functions add explicit series-remainder bounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Working precision of every arithmetic operation, in significant bits
/// (about 77 decimal digits).
pub const PRECISION: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    Down,
    Up,
}

/// An exact binary fraction `mant * 2^exp`, kept normalized (odd mantissa).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn bit_len(n: &BigInt) -> u64 {
    n.magnitude().bits()
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// `x * 2^e` without intermediate overflow or underflow.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic { mant: mant >> tz, exp: exp + tz as i64 }
        } else {
            Dyadic { mant, exp }
        }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Self::new(n.into(), 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot represent {x} as a dyadic");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), raw_exp - 1075)
        };
        Self::new(BigInt::from(m) * sign, e)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    /// Multiply by `2^k` exactly.
    pub fn shl(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    fn round(&self, prec: u64, dir: Dir) -> Dyadic {
        let b = bit_len(&self.mant);
        if b <= prec {
            return self.clone();
        }
        let s = b - prec;
        let d = pow2(s);
        let m = match dir {
            Dir::Down => floor_div(&self.mant, &d),
            Dir::Up => ceil_div(&self.mant, &d),
        };
        Dyadic::new(m, self.exp + s as i64)
    }

    fn div(&self, o: &Dyadic, prec: u64, dir: Dir) -> Dyadic {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let need = prec as i64 + 2 + bit_len(&o.mant) as i64 - bit_len(&self.mant) as i64;
        let s = need.max(0) as u64;
        let num = &self.mant << s;
        let q = match dir {
            Dir::Down => floor_div(&num, &o.mant),
            Dir::Up => ceil_div(&num, &o.mant),
        };
        Dyadic::new(q, self.exp - o.exp - s as i64).round(prec, dir)
    }

    /// Nearest-ish `f64`; intended for reporting, not for bounds.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = bit_len(&self.mant);
        let (m, e) = if b > 64 {
            let s = b - 64;
            (&self.mant >> s, self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        ldexp(m.to_f64().unwrap_or(f64::NAN), e)
    }

    /// Floor of `self * 10^t`.
    fn scaled_decimal(&self, t: i64, dir: Dir) -> BigInt {
        let mut num = self.mant.clone();
        let mut den = BigInt::one();
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let ten = BigInt::from(10u32);
        if t >= 0 {
            num *= num_traits::pow(ten, t as usize);
        } else {
            den *= num_traits::pow(ten, (-t) as usize);
        }
        match dir {
            Dir::Down => floor_div(&num, &den),
            Dir::Up => ceil_div(&num, &den),
        }
    }

    /// Scientific decimal with `digits` significant digits, rounded in `dir`.
    fn to_decimal(&self, digits: usize, dir: Dir) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let approx = self.to_f64().abs();
        let mut e10 = if approx.is_finite() && approx > 0.0 {
            approx.log10().floor() as i64
        } else {
            // far outside f64 range: estimate from the binary exponent
            ((bit_len(&self.mant) as i64 + self.exp) as f64 * std::f64::consts::LOG10_2) as i64
        };
        loop {
            let t = digits as i64 - 1 - e10;
            let n = self.scaled_decimal(t, dir);
            let s = n.magnitude().to_string();
            if s.len() > digits {
                e10 += 1;
                continue;
            }
            if s.len() < digits {
                e10 -= 1;
                continue;
            }
            let sign = if n.is_negative() { "-" } else { "" };
            let (head, tail) = s.split_at(1);
            return if tail.is_empty() {
                format!("{sign}{head}e{e10}")
            } else {
                format!("{sign}{head}.{tail}e{e10}")
            };
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        self.add(&o.neg()).signum().cmp(&0)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn exact(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::exact(Dyadic::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    /// Exact enclosure of a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        Self::exact(Dyadic::from_f64(x))
    }

    pub fn from_ratio(q: &BigRational) -> Self {
        Self::from_ratio_at(q, PRECISION)
    }

    fn from_ratio_at(q: &BigRational, prec: u64) -> Self {
        let n = Dyadic::from_int(q.numer().clone());
        let d = Dyadic::from_int(q.denom().clone());
        Interval { lo: n.div(&d, prec, Dir::Down), hi: n.div(&d, prec, Dir::Up) }
    }

    /// `num / den` as an enclosure.
    pub fn rational(num: i64, den: i64) -> Self {
        Self::from_ratio(&BigRational::new(num.into(), den.into()))
    }

    /// Builds `[lo, hi]`; panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn mid(&self) -> f64 {
        self.lo.add(&self.hi).shl(-1).to_f64()
    }

    /// Half-width, rounded up to the next `f64`.
    pub fn radius(&self) -> f64 {
        let r = self.hi.add(&self.lo.neg()).shl(-1).to_f64();
        if r == 0.0 {
            0.0
        } else {
            r.next_up()
        }
    }

    /// `(hi - lo) / |midpoint|`; infinite when the midpoint is zero and the width is not.
    pub fn rel_width(&self) -> f64 {
        let w = self.hi.add(&self.lo.neg());
        if w.is_zero() {
            return 0.0;
        }
        let m = self.lo.add(&self.hi).shl(-1);
        if m.is_zero() {
            return f64::INFINITY;
        }
        let q = w.div(&m, 64, Dir::Up);
        q.to_f64().abs()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.contains(&Dyadic::from_f64(x))
    }

    /// True when every point of `self` is strictly below every point of `o`.
    pub fn certainly_lt(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    pub fn certainly_le(&self, o: &Interval) -> bool {
        self.hi <= o.lo
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Lower and upper endpoints in decimal, rounded outward.
    pub fn to_decimal_bounds(&self, digits: usize) -> (String, String) {
        (self.lo.to_decimal(digits, Dir::Down), self.hi.to_decimal(digits, Dir::Up))
    }

    pub fn max(&self, o: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).max(&o.lo).clone(),
            hi: (&self.hi).max(&o.hi).clone(),
        }
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).min(&o.lo).clone(),
            hi: (&self.hi).min(&o.hi).clone(),
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            let m = (&self.hi).max(&self.lo.neg()).clone();
            Interval { lo: Dyadic::zero(), hi: m }
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn shl(&self, k: i64) -> Interval {
        Interval { lo: self.lo.shl(k), hi: self.hi.shl(k) }
    }

    fn round_at(&self, prec: u64) -> Interval {
        Interval { lo: self.lo.round(prec, Dir::Down), hi: self.hi.round(prec, Dir::Up) }
    }

    fn add_at(&self, o: &Interval, prec: u64) -> Interval {
        Interval {
            lo: self.lo.add(&o.lo).round(prec, Dir::Down),
            hi: self.hi.add(&o.hi).round(prec, Dir::Up),
        }
    }

    fn mul_at(&self, o: &Interval, prec: u64) -> Interval {
        let p = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = p.iter().min().unwrap().round(prec, Dir::Down);
        let hi = p.iter().max().unwrap().round(prec, Dir::Up);
        Interval { lo, hi }
    }

    fn recip_at(&self, prec: u64) -> Interval {
        assert!(!self.contains_zero(), "interval reciprocal of a range containing zero");
        let one = Dyadic::from_int(1);
        Interval { lo: one.div(&self.hi, prec, Dir::Down), hi: one.div(&self.lo, prec, Dir::Up) }
    }

    fn div_at(&self, o: &Interval, prec: u64) -> Interval {
        assert!(!o.contains_zero(), "interval division by a range containing zero");
        let q = [
            self.lo.div(&o.lo, prec, Dir::Down),
            self.lo.div(&o.hi, prec, Dir::Down),
            self.hi.div(&o.lo, prec, Dir::Down),
            self.hi.div(&o.hi, prec, Dir::Down),
        ];
        let r = [
            self.lo.div(&o.lo, prec, Dir::Up),
            self.lo.div(&o.hi, prec, Dir::Up),
            self.hi.div(&o.lo, prec, Dir::Up),
            self.hi.div(&o.hi, prec, Dir::Up),
        ];
        Interval { lo: q.iter().min().unwrap().clone(), hi: r.iter().max().unwrap().clone() }
    }

    pub fn checked_div(&self, o: &Interval) -> Option<Interval> {
        (!o.contains_zero()).then(|| self.div_at(o, PRECISION))
    }

    pub fn recip(&self) -> Interval {
        self.recip_at(PRECISION)
    }

    pub fn sqr(&self) -> Interval {
        self.abs().mul_at(&self.abs(), PRECISION)
    }

    pub fn powi(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::one();
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul_at(self, PRECISION);
        }
        if n % 2 == 0 {
            // even power of a range straddling zero is nonnegative
            if acc.lo.signum() < 0 {
                acc.lo = Dyadic::zero();
            }
        }
        acc
    }

    /// Square root; `None` when the interval reaches below zero.
    pub fn sqrt(&self) -> Option<Interval> {
        if self.lo.signum() < 0 {
            return None;
        }
        Some(Interval {
            lo: sqrt_point(&self.lo, PRECISION).lo,
            hi: sqrt_point(&self.hi, PRECISION).hi,
        })
    }

    /// Natural logarithm; `None` unless the interval is strictly positive.
    pub fn ln(&self) -> Option<Interval> {
        if !self.is_positive() {
            return None;
        }
        Some(Interval {
            lo: ln_point(&self.lo, PRECISION).lo,
            hi: ln_point(&self.hi, PRECISION).hi,
        })
    }

    pub fn exp(&self) -> Interval {
        Interval {
            lo: exp_point(&self.lo, PRECISION).lo,
            hi: exp_point(&self.hi, PRECISION).hi,
        }
    }

    /// The Euler–Mascheroni constant at working precision.
    pub fn euler_gamma() -> Interval {
        static GAMMA: OnceLock<Interval> = OnceLock::new();
        GAMMA.get_or_init(|| euler_gamma_at(PRECISION)).clone()
    }

    pub fn ln2() -> Interval {
        static LN2: OnceLock<Interval> = OnceLock::new();
        LN2.get_or_init(|| ln2_at(PRECISION + 16).round_at(PRECISION)).clone()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_bounds(20);
        write!(f, "[{lo}, {hi}]")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Interval> for &Interval {
            type Output = Interval;
            fn $method(self, o: &Interval) -> Interval {
                let f: fn(&Interval, &Interval) -> Interval = $body;
                f(self, o)
            }
        }
        impl $trait<Interval> for Interval {
            type Output = Interval;
            fn $method(self, o: Interval) -> Interval {
                (&self).$method(&o)
            }
        }
        impl $trait<&Interval> for Interval {
            type Output = Interval;
            fn $method(self, o: &Interval) -> Interval {
                (&self).$method(o)
            }
        }
        impl $trait<Interval> for &Interval {
            type Output = Interval;
            fn $method(self, o: Interval) -> Interval {
                self.$method(&o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_at(b, PRECISION));
forward_binop!(Sub, sub, |a, b| a.add_at(&-b, PRECISION));
forward_binop!(Mul, mul, |a, b| a.mul_at(b, PRECISION));
forward_binop!(Div, div, |a, b| a.div_at(b, PRECISION));

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

impl From<i64> for Interval {
    fn from(n: i64) -> Self {
        Interval::from_i64(n)
    }
}

fn sqrt_point(d: &Dyadic, prec: u64) -> Interval {
    if d.is_zero() {
        return Interval::zero();
    }
    let b = bit_len(&d.mant);
    let want = 2 * prec + 4;
    let mut s = want.saturating_sub(b);
    if (d.exp - s as i64).rem_euclid(2) != 0 {
        s += 1;
    }
    let m = &d.mant << s;
    let e = (d.exp - s as i64) / 2;
    let r = m.sqrt();
    let exact = &r * &r == m;
    let lo = Dyadic::new(r.clone(), e).round(prec, Dir::Down);
    let hi_m = if exact { r } else { r + 1 };
    let hi = Dyadic::new(hi_m, e).round(prec, Dir::Up);
    Interval { lo, hi }
}

/// `atanh(t) = sum t^(2j+1)/(2j+1)` for an enclosure `0 <= t <= 1/2`.
fn atanh_series(t: &Interval, wp: u64) -> Interval {
    if t.hi.is_zero() {
        return Interval::zero();
    }
    let t2 = t.mul_at(t, wp);
    let eps = Dyadic::new(BigInt::one(), -(wp as i64) - 4);
    let mut term = t.clone();
    let mut sum = Interval::zero();
    let mut j: i64 = 0;
    loop {
        let denom = Interval::from_i64(2 * j + 1);
        sum = sum.add_at(&term.div_at(&denom, wp), wp);
        term = term.mul_at(&t2, wp);
        j += 1;
        if term.hi < eps {
            break;
        }
    }
    // tail <= t^(2j+1) / ((2j+1)(1 - t^2)) and 1/(1 - t^2) <= 4/3 for t <= 1/2
    let tail = term.hi.mul(&Dyadic::from_int(4)).div(&Dyadic::from_int(3 * (2 * j + 1)), wp, Dir::Up);
    sum.add_at(&Interval { lo: Dyadic::zero(), hi: tail }, wp)
}

fn ln2_at(wp: u64) -> Interval {
    let third = Interval::from_ratio_at(&BigRational::new(1.into(), 3.into()), wp + 8);
    atanh_series(&third, wp + 8).shl(1).round_at(wp)
}

fn ln_point(d: &Dyadic, prec: u64) -> Interval {
    assert!(d.signum() > 0, "logarithm of a nonpositive number");
    let b = bit_len(&d.mant) as i64;
    let k = b - 1 + d.exp;
    // f = d / 2^k lies in [1, 2)
    let f = Dyadic { mant: d.mant.clone(), exp: -(b - 1) };
    let wp = prec + 32 + (64 - (k.unsigned_abs()).leading_zeros() as u64);
    let fi = Interval::exact(f);
    let one = Interval::one();
    let t = fi.add_at(&-&one, wp).div_at(&fi.add_at(&one, wp), wp);
    let mut out = atanh_series(&t, wp).shl(1);
    if k != 0 {
        out = out.add_at(&ln2_at(wp).mul_at(&Interval::from_i64(k), wp), wp);
    }
    out.round_at(prec)
}

fn exp_point(d: &Dyadic, prec: u64) -> Interval {
    if d.is_zero() {
        return Interval::one();
    }
    const HALVINGS: i64 = 12;
    let approx = d.to_f64();
    assert!(approx.abs() < 1e15, "exponential argument {approx} out of range");
    let k = (approx / std::f64::consts::LN_2).round() as i64;
    let wp = prec + 48 + (64 - k.unsigned_abs().leading_zeros() as u64) + HALVINGS as u64;
    let r = Interval::exact(d.clone()).add_at(&-(ln2_at(wp).mul_at(&Interval::from_i64(k), wp)), wp);
    let r = r.shl(-HALVINGS);
    let rmax = (&r.lo.neg()).max(&r.hi).clone();
    let eps = Dyadic::new(BigInt::one(), -(wp as i64) - 8);
    let mut sum = Interval::one();
    let mut term = Interval::one();
    let mut n: i64 = 0;
    loop {
        n += 1;
        term = term.mul_at(&r, wp).div_at(&Interval::from_i64(n), wp);
        sum = sum.add_at(&term, wp);
        if term.abs().hi < eps {
            break;
        }
    }
    // tail <= |r|^(n+1)/(n+1)! * 1/(1-|r|) <= 2 |term| |r| / (n+1) for |r| < 1/2
    let tail = term
        .abs()
        .hi
        .mul(&rmax)
        .mul(&Dyadic::from_int(2))
        .div(&Dyadic::from_int(n + 1), wp, Dir::Up);
    sum = sum.add_at(&Interval { lo: tail.neg(), hi: tail }, wp);
    for _ in 0..HALVINGS {
        sum = sum.mul_at(&sum, wp);
    }
    sum.shl(k).round_at(prec)
}

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut binom_row: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..=n {
        // binom_row holds C(m+1, k) for k = 0..=m+1
        let mut next = vec![BigInt::one(); m + 2];
        for k in 1..=m {
            next[k] = &binom_row[k - 1] + &binom_row[k];
        }
        binom_row = next;
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom_row[k].clone());
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m as u64 + 1)));
    }
    b
}

/// `gamma = H_n - ln n - 1/(2n) + sum_{k<=m} B_2k / (2k n^2k)`, with the
/// remainder bounded by the first omitted term.
fn euler_gamma_at(prec: u64) -> Interval {
    const N: i64 = 128;
    let wp = prec + 32;
    let n = BigInt::from(N);
    let threshold = BigRational::new(BigInt::one(), pow2(wp + 4));
    let mut m = 1usize;
    let bern = loop {
        let b = bernoulli_numbers(2 * m + 2);
        let next = b[2 * m + 2].abs()
            / BigRational::from_integer(BigInt::from(2 * m as u64 + 2) * num_traits::pow(n.clone(), 2 * m + 2));
        if next < threshold {
            break b;
        }
        m += 2;
    };
    let mut s = BigRational::zero();
    for i in 1..=N {
        s += BigRational::new(BigInt::one(), BigInt::from(i));
    }
    s -= BigRational::new(BigInt::one(), BigInt::from(2 * N));
    for k in 1..=m {
        s += &bern[2 * k] / BigRational::from_integer(BigInt::from(2 * k as u64) * num_traits::pow(n.clone(), 2 * k));
    }
    let rem = bern[2 * m + 2].abs()
        / BigRational::from_integer(BigInt::from(2 * m as u64 + 2) * num_traits::pow(n.clone(), 2 * m + 2));
    let rem_hi = Interval::from_ratio_at(&rem, wp).hi;
    let core = Interval::from_ratio_at(&s, wp).add_at(&-ln_point(&Dyadic::from_int(N), wp), wp);
    core.add_at(&Interval { lo: rem_hi.neg(), hi: rem_hi }, wp).round_at(prec)
}
