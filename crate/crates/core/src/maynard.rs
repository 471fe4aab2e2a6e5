//! The variational quantity `sup J_r(F) / I_r(F)` over symmetric polynomials
//! supported on the simplex `R_r = {t >= 0, t_1 + ... + t_r <= 1}`.
//!
//! Gram matrices are exact rationals built from the Dirichlet integral
//! `int_{R_r} prod t_i^{a_i} = prod a_i! / (r + sum a_i)!`. The maximization
//! reduces exactly to a standard symmetric eigenproblem, which is then solved
//! in floating point and certified by an exact Rayleigh quotient.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{domain, LabError, Result};

/// Relative agreement demanded between the floating eigenvalue and the
/// exact Rayleigh quotient of its eigenvector.
pub const EIGEN_REL_TOL: f64 = 1e-10;

/// Largest dimension accepted.
pub const MAX_R: usize = 32;
/// Largest total degree accepted.
pub const MAX_DEGREE: u32 = 12;

const FACT_LEN: usize = 35;

fn factorials() -> [u128; FACT_LEN] {
    let mut f = [1u128; FACT_LEN];
    for i in 1..FACT_LEN {
        f[i] = f[i - 1] * i as u128;
    }
    f
}

fn big_factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn overflow() -> LabError {
    LabError::Resource("Gram entry numerator exceeds 128 bits; lower r or degree".into())
}

/// `prod a_i! / (r + sum a_i)!`, the integral of `prod t_i^{a_i}` over `R_r`.
pub fn simplex_monomial_integral(r: usize, exponents: &[i64]) -> Result<BigRational> {
    if exponents.len() != r {
        return Err(domain("simplex_monomial_integral", format!("expected {r} exponents, got {}", exponents.len())));
    }
    if let Some(e) = exponents.iter().find(|&&e| e < 0) {
        return Err(domain("simplex_monomial_integral", format!("negative exponent {e}")));
    }
    let num = exponents.iter().fold(BigInt::one(), |acc, &e| acc * big_factorial(e as u64));
    let total: i64 = exponents.iter().sum();
    Ok(BigRational::new(num, big_factorial(r as u64 + total as u64)))
}

/// Partitions of every `d <= degree` into at most `r` parts, in order of
/// degree and then lexicographically decreasing. Each one stands for the
/// sum of all distinct monomials with that exponent multiset.
pub fn symmetric_basis(r: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=degree {
        rec(d, d, r, &mut Vec::new(), &mut out);
    }
    out
}

fn padded(part: &[u32], r: usize) -> Vec<u32> {
    let mut v = part.to_vec();
    v.resize(r, 0);
    v
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every distinct arrangement of `part` padded with zeros to length `r`.
fn orbit(part: &[u32], r: usize) -> Vec<Vec<u32>> {
    let mut v = padded(part, r);
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

/// Number of distinct arrangements of a multiset.
fn arrangements(items: &[u32], fact: &[u128; FACT_LEN]) -> Result<u128> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut denom = 1u128;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&v| v == sorted[i]).count();
        denom *= fact[j];
        i += j;
    }
    Ok(fact[items.len()] / denom)
}

fn degree_of(part: &[u32]) -> u32 {
    part.iter().sum()
}

/// Term of the `I` form for one pair of monomials, times `(r + d_i + d_j)!`.
fn i_term(s: &[u32], t: &[u32], fact: &[u128; FACT_LEN]) -> Option<u128> {
    s.iter().zip(t).try_fold(1u128, |acc, (&a, &b)| acc.checked_mul(fact[(a + b) as usize]))
}

/// Term of the `J` form for one pair of monomials, times `K (r + 1 + d_i + d_j)!`
/// where `K = (d_i + 1)! (d_j + 1)!`.
fn j_term(s: &[u32], t: &[u32], k: u128, fact: &[u128; FACT_LEN]) -> Option<u128> {
    let r = s.len();
    let (p, q) = (s[r - 1], t[r - 1]);
    let head = i_term(&s[..r - 1], &t[..r - 1], fact)?;
    let lead = k / ((p as u128 + 1) * (q as u128 + 1));
    head.checked_mul(fact[(p + q + 2) as usize])?.checked_mul(lead)
}

/// Two independent summation orders for the Gram entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramRoute {
    /// The full double sum over both orbits.
    Direct,
    /// One orbit fixed by symmetry, weighted by its size.
    Reduced,
}

struct EntrySums {
    i_num: u128,
    j_num: u128,
}

fn entry_direct(r: usize, a: &[u32], b: &[u32], k: u128, fact: &[u128; FACT_LEN]) -> Result<EntrySums> {
    let (oa, ob) = (orbit(a, r), orbit(b, r));
    let (mut i_num, mut j_num) = (0u128, 0u128);
    for s in &oa {
        for t in &ob {
            i_num = i_num.checked_add(i_term(s, t, fact).ok_or_else(overflow)?).ok_or_else(overflow)?;
            j_num = j_num.checked_add(j_term(s, t, k, fact).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
    }
    Ok(EntrySums { i_num, j_num })
}

fn entry_reduced(r: usize, a: &[u32], b: &[u32], k: u128, fact: &[u128; FACT_LEN]) -> Result<EntrySums> {
    let ob = orbit(b, r);
    let fixed = padded(a, r);
    let weight = arrangements(&fixed, fact)?;
    let mut i_sum = 0u128;
    for t in &ob {
        i_sum = i_sum.checked_add(i_term(&fixed, t, fact).ok_or_else(overflow)?).ok_or_else(overflow)?;
    }
    let i_num = i_sum.checked_mul(weight).ok_or_else(overflow)?;

    let mut values = fixed.clone();
    values.sort_unstable();
    values.dedup();
    let mut j_num = 0u128;
    for p in values {
        let mut rest = fixed.clone();
        let pos = rest.iter().position(|&v| v == p).expect("value present");
        rest.remove(pos);
        let w = arrangements(&rest, fact)?;
        rest.push(p);
        let mut sum = 0u128;
        for t in &ob {
            sum = sum.checked_add(j_term(&rest, t, k, fact).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
        j_num = j_num.checked_add(sum.checked_mul(w).ok_or_else(overflow)?).ok_or_else(overflow)?;
    }
    Ok(EntrySums { i_num, j_num })
}

/// Exact symmetric Gram matrices of the `I` and `J` forms on `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gram {
    pub i: Vec<Vec<BigRational>>,
    pub j: Vec<Vec<BigRational>>,
}

fn validate_shape(r: usize, degree: u32) -> Result<()> {
    if r < 1 || r > MAX_R {
        return Err(domain("maynard", format!("r must lie in [1, {MAX_R}], got {r}")));
    }
    if degree > MAX_DEGREE {
        return Err(domain("maynard", format!("degree must be <= {MAX_DEGREE}, got {degree}")));
    }
    Ok(())
}

pub fn gram_matrices(r: usize, basis: &[Vec<u32>], route: GramRoute) -> Result<Gram> {
    let top = basis.iter().map(|b| degree_of(b)).max().unwrap_or(0);
    validate_shape(r, top)?;
    if let Some(b) = basis.iter().find(|b| b.len() > r || b.contains(&0)) {
        return Err(domain("maynard", format!("{b:?} is not a partition with at most {r} parts")));
    }
    if r + 1 + 2 * top as usize >= FACT_LEN {
        return Err(overflow());
    }
    let fact = factorials();
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let entries: Vec<((usize, usize), BigRational, BigRational)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&basis[i], &basis[j]);
            let (di, dj) = (degree_of(a), degree_of(b));
            let k = fact[di as usize + 1] * fact[dj as usize + 1];
            let sums = match route {
                GramRoute::Direct => entry_direct(r, a, b, k, &fact)?,
                GramRoute::Reduced => entry_reduced(r, a, b, k, &fact)?,
            };
            let base = r as u64 + (di + dj) as u64;
            let iv = BigRational::new(BigInt::from(sums.i_num), big_factorial(base));
            let jv = BigRational::new(BigInt::from(sums.j_num), BigInt::from(k) * big_factorial(base + 1));
            Ok(((i, j), iv, jv))
        })
        .collect::<Result<_>>()?;
    let mut gi = vec![vec![BigRational::zero(); n]; n];
    let mut gj = gi.clone();
    for ((i, j), iv, jv) in entries {
        gi[j][i] = iv.clone();
        gi[i][j] = iv;
        gj[j][i] = jv.clone();
        gj[i][j] = jv;
    }
    Ok(Gram { i: gi, j: gj })
}

fn quad_form(m: &[Vec<BigRational>], c: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (j, cj) in c.iter().enumerate() {
            acc += ci * &m[i][j] * cj;
        }
    }
    acc
}

/// A symmetric polynomial `F = sum c_b m_b` on `R_r`, `m_b` the monomial
/// symmetric function of the partition `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricPolynomial {
    pub r: usize,
    pub basis: Vec<Vec<u32>>,
    pub coefficients: Vec<BigRational>,
}

impl SymmetricPolynomial {
    pub fn new(r: usize, basis: Vec<Vec<u32>>, coefficients: Vec<BigRational>) -> Result<Self> {
        if basis.len() != coefficients.len() {
            return Err(domain("SymmetricPolynomial", "basis and coefficients differ in length"));
        }
        let mut basis = basis;
        for b in &mut basis {
            b.retain(|&e| e > 0);
            b.sort_unstable_by(|x, y| y.cmp(x));
            if b.len() > r {
                return Err(domain("SymmetricPolynomial", format!("{b:?} has more than {r} parts")));
            }
        }
        let top = basis.iter().map(|b| degree_of(b)).max().unwrap_or(0);
        validate_shape(r, top)?;
        Ok(SymmetricPolynomial { r, basis, coefficients })
    }

    pub fn constant(r: usize, value: BigRational) -> Result<Self> {
        Self::new(r, vec![vec![]], vec![value])
    }

    pub fn scaled(&self, lambda: &BigRational) -> Self {
        let coefficients = self.coefficients.iter().map(|c| c * lambda).collect();
        SymmetricPolynomial { coefficients, ..self.clone() }
    }

    /// Value at a point of `R^r`, by expanding every orbit.
    pub fn eval(&self, t: &[f64]) -> f64 {
        self.basis
            .iter()
            .zip(&self.coefficients)
            .map(|(b, c)| {
                let s: f64 = orbit(b, self.r)
                    .iter()
                    .map(|e| e.iter().zip(t).map(|(&k, &x)| x.powi(k as i32)).product::<f64>())
                    .sum();
                c.to_f64().unwrap_or(f64::NAN) * s
            })
            .sum()
    }
}

/// `I_r(F) = int_{R_r} F^2`.
pub fn compute_i(f: &SymmetricPolynomial) -> Result<BigRational> {
    let g = gram_matrices(f.r, &f.basis, GramRoute::Reduced)?;
    Ok(quad_form(&g.i, &f.coefficients))
}

/// `J_r(F) = int_{R_{r-1}} (int_0^{1 - t_1 - ... - t_{r-1}} F dt_r)^2`, read as
/// `(int_0^1 F)^2` when `r = 1`.
pub fn compute_j(f: &SymmetricPolynomial) -> Result<BigRational> {
    let g = gram_matrices(f.r, &f.basis, GramRoute::Reduced)?;
    Ok(quad_form(&g.j, &f.coefficients))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioResult {
    pub r: usize,
    pub degree: u32,
    /// Exact Rayleigh quotient of the returned coefficients.
    pub ratio_exact: BigRational,
    pub ratio: f64,
    /// Largest eigenvalue from the floating-point solve.
    pub eigenvalue: f64,
    pub basis: Vec<Vec<u32>>,
    /// Optimizer, scaled so its largest entry is 1.
    pub coefficients: Vec<BigRational>,
    pub gram_i: Vec<Vec<BigRational>>,
    pub gram_j: Vec<Vec<BigRational>>,
    /// `max D / min D` of the exact `L D L^T` factorization of `gram_i`.
    pub pivot_spread: f64,
}

/// Exact `L D L^T`; fails unless every pivot is positive.
fn ldl(g: &[Vec<BigRational>]) -> Result<(Vec<Vec<BigRational>>, Vec<BigRational>)> {
    let n = g.len();
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut dj = g[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if !dj.is_positive() {
            return Err(LabError::Conditioning {
                basis_size: n,
                msg: format!("gram_I is not positive definite (pivot {j} is {dj})"),
            });
        }
        l[j][j] = BigRational::one();
        for i in j + 1..n {
            let mut v = g[i][j].clone();
            for k in 0..j {
                v -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = v / &dj;
        }
        d[j] = dj;
    }
    Ok((l, d))
}

/// Solves `L x = b` for unit lower-triangular `L`.
fn forward(l: &[Vec<BigRational>], b: &[BigRational]) -> Vec<BigRational> {
    let mut x: Vec<BigRational> = Vec::with_capacity(b.len());
    for i in 0..b.len() {
        let mut v = b[i].clone();
        for k in 0..i {
            v -= &l[i][k] * &x[k];
        }
        x.push(v);
    }
    x
}

/// Solves `L^T x = b` for unit lower-triangular `L`.
fn backward(l: &[Vec<BigRational>], b: &[BigRational]) -> Vec<BigRational> {
    let n = b.len();
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut v = b[i].clone();
        for k in i + 1..n {
            v -= &l[k][i] * &x[k];
        }
        x[i] = v;
    }
    x
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Maximizes `J_r / I_r` over symmetric polynomials of degree at most `degree`.
pub fn maximize_ratio(r: usize, degree: u32) -> Result<RatioResult> {
    validate_shape(r, degree)?;
    let basis = symmetric_basis(r, degree);
    let n = basis.len();
    let gram = gram_matrices(r, &basis, GramRoute::Reduced)?;
    let (l, d) = ldl(&gram.i)?;

    // B = L^-1 J L^-T, exactly
    let cols: Vec<Vec<BigRational>> =
        (0..n).into_par_iter().map(|c| forward(&l, &gram.j.iter().map(|row| row[c].clone()).collect::<Vec<_>>())).collect();
    // cols[c] is column c of L^-1 J, i.e. row c of (L^-1 J)^T = J L^-T
    let b_cols: Vec<Vec<BigRational>> = (0..n)
        .into_par_iter()
        .map(|c| forward(&l, &(0..n).map(|i| cols[i][c].clone()).collect::<Vec<_>>()))
        .collect();

    let d_f: Vec<f64> = d.iter().map(to_f64).collect();
    let spread = d_f.iter().cloned().fold(0.0, f64::max) / d_f.iter().cloned().fold(f64::INFINITY, f64::min);
    if !spread.is_finite() || d_f.iter().any(|&v| v <= 0.0 || !v.is_finite()) {
        return Err(LabError::Conditioning {
            basis_size: n,
            msg: format!("pivots of gram_I leave the floating-point range (spread {spread:e})"),
        });
    }
    let m = DMatrix::from_fn(n, n, |i, j| {
        let bij = &b_cols[j][i];
        let mag = to_f64(&(bij * bij / (&d[i] * &d[j]))).sqrt();
        if bij.is_negative() {
            -mag
        } else {
            mag
        }
    });
    let m = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(m);
    let (top, lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
    let w = eig.eigenvectors.column(top);

    let y: Vec<BigRational> = (0..n)
        .map(|i| BigRational::from_float(w[i] / d_f[i].sqrt()).unwrap_or_else(BigRational::zero))
        .collect();
    let mut c = backward(&l, &y);
    let pivot = c.iter().fold(BigRational::zero(), |m, v| if v.abs() > m.abs() { v.clone() } else { m });
    if pivot.is_zero() {
        return Err(LabError::Conditioning { basis_size: n, msg: "eigenvector vanished".into() });
    }
    for v in &mut c {
        *v = &*v / &pivot;
    }
    let ratio_exact = quad_form(&gram.j, &c) / quad_form(&gram.i, &c);
    let ratio = to_f64(&ratio_exact);
    if (lambda - ratio).abs() > EIGEN_REL_TOL * lambda.abs().max(f64::MIN_POSITIVE) {
        return Err(LabError::Conditioning {
            basis_size: n,
            msg: format!("eigenvalue {lambda:e} and Rayleigh quotient {ratio:e} disagree"),
        });
    }
    Ok(RatioResult {
        r,
        degree,
        ratio_exact,
        ratio,
        eigenvalue: lambda,
        basis,
        coefficients: c,
        gram_i: gram.i,
        gram_j: gram.j,
        pivot_spread: spread,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CijCheck {
    pub pass: bool,
    /// `ratio - c_IJ log r / r`
    pub margin: f64,
}

/// Compares a ratio with `c_IJ log r / r`.
pub fn check_cij_bound(r: usize, ratio: f64, c_ij: f64) -> Result<CijCheck> {
    if r < 2 {
        return Err(domain("check_cIJ_bound", "r must be >= 2"));
    }
    let margin = ratio - c_ij * (r as f64).ln() / r as f64;
    Ok(CijCheck { pass: margin >= 0.0, margin })
}
