//! The explicit constant chain for `G_k(X) >= (c_LG / k^2) log X log2 X log4 X / log3 X`.
//!
//! Every quantity is an [`Interval`] enclosure, so the final `c_LG` comes
//! with a certified error radius. Asymptotic `1 + o(1)` factors are taken as
//! exactly one and the corresponding trace nodes are flagged.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{constraint, domain, Result};
use crate::interval::Interval;
use crate::kv::parse_rational;
use crate::scale::Scale;
use crate::trace::{DerivationTrace, TraceNode};
use crate::zero_region;

/// Tunable inputs of the main bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentConstants {
    /// Level of distribution of the primes.
    pub theta: Interval,
    /// Constant in `sup J_r/I_r >= c_IJ log r / r`.
    pub c_ij: Interval,
    /// Primes in progressions to large moduli: density factor.
    pub c_pap: Interval,
    /// Primes in progressions to large moduli: modulus exponent.
    pub d_pap: Interval,
    /// Upper-bound sieve for prime pairs: leading constant.
    pub c_ub: Interval,
    /// Upper-bound sieve for prime pairs: exponent.
    pub d_ub: Interval,
}

/// Keys accepted in a constants file.
pub const CONSTANT_KEYS: [&str; 6] = ["theta", "c_IJ", "C_PAP", "D_PAP", "C_UB", "D_UB"];

impl Default for ComponentConstants {
    /// `theta = 1/3`, `c_IJ = 1/4`, `D_UB = 1`, and `C_PAP`, `D_PAP`, `C_UB`
    /// re-derived by [`zero_region`].
    fn default() -> Self {
        let chain = zero_region::default_chain().expect("default zero-region chain is well posed");
        ComponentConstants {
            theta: Interval::rational(1, 3),
            c_ij: Interval::rational(1, 4),
            c_pap: chain.c_pap,
            d_pap: chain.d_pap,
            c_ub: chain.c_ub,
            d_ub: Interval::one(),
        }
    }
}

impl ComponentConstants {
    /// Defaults overridden by exact values from a parsed constants file.
    /// Unknown keys are rejected.
    pub fn from_overrides(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut c = Self::default();
        for (k, v) in map {
            let q: BigRational = parse_rational(v)?;
            let iv = Interval::from_ratio(&q);
            match k.as_str() {
                "theta" => c.theta = iv,
                "c_IJ" => c.c_ij = iv,
                "C_PAP" => c.c_pap = iv,
                "D_PAP" => c.d_pap = iv,
                "C_UB" => c.c_ub = iv,
                "D_UB" => c.d_ub = iv,
                other => {
                    return Err(domain(
                        "constants",
                        format!("unknown constant `{other}` (expected one of {CONSTANT_KEYS:?})"),
                    ))
                }
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let one = Interval::one();
        if !(self.theta.is_positive() && self.theta.certainly_lt(&one)) {
            return Err(domain("constants", "theta must lie in (0, 1)"));
        }
        if !self.c_ij.is_positive() {
            return Err(domain("constants", "c_IJ must be positive"));
        }
        if !(self.c_pap.is_positive() && self.c_pap.certainly_le(&one)) {
            return Err(domain("constants", "C_PAP must lie in (0, 1]"));
        }
        if !one.certainly_le(&self.d_pap) {
            return Err(domain("constants", "D_PAP must be >= 1"));
        }
        if !one.certainly_le(&self.c_ub) {
            return Err(domain("constants", "C_UB must be >= 1"));
        }
        if !self.d_ub.is_positive() {
            return Err(domain("constants", "D_UB must be positive"));
        }
        Ok(())
    }

    /// `M = max(D_PAP, D_UB)`.
    pub fn m(&self) -> Interval {
        self.d_pap.max(&self.d_ub)
    }

    pub fn gamma(&self) -> Interval {
        Interval::euler_gamma()
    }
}

fn e_gamma() -> Interval {
    Interval::euler_gamma().exp()
}

fn ln5() -> Interval {
    Interval::from_i64(5).ln().expect("5 > 0")
}

/// `1 + 1/D_PAP`
fn one_plus_inv(d_pap: &Interval) -> Interval {
    Interval::one() + d_pap.recip()
}

/// `25 C_UB + 20 e^gamma M`
fn second_moment_factor(c_ub: &Interval, m: &Interval) -> Interval {
    Interval::from_i64(25) * c_ub + Interval::from_i64(20) * e_gamma() * m
}

/// Sieve scale `c = theta c_IJ / (12800 log 5)`.
pub fn derive_sieve_scale_c(theta: &Interval, c_ij: &Interval) -> Result<Interval> {
    if !theta.is_positive() || !c_ij.is_positive() {
        return Err(domain("derive_sieve_scale_c", "theta and c_IJ must be positive"));
    }
    Ok(theta * c_ij / (Interval::from_i64(12800) * ln5()))
}

/// Survivor population `A = 2 e^-gamma C_PAP^-1 M (1 + 1/D_PAP) k`.
pub fn derive_population_a(c_pap: &Interval, d_pap: &Interval, m: &Interval, k: u64) -> Result<Interval> {
    if k < 1 {
        return Err(domain("derive_population_a", "k must be >= 1"));
    }
    if !c_pap.is_positive() || !d_pap.is_positive() || !m.is_positive() {
        return Err(domain("derive_population_a", "C_PAP, D_PAP and M must be positive"));
    }
    let k = Interval::from_i64(k as i64);
    Ok(Interval::from_i64(2) * (-Interval::euler_gamma()).exp() / c_pap * m * one_plus_inv(d_pap) * k)
}

/// Threshold `c1 = C_PAP e^gamma / (2 (1 + 1/D_PAP) M)`, half the largest admissible value.
pub fn derive_threshold_c1(c_pap: &Interval, d_pap: &Interval, m: &Interval) -> Result<Interval> {
    if !c_pap.is_positive() || !d_pap.is_positive() || !m.is_positive() {
        return Err(domain("derive_threshold_c1", "C_PAP, D_PAP and M must be positive"));
    }
    Ok(c_pap * e_gamma() / (Interval::from_i64(2) * one_plus_inv(d_pap) * m))
}

/// Separation fraction
/// `eps = M^2 / (1800 A^2 C_UB) * e^(2 gamma) / (4 (1 + 1/D_PAP)^2 (25 C_UB + 20 e^gamma M))`.
///
/// A value that is not certainly below one is a constraint violation.
pub fn derive_separation_epsilon(a: &Interval, m: &Interval, c_ub: &Interval, d_pap: &Interval) -> Result<Interval> {
    if !Interval::one().certainly_le(a) {
        return Err(domain("derive_separation_epsilon", "A must be >= 1"));
    }
    if !m.is_positive() || !c_ub.is_positive() || !d_pap.is_positive() {
        return Err(domain("derive_separation_epsilon", "M, C_UB and D_PAP must be positive"));
    }
    let eps = m.sqr() / (Interval::from_i64(1800) * a.sqr() * c_ub) * displayed_probability_bound(c_ub, m, d_pap);
    if !eps.certainly_lt(&Interval::one()) {
        return Err(constraint("epsilon < 1", format!("separation fraction {eps} is not below 1")));
    }
    Ok(eps)
}

/// `e^(2 gamma) / (4 (1 + 1/D_PAP)^2 (25 C_UB + 20 e^gamma M))`, the displayed
/// lower bound on `P(N > c1 A)`. It omits the `C_PAP^2` factor that the exact
/// second-moment computation carries; see [`moment_bounds`].
pub fn displayed_probability_bound(c_ub: &Interval, m: &Interval, d_pap: &Interval) -> Interval {
    Interval::euler_gamma().shl(1).exp()
        / (Interval::from_i64(4) * one_plus_inv(d_pap).sqr() * second_moment_factor(c_ub, m))
}

/// Probability that two primes in the shifted interval are closer than
/// `eps y`, bounded by `1800 eps A^2 C_UB / M^2`.
pub fn collision_probability(eps: &Interval, a: &Interval, c_ub: &Interval, m: &Interval) -> Result<Interval> {
    if !(eps.is_positive() && eps.certainly_lt(&Interval::one())) {
        return Err(domain("collision_probability", "epsilon must lie in (0, 1)"));
    }
    Ok(Interval::from_i64(1800) * eps * a.sqr() * c_ub / m.sqr())
}

/// First- and second-moment bounds for the number `N` of primes in the
/// shifted interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Moments {
    /// `E N >= C_PAP e^gamma A / ((1 + 1/D_PAP) M)`
    pub en_lower: Interval,
    /// `E N^2 <= (25 C_UB + 20 e^gamma M) A^2 / M^2`
    pub en2_upper: Interval,
    /// `P(N > c1 A) >= (E N - c1 A)^2 / E N^2`
    pub prob_lower: Interval,
}

/// Moment bounds with the standard threshold from [`derive_threshold_c1`].
pub fn moment_bounds(a: &Interval, consts: &ComponentConstants) -> Result<Moments> {
    let c1 = derive_threshold_c1(&consts.c_pap, &consts.d_pap, &consts.m())?;
    moment_bounds_with_threshold(a, &c1, consts)
}

/// Moment bounds for an explicit threshold `c1`, which must be below
/// `C_PAP e^gamma / ((1 + 1/D_PAP) M)`.
pub fn moment_bounds_with_threshold(a: &Interval, c1: &Interval, consts: &ComponentConstants) -> Result<Moments> {
    let m = consts.m();
    let limit = &consts.c_pap * e_gamma() / (one_plus_inv(&consts.d_pap) * &m);
    if !c1.certainly_lt(&limit) {
        return Err(domain("moment_bounds", format!("c1 = {c1} must be below {limit}")));
    }
    let en_lower = &limit * a;
    let en2_upper = second_moment_factor(&consts.c_ub, &m) * a.sqr() / m.sqr();
    let gap = &en_lower - c1 * a;
    let prob_lower = gap.sqr() / &en2_upper;
    Ok(Moments { en_lower, en2_upper, prob_lower })
}

/// Closed form
/// `c_LG = C_PAP^2 theta c_IJ e^(4 gamma) /
///   (737280000 log 5 C_UB M (1 + 1/D_PAP)^4 (25 C_UB + 20 e^gamma M))`.
pub fn c_lg_closed_form(consts: &ComponentConstants) -> Interval {
    let m = consts.m();
    let num = consts.c_pap.sqr() * &consts.theta * &consts.c_ij * Interval::euler_gamma().shl(2).exp();
    let den = Interval::from_i64(737_280_000)
        * ln5()
        * &consts.c_ub
        * &m
        * one_plus_inv(&consts.d_pap).powi(4)
        * second_moment_factor(&consts.c_ub, &m);
    num / den
}

/// `(c_LG / k^2) log X log2 X log4 X / log3 X`.
pub fn lower_bound_gk(x: &Scale, k: u64, c_lg: &Interval) -> Result<Interval> {
    if k < 1 {
        return Err(domain("lower_bound_gk", "k must be >= 1"));
    }
    let log4 = x.log4().map_err(|_| domain("lower_bound_gk", "X too small: log4 X must be positive"))?;
    let k2 = Interval::from_i64(k as i64).sqr();
    Ok(c_lg / k2 * x.log() * x.log2()? * log4 / x.log3()?)
}

/// Admissible range of the covering constant `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct CRange {
    /// `theta c_IJ / (9600 c)`
    pub low: Interval,
    /// `theta c_IJ / (4800 c)`
    pub high: Interval,
    /// `C_low >= (5/4) log 5`, the covering requirement.
    pub admissible: bool,
}

pub fn derive_c_range(theta: &Interval, c_ij: &Interval, c: &Interval) -> Result<CRange> {
    if !theta.is_positive() || !c_ij.is_positive() || !c.is_positive() {
        return Err(domain("derive_c_range", "theta, c_IJ and c must be positive"));
    }
    let t = theta * c_ij;
    let low = &t / (Interval::from_i64(9600) * c);
    let high = &t / (Interval::from_i64(4800) * c);
    let floor = Interval::rational(5, 4) * ln5();
    let admissible = !low.certainly_lt(&floor);
    Ok(CRange { low, high, admissible })
}

/// Number of covering rounds and the thinned population.
#[derive(Clone, Debug, PartialEq)]
pub struct MChoice {
    pub m: u64,
    /// `A' = 5^-m 80 c log2 x`
    pub a_prime: Interval,
    /// `m <= log3 x / log 5`, the limit on covering rounds.
    pub within_round_limit: bool,
}

/// `m = floor(log(80 c log2 x / A) / log 5)` and `A' = 5^-m 80 c log2 x`,
/// so that `A <= A' <= 5 A`.
///
/// When the quotient encloses an integer the larger candidate is taken, so
/// an exact power of five yields `A' = A`.
pub fn choose_m(a: &Interval, c: &Interval, x: &Scale) -> Result<MChoice> {
    if !Interval::one().certainly_le(a) {
        return Err(domain("choose_m", "A must be >= 1"));
    }
    if !c.is_positive() {
        return Err(domain("choose_m", "c must be positive"));
    }
    let log2 = x.log2()?;
    let full = Interval::from_i64(80) * c * &log2;
    if full.certainly_lt(a) {
        return Err(constraint("80 c log2 x >= A", format!("80 c log2 x = {full} is below A = {a}")));
    }
    let q = (&full / a).ln().expect("positive ratio") / ln5();
    let m_hi = q.hi().to_f64().floor();
    if m_hi < 0.0 {
        return Err(constraint("m >= 0", format!("covering rounds {q} < 0")));
    }
    let m = m_hi as u64;
    let a_prime = full / Interval::from_i64(5).powi(m as u32);
    let five_a = Interval::from_i64(5) * a;
    if a_prime.certainly_lt(a) || five_a.certainly_lt(&a_prime) {
        return Err(constraint("A <= A' <= 5A", format!("A' = {a_prime} outside [A, 5A]")));
    }
    let limit = x.log3().map(|l3| l3 / ln5());
    let within_round_limit = match limit {
        Ok(lim) => !lim.certainly_lt(&Interval::from_i64(m as i64)),
        Err(_) => false,
    };
    Ok(MChoice { m, a_prime, within_round_limit })
}

/// Main-term values of the sieve-weight pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineTerms {
    /// `u = (phi(B)/B) (log R / log x) r (J/I) / 2` with `R = x^(theta/3)`
    pub u: Interval,
    /// `sigma y / x ~ 80 c log2 x`
    pub sigma_y_coeff: Interval,
    /// `C = (u / sigma) (x / 2y) = u / (160 c log2 x)`
    pub big_c: Interval,
}

/// Evaluates `u`, `sigma y / x` and `C` at their asymptotic main terms; all
/// three drop `1 + o(1)` factors.
pub fn maynard_pipeline(
    x: &Scale,
    r: &Interval,
    phi_b_over_b: &Interval,
    theta: &Interval,
    ji_ratio: &Interval,
    c: &Interval,
) -> Result<PipelineTerms> {
    if phi_b_over_b.certainly_lt(&Interval::rational(1, 2)) || Interval::one().certainly_lt(phi_b_over_b) {
        return Err(domain("maynard_pipeline", "phi(B)/B must lie in [1/2, 1]"));
    }
    if r.certainly_lt(&Interval::from_i64(2)) {
        return Err(domain("maynard_pipeline", "r must be >= 2"));
    }
    if !theta.is_positive() || !c.is_positive() || ji_ratio.is_negative() {
        return Err(domain("maynard_pipeline", "theta, c must be positive and J/I nonnegative"));
    }
    let u = phi_b_over_b * (theta / Interval::from_i64(3)) * (r * ji_ratio / Interval::from_i64(2));
    let sigma_y_coeff = Interval::from_i64(80) * c * x.log2()?;
    let big_c = &u / (Interval::from_i64(2) * &sigma_y_coeff);
    Ok(PipelineTerms { u, sigma_y_coeff, big_c })
}

/// Every intermediate quantity of the chain.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedParams {
    pub c: Interval,
    pub a: Interval,
    pub c1: Interval,
    pub epsilon: Interval,
    pub en_lower: Interval,
    pub en2_upper: Interval,
    pub prob_lower: Interval,
    pub c_lg: Interval,
    pub c_low: Interval,
    pub c_high: Interval,
    pub m: u64,
    pub a_prime: Interval,
    pub epsilon0: Interval,
    pub u: Interval,
    pub sigma_y_coeff: Interval,
}

/// Trace node names of the [`DerivedParams`] fields.
pub const DERIVED_PARAM_NAMES: [&str; 15] = [
    "c", "A", "c1", "epsilon", "EN_lower", "EN2_upper", "prob_lower", "c_LG", "C_low", "C_high", "m", "A_prime",
    "epsilon0", "u", "sigma_y_coeff",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub k: u64,
    pub params: DerivedParams,
    pub trace: DerivationTrace,
}

/// Default `log2 x` at which the covering pipeline is evaluated: `10^6 k`,
/// which makes `80 c log2 x >= A` hold for the default constants at every `k`.
pub fn default_pipeline_log2_x(k: u64) -> Interval {
    Interval::from_i64(1_000_000) * Interval::from_i64(k as i64)
}

/// Runs the whole chain for `k` with the pipeline at [`default_pipeline_log2_x`].
pub fn derive_c_lg(consts: &ComponentConstants, k: u64) -> Result<Derivation> {
    if k < 1 {
        return Err(domain("derive_c_lg", "k must be >= 1"));
    }
    let scale = Scale::from_log2(default_pipeline_log2_x(k))?;
    derive_c_lg_at(consts, k, &scale)
}

pub fn derive_c_lg_at(consts: &ComponentConstants, k: u64, x: &Scale) -> Result<Derivation> {
    consts.validate()?;
    let mut tr = DerivationTrace::default();
    let m = consts.m();
    let kk = Interval::from_i64(k as i64);

    tr.push(TraceNode::new("theta", consts.theta.clone(), "input"));
    tr.push(TraceNode::new("c_IJ", consts.c_ij.clone(), "input"));
    tr.push(TraceNode::new("C_PAP", consts.c_pap.clone(), "input"));
    tr.push(TraceNode::new("D_PAP", consts.d_pap.clone(), "input"));
    tr.push(TraceNode::new("C_UB", consts.c_ub.clone(), "input"));
    tr.push(TraceNode::new("D_UB", consts.d_ub.clone(), "input"));
    tr.push(TraceNode::new("M", m.clone(), "max(D_PAP, D_UB)"));
    tr.push(TraceNode::new("gamma", consts.gamma(), "Euler-Mascheroni constant"));
    tr.push(TraceNode::new("log 5", ln5(), "ln(5)"));
    tr.push(TraceNode::new("k", kk.clone(), "input"));

    let c = derive_sieve_scale_c(&consts.theta, &consts.c_ij)?;
    tr.push(TraceNode::new("c", c.clone(), "theta*c_IJ/(12800*log 5)"));

    let a = derive_population_a(&consts.c_pap, &consts.d_pap, &m, k)?;
    tr.push(TraceNode::new("A", a.clone(), "2*exp(-gamma)*M*(1+1/D_PAP)*k/C_PAP"));

    let c1 = derive_threshold_c1(&consts.c_pap, &consts.d_pap, &m)?;
    tr.push(
        TraceNode::new("c1", c1.clone(), "C_PAP*exp(gamma)/(2*(1+1/D_PAP)*M)")
            .child(TraceNode::new("c1*A/k", &c1 * &a / &kk, "c1*A/k")),
    );

    let epsilon = derive_separation_epsilon(&a, &m, &consts.c_ub, &consts.d_pap)?;
    tr.check("epsilon < 1", "epsilon < 1", true);
    let collision = collision_probability(&epsilon, &a, &consts.c_ub, &m)?;
    let display = displayed_probability_bound(&consts.c_ub, &m, &consts.d_pap);
    tr.push(
        TraceNode::new(
            "epsilon",
            epsilon.clone(),
            "M^2/(1800*A^2*C_UB)*exp(2*gamma)/(4*(1+1/D_PAP)^2*(25*C_UB+20*exp(gamma)*M))",
        )
        .child(TraceNode::new("collision_bound", collision.clone(), "1800*epsilon*A^2*C_UB/M^2")),
    );

    let moments = moment_bounds(&a, consts)?;
    tr.push(
        TraceNode::new("EN_lower", moments.en_lower.clone(), "C_PAP*exp(gamma)*A/((1+1/D_PAP)*M)")
            .asymptotic()
            .child(TraceNode::new("EN_lower/(2k)", &moments.en_lower / (Interval::from_i64(2) * &kk), "EN_lower/(2*k)")),
    );
    tr.push(TraceNode::new("EN2_upper", moments.en2_upper.clone(), "(25*C_UB+20*exp(gamma)*M)*A^2/M^2").asymptotic());
    tr.push(
        TraceNode::new("prob_lower", moments.prob_lower.clone(), "(EN_lower-c1*A)^2/EN2_upper")
            .child(TraceNode::new(
                "displayed_prob_bound",
                display.clone(),
                "exp(2*gamma)/(4*(1+1/D_PAP)^2*(25*C_UB+20*exp(gamma)*M))",
            ))
            .child(TraceNode::new(
                "prob_lower/displayed_prob_bound",
                &moments.prob_lower / &display,
                "prob_lower/displayed_prob_bound (equals C_PAP^2)",
            )),
    );
    let separation_total = &display + &collision;
    tr.push(TraceNode::new(
        "displayed_prob_bound+collision_bound",
        separation_total,
        "displayed_prob_bound+collision_bound",
    ));

    let c_lg = c_lg_closed_form(consts);
    let chain = &c * &epsilon * kk.sqr() / (Interval::from_i64(2) * &m);
    tr.push(
        TraceNode::new(
            "c_LG",
            c_lg.clone(),
            "C_PAP^2*theta*c_IJ*exp(4*gamma)/(737280000*log 5*C_UB*M*(1+1/D_PAP)^4*(25*C_UB+20*exp(gamma)*M))",
        )
        .child(TraceNode::new("c_LG via epsilon", chain.clone(), "c*epsilon*k^2/(2*M)")),
    );
    tr.check("c_LG closed form agrees with chain", "c_LG overlaps c*epsilon*k^2/(2M)", c_lg.overlaps(&chain));

    let range = derive_c_range(&consts.theta, &consts.c_ij, &c)?;
    tr.push(TraceNode::new("C_low", range.low.clone(), "theta*c_IJ/(9600*c)"));
    tr.push(TraceNode::new("C_high", range.high.clone(), "theta*c_IJ/(4800*c)"));
    tr.check("C_low >= (5/4) log 5", "C_low >= 5*log 5/4", range.admissible);

    let log2 = x.log2()?;
    tr.push(TraceNode::new("log2 x", log2.clone(), "pipeline scale"));
    let choice = choose_m(&a, &c, x)?;
    if !choice.within_round_limit {
        return Err(constraint("m <= log3 x / log 5", format!("m = {} exceeds the covering round limit", choice.m)));
    }
    tr.check("A <= A' <= 5A", "A <= A_prime <= 5*A", true);
    tr.check("m <= log3 x / log 5", "m <= log3 x/log 5", true);
    tr.push(TraceNode::new("m", Interval::from_i64(choice.m as i64), "floor(log(80*c*log2 x/A)/log 5)"));
    tr.push(TraceNode::new("A_prime", choice.a_prime.clone(), "5^(-m)*80*c*log2 x"));

    let epsilon0 = &kk * &consts.theta * &consts.c_ij / (Interval::from_i64(160) * &a * ln5());
    tr.push(
        TraceNode::new("epsilon0", epsilon0.clone(), "k*theta*c_IJ/(160*A*log 5)")
            .child(TraceNode::new("A*epsilon0/(80k)", &a * &epsilon0 / (Interval::from_i64(80) * &kk), "A*epsilon0/(80*k)")),
    );

    // r = log^(1/5) x, so log r = log2 x / 5; J/I at its main term c_IJ log r / r
    let log_r = &log2 / Interval::from_i64(5);
    let r = log_r.exp();
    let ji = &consts.c_ij * &log_r / &r;
    let terms = maynard_pipeline(x, &r, &Interval::one(), &consts.theta, &ji, &c)?;
    tr.push(TraceNode::new("u", terms.u.clone(), "(phi(B)/B)*(theta/3)*r*(J/I)/2 with phi(B)/B=1, J/I=c_IJ*log r/r").asymptotic());
    tr.push(TraceNode::new("sigma_y_coeff", terms.sigma_y_coeff.clone(), "80*c*log2 x").asymptotic());
    tr.push(TraceNode::new("C", terms.big_c.clone(), "u/(2*sigma_y_coeff)").asymptotic());

    let params = DerivedParams {
        c,
        a,
        c1,
        epsilon,
        en_lower: moments.en_lower,
        en2_upper: moments.en2_upper,
        prob_lower: moments.prob_lower,
        c_lg,
        c_low: range.low,
        c_high: range.high,
        m: choice.m,
        a_prime: choice.a_prime,
        epsilon0,
        u: terms.u,
        sigma_y_coeff: terms.sigma_y_coeff,
    };
    Ok(Derivation { k, params, trace: tr })
}
