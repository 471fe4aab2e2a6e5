//! Desk-scale simulator of the residue-class construction.
//!
//! Three disjoint prime sets are formed,
//! `S ⊂ (s_min, z]`, `P ⊂ (x/2, x]` and `Q ⊂ (x, y]`, all avoiding `B0`.
//! Residues are then chosen for the sieving primes, and the survivors
//! `T ⊂ (x, y]` are reported together with their band counts.
//!
//! At any machine-feasible `x` the asymptotic choices of `y`, `z` and `s_min`
//! leave `S` or `Q` empty, so every parameter can be overridden and each
//! system carries the label `paper-regime` (no overrides) or `toy-regime`.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::constants::{derive_sieve_scale_c, ComponentConstants};
use crate::error::{domain, Result};
use crate::sieve_lab::primality::is_prime_u64;
use crate::sieve_lab::table::segmented_sieve;

const CHUNK: usize = 1 << 16;

/// Explicit values replacing the asymptotic parameter formulas.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub c: Option<f64>,
    pub s_min: Option<f64>,
    pub y: Option<f64>,
    pub z: Option<f64>,
}

impl Overrides {
    pub fn is_empty(&self) -> bool {
        self.c.is_none() && self.s_min.is_none() && self.y.is_none() && self.z.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Every parameter from its asymptotic formula.
    Default,
    /// At least one parameter overridden.
    Toy,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Default => "paper-regime",
            Regime::Toy => "toy-regime",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SieveSystem {
    pub x: u64,
    pub y: f64,
    pub z: f64,
    pub c: f64,
    pub s_min: f64,
    pub b0: u64,
    /// Whether `B0 = 1` or `log x <= B0 <= x`.
    pub b0_in_range: bool,
    pub s: Vec<u64>,
    pub p_set: Vec<u64>,
    pub q: Vec<u64>,
    pub regime: Regime,
    pub warnings: Vec<String>,
}

impl SieveSystem {
    /// Integer upper end of `(x, y]`.
    pub fn y_floor(&self) -> u64 {
        floor_u64(self.y)
    }

    /// Every prime `p <= x` other than `B0`.
    pub fn all_sieving_primes(&self) -> Vec<u64> {
        segmented_sieve(0, self.x).map(|t| t.primes()).unwrap_or_default().into_iter().filter(|&p| p != self.b0).collect()
    }
}

fn floor_u64(v: f64) -> u64 {
    if v <= 0.0 || v.is_nan() {
        0
    } else {
        v.floor().min(u64::MAX as f64) as u64
    }
}

/// `c` at the default constants, `theta c_IJ / (12800 log 5)`.
pub fn default_c() -> f64 {
    let d = ComponentConstants::default();
    derive_sieve_scale_c(&d.theta, &d.c_ij).expect("default constants are valid").mid()
}

/// Builds `S`, `P`, `Q` with `y = c x log x log3 x / log2 x`,
/// `z = x^{log3 x / (4 log2 x)}` and `s_min = log^20 x` unless overridden.
pub fn build_prime_sets(x: u64, b0: u64, overrides: &Overrides) -> Result<SieveSystem> {
    if x < 10 {
        return Err(domain("build_prime_sets", format!("x must be >= 10, got {x}")));
    }
    if b0 != 1 && !is_prime_u64(b0) {
        return Err(domain("build_prime_sets", format!("B0 = {b0} must be 1 or prime")));
    }
    let xf = x as f64;
    let (l1, l2) = (xf.ln(), xf.ln().ln());
    let l3 = l2.ln();
    let needs_formula = overrides.y.is_none() || overrides.z.is_none();
    if needs_formula && l3 <= 0.0 {
        return Err(domain(
            "build_prime_sets",
            format!("log3 x = {l3:.4} <= 0 at x = {x}; override both y and z for this x"),
        ));
    }
    let c = overrides.c.unwrap_or_else(default_c);
    if c <= 0.0 || !c.is_finite() {
        return Err(domain("build_prime_sets", "c must be positive"));
    }
    let y = overrides.y.unwrap_or(c * xf * l1 * l3 / l2);
    let z = overrides.z.unwrap_or((l1 * l3 / (4.0 * l2)).exp());
    let s_min = overrides.s_min.unwrap_or(l1.powi(20));
    if !(y.is_finite() && z.is_finite() && s_min.is_finite()) {
        return Err(domain("build_prime_sets", "y, z and s_min must be finite"));
    }

    let top = x.max(floor_u64(y)).max(floor_u64(z).min(x));
    let primes = segmented_sieve(0, top)?.primes();
    let keep = |p: &u64| *p != b0;
    let s: Vec<u64> = primes.iter().copied().filter(|&p| (p as f64) > s_min && (p as f64) <= z && p <= x).filter(keep).collect();
    let p_set: Vec<u64> = primes.iter().copied().filter(|&p| 2 * p > x && p <= x).filter(keep).collect();
    let q: Vec<u64> = primes.iter().copied().filter(|&p| p > x && (p as f64) <= y).filter(keep).collect();

    let b0_in_range = b0 == 1 || (l1 <= b0 as f64 && b0 <= x);
    let regime = if overrides.is_empty() { Regime::Default } else { Regime::Toy };
    let mut warnings = Vec::new();
    if z > xf {
        warnings.push(format!("z = {z:.6e} exceeds x; S is truncated at x"));
    }
    if s.is_empty() {
        warnings.push(format!("S is empty: no primes in (s_min, z] = ({s_min:.6e}, {z:.6e}]"));
    }
    if y <= xf {
        warnings.push(format!("y = {y:.6e} <= x = {x}: Q is empty"));
    } else if q.is_empty() {
        warnings.push(format!("Q is empty: no primes in ({x}, {y:.6e}]"));
    }
    if p_set.is_empty() {
        warnings.push("P is empty".to_string());
    }
    if !b0_in_range {
        warnings.push(format!("B0 = {b0} is outside [log x, x]"));
    }
    Ok(SieveSystem { x, y, z, c, s_min, b0, b0_in_range, s, p_set, q, regime, warnings })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    UniformRandom,
    ZeroClass,
    /// Each prime in turn takes the class removing the most current survivors.
    GreedyCover,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::UniformRandom => "uniform-random",
            Strategy::ZeroClass => "zero-class",
            Strategy::GreedyCover => "greedy-cover",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "uniform" | "uniform-random" => Ok(Strategy::UniformRandom),
            "zero" | "zero-class" => Ok(Strategy::ZeroClass),
            "greedy" | "greedy-cover" => Ok(Strategy::GreedyCover),
            other => Err(domain("strategy", format!("unknown strategy `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueAssignment {
    /// `a_s mod s` for `s` in `S`.
    pub a_vec: BTreeMap<u64, u64>,
    /// `n_p mod p` for `p` in `P`.
    pub n_vec: BTreeMap<u64, u64>,
    pub seed: u64,
    pub strategy: Strategy,
}

impl ResidueAssignment {
    pub fn zero(system: &SieveSystem) -> Self {
        ResidueAssignment {
            a_vec: system.s.iter().map(|&s| (s, 0)).collect(),
            n_vec: system.p_set.iter().map(|&p| (p, 0)).collect(),
            seed: 0,
            strategy: Strategy::ZeroClass,
        }
    }

    /// Hex SHA-256 prefix over the strategy, seed and every residue.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.strategy.name().as_bytes());
        h.update(self.seed.to_le_bytes());
        for (tag, map) in [(b'a', &self.a_vec), (b'n', &self.n_vec)] {
            for (p, r) in map {
                h.update([tag]);
                h.update(p.to_le_bytes());
                h.update(r.to_le_bytes());
            }
        }
        h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// `e_p = {q in Q : q = n_p mod p}` for every `p` in `P`.
    pub fn induced_e_sets(&self, system: &SieveSystem) -> BTreeMap<u64, Vec<u64>> {
        self.n_vec
            .iter()
            .map(|(&p, &n)| (p, system.q.iter().copied().filter(|q| q % p == n).collect()))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        for (&p, &r) in self.a_vec.iter().chain(&self.n_vec) {
            if r >= p {
                return Err(domain("residue assignment", format!("residue {r} is not reduced mod {p}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    SSieve,
    PSieve,
    SAndPSieve,
    FullT,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::SSieve => "S-sieve",
            Provenance::PSieve => "P-sieve",
            Provenance::SAndPSieve => "S+P-sieve",
            Provenance::FullT => "full-T",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurvivorSet {
    /// Sorted members of `(x, y]`.
    pub members: Vec<u64>,
    pub provenance: Provenance,
}

impl SurvivorSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Integers in `(lo, hi]` avoiding every listed class.
fn sieve_range(lo: u64, hi: u64, classes: &[(u64, u64)]) -> Vec<u64> {
    if hi <= lo {
        return Vec::new();
    }
    let len = (hi - lo) as usize;
    let mut alive = vec![true; len];
    alive.par_chunks_mut(CHUNK).enumerate().for_each(|(ci, chunk)| {
        let start = lo + 1 + (ci * CHUNK) as u64;
        for &(p, a) in classes {
            let off = (a + p - start % p) % p;
            let mut i = off as usize;
            while i < chunk.len() {
                chunk[i] = false;
                i += p as usize;
            }
        }
    });
    alive.iter().enumerate().filter(|(_, &v)| v).map(|(i, _)| lo + 1 + i as u64).collect()
}

fn required_classes(system: &SieveSystem, asg: &ResidueAssignment, s: bool, p: bool) -> Result<Vec<(u64, u64)>> {
    asg.validate()?;
    let mut out = Vec::new();
    for (on, set, map, label) in [(s, &system.s, &asg.a_vec, "S"), (p, &system.p_set, &asg.n_vec, "P")] {
        if !on {
            continue;
        }
        for &q in set {
            let r = map.get(&q).ok_or_else(|| domain("sieve_survivors", format!("no residue for {q} in {label}")))?;
            out.push((q, *r));
        }
    }
    Ok(out)
}

/// `S(a)`: survivors of the `S` residues alone.
pub fn sieve_by_s(system: &SieveSystem, asg: &ResidueAssignment) -> Result<SurvivorSet> {
    let classes = required_classes(system, asg, true, false)?;
    Ok(SurvivorSet { members: sieve_range(system.x, system.y_floor(), &classes), provenance: Provenance::SSieve })
}

/// `S(n)`: survivors of the `P` residues alone.
pub fn sieve_by_p(system: &SieveSystem, asg: &ResidueAssignment) -> Result<SurvivorSet> {
    let classes = required_classes(system, asg, false, true)?;
    Ok(SurvivorSet { members: sieve_range(system.x, system.y_floor(), &classes), provenance: Provenance::PSieve })
}

/// Survivors in `(x, y]` of the residues on `S` and `P`, or, with
/// `extend_all_primes`, of every prime `p <= x`, `p != B0`, the primes
/// outside `S` and `P` taking class `0`.
pub fn sieve_survivors(system: &SieveSystem, asg: &ResidueAssignment, extend_all_primes: bool) -> Result<SurvivorSet> {
    let mut classes = required_classes(system, asg, true, true)?;
    let provenance = if extend_all_primes {
        let assigned: BTreeSet<u64> = classes.iter().map(|c| c.0).collect();
        classes.extend(system.all_sieving_primes().into_iter().filter(|p| !assigned.contains(p)).map(|p| (p, 0)));
        classes.sort_unstable();
        Provenance::FullT
    } else {
        Provenance::SAndPSieve
    };
    Ok(SurvivorSet { members: sieve_range(system.x, system.y_floor(), &classes), provenance })
}

fn greedy_classes(system: &SieveSystem) -> (BTreeMap<u64, u64>, BTreeMap<u64, u64>) {
    let mut alive: Vec<u64> = (system.x + 1..=system.y_floor().max(system.x)).collect();
    let mut pick = |p: u64| {
        let mut counts = vec![0usize; p as usize];
        for n in &alive {
            counts[(n % p) as usize] += 1;
        }
        let best = (0..p as usize).fold(0, |b, r| if counts[r] > counts[b] { r } else { b }) as u64;
        alive.retain(|n| n % p != best);
        best
    };
    let a: BTreeMap<u64, u64> = system.s.iter().map(|&s| (s, pick(s))).collect();
    let n: BTreeMap<u64, u64> = system.p_set.iter().map(|&p| (p, pick(p))).collect();
    (a, n)
}

/// Draws residues by `strategy` and returns them with the full `T`.
pub fn random_construction(system: &SieveSystem, seed: u64, strategy: Strategy) -> Result<(ResidueAssignment, SurvivorSet)> {
    if system.q.is_empty() {
        return Err(domain(
            "random_construction",
            format!("Q is empty at x = {}, y = {:.6e}; override c or y to obtain a nonempty Q", system.x, system.y),
        ));
    }
    let (a_vec, n_vec) = match strategy {
        Strategy::ZeroClass => {
            let z = ResidueAssignment::zero(system);
            (z.a_vec, z.n_vec)
        }
        Strategy::UniformRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = system.s.iter().map(|&s| (s, rng.random_range(0..s))).collect();
            let n = system.p_set.iter().map(|&p| (p, rng.random_range(0..p))).collect();
            (a, n)
        }
        Strategy::GreedyCover => greedy_classes(system),
    };
    let asg = ResidueAssignment { a_vec, n_vec, seed, strategy };
    let t = sieve_survivors(system, &asg, true)?;
    Ok((asg, t))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BandStat {
    pub alpha: f64,
    pub beta: f64,
    /// `#(T ∩ (alpha y, beta y])`
    pub count: usize,
    /// `5 A x / log x`
    pub upper: f64,
    /// `A x / log x`
    pub lower: f64,
    /// `5 A (2 |beta - alpha| + eps) x / log x`
    pub short_upper: f64,
}

/// Survivor count in `(alpha y, beta y]` against the three reference bands.
pub fn survivor_stats(t: &SurvivorSet, y: f64, alpha: f64, beta: f64, a: f64, x: f64, eps: f64) -> Result<BandStat> {
    if !(0.0 <= alpha && alpha < beta && beta <= 1.0) {
        return Err(domain("survivor_stats", format!("need 0 <= alpha < beta <= 1, got ({alpha}, {beta})")));
    }
    if x <= 1.0 {
        return Err(domain("survivor_stats", "x must exceed 1"));
    }
    let (lo, hi) = (alpha * y, beta * y);
    let count = t.members.iter().filter(|&&n| (n as f64) > lo && (n as f64) <= hi).count();
    let unit = a * x / x.ln();
    Ok(BandStat { alpha, beta, count, upper: 5.0 * unit, lower: unit, short_upper: 5.0 * (2.0 * (beta - alpha).abs() + eps) * unit })
}

/// `R = {m B0^j <= y : m z-smooth, j >= 0}`, sorted.
pub fn smooth_residual(y: u64, z: u64, b0: u64) -> Result<Vec<u64>> {
    if y < 1 || z < 2 {
        return Err(domain("smooth_residual", "need y >= 1 and z >= 2"));
    }
    let primes = segmented_sieve(0, z.min(y))?.primes();
    let mut smooth = Vec::new();
    let mut stack = vec![(1u64, 0usize)];
    while let Some((m, from)) = stack.pop() {
        smooth.push(m);
        for (i, &p) in primes.iter().enumerate().skip(from) {
            match m.checked_mul(p) {
                Some(v) if v <= y => stack.push((v, i)),
                _ => break,
            }
        }
    }
    let mut out: BTreeSet<u64> = smooth.iter().copied().collect();
    if b0 > 1 {
        for &m in &smooth {
            let mut v = m;
            while let Some(w) = v.checked_mul(b0).filter(|&w| w <= y) {
                out.insert(w);
                v = w;
            }
        }
    }
    Ok(out.into_iter().collect())
}
