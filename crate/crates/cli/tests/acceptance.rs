//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gaplab_cli::execute;
use gaplab_core::constants::{
    derive_c_lg, derive_population_a, derive_threshold_c1, displayed_probability_bound, moment_bounds,
    ComponentConstants,
};
use gaplab_core::construction::{
    build_prime_sets, random_construction, sieve_survivors, survivor_stats, Overrides, ResidueAssignment, Strategy,
};
use gaplab_core::maynard::{check_cij_bound, compute_i, compute_j, maximize_ratio, symmetric_basis, SymmetricPolynomial};
use gaplab_core::sieve_lab::{
    brun_titchmarsh_sweep, max_gap_gk, mertens_grid, primorial, random_coprime_pairs, segmented_sieve, simple_sieve,
    ub_pair_count,
};
use gaplab_core::trace::TRACE_REL_TOL;
use gaplab_core::zero_region::default_chain;
use gaplab_core::Interval;
use num_rational::BigRational;

// Tolerances and budgets.
const C_LG_TARGET: f64 = 2.0e-17;
const C_LG_REL: f64 = 0.03;
const CHAIN_TOL: f64 = 1e-12;
const PROB_RATIO_TOL: f64 = 1e-10;
const R1_TOL: f64 = 1e-4;
const RATIO_R1_TOL: f64 = 1e-9;
const QUADRATURE_TOL: f64 = 1e-9;
const MERTENS_TOL: f64 = 0.01;
const BUDGET_DERIVE: Duration = Duration::from_secs(1);
const BUDGET_MAYNARD: Duration = Duration::from_secs(60);
const BUDGET_SIEVE: Duration = Duration::from_secs(10);
const BUDGET_SURROGATES: Duration = Duration::from_secs(120);

// Independent oracles (60-digit mpmath evaluations).
const C_UB_ORACLE: f64 = 25.377_751_665_003_604_221_8;
const C_PAP_ORACLE: f64 = 0.864_664_716_763_387_308_106;
const R1_ORACLE: f64 = 3.221_875_274_178_964_546_96;
const PI_1E6: usize = 78_498;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let out = execute(["gaplab", "derive", "--k", "1"]).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let v: serde_json::Value = serde_json::from_str(&out.report).map_err(|e| e.to_string())?;
    let mid: f64 = v["result"]["c_LG"]["midpoint"].to_string().parse().map_err(|_| "no midpoint")?;
    let d = derive_c_lg(&ComponentConstants::default(), 1).map_err(|e| e.to_string())?;
    let width = d.params.c_lg.rel_width();
    let dev = (mid - C_LG_TARGET).abs() / C_LG_TARGET;
    ensure(dev <= C_LG_REL, format!("c_LG = {mid:e} deviates {dev:.3}"))?;
    ensure(width < TRACE_REL_TOL, format!("relative width {width:e}"))?;
    ensure(elapsed < BUDGET_DERIVE, format!("took {elapsed:?}"))?;
    Ok(format!("c_LG = {mid:.6e} ({:.2}% from 2.0e-17), rel width {width:.1e}, {elapsed:.2?}", dev * 100.0))
}

fn criterion_2() -> Outcome {
    let ch = default_chain().map_err(|e| e.to_string())?;
    ensure(ch.d_pap.is_point() && ch.d_pap.mid() == 160.0, "D_PAP is not exactly 160")?;
    let e2 = Interval::one() - (-Interval::from_i64(2)).exp();
    ensure(ch.c_pap.overlaps(&e2) && (ch.c_pap.mid() - C_PAP_ORACLE).abs() < CHAIN_TOL, "C_PAP != 1 - e^-2")?;
    ensure((ch.c_ub.mid() - C_UB_ORACLE).abs() < CHAIN_TOL, format!("C_UB = {}", ch.c_ub.mid()))?;
    let r1 = ch.constants.r1.mid();
    ensure((r1 - R1_ORACLE).abs() < R1_TOL && (r1 - 3.2219).abs() < R1_TOL, format!("R1 = {r1}"))?;
    let check = ch.trace.checks.iter().find(|c| c.name.starts_with("c_ZFR")).ok_or("missing c_ZFR check")?;
    ensure(check.passed, "1/24 < 1/(4 R1) failed")?;
    Ok(format!("D_PAP = 160, C_PAP = {:.12}, C_UB = {:.12}, R1 = {r1:.6}, 1/24 < 1/(4R1)", ch.c_pap.mid(), ch.c_ub.mid()))
}

fn criterion_3() -> Outcome {
    let d = ComponentConstants::default();
    let m = d.m();
    let c1 = derive_threshold_c1(&d.c_pap, &d.d_pap, &m).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for k in 1..=10u64 {
        let kk = Interval::from_i64(k as i64);
        let a = derive_population_a(&d.c_pap, &d.d_pap, &m, k).map_err(|e| e.to_string())?;
        let prod = &c1 * &a;
        let mo = moment_bounds(&a, &d).map_err(|e| e.to_string())?;
        let two_k = Interval::from_i64(2 * k as i64);
        for (name, val, want) in [("c1*A", &prod, &kk), ("EN_lower", &mo.en_lower, &two_k)] {
            let rel = ((val.mid() - want.mid()) / want.mid()).abs();
            worst = worst.max(rel);
            ensure(val.overlaps(want) && rel <= f64::EPSILON, format!("{name} at k = {k}: {}", val.mid()))?;
        }
    }
    let a1 = derive_population_a(&d.c_pap, &d.d_pap, &m, 1).map_err(|e| e.to_string())?;
    let mo = moment_bounds(&a1, &d).map_err(|e| e.to_string())?;
    let ratio = (&mo.prob_lower / displayed_probability_bound(&d.c_ub, &m, &d.d_pap)).mid();
    let c_pap2 = d.c_pap.sqr().mid();
    ensure((ratio - c_pap2).abs() <= PROB_RATIO_TOL, format!("prob_lower/display = {ratio}, C_PAP^2 = {c_pap2}"))?;
    Ok(format!("c1*A = k, EN_lower = 2k for k = 1..10 (max rel dev {worst:.1e}); prob_lower/display = {ratio:.12} = C_PAP^2"))
}

// Adaptive Gauss-Kronrod (7, 15) oracle for the simplex integrals.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (c, h) = ((a + b) / 2.0, (b - a) / 2.0);
    let fc = f(c);
    let (mut k, mut g) = (WGK[7] * fc, WG[3] * fc);
    for i in 0..7 {
        let s = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    if ((k - g) * h).abs() <= tol || depth == 0 {
        return k * h;
    }
    integrate(f, a, c, tol / 2.0, depth - 1) + integrate(f, c, b, tol / 2.0, depth - 1)
}

fn simplex(dim: usize, budget: f64, prefix: &[f64], g: &dyn Fn(&[f64]) -> f64) -> f64 {
    if dim == 0 {
        return g(prefix);
    }
    let inner = |t: f64| {
        let mut p = prefix.to_vec();
        p.push(t);
        simplex(dim - 1, budget - t, &p, g)
    };
    integrate(&inner, 0.0, budget, 1e-12, 12)
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    for d in 0..=5 {
        let r1 = maximize_ratio(1, d).map_err(|e| e.to_string())?;
        ensure((r1.ratio - 1.0).abs() <= RATIO_R1_TOL, format!("r = 1, degree {d}: {}", r1.ratio))?;
    }
    let r2 = maximize_ratio(2, 0).map_err(|e| e.to_string())?;
    ensure(r2.ratio_exact == BigRational::new(2.into(), 3.into()), "r = 2, degree 0 is not 2/3")?;
    let mut top = Vec::new();
    for r in 2..=8usize {
        let mut prev = 0.0;
        for d in 0..=5 {
            let res = maximize_ratio(r, d).map_err(|e| e.to_string())?;
            let lo = 2.0 / (r as f64 + 1.0);
            ensure(res.ratio >= lo && res.ratio <= 1.0, format!("r = {r}, degree {d}: {} outside [{lo}, 1]", res.ratio))?;
            ensure(res.ratio >= prev, format!("r = {r}: degree {d} decreased the ratio"))?;
            ensure(check_cij_bound(r, res.ratio, 0.25).map_err(|e| e.to_string())?.pass, format!("r = {r}: below log r/(4r)"))?;
            prev = res.ratio;
        }
        top.push(format!("{r}:{prev:.4}"));
    }
    let elapsed = t.elapsed();
    ensure(elapsed < BUDGET_MAYNARD, format!("solver grid took {elapsed:?}"))?;

    let mut worst: f64 = 0.0;
    for r in 1..=3usize {
        for degree in 0..=2 {
            let basis = symmetric_basis(r, degree);
            let coeffs: Vec<BigRational> =
                (0..basis.len() as i64).map(|i| BigRational::new((3 - 2 * i).into(), (i + 2).into())).collect();
            let f = SymmetricPolynomial::new(r, basis, coeffs).map_err(|e| e.to_string())?;
            let ie = num_traits::ToPrimitive::to_f64(&compute_i(&f).map_err(|e| e.to_string())?).unwrap();
            let je = num_traits::ToPrimitive::to_f64(&compute_j(&f).map_err(|e| e.to_string())?).unwrap();
            let iq = simplex(r, 1.0, &[], &|p| f.eval(p).powi(2));
            let jq = simplex(r - 1, 1.0, &[], &|head| {
                let s: f64 = head.iter().sum();
                let inner = integrate(
                    &|x| {
                        let mut p = head.to_vec();
                        p.push(x);
                        f.eval(&p)
                    },
                    0.0,
                    1.0 - s,
                    1e-12,
                    12,
                );
                inner * inner
            });
            worst = worst.max((ie - iq).abs()).max((je - jq).abs());
        }
    }
    ensure(worst <= QUADRATURE_TOL, format!("exact vs quadrature differ by {worst:e}"))?;
    Ok(format!("r=1 -> 1, r=2 deg 0 -> 2/3, degree-5 ratios [{}], quadrature dev {worst:.1e}, grid {elapsed:.2?}", top.join(" ")))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    for (x, k, value, witness) in [(30u64, 1usize, 6u64, vec![23u64, 29]), (30, 2, 4, vec![19, 23, 29]), (100, 1, 8, vec![89, 97])] {
        let g = max_gap_gk(x, k).map_err(|e| e.to_string())?;
        // exhaustive oracle by trial division
        let ps: Vec<u64> = (2..=x).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect();
        let brute = ps
            .windows(k + 1)
            .map(|w| (w.windows(2).map(|v| v[1] - v[0]).min().unwrap(), w.to_vec()))
            .fold((0, vec![]), |b, c| if c.0 > b.0 { c } else { b });
        ensure(g.value == value && g.witness == witness && brute == (value, witness.clone()), format!("G_{k}({x})"))?;
    }
    let simple = simple_sieve(1_000_000);
    let seg = segmented_sieve(0, 1_000_000).map_err(|e| e.to_string())?;
    let simple_count = simple.iter().filter(|&&b| b).count();
    ensure(seg.count() as usize == PI_1E6 && simple_count == PI_1E6, format!("pi(1e6) = {} / {simple_count}", seg.count()))?;
    ensure((1..=1_000_000u64).all(|n| seg.contains(n) == simple[n as usize]), "sieves differ on [1, 1e6]")?;
    let elapsed = t.elapsed();
    ensure(elapsed < BUDGET_SIEVE, format!("took {elapsed:?}"))?;
    Ok(format!("G_1(30) = 6, G_2(30) = 4, G_1(100) = 8, pi(1e6) = {PI_1E6}, sieves bit-identical, {elapsed:.2?}"))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let grid = mertens_grid(&[1_000, 10_000, 100_000, 1_000_000]).map_err(|e| e.to_string())?;
    let devs: Vec<f64> = grid.iter().map(|m| (m.ratio - 1.0).abs()).collect();
    ensure(devs.windows(2).all(|w| w[1] < w[0]), format!("Mertens deviations not decreasing: {devs:?}"))?;
    ensure(devs[3] < MERTENS_TOL, format!("Mertens ratio at 1e6 = {}", grid[3].ratio))?;
    let bt = brun_titchmarsh_sweep(10_000, 50).map_err(|e| e.to_string())?;
    ensure(bt.iter().all(|r| r.holds), "Brun-Titchmarsh fails")?;
    let mut checked = 0;
    for (x, p) in [(5u64, 30u128), (7, 210), (11, 2310)] {
        ensure(primorial(x) == p.into(), format!("P({x}) != {p}"))?;
        for (a, b) in random_coprime_pairs(p, 50, 1000 + x).map_err(|e| e.to_string())? {
            let r = ub_pair_count(x, 1, 10_000, a, b).map_err(|e| e.to_string())?;
            ensure(r.holds, format!("UB fails at P = {p}, (a, b) = ({a}, {b}): {} > {}", r.count, r.bound))?;
            checked += 1;
        }
    }
    let elapsed = t.elapsed();
    ensure(elapsed < BUDGET_SURROGATES, format!("took {elapsed:?}"))?;
    Ok(format!(
        "Mertens |ratio-1| {:.2e} -> {:.2e}; BT holds on {} (q, a); UB holds on {checked} pairs; {elapsed:.2?}",
        devs[0],
        devs[3],
        bt.len()
    ))
}

fn criterion_7() -> Outcome {
    let xs = [10u64, 11, 12, 15, 16, 17, 29, 30, 50, 97, 100, 101, 128, 200, 251, 317, 500, 512, 700, 997, 1000];
    for &x in &xs {
        let next = (x + 1..).find(|&n| segmented_sieve(n - 1, n).map(|t| t.count() == 1).unwrap_or(false)).unwrap();
        // all-zero residues remove exactly the integers with a prime factor <= x,
        // so T is the prime set of (x, y] while y < next^2
        let y = (next * next - 1).min(1_000_000);
        let sys = build_prime_sets(x, 1, &Overrides { y: Some(y as f64), z: Some(2.0), ..Default::default() })
            .map_err(|e| e.to_string())?;
        let t = sieve_survivors(&sys, &ResidueAssignment::zero(&sys), true).map_err(|e| e.to_string())?;
        let oracle = segmented_sieve(x, y).map_err(|e| e.to_string())?.primes();
        ensure(t.members == oracle, format!("T differs from the primes of ({x}, {y}]"))?;
    }
    let ov = Overrides { c: Some(1.0), s_min: Some(7.0), ..Default::default() };
    let sys = build_prime_sets(10_000, 1, &ov).map_err(|e| e.to_string())?;
    let (_, t) = random_construction(&sys, 1, Strategy::UniformRandom).map_err(|e| e.to_string())?;
    for cuts in [vec![0.0, 1.0], vec![0.0, 0.25, 0.5, 0.75, 1.0], vec![0.0, 0.1, 0.3333, 0.34, 0.9, 1.0]] {
        let total: usize = cuts
            .windows(2)
            .map(|w| survivor_stats(&t, sys.y, w[0], w[1], 1.0, 1e4, 0.01).map(|b| b.count))
            .sum::<Result<usize, _>>()
            .map_err(|e| e.to_string())?;
        ensure(total == t.len(), format!("bands over {cuts:?} sum to {total} != {}", t.len()))?;
    }
    let degenerate = build_prime_sets(1_000_000, 1, &Overrides::default()).map_err(|e| e.to_string())?;
    ensure(degenerate.y < 1e6 && degenerate.q.is_empty(), "default c at x = 1e6 does not give y < x")?;
    ensure(degenerate.warnings.iter().any(|w| w.contains("Q is empty")), "missing the empty-Q warning")?;
    Ok(format!(
        "all-zero T = primes on {} x in [10, 1000]; bands additive (#T = {}); default regime x = 1e6: y = {:.2}, {} warnings",
        xs.len(),
        t.len(),
        degenerate.y,
        degenerate.warnings.len()
    ))
}

fn criterion_8() -> Outcome {
    let runs: Vec<Vec<&str>> = vec![
        vec!["derive", "--k", "1"],
        vec!["derive", "--k", "2", "--format", "csv"],
        vec!["zero-constants"],
        vec!["zero-constants", "--format", "csv"],
        vec!["maynard", "--r", "4", "--degree", "3"],
        vec!["gaps", "--x", "100000", "--k", "2", "--records", "true"],
        vec!["mertens", "--xs", "1000,100000"],
        vec!["bt-check", "--x", "5000", "--q-max", "12", "--format", "csv"],
        vec!["ub-pairs", "--x", "7", "--z", "2000", "--pairs", "8", "--seed", "5", "--threads", "3"],
        vec!["construct", "--x", "10000", "--c", "1", "--smin", "7", "--seed", "1", "--strategy", "uniform"],
        vec!["construct", "--x", "5000", "--c", "1", "--smin", "3", "--z", "40", "--strategy", "greedy", "--format", "csv"],
        vec!["construct", "--x", "1000000", "--evaluate-only", "true"],
    ];
    for args in &runs {
        let argv: Vec<&str> = std::iter::once("gaplab").chain(args.iter().copied()).collect();
        let a = execute(argv.clone()).map_err(|e| format!("{args:?}: {e}"))?.report;
        let b = execute(argv).map_err(|e| format!("{args:?}: {e}"))?.report;
        ensure(a == b, format!("{args:?} is not reproducible"))?;
    }
    Ok(format!("{} configurations across all 8 subcommands reproduce byte for byte", runs.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "constant chain", criterion_1),
        (2, "component constants", criterion_2),
        (3, "exact identities", criterion_3),
        (4, "variational solver", criterion_4),
        (5, "sieve lab", criterion_5),
        (6, "analytic surrogates", criterion_6),
        (7, "construction simulator", criterion_7),
        (8, "determinism", criterion_8),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {n} PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
