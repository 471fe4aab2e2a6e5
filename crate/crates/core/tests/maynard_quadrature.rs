use gaplab_core::maynard::{
    check_cij_bound, compute_i, compute_j, maximize_ratio, symmetric_basis, SymmetricPolynomial,
};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

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

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
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
    (k * h, ((k - g) * h).abs())
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (v, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return v;
    }
    let m = (a + b) / 2.0;
    adaptive(f, a, m, tol / 2.0, depth - 1) + adaptive(f, m, b, tol / 2.0, depth - 1)
}

fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    adaptive(f, a, b, 1e-12, 12)
}

/// Integral of `g` over `{t >= 0, sum t <= budget}` in `dim` more coordinates.
fn simplex(dim: usize, budget: f64, prefix: &[f64], g: &dyn Fn(&[f64]) -> f64) -> f64 {
    if dim == 0 {
        return g(prefix);
    }
    integrate(
        &|t| {
            let mut p = prefix.to_vec();
            p.push(t);
            simplex(dim - 1, budget - t, &p, g)
        },
        0.0,
        budget,
    )
}

fn numeric_i(f: &SymmetricPolynomial) -> f64 {
    simplex(f.r, 1.0, &[], &|t| f.eval(t).powi(2))
}

fn numeric_j(f: &SymmetricPolynomial) -> f64 {
    simplex(f.r - 1, 1.0, &[], &|head| {
        let s: f64 = head.iter().sum();
        let inner = integrate(
            &|x| {
                let mut p = head.to_vec();
                p.push(x);
                f.eval(&p)
            },
            0.0,
            1.0 - s,
        );
        inner * inner
    })
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn kronrod_rule_is_exact_on_low_degree() {
    for k in 0..=20 {
        let v = integrate(&|x: f64| x.powi(k), 0.0, 1.0);
        assert!((v - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "x^{k}: {v}");
    }
}

#[test]
fn exact_forms_match_quadrature() {
    for r in 1..=3 {
        for degree in 0..=2 {
            let basis = symmetric_basis(r, degree);
            let coeffs: Vec<BigRational> = (0..basis.len() as i64).map(|i| q(3 - 2 * i, i + 2)).collect();
            let f = SymmetricPolynomial::new(r, basis, coeffs).unwrap();
            let ie = compute_i(&f).unwrap().to_f64().unwrap();
            let je = compute_j(&f).unwrap().to_f64().unwrap();
            let (in_, jn) = (numeric_i(&f), numeric_j(&f));
            assert!((ie - in_).abs() < 1e-9, "I r={r} d={degree}: {ie} vs {in_}");
            assert!((je - jn).abs() < 1e-9, "J r={r} d={degree}: {je} vs {jn}");
        }
    }
}

#[test]
fn ratios_on_the_desk_grid() {
    for r in 2..=8usize {
        let mut prev = 0.0;
        for degree in 0..=4 {
            let res = maximize_ratio(r, degree).unwrap();
            assert!(res.ratio >= 2.0 / (r as f64 + 1.0) - 1e-15 && res.ratio <= 1.0, "r={r} d={degree}");
            assert!(res.ratio >= prev, "r={r} d={degree}: {} < {prev}", res.ratio);
            assert!(check_cij_bound(r, res.ratio, 0.25).unwrap().pass);
            prev = res.ratio;
        }
    }
}

#[test]
fn rayleigh_quotient_is_scale_invariant() {
    let res = maximize_ratio(4, 3).unwrap();
    let f = SymmetricPolynomial::new(4, res.basis.clone(), res.coefficients.clone()).unwrap();
    for lam in [q(-3, 1), q(7, 11), q(1000, 1)] {
        let g = f.scaled(&lam);
        assert_eq!(compute_j(&g).unwrap() / compute_i(&g).unwrap(), res.ratio_exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratio_stays_in_unit_interval(r in 1usize..6, degree in 0u32..4, seed in proptest::collection::vec(-20i64..20, 20)) {
        let basis = symmetric_basis(r, degree);
        let coeffs: Vec<BigRational> = (0..basis.len()).map(|i| q(seed[i % seed.len()], 1 + i as i64)).collect();
        let f = SymmetricPolynomial::new(r, basis, coeffs).unwrap();
        let (i, j) = (compute_i(&f).unwrap(), compute_j(&f).unwrap());
        prop_assert!(j >= BigRational::zero());
        if !i.is_zero() {
            prop_assert!(j <= i);
        }
    }
}
