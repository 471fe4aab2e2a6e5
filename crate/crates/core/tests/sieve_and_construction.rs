use gaplab_core::construction::{
    build_prime_sets, random_construction, sieve_by_p, sieve_by_s, sieve_survivors, survivor_stats, Overrides,
    ResidueAssignment, Strategy,
};
use gaplab_core::sieve_lab::{brun_titchmarsh_sweep, gap_records, max_gap_gk, segmented_sieve, simple_sieve};
use gaplab_core::zero_region::{rho_classify, Rho, RhoInput};
use proptest::prelude::*;

fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Exhaustive oracle: maximal minimal gap over windows of k gaps.
fn brute_gk(x: u64, k: usize) -> Option<(u64, Vec<u64>)> {
    let ps: Vec<u64> = (2..=x).filter(|&n| trial_prime(n)).collect();
    let mut best: Option<(u64, Vec<u64>)> = None;
    for w in ps.windows(k + 1) {
        let g = w.windows(2).map(|v| v[1] - v[0]).min().unwrap();
        if best.as_ref().is_none_or(|b| g > b.0) {
            best = Some((g, w.to_vec()));
        }
    }
    best
}

#[test]
fn gap_search_matches_brute_force() {
    for x in [5u64, 30, 100, 211, 1000, 2500] {
        for k in 1..=4 {
            let want = brute_gk(x, k);
            match max_gap_gk(x, k) {
                Ok(r) => assert_eq!(Some((r.value, r.witness)), want, "x = {x}, k = {k}"),
                Err(_) => assert!(want.is_none(), "x = {x}, k = {k}"),
            }
        }
    }
    let recs = gap_records(100_000, 2).unwrap();
    assert!(recs.windows(2).all(|w| w[0].value < w[1].value));
}

#[test]
fn segmented_and_simple_sieves_agree() {
    let simple = simple_sieve(200_000);
    for (lo, hi) in [(0u64, 200_000u64), (1, 65_537), (99_991, 131_100), (12_345, 12_345)] {
        let seg = segmented_sieve(lo, hi).unwrap();
        let want: Vec<u64> = (lo + 1..=hi).filter(|&n| simple[n as usize]).collect();
        assert_eq!(seg.primes(), want);
    }
}

#[test]
fn brun_titchmarsh_small_sweep() {
    let rows = brun_titchmarsh_sweep(2000, 12).unwrap();
    assert!(rows.iter().all(|r| r.holds));
    let total: u64 = rows.iter().filter(|r| r.q == 4).map(|r| r.count).sum();
    assert_eq!(total, 303 - 1); // every odd prime up to 2000
}

#[test]
fn all_zero_t_is_primes_below_next_square() {
    for x in [10u64, 16, 30, 97, 100, 250] {
        let next = (x + 1..).find(|&n| trial_prime(n)).unwrap();
        let y = (next * next - 1).min(200_000);
        let sys = build_prime_sets(x, 1, &Overrides { y: Some(y as f64), z: Some(2.0), ..Default::default() }).unwrap();
        let t = sieve_survivors(&sys, &ResidueAssignment::zero(&sys), true).unwrap();
        let want: Vec<u64> = segmented_sieve(x, y).unwrap().primes();
        assert_eq!(t.members, want, "x = {x}");
    }
}

#[test]
fn partial_sieves_contain_full_t() {
    let ov = Overrides { c: Some(1.0), s_min: Some(7.0), z: Some(60.0), ..Default::default() };
    let sys = build_prime_sets(2000, 1, &ov).unwrap();
    assert!(!sys.s.is_empty());
    let (asg, t) = random_construction(&sys, 3, Strategy::UniformRandom).unwrap();
    let s_only = sieve_by_s(&sys, &asg).unwrap();
    let p_only = sieve_by_p(&sys, &asg).unwrap();
    let both = sieve_survivors(&sys, &asg, false).unwrap();
    for n in &both.members {
        assert!(s_only.members.binary_search(n).is_ok() && p_only.members.binary_search(n).is_ok());
    }
    assert!(t.members.iter().all(|n| both.members.binary_search(n).is_ok()));
}

#[test]
fn uniform_survivors_track_prime_count() {
    let ov = Overrides { c: Some(1.0), s_min: Some(7.0), ..Default::default() };
    let sys = build_prime_sets(10_000, 1, &ov).unwrap();
    let primes = sys.q.len() as f64;
    for seed in 1..=20 {
        let (_, t) = random_construction(&sys, seed, Strategy::UniformRandom).unwrap();
        let ratio = t.len() as f64 / primes;
        assert!((1.0 / 3.0..=3.0).contains(&ratio), "seed {seed}: {ratio}");
    }
}

#[test]
fn e_p_sizes_match_binomial_mean() {
    let ov = Overrides { c: Some(1.0), s_min: Some(7.0), ..Default::default() };
    let sys = build_prime_sets(2_000, 1, &ov).unwrap();
    let seeds = 400;
    let draws: Vec<_> = (0..seeds).map(|s| random_construction(&sys, s, Strategy::UniformRandom).unwrap().0.induced_e_sets(&sys)).collect();
    for &p in sys.p_set.iter().take(5) {
        let sizes: Vec<f64> = draws.iter().map(|e| e[&p].len() as f64).collect();
        let n = sizes.len() as f64;
        let mean = sizes.iter().sum::<f64>() / n;
        let var = sizes.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let expect = sys.q.len() as f64 / p as f64;
        assert!((mean - expect).abs() <= 3.0 * (var / n).sqrt() + 1e-12, "p = {p}: {mean} vs {expect}");
    }
}

#[test]
fn band_counts_are_additive() {
    let ov = Overrides { c: Some(1.0), s_min: Some(7.0), ..Default::default() };
    let sys = build_prime_sets(10_000, 1, &ov).unwrap();
    let (_, t) = random_construction(&sys, 5, Strategy::UniformRandom).unwrap();
    let cuts = [0.0, 0.1, 0.25, 0.3333, 0.5, 0.77, 1.0];
    let total: usize = cuts.windows(2).map(|w| survivor_stats(&t, sys.y, w[0], w[1], 1.0, 1e4, 0.01).unwrap().count).sum();
    assert_eq!(total, t.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rho_cases_partition_inputs(pi in 0usize..60, a in 1u64..10_000, b in 1u64..10_000, bi in 0usize..8, x in 2u64..150) {
        let primes: Vec<u64> = (2..400).filter(|&n| trial_prime(n)).collect();
        let p = primes[pi];
        let b0 = if bi == 0 { 1 } else { primes[bi - 1] };
        let modulus: u128 = primes.iter().filter(|&&q| q <= x.min(30) && q != b0).map(|&q| q as u128).product();
        let inp = RhoInput { p, a: a as u128, b: b as u128, b0, x };
        let small = p <= x && p != b0;
        match rho_classify(&inp, modulus) {
            Ok(rho) => {
                let cases = [
                    matches!(rho, Rho::Small) == (small && a % p != 0 && b % p != 0),
                    matches!(rho, Rho::Exceptional) == (p == b0),
                    matches!(rho, Rho::Large(_)) == (p > x && p != b0),
                    matches!(rho, Rho::PairCountZero) == (small && (a % p == 0 || b % p == 0)),
                ];
                prop_assert!(cases.iter().all(|&c| c));
                if let Rho::Large(n) = rho {
                    prop_assert_eq!(n, if a % p == b % p { 1 } else { 2 });
                }
            }
            Err(_) => prop_assert!(!small && modulus % p as u128 == 0),
        }
    }

    #[test]
    fn t_is_antitone_in_sieving_primes(seed in 0u64..1000, drop in 0usize..50) {
        let ov = Overrides { c: Some(1.0), s_min: Some(3.0), z: Some(40.0), ..Default::default() };
        let sys = build_prime_sets(600, 1, &ov).unwrap();
        let (asg, _) = random_construction(&sys, seed, Strategy::UniformRandom).unwrap();
        let mut smaller = sys.clone();
        let idx = drop % smaller.p_set.len();
        smaller.p_set.remove(idx);
        let full = sieve_survivors(&sys, &asg, false).unwrap();
        let fewer = sieve_survivors(&smaller, &asg, false).unwrap();
        prop_assert!(full.len() <= fewer.len());
        prop_assert!(full.members.iter().all(|n| fewer.members.binary_search(n).is_ok()));
    }
}
