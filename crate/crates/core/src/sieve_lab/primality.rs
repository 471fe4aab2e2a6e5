//! Deterministic Miller–Rabin testing and primorials.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{LabError, Result};

/// The first 13 primes as Miller–Rabin bases give a deterministic test below
/// this bound (3.317 x 10^24).
pub const MR_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        a * b % m
    } else {
        let r = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
        r.to_u128().expect("reduced below m")
    }
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Primality of `n < 3.317 x 10^24`.
pub fn is_prime(n: u128) -> Result<bool> {
    if n >= MR_DETERMINISTIC_BOUND {
        return Err(LabError::Resource(format!("{n} is beyond the deterministic Miller-Rabin range")));
    }
    if n < 2 {
        return Ok(false);
    }
    for &p in &BASES {
        let p = p as u128;
        if n == p {
            return Ok(true);
        }
        if n % p == 0 {
            return Ok(false);
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &BASES {
        let mut x = pow_mod(a as u128, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(n as u128).expect("u64 is within range")
}

/// Product of the primes `<= x`.
pub fn primorial(x: u64) -> BigUint {
    let mut acc = BigUint::one();
    for p in 2..=x {
        if is_prime_u64(p) {
            acc *= p;
        }
    }
    acc
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's totient by trial factorization.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}
