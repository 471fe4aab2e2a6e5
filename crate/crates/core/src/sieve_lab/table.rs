//! Bit-packed prime tables built by a segmented sieve of Eratosthenes.

use rayon::prelude::*;

use crate::error::{domain, LabError, Result};

/// Numbers per sieve segment (a multiple of 64).
const SEGMENT: u64 = 1 << 18;

/// Upper limit on the span `hi - lo` of one table.
#[derive(Clone, Copy, Debug)]
pub struct SieveLimits {
    pub max_span: u64,
}

impl Default for SieveLimits {
    /// 2^33 numbers, i.e. 1 GiB of bits.
    fn default() -> Self {
        SieveLimits { max_span: 1 << 33 }
    }
}

/// Exact primality for every integer in `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    lo: u64,
    hi: u64,
    /// bit `i` stands for `lo + 1 + i`
    bits: Vec<u64>,
}

impl PrimeTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    /// Primality of `n`; `None` outside `(lo, hi]`.
    pub fn get(&self, n: u64) -> Option<bool> {
        if n <= self.lo || n > self.hi {
            return None;
        }
        let i = n - self.lo - 1;
        Some(self.bits[(i / 64) as usize] >> (i % 64) & 1 == 1)
    }

    /// Primality of `n`; panics outside `(lo, hi]`.
    pub fn contains(&self, n: u64) -> bool {
        self.get(n).unwrap_or_else(|| panic!("{n} outside ({}, {}]", self.lo, self.hi))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let lo = self.lo;
        let n = self.len();
        self.bits.iter().enumerate().flat_map(move |(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as u64;
                word &= word - 1;
                Some(w as u64 * 64 + b)
            })
            .filter(move |&i| i < n)
            .map(move |i| lo + 1 + i)
        })
    }

    pub fn primes(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Membership of `0..=hi` as booleans (entries at or below `lo` are false).
    pub fn to_bools(&self) -> Vec<bool> {
        let mut out = vec![false; self.hi as usize + 1];
        for p in self.iter() {
            out[p as usize] = true;
        }
        out
    }

    /// Joins `(lo, mid]` with `(mid, hi]`.
    pub fn concat(&self, next: &PrimeTable) -> Result<PrimeTable> {
        if self.hi != next.lo {
            return Err(domain("PrimeTable::concat", format!("tables ({}, {}] and ({}, {}] are not adjacent", self.lo, self.hi, next.lo, next.hi)));
        }
        let len = self.len() + next.len();
        let mut bits = vec![0u64; len.div_ceil(64) as usize];
        for p in self.iter().chain(next.iter()) {
            let i = p - self.lo - 1;
            bits[(i / 64) as usize] |= 1 << (i % 64);
        }
        Ok(PrimeTable { lo: self.lo, hi: next.hi, bits })
    }
}

/// Exact prime membership on `(lo, hi]` with the default memory cap.
pub fn segmented_sieve(lo: u64, hi: u64) -> Result<PrimeTable> {
    segmented_sieve_with(lo, hi, SieveLimits::default())
}

pub fn segmented_sieve_with(lo: u64, hi: u64, limits: SieveLimits) -> Result<PrimeTable> {
    if lo > hi {
        return Err(domain("segmented_sieve", format!("lo = {lo} exceeds hi = {hi}")));
    }
    if hi - lo > limits.max_span {
        return Err(LabError::Resource(format!(
            "sieve span {} exceeds the cap of {} numbers",
            hi - lo,
            limits.max_span
        )));
    }
    let root = hi.isqrt();
    let base: Vec<u64> = if root >= 2 { segmented_sieve_with(0, root, limits)?.primes() } else { Vec::new() };
    let span = hi - lo;
    let nseg = span.div_ceil(SEGMENT);
    let words: Vec<Vec<u64>> = (0..nseg)
        .into_par_iter()
        .map(|s| {
            // segment covers lo+1+s*SEGMENT ..= min(hi, lo+(s+1)*SEGMENT)
            let first = lo + 1 + s * SEGMENT;
            let last = hi.min(lo + (s + 1) * SEGMENT);
            sieve_segment(first, last, &base)
        })
        .collect();
    let bits: Vec<u64> = words.into_iter().flatten().collect();
    Ok(PrimeTable { lo, hi, bits })
}

/// Bits for `first..=last`, one per integer.
fn sieve_segment(first: u64, last: u64, base: &[u64]) -> Vec<u64> {
    let n = last - first + 1;
    let mut w = vec![!0u64; n.div_ceil(64) as usize];
    let clear = |w: &mut Vec<u64>, i: u64| w[(i / 64) as usize] &= !(1u64 << (i % 64));
    if n % 64 != 0 {
        let last_word = w.len() - 1;
        w[last_word] = (1u64 << (n % 64)) - 1;
    }
    for v in first..=last.min(1) {
        clear(&mut w, v - first);
    }
    for &p in base {
        let sq = p * p;
        if sq > last {
            break;
        }
        let start = sq.max(first.div_ceil(p) * p);
        let mut m = start;
        while m <= last {
            clear(&mut w, m - first);
            m += p;
        }
    }
    w
}

/// Plain one-shot sieve of Eratosthenes over `0..=n`.
pub fn simple_sieve(n: usize) -> Vec<bool> {
    let mut is = vec![true; n + 1];
    is[0] = false;
    if n >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn small_ranges() {
        assert_eq!(segmented_sieve(1, 30).unwrap().primes(), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(segmented_sieve(0, 1).unwrap().primes().is_empty());
        assert!(segmented_sieve(5, 5).unwrap().is_empty());
        assert_eq!(segmented_sieve(0, 2).unwrap().primes(), vec![2]);
        assert!(segmented_sieve(3, 2).is_err());
    }

    #[test]
    fn agrees_with_trial_division() {
        for (lo, hi) in [(0, 5000), (999_000, 1_001_000), (1 << 18, (1 << 18) + 700), (123, 124)] {
            let t = segmented_sieve(lo, hi).unwrap();
            for n in lo + 1..=hi {
                assert_eq!(t.contains(n), trial_division(n), "n = {n}");
            }
        }
    }

    #[test]
    fn resource_cap() {
        let r = segmented_sieve_with(0, 1000, SieveLimits { max_span: 100 });
        assert!(matches!(r, Err(LabError::Resource(_))));
    }

    #[test]
    fn concat_adjacent() {
        let a = segmented_sieve(10, 100).unwrap();
        let b = segmented_sieve(100, 1000).unwrap();
        assert_eq!(a.concat(&b).unwrap(), segmented_sieve(10, 1000).unwrap());
        assert!(b.concat(&a).is_err());
    }
}
