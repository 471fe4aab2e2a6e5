use std::collections::VecDeque;

use crate::error::{LabError, Result};
use crate::sieve_lab::table::segmented_sieve;

/// A chain of `k + 1` consecutive primes whose smallest gap is `value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRecord {
    pub k: usize,
    /// Upper limit on the last prime of the chain.
    pub x: u64,
    pub value: u64,
    pub witness: Vec<u64>,
}

/// Every record of `G_k` up to `x`: each chain whose minimal gap strictly
/// exceeds all earlier chains. Records carry `x = p_{n+k}`, the first limit
/// at which they are attained.
pub fn gap_records(x: u64, k: usize) -> Result<Vec<GapRecord>> {
    if k < 1 {
        return Err(LabError::Undefined("G_k needs k >= 1".into()));
    }
    let primes = segmented_sieve(0, x)?.primes();
    if primes.len() < k + 1 {
        return Err(LabError::Undefined(format!(
            "G_{k}({x}) needs at least {} primes up to {x}, found {}",
            k + 1,
            primes.len()
        )));
    }
    let gaps: Vec<u64> = primes.windows(2).map(|w| w[1] - w[0]).collect();
    // sliding-window minimum over k consecutive gaps
    let mut window: VecDeque<usize> = VecDeque::new();
    let mut out: Vec<GapRecord> = Vec::new();
    let mut best = 0;
    for (i, &g) in gaps.iter().enumerate() {
        while window.back().is_some_and(|&j| gaps[j] >= g) {
            window.pop_back();
        }
        window.push_back(i);
        if i + 1 < k {
            continue;
        }
        let start = i + 1 - k;
        while window.front().is_some_and(|&j| j < start) {
            window.pop_front();
        }
        let v = gaps[*window.front().expect("nonempty")];
        if v > best {
            best = v;
            out.push(GapRecord { k, x: primes[i + 1], value: v, witness: primes[start..=i + 1].to_vec() });
        }
    }
    Ok(out)
}

/// `G_k(x)` with the earliest chain attaining it.
pub fn max_gap_gk(x: u64, k: usize) -> Result<GapRecord> {
    let mut rec = gap_records(x, k)?.pop().expect("at least one window");
    rec.x = x;
    Ok(rec)
}
