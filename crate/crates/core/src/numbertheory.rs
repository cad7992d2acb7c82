//! Which `k` have `σ₄(k) > φ(k)⁵`?
//!
//! `σ₄` is the sum of fourth powers of the divisors and `φ` Euler's totient.
//! Both come from one factorization and are computed in exact `u128`
//! arithmetic; a result that would not fit is an error, never a wrap.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound for [`scan_largest`].
pub const DEFAULT_BOUND: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumberTheoryError {
    #[error("k must be positive")]
    Zero,
    #[error("σ₄ or φ⁵ of {0} overflows 128 bits")]
    Overflow(u64),
    #[error("scan bound {0} is too large for the sieve")]
    BoundTooLarge(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorCheck {
    pub k: u64,
    pub sigma4: u128,
    pub phi5: u128,
    /// `sigma4 > phi5`, strictly.
    pub holds: bool,
}

/// `(σ₄, φ⁵)` from the prime factorization `[(p, e)]`.
fn from_factors(k: u64, factors: impl Iterator<Item = (u64, u32)>) -> Result<DivisorCheck, NumberTheoryError> {
    let overflow = || NumberTheoryError::Overflow(k);
    let mut sigma4: u128 = 1;
    let mut phi: u128 = 1;
    for (p, e) in factors {
        let p4 = (p as u128).checked_pow(4).ok_or_else(overflow)?;
        // 1 + p⁴ + … + p^(4e)
        let mut term: u128 = 1;
        let mut power: u128 = 1;
        for _ in 0..e {
            power = power.checked_mul(p4).ok_or_else(overflow)?;
            term = term.checked_add(power).ok_or_else(overflow)?;
        }
        sigma4 = sigma4.checked_mul(term).ok_or_else(overflow)?;
        phi *= (p as u128 - 1) * (p as u128).pow(e - 1);
    }
    let phi5 = phi.checked_pow(5).ok_or_else(overflow)?;
    Ok(DivisorCheck {
        k,
        sigma4,
        phi5,
        holds: sigma4 > phi5,
    })
}

fn trial_division(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            let mut e = 0;
            while k % p == 0 {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

/// `σ₄(k)`, `φ(k)⁵` and whether the first exceeds the second.
pub fn check(k: u64) -> Result<DivisorCheck, NumberTheoryError> {
    if k == 0 {
        return Err(NumberTheoryError::Zero);
    }
    from_factors(k, trial_division(k).into_iter())
}

/// Smallest prime factor of every n ≤ bound (entries 0 and 1 are 0).
fn spf_sieve(bound: usize) -> Vec<u32> {
    let mut spf = vec![0u32; bound + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=bound {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let m = p as usize * i;
            if p > spf[i] || m > bound {
                break;
            }
            spf[m] = p;
        }
    }
    spf
}

fn sieve_factors(spf: &[u32], mut k: usize) -> impl Iterator<Item = (u64, u32)> + '_ {
    std::iter::from_fn(move || {
        if k <= 1 {
            return None;
        }
        let p = spf[k] as usize;
        let mut e = 0;
        while k % p == 0 {
            k /= p;
            e += 1;
        }
        Some((p as u64, e))
    })
}

/// Every `k ≤ bound` with `σ₄(k) > φ(k)⁵`, ascending.
///
/// With the default bound the list ends in 1680, 2310. That supports, but
/// cannot prove, that these are the two largest such integers.
pub fn scan_largest(bound: u64) -> Result<Vec<u64>, NumberTheoryError> {
    if bound > u32::MAX as u64 {
        return Err(NumberTheoryError::BoundTooLarge(bound));
    }
    let spf = spf_sieve(bound as usize);
    const SHARD: u64 = 1 << 16;
    let shards: Vec<(u64, u64)> = (0..bound.div_ceil(SHARD))
        .map(|s| (s * SHARD + 1, ((s + 1) * SHARD).min(bound)))
        .collect();
    // Shards are collected in order, so concatenation stays ascending.
    let found: Result<Vec<Vec<u64>>, _> = shards
        .par_iter()
        .map(|&(lo, hi)| {
            let mut hits = Vec::new();
            for k in lo..=hi {
                if from_factors(k, sieve_factors(&spf, k as usize))?.holds {
                    hits.push(k);
                }
            }
            Ok(hits)
        })
        .collect();
    Ok(found?.concat())
}
