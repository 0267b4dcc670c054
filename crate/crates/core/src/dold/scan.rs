//! Möbius-sum and prime-power scans over a finite prefix.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{DoldError, Result};
use crate::numth::{is_prime, mobius_table, primes_up_to};
use crate::recurrence::SequenceView;

/// An index `n` with `n ∤ S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoldViolation {
    pub n: usize,
    #[serde(with = "crate::decimal::int")]
    pub mobius_sum: BigInt,
    /// `n / gcd(n, S_n)`: the least `c` with `n | c·S_n`.
    pub deficiency: u64,
}

/// A failing congruence `p^k ∤ A_{p^k s} - A_{p^{k-1} s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerFailure {
    pub p: u64,
    pub k: u32,
    pub s: u64,
}

/// All Möbius sums `S_1..S_N` of a view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoldScan {
    sums: Vec<BigInt>,
}

/// Computes `S_n = sum_{d|n} μ(n/d) A_d` for every `n <= horizon`.
pub fn scan(view: &SequenceView, horizon: usize) -> Result<DoldScan> {
    if horizon == 0 {
        return Err(DoldError::ZeroHorizon);
    }
    let terms = view.terms(horizon)?;
    let mu = mobius_table(horizon);
    let mut sums = vec![BigInt::zero(); horizon];
    for (d, a) in terms.iter().enumerate().map(|(i, a)| (i + 1, a)) {
        if a.is_zero() {
            continue;
        }
        for k in 1..=horizon / d {
            match mu[k] {
                1 => sums[d * k - 1] += a,
                -1 => sums[d * k - 1] -= a,
                _ => {}
            }
        }
    }
    Ok(DoldScan { sums })
}

impl DoldScan {
    pub fn horizon(&self) -> usize {
        self.sums.len()
    }

    /// `S_n` for `1 <= n <= horizon`.
    pub fn mobius_sum(&self, n: usize) -> &BigInt {
        &self.sums[n - 1]
    }

    pub fn sums(&self) -> &[BigInt] {
        &self.sums
    }

    fn deficiency(n: usize, s: &BigInt) -> u64 {
        let r = s
            .mod_floor(&BigInt::from(n))
            .to_u64()
            .expect("residue below n");
        n as u64 / (n as u64).gcd(&r)
    }

    pub fn violations(&self) -> Vec<DoldViolation> {
        self.sums
            .iter()
            .enumerate()
            .filter_map(|(i, s)| {
                let n = i + 1;
                let deficiency = Self::deficiency(n, s);
                (deficiency > 1).then(|| DoldViolation {
                    n,
                    mobius_sum: s.clone(),
                    deficiency,
                })
            })
            .collect()
    }

    /// Indices with `S_n < 0`.
    pub fn sign_violations(&self) -> Vec<usize> {
        self.sums
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_negative())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// lcm of all deficiencies, a divisor of the fail factor.
    pub fn empirical_lower(&self) -> BigUint {
        self.sums
            .iter()
            .enumerate()
            .fold(BigUint::from(1u32), |acc, (i, s)| {
                acc.lcm(&BigUint::from(Self::deficiency(i + 1, s)))
            })
    }

    /// Largest `M` such that `n | S_n` for every `n <= M`.
    pub fn clean_prefix(&self) -> usize {
        self.sums
            .iter()
            .enumerate()
            .position(|(i, s)| Self::deficiency(i + 1, s) > 1)
            .unwrap_or(self.sums.len())
    }
}

pub fn mobius_sum(view: &SequenceView, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(DoldError::ZeroArgument);
    }
    let mu = mobius_table(n);
    let mut s = BigInt::zero();
    for d in crate::numth::divisors(n as u64) {
        let d = d as usize;
        match mu[n / d] {
            1 => s += view.term(d)?,
            -1 => s -= view.term(d)?,
            _ => {}
        }
    }
    Ok(s)
}

pub fn dold_violations(view: &SequenceView, horizon: usize) -> Result<Vec<DoldViolation>> {
    Ok(scan(view, horizon)?.violations())
}

pub fn sign_violations(view: &SequenceView, horizon: usize) -> Result<Vec<usize>> {
    Ok(scan(view, horizon)?.sign_violations())
}

pub fn empirical_fail_lower(view: &SequenceView, horizon: usize) -> Result<BigUint> {
    Ok(scan(view, horizon)?.empirical_lower())
}

/// Whether `p^k | A_{p^k s} - A_{p^{k-1} s}`.
pub fn prime_power_check(view: &SequenceView, p: u64, k: u32, s: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(DoldError::NotPrime(p));
    }
    if k == 0 || s == 0 {
        return Err(DoldError::ZeroArgument);
    }
    if s.is_multiple_of(p) {
        return Err(DoldError::PrimeDividesCofactor { p, s });
    }
    let pk = p
        .checked_pow(k)
        .and_then(|pk| pk.checked_mul(s).map(|i| (pk, i)));
    let Some((pk, idx)) = pk else {
        return Err(DoldError::IndexOverflow);
    };
    let hi = view.term(idx as usize)?;
    let lo = view.term((idx / p) as usize)?;
    Ok((hi - lo).is_multiple_of(&BigInt::from(pk)))
}

/// Every `(p, k, s)` with `p^k s <= horizon`, `p ∤ s`, failing its congruence.
pub fn prime_power_failures(view: &SequenceView, horizon: usize) -> Result<Vec<PrimePowerFailure>> {
    if horizon == 0 {
        return Err(DoldError::ZeroHorizon);
    }
    let terms = view.terms(horizon)?;
    let mut out = Vec::new();
    if horizon < 2 {
        return Ok(out);
    }
    for p in primes_up_to(horizon as u64)?.iter() {
        let mut pk = p;
        let mut k = 1;
        while pk <= horizon as u64 {
            let m = BigInt::from(pk);
            for s in (1..=horizon as u64 / pk).filter(|s| s % p != 0) {
                let idx = (pk * s) as usize;
                if !(&terms[idx - 1] - &terms[idx / p as usize - 1]).is_multiple_of(&m) {
                    out.push(PrimePowerFailure { p, k, s });
                }
            }
            pk *= p;
            k += 1;
        }
    }
    out.sort_by_key(|f| (f.p.pow(f.k) * f.s, f.p));
    Ok(out)
}
