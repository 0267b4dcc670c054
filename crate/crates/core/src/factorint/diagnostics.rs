//! Reductions modulo primes used as evidence about a polynomial over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::modp::factor_mod_p;
use super::{FactorError, Result};
use crate::numth::{is_prime, primes_up_to};
use crate::polyring::{discriminant, squarefree_part, IntPoly, ModPoly, Rational};

/// Smallest prime bound accepted by [`root_density`].
pub const MIN_DENSITY_BOUND: u64 = 100;

/// Degrees of the irreducible factors of `f mod p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPattern {
    pub prime: u64,
    /// Factor degrees in ascending order, repeated by multiplicity.
    pub degrees: Vec<usize>,
    /// Whether `p` divides the discriminant of `f`.
    pub ramified: bool,
}

impl FactorPattern {
    /// Least common multiple of the factor degrees.
    pub fn degree_lcm(&self) -> u64 {
        self.degrees.iter().fold(1u64, |a, &d| a.lcm(&(d as u64)))
    }
}

fn require_monic(f: &IntPoly) -> Result<()> {
    if f.is_zero() {
        Err(FactorError::ZeroPolynomial)
    } else if !f.is_monic() {
        Err(FactorError::NotMonic)
    } else {
        Ok(())
    }
}

fn divides(p: u64, n: &BigInt) -> bool {
    (n % p).is_zero()
}

/// Least prime `p <= bound`, not dividing the discriminant, with `f mod p`
/// irreducible. Such a prime proves `f` irreducible over `Z`; `None` proves
/// nothing.
pub fn irreducibility_witness(f: &IntPoly, bound: u64) -> Result<Option<u64>> {
    require_monic(f)?;
    match f.deg() {
        0 => return Ok(None),
        1 => return Ok((bound >= 2).then_some(2)),
        _ => {}
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(FactorError::NotSquarefree);
    }
    for p in primes_up_to(bound)?.iter() {
        if divides(p, &disc) {
            continue;
        }
        if f.mod_reduce(p).is_irreducible()? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Factorization pattern of `f` modulo a prime.
pub fn degree_pattern(f: &IntPoly, p: u64) -> Result<FactorPattern> {
    require_monic(f)?;
    if !is_prime(p) {
        return Err(FactorError::CompositeModulus(p));
    }
    let mut degrees = Vec::new();
    for (g, m) in factor_mod_p(&f.mod_reduce(p))? {
        degrees.extend(std::iter::repeat_n(g.deg(), m as usize));
    }
    degrees.sort_unstable();
    let ramified = divides(p, &discriminant(f)?);
    Ok(FactorPattern {
        prime: p,
        degrees,
        ramified,
    })
}

/// Whether `f` has a root in `F_p`, via `gcd(x^p - x, f)`.
pub fn has_root_mod_p(f: &ModPoly) -> Result<bool> {
    if f.deg() == 0 {
        return Ok(false);
    }
    let p = f.modulus();
    let x = ModPoly::x(p);
    let xp = x.pow_mod_u64(p, f)?;
    Ok(f.gcd(&xp.sub(&x)?)?.deg() > 0)
}

/// Fraction of primes `p <= bound` not dividing the discriminant of the
/// squarefree part of `f` for which `f` has a root mod `p`.
pub fn root_density(f: &IntPoly, bound: u64) -> Result<Rational> {
    require_monic(f)?;
    if bound < MIN_DENSITY_BOUND {
        return Err(FactorError::DensityBoundTooSmall(bound));
    }
    let s = squarefree_part(f)?;
    let disc = discriminant(&s)?;
    let mut hits = 0u64;
    let mut total = 0u64;
    for p in primes_up_to(bound)?.iter() {
        if divides(p, &disc) {
            continue;
        }
        total += 1;
        if has_root_mod_p(&s.mod_reduce(p))? {
            hits += 1;
        }
    }
    if total == 0 {
        return Err(FactorError::EmptyDensity);
    }
    Ok(Rational::new(hits.into(), total.into()))
}
