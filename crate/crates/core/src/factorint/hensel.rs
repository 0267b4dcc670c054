//! Linear Hensel lifting of a coprime modular factorization.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{FactorError, Result};
use crate::numth::is_prime;
use crate::polyring::{IntPoly, ModPoly};

/// Lifts `f ≡ prod seeds (mod p)` to `f ≡ prod lifted (mod p^k)`.
///
/// `f` must be monic, the seeds monic, pairwise coprime and share one prime
/// modulus. Lifted factors are monic with coefficients in `[0, p^k)`.
pub fn hensel_lift(f: &IntPoly, seeds: &[ModPoly], k: u32) -> Result<Vec<IntPoly>> {
    let Some(first) = seeds.first() else {
        return Err(FactorError::SeedProductMismatch);
    };
    if k == 0 {
        return Err(FactorError::BadExponent);
    }
    if !f.is_monic() {
        return Err(FactorError::NotMonic);
    }
    let p = first.modulus();
    if !is_prime(p) {
        return Err(FactorError::CompositeModulus(p));
    }
    let mut seeds: Vec<ModPoly> = seeds.iter().map(ModPoly::monic).collect();
    if seeds.iter().any(|s| s.modulus() != p || s.is_zero()) {
        return Err(FactorError::SeedProductMismatch);
    }
    let mut prod = ModPoly::one(p);
    for s in &seeds {
        prod = prod.mul(s)?;
    }
    if prod != f.mod_reduce(p) {
        return Err(FactorError::SeedProductMismatch);
    }
    for i in 0..seeds.len() {
        for j in i + 1..seeds.len() {
            if !seeds[i].gcd(&seeds[j])?.is_one() {
                return Err(FactorError::NonCoprimeSeeds);
            }
        }
    }
    if k == 1 {
        return Ok(seeds.iter().map(ModPoly::to_int_poly).collect());
    }

    let pb = BigInt::from(p);
    let pk = num_traits::pow(pb.clone(), k as usize);
    let mut out = Vec::with_capacity(seeds.len());
    let mut target = f.reduce_mod(&pk);
    let last = seeds.pop().expect("nonempty");
    for (i, g0) in seeds.iter().enumerate() {
        let mut h0 = last.clone();
        for s in &seeds[i + 1..] {
            h0 = h0.mul(s)?;
        }
        let (g, h) = lift_pair(&target, g0, &h0, &pb, k)?;
        out.push(g);
        target = h;
    }
    out.push(target);
    Ok(out)
}

/// Lifts `big ≡ g0·h0 (mod p)` to a factorization modulo `p^k`.
fn lift_pair(
    big: &IntPoly,
    g0: &ModPoly,
    h0: &ModPoly,
    p: &BigInt,
    k: u32,
) -> Result<(IntPoly, IntPoly)> {
    let pm = g0.modulus();
    let (one, _a, b) = g0.ext_gcd(h0)?;
    debug_assert!(one.is_one());
    let mut g = g0.to_int_poly();
    let mut h = h0.to_int_poly();
    let mut pj = p.clone();
    for _ in 1..k {
        let next = &pj * p;
        let err = (big - &(&g * &h)).reduce_mod(&next);
        debug_assert!(err.coeffs().iter().all(|c| c.is_multiple_of(&pj)));
        let c = err.div_scalar_exact(&pj).mod_reduce(pm);
        let r = b.mul(&c)?.rem(g0)?;
        g = (&g + &r.to_int_poly().scale(&pj)).reduce_mod(&next);
        let (q, rem) = big.reduce_mod(&next).div_rem_monic(&g)?;
        debug_assert!(rem.reduce_mod(&next).is_zero());
        h = q.reduce_mod(&next);
        pj = next;
    }
    Ok((g, h))
}

/// Product of lifted factors reduced modulo `m`.
pub(crate) fn product_mod(factors: &[&IntPoly], m: &BigInt) -> IntPoly {
    factors
        .iter()
        .fold(IntPoly::one(), |acc, f| (&acc * *f).reduce_mod(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorint::factor_mod_p;

    fn lift_all(f: &IntPoly, p: u64, k: u32) -> Vec<IntPoly> {
        let seeds: Vec<ModPoly> = factor_mod_p(&f.mod_reduce(p))
            .unwrap()
            .into_iter()
            .map(|(g, m)| {
                assert_eq!(m, 1);
                g
            })
            .collect();
        hensel_lift(f, &seeds, k).unwrap()
    }

    #[test]
    fn lifted_product_matches_modulo_pk() {
        let f = IntPoly::from_i64s(&[1, 0, -10, 0, 1]);
        for (p, k) in [(7u64, 6u32), (11, 4), (13, 9), (23, 3)] {
            let lifted = lift_all(&f, p, k);
            let pk = num_traits::pow(BigInt::from(p), k as usize);
            let refs: Vec<&IntPoly> = lifted.iter().collect();
            assert_eq!(product_mod(&refs, &pk), f.reduce_mod(&pk), "p={p} k={k}");
            for (g, seed) in lifted.iter().zip(factor_mod_p(&f.mod_reduce(p)).unwrap()) {
                assert!(g.is_monic());
                assert_eq!(g.mod_reduce(p), seed.0);
            }
        }
    }

    #[test]
    fn lift_recovers_integer_factors() {
        // (x^2 - 3)(x^2 + x + 5) mod 7 lifted far enough recovers both
        let a = IntPoly::from_i64s(&[-3, 0, 1]);
        let b = IntPoly::from_i64s(&[5, 1, 1]);
        let f = &a * &b;
        let seeds = vec![a.mod_reduce(7), b.mod_reduce(7)];
        let lifted = hensel_lift(&f, &seeds, 5).unwrap();
        let m = BigInt::from(7u32.pow(5));
        assert_eq!(lifted[0].symmetric_mod(&m), a);
        assert_eq!(lifted[1].symmetric_mod(&m), b);
    }

    #[test]
    fn k_one_is_identity() {
        let f = IntPoly::from_i64s(&[2, 3, 1]);
        let seeds = vec![
            ModPoly::from_i64s(5, &[1, 1]),
            ModPoly::from_i64s(5, &[2, 1]),
        ];
        let out = hensel_lift(&f, &seeds, 1).unwrap();
        assert_eq!(
            out,
            vec![IntPoly::from_i64s(&[1, 1]), IntPoly::from_i64s(&[2, 1])]
        );
    }

    #[test]
    fn rejects_bad_seeds() {
        let f = IntPoly::from_i64s(&[1, 2, 1]);
        let s = ModPoly::from_i64s(5, &[1, 1]);
        assert_eq!(
            hensel_lift(&f, &[s.clone(), s.clone()], 3),
            Err(FactorError::NonCoprimeSeeds)
        );
        assert_eq!(
            hensel_lift(&f, std::slice::from_ref(&s), 3),
            Err(FactorError::SeedProductMismatch)
        );
        assert_eq!(
            hensel_lift(&f, &[], 3),
            Err(FactorError::SeedProductMismatch)
        );
        assert_eq!(
            hensel_lift(&f, &[s.clone(), s], 0),
            Err(FactorError::BadExponent)
        );
    }
}
