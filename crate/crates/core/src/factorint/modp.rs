//! Factorization over `F_p`: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FactorError, Result};
use crate::numth::is_prime;
use crate::polyring::ModPoly;

/// Deterministic seed derived from the polynomial itself.
pub(crate) fn input_seed(f: &ModPoly, salt: u64) -> u64 {
    let mut h = splitmix(f.modulus() ^ salt);
    for &c in f.coeffs() {
        h = splitmix(h ^ c);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree and then by coefficients.
pub fn factor_mod_p(f: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    factor_mod_p_seeded(f, 0)
}

/// As [`factor_mod_p`], with the internal randomness salted by `seed`.
/// The result does not depend on the seed.
pub fn factor_mod_p_seeded(f: &ModPoly, seed: u64) -> Result<Vec<(ModPoly, u32)>> {
    let p = f.modulus();
    if !is_prime(p) {
        return Err(FactorError::CompositeModulus(p));
    }
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let f = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(input_seed(&f, seed));
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&f)? {
        for (block, d) in distinct_degree(&part)? {
            for g in equal_degree(&block, d, &mut rng)? {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    Ok(out)
}

pub(crate) fn canonical_cmp(a: &ModPoly, b: &ModPoly) -> std::cmp::Ordering {
    a.coeffs()
        .len()
        .cmp(&b.coeffs().len())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// `f = prod g_i^i` with each `g_i` squarefree, monic, pairwise coprime.
pub(crate) fn squarefree_decomposition(f: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.div_rem(&c)?.0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let fac = w.div_rem(&y)?.0;
        if fac.deg() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w)?.0;
        i += 1;
    }
    if c.deg() > 0 {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        for (g, m) in squarefree_decomposition(&root.monic())? {
            out.push((g, m * p as u32));
        }
    }
    Ok(out)
}

/// Splits a squarefree monic polynomial into blocks whose irreducible
/// factors all share one degree.
pub(crate) fn distinct_degree(f: &ModPoly) -> Result<Vec<(ModPoly, usize)>> {
    let p = f.modulus();
    let x = ModPoly::x(p);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.rem(&g)?;
    let mut d = 1;
    while g.deg() >= 2 * d {
        h = h.pow_mod_u64(p, &g)?;
        let t = g.gcd(&h.sub(&x)?)?;
        if !t.is_one() {
            g = g.div_rem(&t)?.0;
            h = h.rem(&g)?;
            out.push((t, d));
        }
        d += 1;
    }
    if g.deg() > 0 {
        let d = g.deg();
        out.push((g.monic(), d));
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
pub(crate) fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<ModPoly>> {
    let n = f.deg();
    if n == d {
        return Ok(vec![f.monic()]);
    }
    let p = f.modulus();
    let exponent = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = random_poly(p, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace a + a^2 + ... + a^(2^(d-1)) lands in F_2 on every factor
            let mut t = a.rem(f)?;
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t)?.rem(f)?;
                acc = acc.add(&t)?;
            }
            acc
        } else {
            a.pow_mod(&exponent, f)?.sub(&ModPoly::one(p))?
        };
        let g = f.gcd(&b)?;
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_rem(&g)?.0;
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&h.monic(), d, rng)?);
            return Ok(out);
        }
    }
}

fn random_poly(p: u64, below: usize, rng: &mut ChaCha8Rng) -> ModPoly {
    ModPoly::new(p, (0..below).map(|_| rng.gen_range(0..p)).collect())
}
