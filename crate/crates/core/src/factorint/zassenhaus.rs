//! Factorization of monic integer polynomials by Zassenhaus' method.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::hensel::{hensel_lift, product_mod};
use super::modp::factor_mod_p_seeded;
use super::{FactorError, FactorOptions, Factorization, Result};
use crate::numth::is_prime;
use crate::polyring::IntPoly;

/// Largest degree accepted by [`factor_over_z`].
pub const MAX_DEGREE: usize = 12;
/// Largest absolute coefficient accepted by [`factor_over_z`].
pub const MAX_COEFF: u64 = 1_000_000;

/// Number of usable primes tried before committing to one.
const PRIME_TRIALS: usize = 5;

/// Factors a monic polynomial into monic irreducibles over `Z`.
pub fn factor_over_z(f: &IntPoly) -> Result<Factorization> {
    factor_over_z_with(f, &FactorOptions::default())
}

pub fn factor_over_z_with(f: &IntPoly, opts: &FactorOptions) -> Result<Factorization> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(FactorError::NotMonic);
    }
    if f.deg() > MAX_DEGREE {
        return Err(FactorError::Unsupported(format!(
            "degree {} exceeds {MAX_DEGREE}",
            f.deg()
        )));
    }
    if f.height() > BigUint::from(MAX_COEFF) {
        return Err(FactorError::Unsupported(format!(
            "coefficient height {} exceeds {MAX_COEFF}",
            f.height()
        )));
    }
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for g in zassenhaus(&part, opts.seed)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { factors })
}

/// Yun's algorithm: `f = prod a_i^i` with `a_i` monic, squarefree, coprime.
pub(crate) fn squarefree_decomposition(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_exact(&a0)?;
    let mut c = fp.div_exact(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a)?;
        if b.deg() == 0 {
            break;
        }
        c = d.div_exact(&a)?;
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

fn zassenhaus(f: &IntPoly, seed: u64) -> Result<Vec<IntPoly>> {
    let n = f.deg();
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let mut best: Option<(u64, Vec<crate::polyring::ModPoly>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < PRIME_TRIALS {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let fp = f.mod_reduce(p);
        if !fp.gcd(&fp.derivative())?.is_one() {
            continue;
        }
        tried += 1;
        let fs: Vec<_> = factor_mod_p_seeded(&fp, seed)?
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        if fs.len() == 1 {
            return Ok(vec![f.clone()]);
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
    }
    let (p, seeds) = best.expect("at least one prime tried");

    let bound = mignotte_bound(f);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2u32 {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &seeds, k)?;
    Ok(recombine(f, lifted, &pk))
}

/// Coefficient bound for any monic factor of `f`: `2^deg · ||f||_2`.
pub(crate) fn mignotte_bound(f: &IntPoly) -> BigInt {
    let norm = f.norm_sq().sqrt() + 1u32;
    BigInt::from(norm) << f.deg()
}

fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, pk: &BigInt) -> Vec<IntPoly> {
    let mut target = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let parts: Vec<&IntPoly> = combo.iter().map(|&i| &lifted[i]).collect();
            if let Some((cand, quot)) = try_divisor(&target, &parts, pk) {
                found.push(cand);
                target = quot;
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            if !next_combination(&mut combo, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    if target.deg() > 0 {
        found.push(target);
    }
    found
}

fn try_divisor(target: &IntPoly, parts: &[&IntPoly], pk: &BigInt) -> Option<(IntPoly, IntPoly)> {
    // cheap constant-term test before the full product
    let t0 = target.coeff(0);
    if !t0.is_zero() {
        let c0 = parts
            .iter()
            .fold(BigInt::one(), |acc, p| (acc * p.coeff(0)).mod_floor(pk));
        let half: BigInt = pk / 2;
        let c0 = if c0 > half { c0 - pk } else { c0 };
        if c0.is_zero() || !t0.is_multiple_of(&c0) {
            return None;
        }
    }
    let cand = product_mod(parts, pk).symmetric_mod(pk);
    let (q, r) = target.div_rem_monic(&cand).ok()?;
    r.is_zero().then_some((cand, q))
}

/// Advances `combo` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        let f = ip(&[1, 0, -10, 0, 1]);
        let fz = factor_over_z(&f).unwrap();
        assert_eq!(fz.factors, vec![(f, 1)]);
        assert!(fz.is_irreducible());
    }

    #[test]
    fn splits_products() {
        let a = ip(&[-3, 0, 1]);
        let b = ip(&[5, 1, 1]);
        let c = ip(&[-1, 1]);
        let f = &(&a * &b) * &(&c * &c);
        let fz = factor_over_z(&f).unwrap();
        assert_eq!(fz.factors, vec![(c, 2), (a, 1), (b, 1)]);
        assert_eq!(fz.product(), f);
    }

    #[test]
    fn cyclotomic_x12_minus_1() {
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let fz = factor_over_z(&ip(&c)).unwrap();
        let degs: Vec<usize> = fz.factors.iter().map(|(g, _)| g.deg()).collect();
        // Phi_1, Phi_2, Phi_3, Phi_4, Phi_6, Phi_12
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(fz.product(), ip(&c));
    }

    #[test]
    fn yun_decomposition() {
        let a = ip(&[1, 1]);
        let b = ip(&[-2, 0, 1]);
        let f = &a.pow(3) * &b.pow(2);
        assert_eq!(squarefree_decomposition(&f).unwrap(), vec![(b, 2), (a, 3)]);
    }

    #[test]
    fn envelope_guards() {
        let mut c = vec![0i64; 14];
        c[13] = 1;
        assert!(matches!(
            factor_over_z(&ip(&c)),
            Err(FactorError::Unsupported(_))
        ));
        assert!(matches!(
            factor_over_z(&ip(&[1_000_001, 1])),
            Err(FactorError::Unsupported(_))
        ));
        assert_eq!(factor_over_z(&ip(&[1, 2])), Err(FactorError::NotMonic));
        assert!(factor_over_z(&ip(&[1])).unwrap().factors.is_empty());
    }

    #[test]
    fn combinations_enumerate_all_subsets() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
