//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;

use dold_core::polyring::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ip(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Random monic polynomial of degree `deg` with lower coefficients in `[-h, h]`.
pub fn random_monic(r: &mut ChaCha8Rng, deg: usize, h: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| r.gen_range(-h..=h)).collect();
    c.push(1);
    ip(&c)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant as the determinant of the literal Sylvester matrix.
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let row = |p: &IntPoly, shift: usize| {
        let mut r = vec![BigInt::zero(); size];
        for (i, c) in p.coeffs().iter().rev().enumerate() {
            r[shift + i] = c.clone();
        }
        r
    };
    let mut mat = Vec::with_capacity(size);
    for s in 0..n {
        mat.push(row(f, s));
    }
    for s in 0..m {
        mat.push(row(g, s));
    }
    determinant(mat)
}

/// `(-1)^{n(n-1)/2} res(f, f') / lc(f)`.
pub fn sylvester_discriminant(f: &IntPoly) -> BigInt {
    let n = f.deg();
    let r = sylvester_resultant(f, &f.derivative());
    let d = r / f.lc();
    if (n * (n - 1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

fn signed_divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n)
        .filter(|d| n % d == 0)
        .flat_map(|d| [d, -d])
        .collect()
}

fn value_at(f: &IntPoly, x: i64) -> i64 {
    f.eval(&BigInt::from(x)).to_i64().expect("small value")
}

fn divides(f: &IntPoly, h: &IntPoly) -> Option<IntPoly> {
    let (q, r) = f.div_rem_monic(h).ok()?;
    r.is_zero().then_some(q)
}

/// Monic factor of degree 1 or 2 found by Kronecker's divisor search on the
/// values at 0, 1 and -1.
fn small_factor(f: &IntPoly) -> Option<IntPoly> {
    let f0 = value_at(f, 0);
    if f0 == 0 {
        return Some(ip(&[0, 1]));
    }
    for r in signed_divisors(f0) {
        if value_at(f, r) == 0 {
            return Some(ip(&[-r, 1]));
        }
    }
    if f.deg() < 4 {
        return None;
    }
    let (f1, fm1) = (value_at(f, 1), value_at(f, -1));
    for c in signed_divisors(f0) {
        for d1 in signed_divisors(f1) {
            let b = d1 - 1 - c;
            let hm1 = 1 - b + c;
            if hm1 == 0 || fm1 % hm1 != 0 {
                continue;
            }
            let h = ip(&[c, b, 1]);
            if divides(f, &h).is_some() {
                return Some(h);
            }
        }
    }
    None
}

/// Brute-force factorization of a monic polynomial of degree at most 5.
pub fn kronecker_factor(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    assert!(f.is_monic() && f.deg() <= 5);
    let mut rest = f.clone();
    let mut found: Vec<IntPoly> = Vec::new();
    while rest.deg() > 0 {
        match small_factor(&rest) {
            Some(h) => {
                rest = divides(&rest, &h).expect("factor divides");
                found.push(h);
            }
            None => {
                found.push(rest.clone());
                break;
            }
        }
    }
    found.sort_by(|a, b| a.canonical_cmp(b));
    let mut out: Vec<(IntPoly, u32)> = Vec::new();
    for h in found {
        match out.last_mut() {
            Some((g, m)) if g.canonical_cmp(&h) == Ordering::Equal => *m += 1,
            _ => out.push((h, 1)),
        }
    }
    out
}

pub fn is_irreducible_oracle(f: &IntPoly) -> bool {
    f.deg() >= 1 && matches!(kronecker_factor(f).as_slice(), [(_, 1)])
}

/// Random monic irreducible of the given degree (at most 5).
pub fn random_irreducible(r: &mut ChaCha8Rng, deg: usize, h: i64) -> IntPoly {
    loop {
        let f = random_monic(r, deg, h);
        if is_irreducible_oracle(&f) {
            return f;
        }
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let s = n.sqrt();
        &s * &s == *n
    }
}
