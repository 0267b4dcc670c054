use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{IntPoly, PolyError, Result};

/// Dense polynomial over the prime field `F_p`, ascending coefficients in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, base, p);
        }
        base = mulm(base, base, p);
        e >>= 1;
    }
    acc
}

impl ModPoly {
    /// Builds a polynomial from residues, reducing each into `[0, p)`.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Self {
        Self::new(
            p,
            coeffs
                .iter()
                .map(|&c| c.rem_euclid(p as i64) as u64)
                .collect(),
        )
    }

    pub fn from_bigints(p: u64, coeffs: &[BigInt]) -> Self {
        let m = BigInt::from(p);
        Self::new(
            p,
            coeffs
                .iter()
                .map(|c| c.mod_floor(&m).to_u64().expect("residue fits in u64"))
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        ModPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn check(&self, other: &ModPoly) -> Result<()> {
        if self.p != other.p {
            return Err(PolyError::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> ModPoly {
        let k = k % self.p;
        ModPoly::new(
            self.p,
            self.coeffs.iter().map(|&c| mulm(c, k, self.p)).collect(),
        )
    }

    pub fn add(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(ModPoly::new(
            self.p,
            (0..n)
                .map(|i| addm(self.c(i), other.c(i), self.p))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(ModPoly::new(
            self.p,
            (0..n)
                .map(|i| subm(self.c(i), other.c(i), self.p))
                .collect(),
        ))
    }

    pub fn mul(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(ModPoly::zero(self.p));
        }
        let p = self.p;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Ok(ModPoly::new(p, out.into_iter().map(|c| c as u64).collect()))
    }

    pub fn div_rem(&self, other: &ModPoly) -> Result<(ModPoly, ModPoly)> {
        self.check(other)?;
        if other.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let p = self.p;
        let db = other.deg();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((ModPoly::zero(p), self.clone()));
        }
        let inv = inv_mod(other.lc(), p);
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = mulm(r[k + db], inv, p);
            if c == 0 {
                continue;
            }
            for (i, &b) in other.coeffs.iter().enumerate() {
                r[k + i] = subm(r[k + i], mulm(c, b, p), p);
            }
            q[k] = c;
        }
        Ok((ModPoly::new(p, q), ModPoly::new(p, r)))
    }

    pub fn rem(&self, other: &ModPoly) -> Result<ModPoly> {
        Ok(self.div_rem(other)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ModPoly) -> Result<ModPoly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &ModPoly) -> Result<(ModPoly, ModPoly, ModPoly)> {
        self.check(other)?;
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1)?)?;
            let t2 = t0.sub(&q.mul(&t1)?)?;
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = inv_mod(r0.lc(), p);
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &ModPoly) -> Result<ModPoly> {
        self.check(m)?;
        let mut acc = ModPoly::one(self.p).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc)?.rem(m)?;
            if e.bit(i) {
                acc = acc.mul(&base)?.rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn pow_mod_u64(&self, e: u64, m: &ModPoly) -> Result<ModPoly> {
        self.pow_mod(&BigUint::from(e), m)
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.p;
        ModPoly::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulm(c, (i as u64) % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| addm(mulm(acc, x, p), c, p))
    }

    /// For a polynomial in `x^p`, returns its `p`-th root (coefficients are
    /// fixed by Frobenius on `F_p`).
    pub fn pth_root(&self) -> Option<ModPoly> {
        let p = self.p as usize;
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, &c)| c != 0 && i % p != 0)
        {
            return None;
        }
        Some(ModPoly::new(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        ))
    }

    /// Rabin's irreducibility test for a nonzero polynomial.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(n) => n,
        };
        let f = self.monic();
        let p = self.p;
        let x = ModPoly::x(p);
        // frob[j] = x^(p^j) mod f
        let mut frob = vec![x.rem(&f)?];
        for _ in 0..n {
            let next = frob.last().unwrap().pow_mod_u64(p, &f)?;
            frob.push(next);
        }
        if frob[n] != x.rem(&f)? {
            return Ok(false);
        }
        for q in prime_divisors(n) {
            let h = frob[n / q].sub(&x)?;
            if !f.gcd(&h)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn c(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_int_poly(), self.p)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({self})")
    }
}
