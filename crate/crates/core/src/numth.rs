//! Elementary exact number theory: Möbius function, radicals, valuations,
//! Legendre symbols and a prime sieve.
//!
//! Integer factorization here is trial division backed by a shared sieve,
//! with a Pollard–Brent fallback for the occasional large cofactor of a
//! discriminant. Sequence terms are never factored.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumthError {
    #[error("argument must be positive, got {0}")]
    NotPositive(String),
    #[error("argument must be nonzero")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Legendre symbol needs an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("sieve limit must be at least 2, got {0}")]
    SieveTooSmall(u64),
    #[error("could not split cofactor {0} within the factorization budget")]
    FactorBudget(String),
}

pub type Result<T> = std::result::Result<T, NumthError>;

/// Ascending list of all primes up to `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSieve {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeSieve {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }
}

/// Sieve of Eratosthenes over `[2, x]`.
pub fn primes_up_to(x: u64) -> Result<PrimeSieve> {
    if x < 2 {
        return Err(NumthError::SieveTooSmall(x));
    }
    let n = x as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    Ok(PrimeSieve { limit: x, primes })
}

const SMALL_SIEVE_LIMIT: u64 = 1 << 16;

fn small_primes() -> &'static PrimeSieve {
    static SIEVE: OnceLock<PrimeSieve> = OnceLock::new();
    SIEVE.get_or_init(|| primes_up_to(SMALL_SIEVE_LIMIT).expect("limit >= 2"))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Strong probable-prime test for big cofactors (fixed bases).
fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let r = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> r;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard–Brent rho; returns a nontrivial factor of composite `n`.
fn pollard_brent(n: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    for c in 1u32..40 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 128u64;
        let mut iterations: u64 = 0;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            iterations += r;
            if iterations > 1 << 22 {
                break;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != one && g != *n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization of a positive integer as ascending `(prime, exponent)` pairs.
pub fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(NumthError::NotPositive("0".into()));
    }
    let mut rest = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in small_primes().iter() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if rest.is_one() {
        return Ok(out);
    }
    let bound = BigUint::from(SMALL_SIEVE_LIMIT);
    if rest < &bound * &bound {
        out.push((rest, 1));
        return Ok(out);
    }
    let mut stack = vec![rest];
    let mut large: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime_big(&m) {
            large.push(m);
            continue;
        }
        match pollard_brent(&m) {
            Some(f) => {
                let other = &m / &f;
                stack.push(f);
                stack.push(other);
            }
            None => return Err(NumthError::FactorBudget(m.to_string())),
        }
    }
    large.sort();
    for p in large {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Möbius function μ(n).
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(NumthError::NotPositive("0".into()));
    }
    let mut rest = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Möbius values μ(1..=n) by a linear sieve; index 0 is unused.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[0] = 0;
    let mut is_comp = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_comp[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            is_comp[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// Product of the distinct prime divisors of `n`.
pub fn radical_int(n: &BigInt) -> Result<BigUint> {
    if n.sign() != Sign::Plus {
        return Err(NumthError::NotPositive(n.to_string()));
    }
    radical_uint(n.magnitude())
}

pub fn radical_uint(n: &BigUint) -> Result<BigUint> {
    Ok(factorize(n)?
        .into_iter()
        .fold(BigUint::one(), |acc, (p, _)| acc * p))
}

/// Radical of `|n|`, with `rad(0)` rejected.
pub fn radical_abs(n: &BigInt) -> Result<BigUint> {
    if n.is_zero() {
        return Err(NumthError::Zero);
    }
    radical_uint(n.magnitude())
}

/// Largest `k` with `p^k | n`.
pub fn p_valuation(p: u64, n: &BigInt) -> Result<u32> {
    if !is_prime(p) {
        return Err(NumthError::NotPrime(p));
    }
    if n.is_zero() {
        return Err(NumthError::Zero);
    }
    Ok(valuation_uint(p, n.magnitude()))
}

pub(crate) fn valuation_uint(p: u64, n: &BigUint) -> u32 {
    let pb = BigUint::from(p);
    let mut rest = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            return k;
        }
        rest = q;
        k += 1;
    }
}

/// Legendre symbol `(a / p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 {
        return Err(NumthError::EvenPrime(p));
    }
    if !is_prime(p) {
        return Err(NumthError::NotPrime(p));
    }
    let r = a
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits");
    Ok(match pow_mod(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

/// `gcd(0, x) = |x|`.
pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigUint {
    a.magnitude().gcd(b.magnitude())
}

/// lcm over an iterator; the empty lcm is 1.
pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigUint>>(items: I) -> BigUint {
    items.into_iter().fold(
        BigUint::one(),
        |acc, x| if x.is_zero() { acc } else { acc.lcm(x) },
    )
}

/// gcd over an iterator; the empty gcd is 0.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigUint>>(items: I) -> BigUint {
    items.into_iter().fold(BigUint::zero(), |acc, x| acc.gcd(x))
}

/// Exact integer square root test.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Divisors of a positive integer in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
