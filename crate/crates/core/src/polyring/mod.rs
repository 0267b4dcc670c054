//! Exact polynomial arithmetic over the integers and prime fields.
//!
//! Resultants use the subresultant remainder sequence, so all intermediate
//! quantities stay integral. Roots of a polynomial are never constructed;
//! root-dependent quantities (discriminants, power sums) are computed from
//! coefficients alone.

mod intpoly;
mod modpoly;

pub use intpoly::IntPoly;
pub use modpoly::ModPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational number with positive, coprime denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
}

pub type Result<T> = std::result::Result<T, PolyError>;

/// Resultant of `f` and `g`, equal to the determinant of their Sylvester matrix.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = BigInt::one();
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return Ok(sign * num_traits::pow(b.lc(), a.deg()));
    }

    let ca = BigInt::from(a.content());
    let cb = BigInt::from(b.content());
    let scale = num_traits::pow(ca.clone(), b.deg()) * num_traits::pow(cb.clone(), a.deg());
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);

    let mut g_acc = BigInt::one();
    let mut h_acc = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b)?;
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &g_acc * num_traits::pow(h_acc.clone(), delta);
        b = r.div_scalar_exact(&divisor);
        g_acc = a.lc();
        h_acc = match delta {
            0 => h_acc,
            _ => num_traits::pow(g_acc.clone(), delta) / num_traits::pow(h_acc, delta - 1),
        };
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg();
    let h_final = num_traits::pow(b.lc(), da) / num_traits::pow(h_acc, da - 1);
    Ok(sign * scale * h_final)
}

/// Discriminant `(-1)^(d(d-1)/2) res(f, f') / lc(f)`; degree 0 or 1 gives 1.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let d = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    if d <= 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(f, &f.derivative())?;
    let (q, r) = res.div_rem(&f.lc());
    debug_assert!(r.is_zero());
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

/// Monic product of the distinct irreducible factors of a monic `f`.
pub fn squarefree_part(f: &IntPoly) -> Result<IntPoly> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    if f.deg() == 0 {
        return Ok(f.clone());
    }
    let g = f.gcd(&f.derivative());
    if g.deg() == 0 {
        return Ok(f.clone());
    }
    Ok(f.div_exact(&g)?.primitive_part())
}

/// Power sums `V_1..V_N` of the roots of a monic `f`.
///
/// The first `deg f` values follow from Newton's identities
/// `V_k = r_1 V_{k-1} + ... + r_{k-1} V_1 + k r_k`, where
/// `f = x^d - r_1 x^{d-1} - ... - r_d`; later values from the recurrence
/// with characteristic polynomial `f`.
pub fn power_sums(f: &IntPoly, n: usize) -> Result<Vec<BigInt>> {
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let d = f.deg();
    let r: Vec<BigInt> = (1..=d).map(|i| -f.coeff(d - i)).collect();
    let mut v: Vec<BigInt> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..k.min(d + 1) {
            acc += &r[i - 1] * &v[k - i - 1];
        }
        if k <= d {
            acc += &r[k - 1] * BigInt::from(k);
        }
        v.push(acc);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Test oracle: Bareiss fraction-free determinant of the Sylvester matrix.
    fn sylvester_det(f: &IntPoly, g: &IntPoly) -> BigInt {
        let (m, n) = (f.deg(), g.deg());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut a = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for j in 0..=m {
                a[row][row + j] = f.coeff(m - j);
            }
        }
        for row in 0..m {
            for j in 0..=n {
                a[n + row][row + j] = g.coeff(n - j);
            }
        }
        bareiss(a)
    }

    fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
        let n = a.len();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Test oracle: discriminant via roots for polynomials with integer roots.
    fn disc_from_roots(roots: &[i64]) -> BigInt {
        let mut acc = BigInt::one();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = BigInt::from(roots[i] - roots[j]);
                acc *= &d * &d;
            }
        }
        acc
    }

    fn from_roots(roots: &[i64]) -> IntPoly {
        roots.iter().fold(IntPoly::one(), |acc, &r| {
            &acc * &IntPoly::linear_root(&BigInt::from(r))
        })
    }

    #[test]
    fn resultant_examples() {
        let r = resultant(&p(&[-1, 1]), &p(&[-2, 1])).unwrap();
        assert_eq!(r, BigInt::from(-1));
        assert_eq!(r, sylvester_det(&p(&[-1, 1]), &p(&[-2, 1])));
        let fib = p(&[-1, -1, 1]);
        let r = resultant(&fib, &p(&[-1, 2])).unwrap();
        assert_eq!(r, sylvester_det(&fib, &p(&[-1, 2])));
        assert_eq!(r, BigInt::from(-5));
        let f = p(&[1, 0, -10, 0, 1]);
        assert!(resultant(&f, &f).unwrap().is_zero());
        assert!(resultant(&IntPoly::zero(), &f).is_err());
    }

    #[test]
    fn resultant_with_constants() {
        assert_eq!(
            resultant(&p(&[3]), &p(&[1, 1, 1])).unwrap(),
            BigInt::from(9)
        );
        assert_eq!(
            resultant(&p(&[1, 1, 1]), &p(&[3])).unwrap(),
            BigInt::from(9)
        );
        assert_eq!(resultant(&p(&[3]), &p(&[5])).unwrap(), BigInt::one());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-3, -12, 1])).unwrap(), BigInt::from(156));
        assert_eq!(
            discriminant(&p(&[1, 0, -10, 0, 1])).unwrap(),
            BigInt::from(147_456)
        );
        assert_eq!(discriminant(&p(&[2, -3, 1])).unwrap(), BigInt::one());
        assert_eq!(discriminant(&p(&[-1, -1, 1])).unwrap(), BigInt::from(5));
        assert_eq!(discriminant(&p(&[5, 1])).unwrap(), BigInt::one());
        assert_eq!(discriminant(&p(&[7])).unwrap(), BigInt::one());
        assert!(discriminant(&IntPoly::zero()).is_err());
    }

    #[test]
    fn discriminant_matches_sylvester_oracle() {
        let f = p(&[1, 0, -10, 0, 1]);
        let syl = sylvester_det(&f, &f.derivative());
        // monic quartic: (-1)^6 = 1
        assert_eq!(syl, BigInt::from(147_456));
    }

    #[test]
    fn discriminant_from_integer_roots() {
        for roots in [&[1, 2][..], &[0, 3, -4], &[1, -1, 2, 5], &[7, 7, 1]] {
            assert_eq!(
                discriminant(&from_roots(roots)).unwrap(),
                disc_from_roots(roots)
            );
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(
            squarefree_part(&from_roots(&[1, 1, 2])).unwrap(),
            from_roots(&[1, 2])
        );
        assert_eq!(squarefree_part(&p(&[-1, -1, 1])).unwrap(), p(&[-1, -1, 1]));
        assert_eq!(squarefree_part(&p(&[4, -4, 1])).unwrap(), p(&[-2, 1]));
        assert_eq!(squarefree_part(&p(&[1])).unwrap(), p(&[1]));
        assert!(squarefree_part(&p(&[1, 2])).is_err());
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sums(&p(&[-1, -1, 1]), 4).unwrap(), big(&[1, 3, 4, 7]));
        assert_eq!(
            power_sums(&p(&[-3, -12, 1]), 3).unwrap(),
            big(&[12, 150, 1836])
        );
        assert_eq!(power_sums(&p(&[2, -3, 1]), 3).unwrap(), big(&[3, 5, 9]));
        assert_eq!(
            power_sums(&p(&[1, 0, -10, 0, 1]), 4).unwrap(),
            big(&[0, 20, 0, 196])
        );
        assert!(power_sums(&p(&[1, 2]), 3).is_err());
    }

    #[test]
    fn power_sums_against_numeric_roots() {
        // Lucas numbers from the golden ratio at f64 precision, n <= 30
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let psi = (1.0 - 5f64.sqrt()) / 2.0;
        let v = power_sums(&p(&[-1, -1, 1]), 30).unwrap();
        for (i, vi) in v.iter().enumerate() {
            let n = (i + 1) as i32;
            let num = (phi.powi(n) + psi.powi(n)).round() as i64;
            assert_eq!(*vi, BigInt::from(num));
        }
    }

    #[test]
    fn power_sums_integer_roots_literal() {
        let roots = [2i64, -3, 1, 0, 5];
        let f = from_roots(&roots);
        let v = power_sums(&f, 50).unwrap();
        for (i, vi) in v.iter().enumerate() {
            let n = (i + 1) as u32;
            let lit: BigInt = roots
                .iter()
                .map(|&r| num_traits::pow(BigInt::from(r), n as usize))
                .sum();
            assert_eq!(*vi, lit, "n = {n}");
        }
    }

    #[test]
    fn vandermonde_determinant_cross_check() {
        // |det M| = |r_d| sqrt|disc| with M_{ij} = alpha_j^i, i = 1..d
        let cases: [(&[i64], Vec<f64>); 2] = [
            (&[-3, -12, 1], vec![6.0 + 39f64.sqrt(), 6.0 - 39f64.sqrt()]),
            (&[6, -11, 6, -1].map(|c: i64| -c), vec![1.0, 2.0, 3.0]),
        ];
        for (coeffs, roots) in cases {
            let f = p(coeffs);
            let d = roots.len();
            let mut m = vec![vec![0f64; d]; d];
            for i in 0..d {
                for j in 0..d {
                    m[i][j] = roots[j].powi(i as i32 + 1);
                }
            }
            let det = det_f64(m).abs();
            let rd = f.coeff(0).to_string().parse::<f64>().unwrap().abs();
            let disc = discriminant(&f)
                .unwrap()
                .to_string()
                .parse::<f64>()
                .unwrap()
                .abs();
            let expected = rd * disc.sqrt();
            assert!(
                ((det - expected) / expected).abs() < 1e-6,
                "{det} vs {expected}"
            );
        }
    }

    fn det_f64(mut a: Vec<Vec<f64>>) -> f64 {
        let n = a.len();
        let mut det = 1.0;
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
                .unwrap();
            if piv != k {
                a.swap(piv, k);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        det
    }

    fn monic_strategy(max_deg: usize) -> impl Strategy<Value = IntPoly> {
        (0..=max_deg).prop_flat_map(|d| {
            proptest::collection::vec(-9i64..=9, d).prop_map(|mut c| {
                c.push(1);
                IntPoly::from_i64s(&c)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn subresultant_matches_sylvester(f in monic_strategy(5), g in proptest::collection::vec(-9i64..=9, 1..6)) {
            let g = IntPoly::from_i64s(&g);
            prop_assume!(!g.is_zero());
            prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester_det(&f, &g));
            prop_assert_eq!(resultant(&g, &f).unwrap(), sylvester_det(&g, &f));
        }

        #[test]
        fn discriminant_is_multiplicative(f in monic_strategy(4), g in monic_strategy(4)) {
            let lhs = discriminant(&(&f * &g)).unwrap();
            let r = resultant(&f, &g).unwrap();
            let rhs = discriminant(&f).unwrap() * discriminant(&g).unwrap() * &r * &r;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn power_sums_satisfy_recurrence(f in monic_strategy(5)) {
            let d = f.deg();
            let v = power_sums(&f, 40).unwrap();
            for n in d + 1..=40 {
                let mut acc = BigInt::zero();
                for i in 1..=d {
                    acc -= f.coeff(d - i) * &v[n - i - 1];
                }
                prop_assert_eq!(&acc, &v[n - 1]);
            }
        }

        #[test]
        fn squarefree_part_is_squarefree(f in monic_strategy(3), g in monic_strategy(2)) {
            let h = &(&f * &g) * &g;
            let s = squarefree_part(&h).unwrap();
            prop_assert!(s.is_monic());
            prop_assert_eq!(s.gcd(&s.derivative()).deg(), 0);
            prop_assert!(h.div_exact(&s).is_ok());
        }
    }
}
