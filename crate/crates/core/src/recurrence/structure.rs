//! Decomposition of a recurrence into rational multiples of trace sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{char_poly, RecurrenceSpec, Result, SequenceView};
use crate::factorint::{self, FactorError, FactorOptions};
use crate::polyring::{discriminant, power_sums, IntPoly, Rational};

/// Power sums `V_n = sum β^n` over the roots `β` of a monic integer polynomial.
#[derive(Debug, Clone)]
pub struct TraceSequence {
    pub generator: IntPoly,
    pub view: SequenceView,
}

/// Trace sequence of a monic polynomial with nonzero constant term. The
/// caller is responsible for irreducibility.
pub fn trace_sequence(factor: &IntPoly) -> Result<TraceSequence> {
    let initial = power_sums(factor, factor.deg())?;
    let spec = RecurrenceSpec::from_char_poly(factor, initial)?;
    Ok(TraceSequence {
        generator: factor.clone(),
        view: spec.view(),
    })
}

/// One summand `l · V^(C)` of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub factor: IntPoly,
    #[serde(with = "crate::decimal::ratio")]
    pub coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StructureVerdict {
    /// `U_n = sum l_i V^(i)_n` over the distinct irreducible factors of `C_U`.
    AlmostDold { components: Vec<Component> },
    /// No such decomposition; equation `n = failing_index` is the first
    /// one inconsistent with the earlier ones.
    NotAlmostDold { failing_index: usize },
}

impl StructureVerdict {
    pub fn is_almost_dold(&self) -> bool {
        matches!(self, StructureVerdict::AlmostDold { .. })
    }

    pub fn components(&self) -> Option<&[Component]> {
        match self {
            StructureVerdict::AlmostDold { components } => Some(components),
            StructureVerdict::NotAlmostDold { .. } => None,
        }
    }
}

pub fn structure_test(spec: &RecurrenceSpec) -> Result<StructureVerdict> {
    structure_test_with(spec, &FactorOptions::default())
}

/// Solves `U_n = sum l_i V^(i)_n`, `n = 1..d`, by fraction-free elimination
/// in equation order. Both sides satisfy the order-`d` recurrence, so the
/// first `d` equations decide the whole sequence.
pub fn structure_test_with(
    spec: &RecurrenceSpec,
    opts: &FactorOptions,
) -> Result<StructureVerdict> {
    let d = spec.order();
    let factors: Vec<IntPoly> = factorint::factor_over_z_with(&char_poly(spec), opts)?
        .distinct()
        .cloned()
        .collect();
    let m = factors.len();
    let traces = factors
        .iter()
        .map(|f| power_sums(f, d))
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let mut pivots: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for n in 1..=d {
        let mut row: Vec<BigInt> = traces.iter().map(|v| v[n - 1].clone()).collect();
        row.push(spec.initial()[n - 1].clone());
        for (col, prow) in &pivots {
            if row[*col].is_zero() {
                continue;
            }
            let (a, b) = (&prow[*col], row[*col].clone());
            row = row.iter().zip(prow).map(|(x, y)| x * a - y * &b).collect();
            let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() {
                row.iter_mut().for_each(|x| *x /= &g);
            }
        }
        match row[..m].iter().position(|x| !x.is_zero()) {
            Some(col) => pivots.push((col, row)),
            None if row[m].is_zero() => {}
            None => return Ok(StructureVerdict::NotAlmostDold { failing_index: n }),
        }
    }
    assert_eq!(
        pivots.len(),
        m,
        "trace sequences of distinct factors are independent"
    );

    let mut solution = vec![Rational::zero(); m];
    for (col, row) in pivots.iter().rev() {
        let mut rhs = Rational::from_integer(row[m].clone());
        for (j, x) in row[..m].iter().enumerate() {
            if j != *col && !x.is_zero() {
                rhs -= &solution[j] * Rational::from_integer(x.clone());
            }
        }
        solution[*col] = rhs / Rational::from_integer(row[*col].clone());
    }
    Ok(StructureVerdict::AlmostDold {
        components: factors
            .into_iter()
            .zip(solution)
            .map(|(factor, coefficient)| Component {
                factor,
                coefficient,
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConvenientVerdict {
    /// `C_U mod witness` is irreducible and `witness` does not divide the
    /// discriminant, so `C_U` stays irreducible modulo infinitely many primes.
    Certified { witness: u64 },
    /// No witness among primes up to `bound`; proves nothing.
    NoWitnessUpTo { bound: u64 },
    /// `C_U` has a repeated or a proper factor over `Z`, hence factors
    /// modulo every prime.
    NotConvenient,
}

pub fn convenient_check(spec: &RecurrenceSpec, bound: u64) -> Result<ConvenientVerdict> {
    let f = char_poly(spec);
    if discriminant(&f)?.is_zero() {
        return Ok(ConvenientVerdict::NotConvenient);
    }
    match factorint::factor_over_z(&f) {
        Ok(fz) if !fz.is_irreducible() => return Ok(ConvenientVerdict::NotConvenient),
        Ok(_) | Err(FactorError::Unsupported(_)) => {}
        Err(e) => return Err(e.into()),
    }
    if bound < 2 {
        return Ok(ConvenientVerdict::NoWitnessUpTo { bound });
    }
    Ok(match factorint::irreducibility_witness(&f, bound)? {
        Some(witness) => ConvenientVerdict::Certified { witness },
        None => ConvenientVerdict::NoWitnessUpTo { bound },
    })
}

/// Checks `U_n = sum l_i V^(i)_n` for `n <= horizon` directly.
pub fn verify_decomposition(
    spec: &RecurrenceSpec,
    components: &[Component],
    horizon: usize,
) -> Result<bool> {
    let u = spec.view().terms(horizon)?;
    let mut sums = vec![Rational::zero(); horizon];
    for c in components {
        let v = power_sums(&c.factor, horizon)?;
        for (s, x) in sums.iter_mut().zip(v) {
            *s += &c.coefficient * Rational::from_integer(x);
        }
    }
    Ok(sums
        .iter()
        .zip(&u)
        .all(|(s, x)| s.is_integer() && s.numer() == x))
}

/// Least common multiple of the coefficient denominators.
pub fn denominator_lcm(components: &[Component]) -> BigInt {
    components
        .iter()
        .fold(BigInt::from(1), |acc, c| acc.lcm(c.coefficient.denom()))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(c: &[i64], i: &[i64]) -> RecurrenceSpec {
        RecurrenceSpec::from_i64s(c, i).unwrap()
    }

    fn ratio(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn single(v: &StructureVerdict) -> (IntPoly, Rational) {
        let c = v.components().expect("almost Dold");
        assert_eq!(c.len(), 1);
        (c[0].factor.clone(), c[0].coefficient.clone())
    }

    #[test]
    fn trace_sequences() {
        let t = |c: &[i64], n| {
            trace_sequence(&IntPoly::from_i64s(c))
                .unwrap()
                .view
                .terms(n)
                .unwrap()
        };
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(t(&[-1, -1, 1], 5), big(&[1, 3, 4, 7, 11]));
        assert_eq!(t(&[-1, 1], 4), big(&[1, 1, 1, 1]));
        assert_eq!(t(&[-3, -12, 1], 3), big(&[12, 150, 1836]));
    }

    #[test]
    fn verdicts() {
        assert_eq!(
            structure_test(&spec(&[1, 1], &[1, 1])).unwrap(),
            StructureVerdict::NotAlmostDold { failing_index: 2 }
        );
        let ex = structure_test(&spec(&[12, 3], &[2, 25])).unwrap();
        assert_eq!(
            single(&ex),
            (IntPoly::from_i64s(&[-3, -12, 1]), ratio(1, 6))
        );
        let o4 = structure_test(&spec(&[0, 10, 0, -1], &[0, 5, 0, 49])).unwrap();
        assert_eq!(single(&o4).1, ratio(1, 4));
        assert!(!structure_test(&spec(&[0, 10, 0, -1], &[1, 0, 9, 0]))
            .unwrap()
            .is_almost_dold());
        assert_eq!(
            structure_test(&spec(&[4, -4], &[2, 8])).unwrap(),
            StructureVerdict::NotAlmostDold { failing_index: 2 }
        );
    }

    #[test]
    fn reducible_decomposition() {
        // δ = 6 family: U_n = 1/6 + (5/6)·7^n
        let v = structure_test(&super::super::radical_witness_family(6).unwrap()).unwrap();
        let coeff = |v: &StructureVerdict, f: &[i64]| {
            let f = IntPoly::from_i64s(f);
            v.components()
                .unwrap()
                .iter()
                .find(|c| c.factor == f)
                .unwrap()
                .coefficient
                .clone()
        };
        assert_eq!(coeff(&v, &[-1, 1]), ratio(1, 6));
        assert_eq!(coeff(&v, &[-7, 1]), ratio(5, 6));
        // δ = 1: the 2^n coefficient vanishes
        let v = structure_test(&super::super::radical_witness_family(1).unwrap()).unwrap();
        assert_eq!(coeff(&v, &[-2, 1]), ratio(0, 1));
        assert_eq!(coeff(&v, &[-1, 1]), ratio(1, 1));
    }

    #[test]
    fn traces_fed_back_give_unit_coefficient() {
        for c in [
            &[-1, -1, 1][..],
            &[-3, -12, 1],
            &[1, 0, -10, 0, 1],
            &[2, -3, 0, 1, 1],
            &[5, 1],
        ] {
            let f = IntPoly::from_i64s(c);
            let t = trace_sequence(&f).unwrap();
            let s = RecurrenceSpec::from_char_poly(&f, t.view.terms(f.deg()).unwrap()).unwrap();
            assert_eq!(single(&structure_test(&s).unwrap()), (f, ratio(1, 1)));
        }
    }

    #[test]
    fn decomposition_holds_far_out() {
        for (c, i) in [
            (&[12, 3][..], &[2, 25][..]),
            (&[0, 10, 0, -1], &[0, 5, 0, 49]),
            (&[8, -7], &[6, 41]),
            (&[3, 0, -4], &[3, 9, 15]),
        ] {
            let s = spec(c, i);
            if let Some(comp) = structure_test(&s).unwrap().components() {
                assert!(verify_decomposition(&s, comp, 200).unwrap());
            }
        }
    }

    #[test]
    fn convenience() {
        assert_eq!(
            convenient_check(&spec(&[1, 1], &[1, 1]), 100).unwrap(),
            ConvenientVerdict::Certified { witness: 2 }
        );
        assert_eq!(
            convenient_check(&spec(&[0, 10, 0, -1], &[0, 5, 0, 49]), 2000).unwrap(),
            ConvenientVerdict::NoWitnessUpTo { bound: 2000 }
        );
        assert_eq!(
            convenient_check(&spec(&[3], &[1]), 100).unwrap(),
            ConvenientVerdict::Certified { witness: 2 }
        );
        assert_eq!(
            convenient_check(&spec(&[4, -4], &[2, 8]), 100).unwrap(),
            ConvenientVerdict::NotConvenient
        );
        assert_eq!(
            convenient_check(&spec(&[8, -7], &[6, 41]), 100).unwrap(),
            ConvenientVerdict::NotConvenient
        );
    }

    #[test]
    fn denominators() {
        let v = structure_test(&spec(&[12, 3], &[2, 25])).unwrap();
        assert_eq!(denominator_lcm(v.components().unwrap()), BigInt::from(6));
    }
}
