//! Theoretical multiples of the fail factor and the classification that
//! selects them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{DoldError, Result};
use crate::factorint::{self, FactorOptions};
use crate::numth::{is_perfect_square, primes_up_to, radical_abs};
use crate::polyring::{discriminant, squarefree_part};
use crate::recurrence::{
    char_poly, convenient_check, denominator_lcm, ConvenientVerdict, RecurrenceSpec,
    StructureVerdict,
};

/// Primes scanned when estimating the splitting-field degree.
pub const SPLITTING_PRIME_BOUND: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Follows from a proven divisibility statement.
    Proven,
    /// Rests on an unverified estimate.
    Heuristic,
    /// Supplied by the caller.
    External,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    OrderOne,
    WeightedGcd,
    OrderTwoIrreducible,
    OrderTwoReducible,
    Discriminant,
    RadicalDiscriminant,
    Denominator,
    PowerOrderTwo,
    PowerGeneral,
    Known,
}

/// A positive integer known (or claimed) to be a multiple of the fail factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub kind: BoundKind,
    pub expression: String,
    #[serde(with = "crate::decimal::uint")]
    pub value: BigUint,
    pub evidence: Evidence,
}

impl UpperBound {
    fn proven(kind: BoundKind, expression: &str, value: BigUint) -> Self {
        UpperBound {
            kind,
            expression: expression.to_string(),
            value,
            evidence: Evidence::Proven,
        }
    }

    /// A caller-supplied bound, e.g. a value established elsewhere.
    pub fn known(value: BigUint, label: impl Into<String>) -> Self {
        UpperBound {
            kind: BoundKind::Known,
            expression: label.into(),
            value,
            evidence: Evidence::External,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableRow {
    OrderOne,
    OrderTwoIrreducible,
    OrderTwoReducible,
    Convenient,
    Irreducible,
    NonzeroDiscriminant,
    Any,
    PowerSubsequence,
}

impl TableRow {
    /// Criterion for the sequence to almost satisfy the Dold condition.
    pub fn condition(self) -> &'static str {
        match self {
            TableRow::OrderOne => "always",
            TableRow::OrderTwoIrreducible => "l1 = l2",
            TableRow::OrderTwoReducible => "deg L1 = 0",
            TableRow::Convenient | TableRow::Irreducible => "l0 = ... = l(d-1)",
            TableRow::NonzeroDiscriminant => {
                "roots of the same irreducible factor carry equal coefficients"
            }
            TableRow::Any => {
                "deg Li = 0 and roots of the same irreducible factor carry equal coefficients"
            }
            TableRow::PowerSubsequence => "always",
        }
    }

    pub fn bound_expression(self) -> &'static str {
        match self {
            TableRow::OrderOne => "|r1|",
            TableRow::OrderTwoIrreducible | TableRow::Convenient | TableRow::Irreducible => {
                "gcd(r1, 2r2, ..., d*rd)"
            }
            TableRow::OrderTwoReducible => "|r2|*rad(disc) when disc != 0",
            TableRow::NonzeroDiscriminant => "|rd*disc|",
            TableRow::Any => "|rd*disc(rad C)|",
            TableRow::PowerSubsequence => "|rd*disc*rad(disc K)|, m | t",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub row: TableRow,
    pub condition: String,
    pub bound_expression: String,
    /// The row's bound evaluated, when it is defined.
    #[serde(with = "opt_uint")]
    pub bound: Option<BigUint>,
    pub order: usize,
    #[serde(with = "crate::decimal::int")]
    pub discriminant: BigInt,
    pub irreducible: bool,
    pub convenient: ConvenientVerdict,
}

pub(crate) mod opt_uint {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn abs_u(x: &BigInt) -> BigUint {
    x.magnitude().clone()
}

/// `gcd(r1, 2 r2, ..., d rd)`.
pub fn weighted_gcd(spec: &RecurrenceSpec) -> BigUint {
    spec.coeffs()
        .iter()
        .enumerate()
        .fold(BigUint::zero(), |g, (i, r)| {
            g.gcd(&abs_u(&(r * BigInt::from(i + 1))))
        })
}

fn disc_of_radical(spec: &RecurrenceSpec) -> Result<BigInt> {
    Ok(discriminant(&squarefree_part(&char_poly(spec))?)?)
}

pub fn classify(spec: &RecurrenceSpec, prime_bound: u64) -> Result<ClassificationRow> {
    classify_with(spec, prime_bound, &FactorOptions::default())
}

/// Assigns the most specific applicable row of the bound table.
pub fn classify_with(
    spec: &RecurrenceSpec,
    prime_bound: u64,
    opts: &FactorOptions,
) -> Result<ClassificationRow> {
    let d = spec.order();
    let f = char_poly(spec);
    let disc = discriminant(&f)?;
    let irreducible = factorint::factor_over_z_with(&f, opts)?.is_irreducible();
    let convenient = convenient_check(spec, prime_bound)?;
    let rd = spec.last_coeff();
    let (row, bound) = if d == 1 {
        (TableRow::OrderOne, Some(abs_u(&spec.coeffs()[0])))
    } else if d == 2 && !is_perfect_square(&disc) {
        (TableRow::OrderTwoIrreducible, Some(weighted_gcd(spec)))
    } else if d == 2 {
        let b = if disc.is_zero() {
            None
        } else {
            Some(abs_u(rd) * radical_abs(&disc)?)
        };
        (TableRow::OrderTwoReducible, b)
    } else if matches!(convenient, ConvenientVerdict::Certified { .. }) {
        (TableRow::Convenient, Some(weighted_gcd(spec)))
    } else if irreducible {
        (TableRow::Irreducible, Some(weighted_gcd(spec)))
    } else if !disc.is_zero() {
        (TableRow::NonzeroDiscriminant, Some(abs_u(&(rd * &disc))))
    } else {
        let dr = disc_of_radical(spec)?;
        (TableRow::Any, Some(abs_u(&(rd * dr))))
    };
    Ok(ClassificationRow {
        row,
        condition: row.condition().to_string(),
        bound_expression: row.bound_expression().to_string(),
        bound,
        order: d,
        discriminant: disc,
        irreducible,
        convenient,
    })
}

/// Every table bound that applies to an almost-Dold recurrence, plus the
/// denominator bound. Empty unless the verdict is almost Dold.
pub fn table_bounds(
    spec: &RecurrenceSpec,
    verdict: &StructureVerdict,
    class: &ClassificationRow,
) -> Result<Vec<UpperBound>> {
    let Some(components) = verdict.components() else {
        return Ok(Vec::new());
    };
    let d = spec.order();
    let rd = spec.last_coeff();
    let disc = &class.discriminant;
    let mut out = Vec::new();
    if d == 1 {
        out.push(UpperBound::proven(
            BoundKind::OrderOne,
            "|r1|",
            abs_u(&spec.coeffs()[0]),
        ));
    }
    if class.irreducible && d >= 2 {
        out.push(UpperBound::proven(
            BoundKind::WeightedGcd,
            "gcd(r1, 2r2, ..., d*rd)",
            weighted_gcd(spec),
        ));
    }
    if d == 2 && !disc.is_zero() {
        let rad = radical_abs(disc)?;
        if is_perfect_square(disc) {
            out.push(UpperBound::proven(
                BoundKind::OrderTwoReducible,
                "|r2|*rad(disc)",
                abs_u(rd) * rad,
            ));
        } else {
            out.push(UpperBound::proven(
                BoundKind::OrderTwoIrreducible,
                "2|r2|*rad(disc)",
                abs_u(rd) * rad * 2u32,
            ));
        }
    }
    if !disc.is_zero() {
        out.push(UpperBound::proven(
            BoundKind::Discriminant,
            "|rd*disc|",
            abs_u(&(rd * disc)),
        ));
    }
    out.push(UpperBound::proven(
        BoundKind::RadicalDiscriminant,
        "|rd*disc(rad C)|",
        abs_u(&(rd * disc_of_radical(spec)?)),
    ));
    out.push(UpperBound::proven(
        BoundKind::Denominator,
        "lcm of coefficient denominators",
        abs_u(&denominator_lcm(components)),
    ));
    Ok(out)
}

/// Lower estimate of the splitting-field degree `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDegree {
    pub value: u64,
    /// True when `value` is the exact degree (orders 1 and 2).
    pub exact: bool,
}

/// Exact for `d <= 2`; otherwise the lcm of factorization-pattern degrees
/// over unramified primes up to [`SPLITTING_PRIME_BOUND`], which divides `m`.
pub fn splitting_degree(spec: &RecurrenceSpec) -> Result<SplittingDegree> {
    let f = char_poly(spec);
    let disc = discriminant(&f)?;
    if disc.is_zero() {
        return Err(DoldError::ZeroDiscriminant);
    }
    let d = spec.order();
    if d == 1 {
        return Ok(SplittingDegree {
            value: 1,
            exact: true,
        });
    }
    if d == 2 {
        let value = if is_perfect_square(&disc) { 1 } else { 2 };
        return Ok(SplittingDegree { value, exact: true });
    }
    let mut value = 1u64;
    for p in primes_up_to(SPLITTING_PRIME_BOUND)?.iter() {
        if (&disc % p).is_zero() {
            continue;
        }
        value = value.lcm(&factorint::degree_pattern(&f, p)?.degree_lcm());
    }
    Ok(SplittingDegree {
        value,
        exact: false,
    })
}

/// `rad(disc C_U)`, standing in for the radical of the splitting field's
/// discriminant (every ramified prime divides `disc C_U`).
pub fn substitute_radical(spec: &RecurrenceSpec) -> Result<BigUint> {
    let disc = discriminant(&char_poly(spec))?;
    if disc.is_zero() {
        return Err(DoldError::ZeroDiscriminant);
    }
    Ok(radical_abs(&disc)?)
}

/// Multiples of the fail factor of `(U_{n^t})`.
pub fn power_bounds(spec: &RecurrenceSpec, t: u32) -> Result<Vec<UpperBound>> {
    if t == 0 {
        return Err(DoldError::ZeroArgument);
    }
    let d = spec.order();
    let disc = discriminant(&char_poly(spec))?;
    if disc.is_zero() {
        return Err(DoldError::ZeroDiscriminant);
    }
    let rd = spec.last_coeff();
    let rad = substitute_radical(spec)?;
    let value = abs_u(&(rd * &disc)) * &rad;
    let mut out = Vec::new();
    if d == 2 && t.is_multiple_of(2) {
        out.push(UpperBound::proven(
            BoundKind::PowerOrderTwo,
            "|r2*disc*rad(disc)|",
            value.clone(),
        ));
    }
    let m = splitting_degree(spec)?;
    if u64::from(t) % m.value == 0 && out.is_empty() {
        out.push(UpperBound {
            kind: BoundKind::PowerGeneral,
            expression: "|rd*disc*rad(disc C)|".to_string(),
            value,
            evidence: if m.exact {
                Evidence::Proven
            } else {
                Evidence::Heuristic
            },
        });
    }
    Ok(out)
}

/// The strongest available bound for `(U_{n^t})`, or `None` when `t` does
/// not meet the splitting-degree condition.
pub fn power_fail_bound(spec: &RecurrenceSpec, t: u32) -> Result<Option<UpperBound>> {
    let bounds = power_bounds(spec, t)?;
    Ok(bounds
        .iter()
        .find(|b| b.evidence == Evidence::Proven)
        .or(bounds.first())
        .cloned())
}

/// gcd of the bound values, `None` for an empty list.
pub fn combine(bounds: &[&UpperBound]) -> Option<BigUint> {
    if bounds.is_empty() {
        None
    } else {
        Some(bounds.iter().fold(BigUint::zero(), |g, b| g.gcd(&b.value)))
    }
}
