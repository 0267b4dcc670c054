//! Integer linear recurrences `U_n = r_1 U_{n-1} + ... + r_d U_{n-d}`,
//! indexed from `n = 1`.

mod structure;
mod view;

pub use structure::{
    convenient_check, denominator_lcm, structure_test, structure_test_with, trace_sequence,
    verify_decomposition, Component, ConvenientVerdict, StructureVerdict, TraceSequence,
};
pub use view::{power_subsequence, SequenceView, ViewKind, DEFAULT_MAX_BITS, DEFAULT_MAX_INDEX};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factorint::FactorError;
use crate::polyring::{IntPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("degenerate order: last coefficient is zero, shorten the recurrence")]
    DegenerateOrder,
    #[error("recurrence needs at least one coefficient")]
    EmptyOrder,
    #[error("{coeffs} coefficients but {initial} initial terms")]
    LengthMismatch { coeffs: usize, initial: usize },
    #[error("sequences are indexed from 1")]
    ZeroIndex,
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("parameter must be at least 1")]
    ZeroParameter,
    #[error("term {n} needs {bits} bits, over the budget of {max_bits}")]
    BitBudget { n: usize, bits: u64, max_bits: u64 },
    #[error("index {n} is beyond the cache budget of {max_index} terms")]
    IndexBudget { n: usize, max_index: usize },
    #[error("index {n} is beyond the {len} available terms")]
    OutOfRange { n: usize, len: usize },
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl RecurrenceError {
    /// True for resource-guard stops, as opposed to invalid input.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            RecurrenceError::BitBudget { .. } | RecurrenceError::IndexBudget { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, RecurrenceError>;

/// A validated order-`d` recurrence with its `d` initial terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct RecurrenceSpec {
    coeffs: Vec<BigInt>,
    initial: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    #[serde(with = "crate::decimal::int_vec")]
    coeffs: Vec<BigInt>,
    #[serde(with = "crate::decimal::int_vec")]
    initial: Vec<BigInt>,
}

impl TryFrom<RawSpec> for RecurrenceSpec {
    type Error = RecurrenceError;
    fn try_from(r: RawSpec) -> Result<Self> {
        make_recurrence(r.coeffs, r.initial)
    }
}

impl From<RecurrenceSpec> for RawSpec {
    fn from(s: RecurrenceSpec) -> Self {
        RawSpec {
            coeffs: s.coeffs,
            initial: s.initial,
        }
    }
}

/// Validates coefficients `r_1..r_d` and initial terms `U_1..U_d`.
pub fn make_recurrence(coeffs: Vec<BigInt>, initial: Vec<BigInt>) -> Result<RecurrenceSpec> {
    let Some(last) = coeffs.last() else {
        return Err(RecurrenceError::EmptyOrder);
    };
    if last.is_zero() {
        return Err(RecurrenceError::DegenerateOrder);
    }
    if coeffs.len() != initial.len() {
        return Err(RecurrenceError::LengthMismatch {
            coeffs: coeffs.len(),
            initial: initial.len(),
        });
    }
    Ok(RecurrenceSpec { coeffs, initial })
}

impl RecurrenceSpec {
    pub fn from_i64s(coeffs: &[i64], initial: &[i64]) -> Result<Self> {
        make_recurrence(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            initial.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    /// The recurrence whose characteristic polynomial is the monic `f`.
    pub fn from_char_poly(f: &IntPoly, initial: Vec<BigInt>) -> Result<Self> {
        if !f.is_monic() {
            return Err(PolyError::NotMonic.into());
        }
        let d = f.deg();
        let coeffs = (1..=d).map(|i| -f.coeff(d - i)).collect();
        make_recurrence(coeffs, initial)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `r_1..r_d`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `U_1..U_d`.
    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    /// `r_d`, nonzero by construction.
    pub fn last_coeff(&self) -> &BigInt {
        self.coeffs.last().expect("order at least 1")
    }

    /// Same recurrence with every term multiplied by `c`.
    pub fn scaled(&self, c: &BigInt) -> RecurrenceSpec {
        RecurrenceSpec {
            coeffs: self.coeffs.clone(),
            initial: self.initial.iter().map(|u| u * c).collect(),
        }
    }

    pub fn char_poly(&self) -> IntPoly {
        char_poly(self)
    }

    pub fn view(&self) -> SequenceView {
        SequenceView::recurrence(self.clone())
    }
}

/// `x^d - r_1 x^{d-1} - ... - r_d`.
pub fn char_poly(spec: &RecurrenceSpec) -> IntPoly {
    let d = spec.order();
    let mut c = vec![BigInt::zero(); d + 1];
    c[d] = BigInt::one();
    for (i, r) in spec.coeffs.iter().enumerate() {
        c[d - 1 - i] = -r;
    }
    IntPoly::new(c)
}

/// Order-2 family `U_n = (δ+2)U_{n-1} - (δ+1)U_{n-2}` continuing `U_0 = 1`,
/// `U_1 = δ`. Its characteristic polynomial is `(x-1)(x-1-δ)` and every
/// prime dividing `δ` divides the fail factor.
pub fn radical_witness_family(delta: u64) -> Result<RecurrenceSpec> {
    if delta == 0 {
        return Err(RecurrenceError::ZeroParameter);
    }
    let d = BigInt::from(delta);
    let u2 = &d * &d + &d - BigInt::one();
    make_recurrence(
        vec![&d + BigInt::from(2), -(&d + BigInt::one())],
        vec![d, u2],
    )
}
