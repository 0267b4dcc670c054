//! Consolidated fail-factor reports.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::bounds::{
    classify_with, combine, power_bounds, splitting_degree, substitute_radical, table_bounds,
    ClassificationRow, Evidence, SplittingDegree, UpperBound,
};
use super::scan::{scan, DoldViolation};
use super::{DoldError, Result};
use crate::factorint::FactorOptions;
use crate::numth::{factorize, valuation_uint};
use crate::recurrence::{
    power_subsequence, structure_test_with, Component, RecurrenceSpec, SequenceView,
    StructureVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Scan indices `1..=horizon`.
    pub horizon: usize,
    /// Prime bound for irreducibility witnesses.
    pub prime_bound: u64,
    pub seed: u64,
    pub max_bits: u64,
    pub max_index: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            horizon: 200,
            prime_bound: 1000,
            seed: 0,
            max_bits: crate::recurrence::DEFAULT_MAX_BITS,
            max_index: crate::recurrence::DEFAULT_MAX_INDEX,
        }
    }
}

impl AnalysisOptions {
    fn factor(&self) -> FactorOptions {
        FactorOptions { seed: self.seed }
    }

    fn view(&self, spec: &RecurrenceSpec) -> SequenceView {
        spec.view().with_limits(self.max_bits, self.max_index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    AlmostDold {
        components: Vec<Component>,
    },
    NotAlmostDold {
        failing_index: usize,
    },
    /// No recurrence is known, so only empirical data is available.
    Unknown,
}

impl From<StructureVerdict> for Verdict {
    fn from(v: StructureVerdict) -> Self {
        match v {
            StructureVerdict::AlmostDold { components } => Verdict::AlmostDold { components },
            StructureVerdict::NotAlmostDold { failing_index } => {
                Verdict::NotAlmostDold { failing_index }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailValue {
    /// No multiple of the sequence satisfies the Dold condition.
    Infinite,
    Exact {
        #[serde(with = "crate::decimal::uint")]
        value: BigUint,
    },
    /// `lower | fail | upper`.
    Between {
        #[serde(with = "crate::decimal::uint")]
        lower: BigUint,
        #[serde(with = "crate::decimal::uint")]
        upper: BigUint,
    },
    AtLeast {
        #[serde(with = "crate::decimal::uint")]
        lower: BigUint,
    },
}

impl FailValue {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            FailValue::Exact { value } => Some(value),
            _ => None,
        }
    }
}

/// Exponents of one prime in the lower and the combined upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeResolution {
    #[serde(with = "crate::decimal::uint")]
    pub prime: BigUint,
    pub lower_exponent: u32,
    pub upper_exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailReport {
    pub verdict: Verdict,
    pub classification: Option<ClassificationRow>,
    pub horizon: usize,
    #[serde(with = "crate::decimal::uint")]
    pub empirical_lower: BigUint,
    pub violations: Vec<DoldViolation>,
    pub sign_violations: Vec<usize>,
    pub upper_bounds: Vec<UpperBound>,
    #[serde(with = "super::bounds::opt_uint")]
    pub combined_upper: Option<BigUint>,
    pub fail: FailValue,
    pub exactness_source: Option<String>,
    pub prime_resolution: Vec<PrimeResolution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerReport {
    pub t: u32,
    pub base_verdict: Verdict,
    pub horizon: usize,
    pub splitting_degree: Option<SplittingDegree>,
    #[serde(with = "super::bounds::opt_uint")]
    pub substitute_radical: Option<BigUint>,
    #[serde(with = "crate::decimal::uint")]
    pub empirical_lower: BigUint,
    pub violations: Vec<DoldViolation>,
    pub sign_violations: Vec<usize>,
    pub upper_bounds: Vec<UpperBound>,
    #[serde(with = "super::bounds::opt_uint")]
    pub combined_upper: Option<BigUint>,
    pub fail: FailValue,
    pub exactness_source: Option<String>,
    pub prime_resolution: Vec<PrimeResolution>,
    pub notes: Vec<String>,
}

struct Resolution {
    fail: FailValue,
    combined: Option<BigUint>,
    source: Option<String>,
    primes: Vec<PrimeResolution>,
}

/// Compares the empirical lower bound with the non-heuristic upper bounds.
/// The set of valid multipliers is closed under gcd, so the gcd of all
/// upper bounds is itself an upper bound.
fn resolve(lower: &BigUint, bounds: &[UpperBound]) -> Result<Resolution> {
    let usable: Vec<&UpperBound> = bounds
        .iter()
        .filter(|b| b.evidence != Evidence::Heuristic)
        .collect();
    for b in &usable {
        if !(&b.value % lower).is_zero() {
            return Err(DoldError::InconsistentBounds {
                expression: b.expression.clone(),
                value: b.value.to_string(),
                lower: lower.to_string(),
            });
        }
    }
    let combined = combine(&usable);
    let (fail, source) = match &combined {
        Some(g) if g == lower => {
            let source = usable
                .iter()
                .find(|b| &b.value == lower)
                .map(|b| b.expression.clone())
                .unwrap_or_else(|| "gcd of upper bounds".to_string());
            (FailValue::Exact { value: g.clone() }, Some(source))
        }
        Some(g) => (
            FailValue::Between {
                lower: lower.clone(),
                upper: g.clone(),
            },
            None,
        ),
        None => (
            FailValue::AtLeast {
                lower: lower.clone(),
            },
            None,
        ),
    };
    let primes = match &combined {
        Some(g) => factorize(g)
            .map(|fs| {
                fs.into_iter()
                    .map(|(p, e)| PrimeResolution {
                        lower_exponent: valuation_of(&p, lower),
                        upper_exponent: e,
                        prime: p,
                    })
                    .collect()
            })
            .unwrap_or_default(),
        None => Vec::new(),
    };
    Ok(Resolution {
        fail,
        combined,
        source,
        primes,
    })
}

fn valuation_of(p: &BigUint, n: &BigUint) -> u32 {
    match u64::try_from(p) {
        Ok(p) => valuation_uint(p, n),
        Err(_) => {
            let mut n = n.clone();
            let mut k = 0;
            while !n.is_zero() && (&n % p).is_zero() {
                n /= p;
                k += 1;
            }
            k
        }
    }
}

pub fn fail_report(spec: &RecurrenceSpec, opts: &AnalysisOptions) -> Result<FailReport> {
    fail_report_with_known(spec, opts, &[])
}

/// Structure test, classification, table bounds and the empirical scan,
/// combined. `known` adds caller-supplied multiples of the fail factor.
pub fn fail_report_with_known(
    spec: &RecurrenceSpec,
    opts: &AnalysisOptions,
    known: &[UpperBound],
) -> Result<FailReport> {
    let verdict = structure_test_with(spec, &opts.factor())?;
    let class = classify_with(spec, opts.prime_bound, &opts.factor())?;
    let sc = scan(&opts.view(spec), opts.horizon)?;
    let lower = sc.empirical_lower();
    let mut bounds = table_bounds(spec, &verdict, &class)?;
    let infinite = !verdict.is_almost_dold();
    if infinite && !known.is_empty() {
        return Err(DoldError::KnownBoundContradiction);
    }
    bounds.extend(known.iter().cloned());
    let res = resolve(&lower, &bounds)?;
    Ok(FailReport {
        verdict: verdict.into(),
        classification: Some(class),
        horizon: opts.horizon,
        empirical_lower: lower,
        violations: sc.violations(),
        sign_violations: sc.sign_violations(),
        upper_bounds: bounds,
        combined_upper: res.combined,
        fail: if infinite {
            FailValue::Infinite
        } else {
            res.fail
        },
        exactness_source: res.source,
        prime_resolution: res.primes,
    })
}

/// Empirical-only report for a sequence without a known recurrence.
pub fn fail_report_view(
    view: &SequenceView,
    horizon: usize,
    known: &[UpperBound],
) -> Result<FailReport> {
    let sc = scan(view, horizon)?;
    let lower = sc.empirical_lower();
    let res = resolve(&lower, known)?;
    Ok(FailReport {
        verdict: Verdict::Unknown,
        classification: None,
        horizon,
        empirical_lower: lower,
        violations: sc.violations(),
        sign_violations: sc.sign_violations(),
        upper_bounds: known.to_vec(),
        combined_upper: res.combined,
        fail: res.fail,
        exactness_source: res.source,
        prime_resolution: res.primes,
    })
}

/// Fail-factor analysis of `(U_{n^t})` for `n <= horizon`.
pub fn power_report(
    spec: &RecurrenceSpec,
    t: u32,
    opts: &AnalysisOptions,
    known: &[UpperBound],
) -> Result<PowerReport> {
    let base_verdict = structure_test_with(spec, &opts.factor())?;
    let view = power_subsequence(&opts.view(spec), t)?;
    let sc = scan(&view, opts.horizon)?;
    let lower = sc.empirical_lower();
    let mut notes = Vec::new();
    let (mut bounds, m, rad) = match power_bounds(spec, t) {
        Ok(b) => (
            b,
            Some(splitting_degree(spec)?),
            Some(substitute_radical(spec)?),
        ),
        Err(DoldError::ZeroDiscriminant) => {
            notes.push("discriminant is zero: no theoretical bound for power subsequences".into());
            (Vec::new(), None, None)
        }
        Err(e) => return Err(e),
    };
    if let Some(m) = &m {
        if !m.exact {
            notes.push(format!(
                "splitting degree estimate {} is a lower estimate from factorization patterns",
                m.value
            ));
        }
        if u64::from(t) % m.value != 0 {
            notes.push(format!(
                "t is not a multiple of the splitting degree estimate {}",
                m.value
            ));
        }
    }
    for b in bounds.iter().filter(|b| b.evidence == Evidence::Heuristic) {
        if !(&b.value % &lower).is_zero() {
            notes.push(format!(
                "heuristic bound {} is not a multiple of the empirical lower bound",
                b.expression
            ));
        }
    }
    bounds.extend(known.iter().cloned());
    let res = resolve(&lower, &bounds)?;
    Ok(PowerReport {
        t,
        base_verdict: base_verdict.into(),
        horizon: opts.horizon,
        splitting_degree: m,
        substitute_radical: rad,
        empirical_lower: lower,
        violations: sc.violations(),
        sign_violations: sc.sign_violations(),
        upper_bounds: bounds,
        combined_upper: res.combined,
        fail: res.fail,
        exactness_source: res.source,
        prime_resolution: res.primes,
        notes,
    })
}
