//! Lazily extended, shared term caches.

use std::sync::{Arc, RwLock};

use num_bigint::BigInt;

use super::{RecurrenceError, RecurrenceSpec, Result};

/// Default per-term size limit in bits.
pub const DEFAULT_MAX_BITS: u64 = 1 << 20;
/// Default limit on the number of cached terms of a single view.
pub const DEFAULT_MAX_INDEX: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViewKind {
    Recurrence,
    Power,
    Raw,
}

#[derive(Debug)]
enum Source {
    Recurrence(RecurrenceSpec),
    Power { base: SequenceView, t: u32 },
    Raw,
}

#[derive(Debug)]
struct Inner {
    source: Source,
    cache: RwLock<Vec<BigInt>>,
    max_bits: u64,
    max_index: usize,
}

/// An integer sequence `A_1, A_2, ...` with a grow-only cache.
///
/// Cloning is cheap and shares the cache. Readers may run concurrently;
/// extension takes the write lock.
#[derive(Debug, Clone)]
pub struct SequenceView(Arc<Inner>);

impl SequenceView {
    pub fn recurrence(spec: RecurrenceSpec) -> Self {
        let cache = spec.initial().to_vec();
        Self::build(
            Source::Recurrence(spec),
            cache,
            DEFAULT_MAX_BITS,
            DEFAULT_MAX_INDEX,
        )
    }

    /// A finite sequence of known terms `A_1..A_len`.
    pub fn raw(terms: Vec<BigInt>) -> Self {
        Self::build(Source::Raw, terms, DEFAULT_MAX_BITS, DEFAULT_MAX_INDEX)
    }

    fn build(source: Source, cache: Vec<BigInt>, max_bits: u64, max_index: usize) -> Self {
        SequenceView(Arc::new(Inner {
            source,
            cache: RwLock::new(cache),
            max_bits,
            max_index,
        }))
    }

    /// Fresh view (empty cache beyond the initial data) with new guards.
    pub fn with_limits(&self, max_bits: u64, max_index: usize) -> Self {
        let source = match &self.0.source {
            Source::Recurrence(s) => Source::Recurrence(s.clone()),
            Source::Power { base, t } => Source::Power {
                base: base.with_limits(max_bits, max_index),
                t: *t,
            },
            Source::Raw => Source::Raw,
        };
        let cache = match &self.0.source {
            Source::Recurrence(s) => s.initial().to_vec(),
            Source::Power { .. } => Vec::new(),
            Source::Raw => self.read().clone(),
        };
        Self::build(source, cache, max_bits, max_index)
    }

    pub fn max_bits(&self) -> u64 {
        self.0.max_bits
    }

    pub fn max_index(&self) -> usize {
        self.0.max_index
    }

    pub fn kind(&self) -> ViewKind {
        match self.0.source {
            Source::Recurrence(_) => ViewKind::Recurrence,
            Source::Power { .. } => ViewKind::Power,
            Source::Raw => ViewKind::Raw,
        }
    }

    /// The defining recurrence of a recurrence-backed view.
    pub fn spec(&self) -> Option<&RecurrenceSpec> {
        match &self.0.source {
            Source::Recurrence(s) => Some(s),
            _ => None,
        }
    }

    /// Number of available terms for raw views, `None` for infinite ones.
    pub fn len(&self) -> Option<usize> {
        match self.0.source {
            Source::Raw => Some(self.read().len()),
            _ => None,
        }
    }

    /// Number of terms currently cached.
    pub fn cached(&self) -> usize {
        self.read().len()
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, Vec<BigInt>> {
        self.0.cache.read().unwrap_or_else(|e| e.into_inner())
    }

    /// The term `A_n`, `n >= 1`.
    pub fn term(&self, n: usize) -> Result<BigInt> {
        if n == 0 {
            return Err(RecurrenceError::ZeroIndex);
        }
        if let Some(v) = self.read().get(n - 1) {
            return Ok(v.clone());
        }
        self.extend_to(n)?;
        Ok(self.read()[n - 1].clone())
    }

    /// Terms `A_1..A_n`.
    pub fn terms(&self, n: usize) -> Result<Vec<BigInt>> {
        if n == 0 {
            return Ok(Vec::new());
        }
        self.term(n)?;
        Ok(self.read()[..n].to_vec())
    }

    fn extend_to(&self, n: usize) -> Result<()> {
        let inner = &*self.0;
        if let Source::Raw = inner.source {
            return Err(RecurrenceError::OutOfRange {
                n,
                len: self.read().len(),
            });
        }
        if n > inner.max_index {
            return Err(RecurrenceError::IndexBudget {
                n,
                max_index: inner.max_index,
            });
        }
        let mut cache = inner.cache.write().unwrap_or_else(|e| e.into_inner());
        while cache.len() < n {
            let k = cache.len() + 1;
            let next = match &inner.source {
                Source::Recurrence(spec) => {
                    let d = spec.order();
                    spec.coeffs()
                        .iter()
                        .zip(cache[k - 1 - d..].iter().rev())
                        .fold(BigInt::default(), |acc, (r, u)| acc + r * u)
                }
                Source::Power { base, t } => {
                    let idx = k.checked_pow(*t).filter(|&i| i <= base.max_index()).ok_or(
                        RecurrenceError::IndexBudget {
                            n: k,
                            max_index: base.max_index(),
                        },
                    )?;
                    base.term(idx)?
                }
                Source::Raw => unreachable!(),
            };
            let bits = next.bits();
            if bits > inner.max_bits {
                return Err(RecurrenceError::BitBudget {
                    n: k,
                    bits,
                    max_bits: inner.max_bits,
                });
            }
            cache.push(next);
        }
        Ok(())
    }

    /// The sequence `c·A`.
    pub fn scaled(&self, c: &BigInt) -> SequenceView {
        let inner = &*self.0;
        match &inner.source {
            Source::Recurrence(s) => {
                let s = s.scaled(c);
                let cache = s.initial().to_vec();
                Self::build(
                    Source::Recurrence(s),
                    cache,
                    inner.max_bits,
                    inner.max_index,
                )
            }
            Source::Power { base, t } => Self::build(
                Source::Power {
                    base: base.scaled(c),
                    t: *t,
                },
                Vec::new(),
                inner.max_bits,
                inner.max_index,
            ),
            Source::Raw => Self::build(
                Source::Raw,
                self.read().iter().map(|a| a * c).collect(),
                inner.max_bits,
                inner.max_index,
            ),
        }
    }
}

/// The view `n ↦ A_{n^t}`; guards are inherited from the base.
pub fn power_subsequence(view: &SequenceView, t: u32) -> Result<SequenceView> {
    if t == 0 {
        return Err(RecurrenceError::ZeroExponent);
    }
    Ok(SequenceView::build(
        Source::Power {
            base: view.clone(),
            t,
        },
        Vec::new(),
        view.max_bits(),
        view.max_index(),
    ))
}
