//! Polynomial factorization over prime fields and over the integers,
//! plus mod-p diagnostics (irreducibility witnesses, factor patterns,
//! root densities).

mod diagnostics;
mod hensel;
mod modp;
mod zassenhaus;

pub use diagnostics::{
    degree_pattern, has_root_mod_p, irreducibility_witness, root_density, FactorPattern,
    MIN_DENSITY_BOUND,
};
pub use hensel::hensel_lift;
pub use modp::{factor_mod_p, factor_mod_p_seeded};
pub use zassenhaus::{factor_over_z, factor_over_z_with, MAX_COEFF, MAX_DEGREE};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numth::NumthError;
use crate::polyring::{IntPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Numth(#[from] NumthError),
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("zero polynomial cannot be factored")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must be squarefree")]
    NotSquarefree,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("seed factors are not pairwise coprime")]
    NonCoprimeSeeds,
    #[error("seed factors do not multiply to the target modulo p")]
    SeedProductMismatch,
    #[error("lifting exponent must be at least 1")]
    BadExponent,
    #[error("prime bound {0} is below the minimum of 100")]
    DensityBoundTooSmall(u64),
    #[error("no admissible primes below the bound")]
    EmptyDensity,
}

pub type Result<T> = std::result::Result<T, FactorError>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactorOptions {
    /// Salt for the randomized modular splitting. Results never depend on it.
    pub seed: u64,
}

/// Monic irreducible factors with multiplicities, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::one(), |acc, (g, m)| &acc * &g.pow(*m))
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    /// Distinct irreducible factors, dropping multiplicities.
    pub fn distinct(&self) -> impl Iterator<Item = &IntPoly> {
        self.factors.iter().map(|(g, _)| g)
    }
}
