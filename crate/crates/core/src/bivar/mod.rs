//! Polynomials in `F_p[t][X]`: resultants, discriminants, and factorization
//! over `F_p(t)` by specialization, Hensel lifting and recombination.
mod bipoly;
mod hensel;
mod recombine;
mod resultant;
mod series;

use thiserror::Error;

use crate::ffpoly::FfError;

pub use bipoly::BiPoly;
pub use hensel::{choose_specialization, hensel_lift, LocalFactorSet};
pub use recombine::{factor_bivariate, factor_degrees, recombine, recombine_by_subsets, FunctionFieldFactorization};
pub use resultant::{construct_phi, discriminant_x, is_square_fpt, resultant_x};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BivarError {
    #[error("the map is constant")]
    ConstantMap,
    #[error("numerator and denominator share a factor")]
    NotCoprime,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree in X is below 2")]
    DegreeTooSmall,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("field too small: {needed} evaluation points needed, {available} available")]
    FieldTooSmall { needed: usize, available: usize },
    #[error("no specialization point gives a squarefree image")]
    NoGoodSpecialization,
    #[error("local factors are not pairwise coprime")]
    NonCoprimeFactors,
    #[error("precision {have} is too low, need at least {need}")]
    PrecisionTooLow { have: usize, need: usize },
    #[error("{0} local factors is too many for subset search")]
    TooManyLocalFactors(usize),
    #[error("recombination failed: {0}")]
    RecombinationFailure(String),
    #[error("polynomial is inseparable in X")]
    Inseparable,
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Field(#[from] FfError),
}
