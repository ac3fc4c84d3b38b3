//! Prime fields and dense univariate polynomials over them.

mod ext2;
mod factor;
mod field;
pub(crate) mod kernel;
mod poly;

use thiserror::Error;

pub use factor::{
    discriminant, distinct_degree, equal_degree, factor_univariate, is_irreducible, resultant,
    squarefree_decompose, Factorization, SquarefreeDecomposition,
};
pub use field::{ff_inv, is_prime_u64, is_square_ff, FFElement, PrimeField};
pub use poly::{interpolate, poly_divrem, poly_eval, poly_gcd, Degree, UniPoly};

pub(crate) use ext2::QuadExt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("{0} is not an odd prime below 2^32")]
    NotAnOddPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial degree too small")]
    DegreeTooSmall,
    #[error("interpolation nodes are not pairwise distinct")]
    DuplicateNodes,
    #[error("element is not invertible modulo the given polynomial")]
    NotInvertible,
}
