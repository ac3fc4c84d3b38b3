//! Permutations, permutation triples and stabilizer-chain algorithms.
//!
//! Points are `1..=n` in every public signature that takes or returns a
//! point.  Products are read left to right: `a*b` applies `a` first.

mod chain;
mod conj;
mod group;
mod perm;
mod random;

use thiserror::Error;

pub use conj::{
    class_orbit, conjugacy_witness, passport_enumerate, rational_class_check, ClassOrbit,
    PassportOptions, PassportReport, PowerWitness, RationalClassReport, RationalityVerdict,
    DEFAULT_CLASS_CAP, DEFAULT_WITNESS_TRIES, EXHAUSTIVE_LIMIT,
};
pub use group::{
    normal_closure, simplicity_evidence, subdegree_primitivity_criterion, PermGroup,
    PrimitivityVerdict, SimplicityReport,
};
pub use perm::{genus_of_triple, CycleType, Permutation, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("images do not form a bijection")]
    NotABijection,
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears twice in the cycle notation")]
    RepeatedPoint(usize),
    #[error("malformed cycle type {0:?}")]
    BadCycleType(String),
    #[error("x*y*z is not the identity")]
    InconsistentTriple,
    #[error("the group is not transitive")]
    Intransitive,
    #[error("Riemann-Hurwitz gives 2g = {0}, not a non-negative even integer")]
    InvalidGenus(i64),
    #[error("subdegrees must contain 1, be positive and sum to the degree")]
    MalformedSubdegrees,
    #[error("element is not in the group")]
    NotInGroup,
    #[error("conjugacy class exceeds the cap of {0} elements")]
    ClassOrbitCap(usize),
    #[error("folding element does not normalize the group")]
    NotNormalizing,
    #[error("folding element moves x out of its class")]
    FoldingMovesClass,
    #[error("internal error: {0}")]
    Internal(String),
}
