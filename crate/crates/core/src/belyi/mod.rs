//! The verification pipeline for a Belyi map modulo a prime.

mod certificate;
mod factored;
mod map;
mod pipeline;
mod triple;

use thiserror::Error;

use crate::bivar::BivarError;
use crate::ffpoly::FfError;
use crate::permgrp::PermError;

pub use certificate::{
    assemble_certificate, Certificate, CheckRecord, Context, ExternalFact, InputDigest, Status, CERTIFICATE_FORMAT,
};
pub use factored::{expand_factored, FactoredPoly};
pub use map::{
    branch_point_check, discriminant_square_check, map_discriminant, ramification_profile, riemann_hurwitz_check,
    subdegrees_from_map, two_transitivity_obstruction, BelyiModP, BranchPointReport, RamificationProfile,
};
pub use pipeline::{external_facts, verify, TripleInput, VerifyOptions};
pub use triple::{is_coarsening, run_triple_checks, skipped_triple_checks, TripleOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BelyiError {
    #[error("the unit of a factored polynomial must be nonzero")]
    ZeroUnit,
    #[error("factor {0} is constant, has exponent 0, or lives over another field")]
    BadFactor(String),
    #[error("q and r are defined over different fields")]
    FieldMismatch,
    #[error("p = q + r is zero")]
    ConstantMap,
    #[error("p and q have a common factor")]
    NotCoprime,
    #[error("{0}")]
    ShapeMismatch(String),
    #[error("the point at infinity maps to {0}, which is not 0, 1 or infinity")]
    InfinityOffBranchPoints(u32),
    #[error("inconsistent ramification profile: {0}")]
    InconsistentProfile(String),
    #[error("Riemann-Hurwitz gives 2g = {0}")]
    NonIntegralGenus(i64),
    #[error("the discriminant vanishes identically")]
    DegenerateDiscriminant,
    #[error("subdegrees must contain 1 and be positive")]
    MalformedSubdegrees,
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Bivar(#[from] BivarError),
}
