//! Mechanical verification of the monodromy group of a three-branch-point
//! rational map from its reduction modulo a prime and its permutation triple.
pub mod belyi;
pub mod bivar;
pub mod cli;
pub mod ffpoly;
pub mod par;
pub mod permgrp;
