use std::fmt;

use crate::ffpoly::{FFElement, PrimeField, UniPoly};

use super::BelyiError;

/// `unit * prod f_i^{e_i}` with non-constant `f_i`, not necessarily
/// irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    unit: FFElement,
    factors: Vec<(UniPoly, u32)>,
}

impl FactoredPoly {
    pub fn new(unit: FFElement, factors: Vec<(UniPoly, u32)>) -> Result<Self, BelyiError> {
        if unit.is_zero() {
            return Err(BelyiError::ZeroUnit);
        }
        for (f, e) in &factors {
            if f.is_constant() || *e == 0 || f.field() != unit.field() {
                return Err(BelyiError::BadFactor(f.to_string()));
            }
        }
        Ok(FactoredPoly { unit, factors })
    }

    pub fn unit(&self) -> FFElement {
        self.unit
    }

    pub fn factors(&self) -> &[(UniPoly, u32)] {
        &self.factors
    }

    pub fn field(&self) -> PrimeField {
        self.unit.field()
    }

    /// Sum of `e_i * deg f_i`.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(f, e)| f.deg0() * *e as usize).sum()
    }

    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit);
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

pub fn expand_factored(fp: &FactoredPoly) -> UniPoly {
    fp.expand()
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.unit.value() != 1 || self.factors.is_empty() {
            write!(f, "{}", self.unit.value())?;
            first = false;
        }
        for (g, e) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            write!(f, "({g})")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
