use std::fmt;

use crate::ffpoly::{FFElement, PrimeField, UniPoly};

/// Polynomial in `X` whose coefficients are polynomials in `t`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: PrimeField,
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<UniPoly>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        BiPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    /// `f(X)` with constant coefficients.
    pub fn from_x(f: &UniPoly) -> Self {
        let k = f.field();
        BiPoly::new(
            k,
            f.coeffs()
                .iter()
                .map(|&c| UniPoly::from_residues(k, vec![c]))
                .collect(),
        )
    }

    /// `c(t)` as a polynomial of degree 0 in `X`.
    pub fn from_t(c: &UniPoly) -> Self {
        BiPoly::new(c.field(), vec![c.clone()])
    }

    /// Builds from a table `rows[i][j]` = coefficient of `X^i t^j`.
    pub fn from_table(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        BiPoly::new(field, rows.iter().map(|r| UniPoly::from_i64(field, r)).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    /// Coefficient of `X^i`.
    pub fn coeff(&self, i: usize) -> UniPoly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree().finite()).max()
    }

    /// Leading coefficient in `X`, a polynomial in `t`.
    pub fn lc_x(&self) -> UniPoly {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(self.field))
    }

    pub fn derivative_x(&self) -> BiPoly {
        let k = self.field;
        BiPoly::new(
            k,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(k.reduce(i as u64)))
                .collect(),
        )
    }

    /// `F(X, t0)`.
    pub fn eval_t(&self, t0: FFElement) -> UniPoly {
        UniPoly::from_residues(
            self.field,
            self.coeffs.iter().map(|c| c.eval(t0).value()).collect(),
        )
    }

    /// `F(x0, t)`.
    pub fn eval_x(&self, x0: FFElement) -> UniPoly {
        let mut acc = UniPoly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x0.value()) + c;
        }
        acc
    }

    /// Exchanges the roles of `X` and `t`.
    pub fn swap(&self) -> BiPoly {
        let k = self.field;
        let dt = self.deg_t().map_or(0, |d| d + 1);
        let rows = (0..dt)
            .map(|j| UniPoly::from_residues(k, self.coeffs.iter().map(|c| c.coeff(j)).collect()))
            .collect();
        BiPoly::new(k, rows)
    }

    /// Multiplies every coefficient by `c(t)`.
    pub fn scale_t(&self, c: &UniPoly) -> BiPoly {
        BiPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c(t)`, which must divide all of them.
    pub fn div_t(&self, c: &UniPoly) -> BiPoly {
        BiPoly::new(self.field, self.coeffs.iter().map(|a| a.div_exact(c)).collect())
    }

    /// Monic gcd of the coefficients.
    pub fn content(&self) -> UniPoly {
        let mut g = UniPoly::zero(self.field);
        for c in &self.coeffs {
            g = g.gcd(c).unwrap_or_else(|_| UniPoly::zero(self.field));
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.div_t(&self.content())
    }

    /// Pseudo-remainder `prem(self, g)`.
    pub fn prem(&self, g: &BiPoly) -> BiPoly {
        let dg = g.deg_x().expect("nonzero divisor");
        let lc = g.lc_x();
        let mut r = self.clone();
        while let Some(dr) = r.deg_x() {
            if dr < dg {
                break;
            }
            let c = r.lc_x();
            let mut coeffs: Vec<UniPoly> = r.coeffs.iter().map(|a| a * &lc).collect();
            for (i, gi) in g.coeffs.iter().enumerate() {
                let k = i + dr - dg;
                coeffs[k] = &coeffs[k] - &(gi * &c);
            }
            coeffs.pop();
            r = BiPoly::new(self.field, coeffs);
        }
        r
    }
}

impl std::ops::Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new(self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl std::ops::Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new(self.field, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl std::ops::Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(self.field);
        }
        let mut out = vec![UniPoly::zero(self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(self.field, out)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let ct = c.to_string().replace('X', "t");
            match i {
                0 => write!(f, "({ct})")?,
                1 => write!(f, "({ct})*X")?,
                _ => write!(f, "({ct})*X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let k = PrimeField::new(7).unwrap();
        // X^2 - t
        let f = BiPoly::from_table(k, &[vec![0, -1], vec![], vec![1]]);
        assert_eq!(f.deg_x(), Some(2));
        assert_eq!(f.deg_t(), Some(1));
        assert_eq!(f.eval_t(k.elem(4)), UniPoly::from_i64(k, &[-4, 0, 1]));
        assert_eq!(f.eval_x(k.elem(2)), UniPoly::from_i64(k, &[4, -1]));
        assert_eq!(f.swap().swap(), f);
        assert_eq!(f.derivative_x(), BiPoly::from_table(k, &[vec![], vec![2]]));
        let g = BiPoly::from_table(k, &[vec![0, 1], vec![1]]);
        let h = &f * &g;
        assert_eq!(h.prem(&g), BiPoly::zero(k));
        assert_eq!(&(&h - &f) + &f, h);
    }

    #[test]
    fn content_and_primitive_part() {
        let k = PrimeField::new(5).unwrap();
        // t*X + t^2
        let f = BiPoly::from_table(k, &[vec![0, 0, 1], vec![0, 1]]);
        assert_eq!(f.content(), UniPoly::from_i64(k, &[0, 1]));
        assert_eq!(f.primitive_part(), BiPoly::from_table(k, &[vec![0, 1], vec![1]]));
    }
}
