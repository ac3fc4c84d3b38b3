use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FFElement, PrimeField};
use super::kernel;
use super::FfError;

/// Degree of a polynomial; the zero polynomial sits below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense univariate polynomial over a prime field, coefficient `i` at index `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<u32>,
    field: PrimeField,
}

impl UniPoly {
    /// Builds a polynomial from residues that are already reduced.
    pub fn from_residues(field: PrimeField, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.modulus()));
        kernel::trim(&mut coeffs, 0);
        UniPoly { coeffs, field }
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_residues(field, coeffs.iter().map(|&c| field.reduce_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            field,
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FFElement) -> Self {
        Self::from_residues(c.field(), vec![c.value()])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::from_residues(field, vec![0, 1])
    }

    /// `c * X^n`.
    pub fn monomial(c: FFElement, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c.value();
        Self::from_residues(c.field(), v)
    }

    /// `X - a`.
    pub fn linear_root(a: FFElement) -> Self {
        let f = a.field();
        Self::from_residues(f, vec![f.neg(a.value()), 1])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an integer, with zero mapped to 0. Only for callers that have
    /// already excluded the zero polynomial or treat it like a constant.
    pub fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FFElement {
        self.field.elem(self.coeffs.last().copied().unwrap_or(0) as u64)
    }

    pub fn monic(&self) -> UniPoly {
        let mut c = self.coeffs.clone();
        kernel::make_monic(&self.field, &mut c);
        UniPoly {
            coeffs: c,
            field: self.field,
        }
    }

    pub fn scale(&self, s: u32) -> UniPoly {
        let f = self.field;
        Self::from_residues(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        let f = self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect();
        Self::from_residues(f, v)
    }

    pub fn eval(&self, a: FFElement) -> FFElement {
        self.field.elem(self.eval_residue(a.value()) as u64)
    }

    pub fn eval_residue(&self, a: u32) -> u32 {
        kernel::eval(&self.field, &self.coeffs, a)
    }

    pub fn divrem(&self, g: &UniPoly) -> Result<(UniPoly, UniPoly), FfError> {
        if g.is_zero() {
            return Err(FfError::DivisionByZeroPolynomial);
        }
        let (q, r) = kernel::divrem(&self.field, &self.coeffs, &g.coeffs);
        Ok((
            Self::from_residues(self.field, q),
            Self::from_residues(self.field, r),
        ))
    }

    /// Remainder; panics on a zero divisor.
    pub fn rem(&self, g: &UniPoly) -> UniPoly {
        Self::from_residues(self.field, kernel::rem(&self.field, &self.coeffs, &g.coeffs))
    }

    /// Exact quotient; panics on a zero divisor, debug-checks the remainder.
    pub fn div_exact(&self, g: &UniPoly) -> UniPoly {
        let (q, r) = kernel::divrem(&self.field, &self.coeffs, &g.coeffs);
        debug_assert!(r.is_empty(), "inexact division");
        Self::from_residues(self.field, q)
    }

    pub fn divides(&self, f: &UniPoly) -> bool {
        !self.is_zero() && f.rem(self).is_zero()
    }

    pub fn gcd(&self, g: &UniPoly) -> Result<UniPoly, FfError> {
        if self.is_zero() && g.is_zero() {
            return Err(FfError::UndefinedGcd);
        }
        Ok(Self::from_residues(
            self.field,
            kernel::gcd(&self.field, &self.coeffs, &g.coeffs),
        ))
    }

    /// `(g, s, t)` with `g = s*self + t*other` monic.
    pub fn xgcd(&self, other: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly), FfError> {
        if self.is_zero() && other.is_zero() {
            return Err(FfError::UndefinedGcd);
        }
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let li = f.inv(r0.lc().value())?;
        Ok((r0.scale(li), s0.scale(li), t0.scale(li)))
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inv_mod(&self, m: &UniPoly) -> Result<UniPoly, FfError> {
        let (g, s, _) = self.xgcd(m)?;
        if !g.is_one() {
            return Err(FfError::NotInvertible);
        }
        Ok(s.rem(m))
    }

    pub fn mul_mod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = UniPoly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients of `self(a + U)` as a polynomial in `U`.
    pub fn taylor_shift(&self, a: u32) -> UniPoly {
        let f = self.field;
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division by (X - a)
        for i in 0..n {
            for j in (i..n - 1).rev() {
                c[j] = f.add(c[j], f.mul(a, c[j + 1]));
            }
        }
        Self::from_residues(f, c)
    }

    /// Total order used for canonical factor lists: degree, then coefficients
    /// from the leading one downward.
    pub fn canonical_cmp(&self, other: &UniPoly) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

pub(crate) fn mul_slices(field: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let budget = field.lazy_budget();
    let p = field.modulus() as u64;
    let n = a.len() + b.len() - 1;
    let mut out = vec![0u32; n];
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.len() <= budget {
        let mut acc = vec![0u64; n];
        for (i, &x) in short.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc[i..i + long.len()].iter_mut().zip(long) {
                *slot += x * y as u64;
            }
        }
        for (o, v) in out.iter_mut().zip(acc) {
            *o = (v % p) as u32;
        }
    } else {
        for (i, &x) in short.iter().enumerate() {
            for (j, &y) in long.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(x, y));
            }
        }
    }
    out
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        UniPoly::from_residues(f, v)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        UniPoly::from_residues(f, v)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.field, rhs.field, "mixed prime fields");
        UniPoly::from_residues(self.field, mul_slices(self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        let f = self.field;
        UniPoly::from_residues(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.field.modulus())
    }
}

/// Renders in the same syntax the polynomial-file parser accepts, for example
/// `X^2 + 134*X + 135`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}*X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

/// `f = q*g + r` with `deg r < deg g`.
pub fn poly_divrem(f: &UniPoly, g: &UniPoly) -> Result<(UniPoly, UniPoly), FfError> {
    f.divrem(g)
}

/// Monic greatest common divisor.
pub fn poly_gcd(f: &UniPoly, g: &UniPoly) -> Result<UniPoly, FfError> {
    f.gcd(g)
}

pub fn poly_eval(f: &UniPoly, a: FFElement) -> FFElement {
    f.eval(a)
}

/// Unique polynomial of degree below `points.len()` through the given points.
pub fn interpolate(field: PrimeField, points: &[(FFElement, FFElement)]) -> Result<UniPoly, FfError> {
    let xs: Vec<u32> = points.iter().map(|p| p.0.value()).collect();
    let ys: Vec<u32> = points.iter().map(|p| p.1.value()).collect();
    let mut seen = xs.clone();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(FfError::DuplicateNodes);
    }
    Ok(UniPoly::from_residues(field, kernel::interpolate(&field, &xs, &ys)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn divrem_examples() {
        let f5 = f(5);
        let (q, r) = poly_divrem(&UniPoly::from_i64(f5, &[1, 0, 1]), &UniPoly::x(f5)).unwrap();
        assert_eq!(q, UniPoly::x(f5));
        assert_eq!(r, UniPoly::one(f5));

        let g = UniPoly::from_i64(f5, &[3, 1, 4, 1]);
        let (q, r) = poly_divrem(&g, &UniPoly::one(f5)).unwrap();
        assert_eq!((q, r), (g.clone(), UniPoly::zero(f5)));

        let f7 = f(7);
        let (q, r) = poly_divrem(&UniPoly::from_i64(f7, &[-1, 0, 0, 1]), &UniPoly::from_i64(f7, &[-1, 1])).unwrap();
        assert_eq!(q, UniPoly::from_i64(f7, &[1, 1, 1]));
        assert!(r.is_zero());

        assert_eq!(
            poly_divrem(&g, &UniPoly::zero(f5)),
            Err(FfError::DivisionByZeroPolynomial)
        );
    }

    #[test]
    fn gcd_examples() {
        let f5 = f(5);
        let a = UniPoly::from_i64(f5, &[-1, 0, 1]);
        let b = UniPoly::from_i64(f5, &[2, 3, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), UniPoly::from_i64(f5, &[1, 1]));
        let c = UniPoly::from_i64(f5, &[3, 0, 2]);
        assert_eq!(poly_gcd(&c, &UniPoly::zero(f5)).unwrap(), c.monic());
        let one = poly_gcd(&UniPoly::from_i64(f5, &[1, 0, 1]), &UniPoly::from_i64(f5, &[2, 0, 1])).unwrap();
        assert!(one.is_one());
        assert_eq!(
            poly_gcd(&UniPoly::zero(f5), &UniPoly::zero(f5)),
            Err(FfError::UndefinedGcd)
        );
    }

    #[test]
    fn eval_and_interpolate_examples() {
        let f5 = f(5);
        assert_eq!(poly_eval(&UniPoly::from_i64(f5, &[1, 0, 1]), f5.elem(3)).value(), 0);
        let pts = [(f5.elem(0), f5.elem(1)), (f5.elem(1), f5.elem(2))];
        assert_eq!(interpolate(f5, &pts).unwrap(), UniPoly::from_i64(f5, &[1, 1]));
        let dup = [(f5.elem(1), f5.elem(1)), (f5.elem(1), f5.elem(2))];
        assert_eq!(interpolate(f5, &dup), Err(FfError::DuplicateNodes));
    }

    #[test]
    fn zero_degree_is_sentinel() {
        let f5 = f(5);
        assert_eq!(UniPoly::zero(f5).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(UniPoly::one(f5).degree(), Degree::Finite(0));
    }

    #[test]
    fn display_format() {
        let f283 = f(283);
        let p = UniPoly::from_i64(f283, &[135, 134, 1]);
        assert_eq!(p.to_string(), "X^2 + 134*X + 135");
        assert_eq!(UniPoly::from_i64(f283, &[0, 1]).to_string(), "X");
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let f7 = f(7);
        let p = UniPoly::from_i64(f7, &[3, 1, 4, 1, 5]);
        let s = p.taylor_shift(2);
        for u in 0..7u64 {
            assert_eq!(s.eval(f7.elem(u)), p.eval(f7.elem(u + 2)));
        }
    }

    #[test]
    fn lazy_and_reduced_products_agree() {
        let big = f(4_294_967_291);
        let a: Vec<u32> = (0..9).map(|i| 4_294_967_000 + i).collect();
        let b: Vec<u32> = (0..7).map(|i| 4_294_967_200 - i).collect();
        let lazy = mul_slices(big, &a, &b);
        let mut slow = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                slow[i + j] = big.add(slow[i + j], big.mul(x, y));
            }
        }
        assert_eq!(lazy, slow);
    }

    proptest! {
        #[test]
        fn interpolation_round_trip(coeffs in proptest::collection::vec(0u32..283, 1..20)) {
            let fl = f(283);
            let p = UniPoly::from_residues(fl, coeffs);
            let n = p.deg0() + 1;
            let pts: Vec<_> = (0..n as u64).map(|x| (fl.elem(x * 7 + 1), p.eval(fl.elem(x * 7 + 1)))).collect();
            prop_assert_eq!(interpolate(fl, &pts).unwrap(), p);
        }

        #[test]
        fn divrem_identity(a in proptest::collection::vec(0u32..7, 0..12), b in proptest::collection::vec(0u32..7, 1..6)) {
            let fl = f(7);
            let a = UniPoly::from_residues(fl, a);
            let b = UniPoly::from_residues(fl, b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert!(r.degree() < b.degree());
            prop_assert_eq!(&(&q * &b) + &r, a);
        }
    }
}
