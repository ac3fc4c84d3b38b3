use crate::ffpoly::{FFElement, PrimeField, UniPoly};
use crate::par;

use super::series::{ser_inv, shifted, SerPoly};
use super::{BiPoly, BivarError};

/// Smallest `t0 >= start` (scanning cyclically through `F_p`) with
/// `lc_X(F)(t0) != 0` and `F(X, t0)` squarefree.
pub fn choose_specialization(f: &BiPoly, start: FFElement) -> Result<FFElement, BivarError> {
    let k = f.field();
    let p = k.modulus();
    let lc = f.lc_x();
    for step in 0..p {
        let t0 = k.elem(((start.value() as u64) + step as u64) % p as u64);
        if lc.eval(t0).is_zero() {
            continue;
        }
        let g = f.eval_t(t0);
        let dg = g.derivative();
        if g.deg0() == 0 || (!dg.is_zero() && g.gcd(&dg)?.is_one()) {
            return Ok(t0);
        }
    }
    Err(BivarError::NoGoodSpecialization)
}

/// Lifted factors of `F / lc_X(F)` in `F_p[[u]][X]` with `u = t - t0`.
#[derive(Clone, Debug)]
pub struct LocalFactorSet {
    t0: FFElement,
    precision: usize,
    field: PrimeField,
    pub(crate) monic: SerPoly,
    pub(crate) lc: Vec<u32>,
    pub(crate) factors: Vec<SerPoly>,
}

impl LocalFactorSet {
    pub fn t0(&self) -> FFElement {
        self.t0
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `lc_X(F)(t0 + u)`, truncated.
    pub fn leading_unit(&self) -> UniPoly {
        UniPoly::from_residues(self.field, self.lc.clone())
    }

    /// The lifted factors with the second variable read as `u = t - t0`.
    pub fn factors(&self) -> Vec<BiPoly> {
        self.factors
            .iter()
            .map(|s| BiPoly::new(self.field, s.to_unipolys(self.field)))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree()).collect()
    }

    /// Whether the product of the factors equals `F / lc` to full precision.
    pub fn product_matches(&self) -> bool {
        let k = self.field;
        let mut acc = SerPoly::from_uni(&UniPoly::one(k), self.precision);
        for f in &self.factors {
            acc = acc.mul(f, k, self.precision);
        }
        acc == self.monic
    }
}

fn monic_series(f: &BiPoly, t0: FFElement, prec: usize) -> (SerPoly, Vec<u32>) {
    let k = f.field();
    let lc = shifted(&f.lc_x(), t0, prec);
    let inv = ser_inv(k, &lc, prec);
    let rows: Vec<Vec<u32>> = f
        .coeffs()
        .iter()
        .map(|c| super::series::ser_mul(k, &shifted(c, t0, prec), &inv, prec))
        .collect();
    (SerPoly::from_rows(&rows, prec), lc)
}

fn lift_one(big: &SerPoly, f0: &UniPoly, field: PrimeField, target: usize) -> Result<SerPoly, BivarError> {
    let k = field;
    let big0 = big.at_zero(k);
    let g0 = big0.div_exact(f0);
    let h0 = g0.inv_mod(f0).map_err(|_| BivarError::NonCoprimeFactors)?;
    let mut f = SerPoly::from_uni(f0, 1);
    let d = f0.deg0();
    let mut h = SerPoly::zero(d, 1);
    for (i, &c) in h0.coeffs().iter().enumerate() {
        h.row_mut(i)[0] = c;
    }
    let mut m = 1;
    while m < target {
        let m2 = (2 * m).min(target);
        let fx = f.with_prec(m2);
        let (q, rho) = big.divrem_monic(&fx, k, m2);
        // h <- h (2 - q h) mod f, good to u^m
        h = h.with_prec(m);
        let qm = q.with_prec(m).rem_monic(&f, k, m);
        let qh = qm.mul(&h, k, m).rem_monic(&f, k, m);
        let one = SerPoly::from_uni(&UniPoly::one(k), m);
        let e = one.sub(&qh, k);
        h = h.add(&h.mul(&e, k, m).rem_monic(&f, k, m), k);
        h = trim_rows(h, d);
        let delta = rho.mul(&h.with_prec(m2), k, m2).rem_monic(&fx, k, m2);
        f = fx.add(&delta, k);
        m = m2;
    }
    Ok(trim_rows(f, d + 1))
}

fn trim_rows(s: SerPoly, rows: usize) -> SerPoly {
    if s.rows == rows {
        return s;
    }
    let mut out = SerPoly::zero(rows, s.prec);
    for i in 0..rows.min(s.rows) {
        out.row_mut(i).copy_from_slice(s.row(i));
    }
    debug_assert!((rows..s.rows).all(|i| s.row(i).iter().all(|&c| c == 0)));
    out
}

/// Lifts a coprime factorization of the monic-normalized `F(X, t0)` to
/// precision `(t - t0)^target_precision`, one Newton iteration per factor,
/// and checks that every lifted factor divides `F / lc_X(F)` exactly.
pub fn hensel_lift(
    f: &BiPoly,
    t0: FFElement,
    univariate_factors: &[UniPoly],
    target_precision: usize,
) -> Result<LocalFactorSet, BivarError> {
    let k = f.field();
    let n = f.deg_x().ok_or(BivarError::ZeroPolynomial)?;
    if f.lc_x().eval(t0).is_zero() {
        return Err(BivarError::NoGoodSpecialization);
    }
    let prec = target_precision.max(1);
    let (monic, lc) = monic_series(f, t0, prec);
    let base = monic.at_zero(k);
    let mut prod = UniPoly::one(k);
    for g in univariate_factors {
        if !g.is_monic() || g.is_constant() {
            return Err(BivarError::NonCoprimeFactors);
        }
        if !prod.gcd(g)?.is_one() {
            return Err(BivarError::NonCoprimeFactors);
        }
        prod = &prod * g;
    }
    if prod != base || prod.deg0() != n {
        return Err(BivarError::Internal("factors do not multiply to F(X, t0)".into()));
    }
    let factors = if univariate_factors.len() == 1 {
        vec![monic.clone()]
    } else {
        let lifted = par::map(univariate_factors, |g| lift_one(&monic, g, k, prec));
        lifted.into_iter().collect::<Result<Vec<_>, _>>()?
    };
    let exact = par::map(&factors, |g| monic.rem_monic(g, k, prec).is_zero());
    if exact.iter().any(|ok| !ok) {
        return Err(BivarError::Internal("Hensel lifting lost exactness".into()));
    }
    Ok(LocalFactorSet {
        t0,
        precision: prec,
        field: k,
        monic,
        lc,
        factors,
    })
}
