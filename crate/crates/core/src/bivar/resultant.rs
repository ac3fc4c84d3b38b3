use crate::ffpoly::kernel::{self, Arith};
use crate::ffpoly::{squarefree_decompose, PrimeField, QuadExt, UniPoly};
use crate::par;

use super::{BiPoly, BivarError};

/// `Phi(X, t) = p(t) q(X) - p(X) q(t)`.
pub fn construct_phi(pbar: &UniPoly, qbar: &UniPoly) -> Result<BiPoly, BivarError> {
    let k = pbar.field();
    if pbar.is_constant() && qbar.is_constant() {
        return Err(BivarError::ConstantMap);
    }
    if !pbar.gcd(qbar)?.is_one() {
        return Err(BivarError::NotCoprime);
    }
    let n = pbar.deg0().max(qbar.deg0());
    let coeffs = (0..=n)
        .map(|i| &pbar.scale(qbar.coeff(i)) - &qbar.scale(pbar.coeff(i)))
        .collect();
    let phi = BiPoly::new(k, coeffs);
    // Phi(t, t) = 0
    let mut diag = UniPoly::zero(k);
    for c in phi.coeffs().iter().rev() {
        diag = &(&diag * &UniPoly::x(k)) + c;
    }
    if !diag.is_zero() {
        return Err(BivarError::Internal("Phi(t, t) does not vanish".into()));
    }
    Ok(phi)
}

fn eval_coeffs<A: Arith>(k: &A, f: &BiPoly, node: A::E) -> Vec<A::E> {
    f.coeffs()
        .iter()
        .map(|c| {
            let lifted: Vec<A::E> = c.coeffs().iter().map(|&a| k.from_base(a)).collect();
            kernel::eval(k, &lifted, node)
        })
        .collect()
}

fn eval_interp<A: Arith>(k: &A, f: &BiPoly, g: &BiPoly, nodes: &[A::E]) -> Vec<A::E> {
    let values = par::map(nodes, |&node| {
        let a = eval_coeffs(k, f, node);
        let b = eval_coeffs(k, g, node);
        kernel::resultant(k, &a, &b)
    });
    kernel::interpolate(k, nodes, &values)
}

/// Sylvester resultant with respect to `X`, as a polynomial in `t`, by
/// evaluation at points where neither leading coefficient vanishes and
/// interpolation.  Falls back to nodes in `F_{p^2}` when `F_p` has too few.
pub fn resultant_x(f: &BiPoly, g: &BiPoly) -> Result<UniPoly, BivarError> {
    let k = f.field();
    let (Some(m), Some(n)) = (f.deg_x(), g.deg_x()) else {
        return Err(BivarError::ZeroPolynomial);
    };
    if m == 0 {
        return Ok(f.coeff(0).pow(n as u32));
    }
    if n == 0 {
        return Ok(g.coeff(0).pow(m as u32));
    }
    let bound = m * g.deg_t().unwrap_or(0) + n * f.deg_t().unwrap_or(0);
    let needed = bound + 1;
    let (lf, lg) = (f.lc_x(), g.lc_x());
    let base: Vec<u32> = (0..k.modulus())
        .filter(|&a| lf.eval_residue(a) != 0 && lg.eval_residue(a) != 0)
        .take(needed)
        .collect();
    if base.len() == needed {
        return Ok(UniPoly::from_residues(k, eval_interp(&k, f, g, &base)));
    }
    let ext = QuadExt::new(k);
    let lift = |c: &UniPoly| -> Vec<[u32; 2]> { c.coeffs().iter().map(|&a| ext.from_base(a)).collect() };
    let (lf2, lg2) = (lift(&lf), lift(&lg));
    let nodes: Vec<[u32; 2]> = ext
        .elements()
        .filter(|&a| !ext.is_zero(kernel::eval(&ext, &lf2, a)) && !ext.is_zero(kernel::eval(&ext, &lg2, a)))
        .take(needed)
        .collect();
    if nodes.len() < needed {
        return Err(BivarError::FieldTooSmall {
            needed,
            available: nodes.len(),
        });
    }
    let coeffs = eval_interp(&ext, f, g, &nodes);
    if coeffs.iter().any(|c| c[1] != 0) {
        return Err(BivarError::Internal("resultant left the prime field".into()));
    }
    Ok(UniPoly::from_residues(k, coeffs.iter().map(|c| c[0]).collect()))
}

/// `(-1)^{d(d-1)/2} Res_X(F, dF/dX) / lc_X(F)` as a reduced fraction with
/// monic denominator.
pub fn discriminant_x(f: &BiPoly) -> Result<(UniPoly, UniPoly), BivarError> {
    let k = f.field();
    let d = f.deg_x().ok_or(BivarError::ZeroPolynomial)?;
    if d < 2 {
        return Err(BivarError::DegreeTooSmall);
    }
    let df = f.derivative_x();
    if df.is_zero() {
        return Ok((UniPoly::zero(k), UniPoly::one(k)));
    }
    let mut num = resultant_x(f, &df)?;
    if (d * (d - 1) / 2) % 2 == 1 {
        num = -&num;
    }
    reduce_fraction(&num, &f.lc_x())
}

pub(crate) fn reduce_fraction(num: &UniPoly, den: &UniPoly) -> Result<(UniPoly, UniPoly), BivarError> {
    if den.is_zero() {
        return Err(BivarError::ZeroDenominator);
    }
    let k = num.field();
    if num.is_zero() {
        return Ok((UniPoly::zero(k), UniPoly::one(k)));
    }
    let g = num.gcd(den)?;
    let (n, dd) = (num.div_exact(&g), den.div_exact(&g));
    let c = dd.lc().inv()?.value();
    Ok((n.scale(c), dd.scale(c)))
}

/// Whether `num / den` is a square in `F_p(t)`.
pub fn is_square_fpt(num: &UniPoly, den: &UniPoly) -> Result<bool, BivarError> {
    let (n, d) = reduce_fraction(num, den)?;
    if n.is_zero() {
        return Ok(true);
    }
    let k: PrimeField = n.field();
    let prod = &n * &d;
    if !k.is_square(prod.lc().value()) {
        return Ok(false);
    }
    let sqf = squarefree_decompose(&prod)?;
    Ok(sqf.parts.iter().all(|(_, e)| e % 2 == 0))
}
