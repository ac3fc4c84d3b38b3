use crate::ffpoly::{factor_univariate, FFElement, PrimeField, UniPoly};
use crate::par;

use super::hensel::{choose_specialization, hensel_lift, LocalFactorSet};
use super::series::SerPoly;
use super::{BiPoly, BivarError};

/// `unit * content(t) * prod G_j^{e_j}` with each `G_j` irreducible over
/// `F_p(t)`, primitive in `F_p[t][X]`, and with monic leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionFieldFactorization {
    pub unit: FFElement,
    pub content: UniPoly,
    pub factors: Vec<(BiPoly, u32)>,
}

impl FunctionFieldFactorization {
    /// X-degrees repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat(g.deg_x().unwrap_or(0)).take(*e as usize))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn expand(&self) -> BiPoly {
        let mut acc = BiPoly::from_t(&self.content.scale(self.unit.value()));
        for (g, e) in &self.factors {
            for _ in 0..*e {
                acc = &acc * g;
            }
        }
        acc
    }
}

fn normalize(g: BiPoly) -> BiPoly {
    let g = g.primitive_part();
    let c = g.lc_x().lc().inv().expect("nonzero").value();
    BiPoly::new(g.field(), g.coeffs().iter().map(|a| a.scale(c)).collect())
}

/// Whether `F = unit * content * prod G_j^{e_j}`, by evaluation at every
/// point of `F_p` when the `t`-degrees allow it.
fn verify_product(f: &BiPoly, fac: &FunctionFieldFactorization) -> bool {
    let k = f.field();
    let dt: usize = fac.content.deg0()
        + fac
            .factors
            .iter()
            .map(|(g, e)| g.deg_t().unwrap_or(0) * *e as usize)
            .sum::<usize>();
    if dt.max(f.deg_t().unwrap_or(0)) >= k.modulus() as usize {
        return fac.expand() == *f;
    }
    let unit = fac.unit.value();
    let ok = par::map_range(k.modulus() as usize, |a| {
        let t1 = k.elem(a as u64);
        let mut rhs = UniPoly::from_residues(k, vec![k.mul(unit, fac.content.eval(t1).value())]);
        for (g, e) in &fac.factors {
            rhs = &rhs * &g.eval_t(t1).pow(*e);
        }
        rhs == f.eval_t(t1)
    });
    ok.into_iter().all(|b| b)
}

/// Constraint entries of `L_i = lc * (F / f_i) * f_i'`: for each of the top
/// `m_max` sub-leading X-coefficients, the `u^j` coefficients with
/// `bound < j < prec`.
fn constraint_vectors(local: &LocalFactorSet, bound: usize, m_max: usize, field: PrimeField) -> Vec<Vec<u32>> {
    let prec = local.precision();
    let n = local.monic.degree();
    par::map(&local.factors, |f| {
        let q = local.monic.quotient_top(f, field, prec, m_max + 1);
        let df = f.derivative(field);
        let mut out = Vec::with_capacity(m_max * (prec - bound - 1));
        for m in 1..=m_max {
            // coefficient of X^{n-1-m} in q * f'
            let target = n - 1 - m;
            let mut acc = vec![0u32; prec];
            for b in 0..df.rows {
                if b > target || target - b >= q.rows {
                    continue;
                }
                let a = target - b;
                if a + m_max + 1 < q.rows {
                    continue;
                }
                let prod = super::series::ser_mul(field, q.row(a), df.row(b), prec);
                for (x, y) in acc.iter_mut().zip(prod) {
                    *x = field.add(*x, y);
                }
            }
            let l = super::series::ser_mul(field, &acc, &local.lc, prec);
            out.extend_from_slice(&l[bound + 1..]);
        }
        out
    })
}

/// Basis of `{v : sum_i v_i * rows[i] = 0}` in reduced row echelon form.
fn left_kernel(rows: &[Vec<u32>], field: PrimeField) -> Vec<Vec<u32>> {
    let r = rows.len();
    let ncols = rows.first().map_or(0, |v| v.len());
    // eliminate on [rows | I]
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut w = v.clone();
            w.extend((0..r).map(|j| u32::from(i == j)));
            w
        })
        .collect();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..r).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = field.inv(m[rank][c]).unwrap();
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let s = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(s, y));
                }
            }
        }
        rank += 1;
        if rank == r {
            break;
        }
    }
    let kernel: Vec<Vec<u32>> = m[rank..].iter().map(|row| row[ncols..].to_vec()).collect();
    rref(kernel, field)
}

fn rref(mut m: Vec<Vec<u32>>, field: PrimeField) -> Vec<Vec<u32>> {
    let ncols = m.first().map_or(0, |v| v.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = field.inv(m[rank][c]).unwrap();
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let s = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(s, y));
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Blocks of a 0/1 partition basis, or `None`.
fn partition_of(basis: &[Vec<u32>], r: usize) -> Option<Vec<Vec<usize>>> {
    let mut seen = vec![false; r];
    let mut blocks = Vec::new();
    for v in basis {
        let mut b = Vec::new();
        for (i, &x) in v.iter().enumerate() {
            match x {
                0 => {}
                1 if !seen[i] => {
                    seen[i] = true;
                    b.push(i);
                }
                _ => return None,
            }
        }
        blocks.push(b);
    }
    seen.iter().all(|&s| s).then_some(blocks)
}

/// `lc * prod_{i in S} f_i`, shifted back to `t` and normalized, if its
/// coefficients truncate to polynomials of degree at most `bound`.
fn reconstruct(local: &LocalFactorSet, block: &[usize], bound: usize, field: PrimeField) -> Option<BiPoly> {
    let prec = local.precision();
    let mut idx: Vec<usize> = block.to_vec();
    idx.sort_by_key(|&i| local.factors[i].degree());
    let mut acc: Option<SerPoly> = None;
    for &i in &idx {
        acc = Some(match acc {
            None => local.factors[i].clone(),
            Some(a) => a.mul(&local.factors[i], field, prec),
        });
    }
    let prod = acc?.scale_series(&local.lc, field);
    let neg_t0 = field.neg(local.t0().value());
    let mut coeffs = Vec::with_capacity(prod.rows);
    for i in 0..prod.rows {
        let row = prod.row(i);
        if row[bound + 1..].iter().any(|&c| c != 0) {
            return None;
        }
        coeffs.push(UniPoly::from_residues(field, row[..=bound].to_vec()).taylor_shift(neg_t0));
    }
    Some(normalize(BiPoly::new(field, coeffs)))
}

fn assemble(f: &BiPoly, factors: Vec<BiPoly>) -> Result<FunctionFieldFactorization, BivarError> {
    let content = f.content();
    let unit = f.lc_x().lc();
    let mut factors: Vec<(BiPoly, u32)> = factors.into_iter().map(|g| (g, 1)).collect();
    factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    let fac = FunctionFieldFactorization {
        unit,
        content,
        factors,
    };
    if !verify_product(f, &fac) {
        return Err(BivarError::RecombinationFailure("factor product does not reproduce the input".into()));
    }
    Ok(fac)
}

pub(crate) fn canonical_cmp(a: &BiPoly, b: &BiPoly) -> std::cmp::Ordering {
    a.deg_x()
        .cmp(&b.deg_x())
        .then_with(|| {
            a.coeffs()
                .iter()
                .rev()
                .zip(b.coeffs().iter().rev())
                .map(|(x, y)| x.canonical_cmp(y).then_with(|| x.coeffs().cmp(y.coeffs())))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
}

fn check_precision(local: &LocalFactorSet, f: &BiPoly) -> Result<usize, BivarError> {
    let bound = f.deg_t().unwrap_or(0);
    if local.precision() <= 2 * bound {
        return Err(BivarError::PrecisionTooLow {
            have: local.precision(),
            need: 2 * bound + 1,
        });
    }
    Ok(bound)
}

/// Groups local factors into the irreducible factors of `F` over `F_p(t)`
/// by logarithmic-derivative linear algebra.  `F` must be primitive and
/// squarefree.
pub fn recombine(local: &LocalFactorSet, f: &BiPoly) -> Result<FunctionFieldFactorization, BivarError> {
    let k = f.field();
    let bound = check_precision(local, f)?;
    let r = local.len();
    let n = f.deg_x().ok_or(BivarError::ZeroPolynomial)?;
    let rec_bound = bound + f.lc_x().deg0();
    if r <= 1 {
        let g = reconstruct(local, &[0], rec_bound, k)
            .ok_or_else(|| BivarError::RecombinationFailure("single factor does not truncate".into()))?;
        return assemble(f, vec![g]);
    }
    let mut m_max = (n - 1).min(4);
    loop {
        let vectors = constraint_vectors(local, bound, m_max, k);
        let basis = left_kernel(&vectors, k);
        if let Some(blocks) = partition_of(&basis, r) {
            let found: Vec<Option<BiPoly>> = par::map(&blocks, |b| reconstruct(local, b, rec_bound, k));
            if found.iter().all(|g| g.is_some()) {
                return assemble(f, found.into_iter().map(Option::unwrap).collect());
            }
        }
        if m_max == n - 1 {
            return Err(BivarError::RecombinationFailure(format!(
                "kernel of dimension {} is not a partition of {r} local factors",
                basis.len()
            )));
        }
        m_max = (2 * m_max).min(n - 1);
    }
}

/// Exhaustive subset search with a first-trace pruning test, for at most 20
/// local factors.
pub fn recombine_by_subsets(local: &LocalFactorSet, f: &BiPoly) -> Result<FunctionFieldFactorization, BivarError> {
    let k = f.field();
    let bound = check_precision(local, f)?;
    let r = local.len();
    if r > 20 {
        return Err(BivarError::TooManyLocalFactors(r));
    }
    let n = f.deg_x().ok_or(BivarError::ZeroPolynomial)?;
    let rec_bound = bound + f.lc_x().deg0();
    let traces = if n >= 2 {
        constraint_vectors(local, bound, 1, k)
    } else {
        vec![Vec::new(); r]
    };
    let mut remaining: Vec<usize> = (0..r).collect();
    let mut out = Vec::new();
    'outer: while !remaining.is_empty() {
        let first = remaining[0];
        let rest: Vec<usize> = remaining[1..].to_vec();
        for size in 0..=rest.len() {
            for combo in combinations(rest.len(), size) {
                let mut block = vec![first];
                block.extend(combo.iter().map(|&j| rest[j]));
                let mut sum = traces[first].clone();
                for &i in &block[1..] {
                    for (s, &v) in sum.iter_mut().zip(&traces[i]) {
                        *s = k.add(*s, v);
                    }
                }
                if sum.iter().any(|&c| c != 0) {
                    continue;
                }
                if let Some(g) = reconstruct(local, &block, rec_bound, k) {
                    out.push(g);
                    remaining.retain(|i| !block.contains(i));
                    continue 'outer;
                }
            }
        }
        return Err(BivarError::RecombinationFailure("no subset gives a true factor".into()));
    }
    assemble(f, out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Factors a primitive `F` that has a squarefree specialization at `t0`.
fn factor_at(f: &BiPoly, t0: FFElement, seed: u64) -> Result<Vec<BiPoly>, BivarError> {
    if f.deg_x() == Some(0) {
        return Ok(Vec::new());
    }
    let spec = f.eval_t(t0).monic();
    let uni = factor_univariate(&spec, seed)?;
    let parts: Vec<UniPoly> = uni.factors.iter().map(|(g, _)| g.clone()).collect();
    let prec = 2 * f.deg_t().unwrap_or(0) + 1;
    let local = hensel_lift(f, t0, &parts, prec)?;
    Ok(recombine(&local, f)?.factors.into_iter().map(|(g, _)| g).collect())
}

/// Full factorization over `F_p(t)`: squarefree split, specialization,
/// univariate factorization, Hensel lifting and recombination.
pub fn factor_bivariate(f: &BiPoly, seed: u64) -> Result<FunctionFieldFactorization, BivarError> {
    let k = f.field();
    if f.is_zero() {
        return Err(BivarError::ZeroPolynomial);
    }
    let content = f.content();
    let unit = f.lc_x().lc();
    let prim = f.primitive_part();
    let mut factors: Vec<(BiPoly, u32)> = Vec::new();
    if prim.deg_x().unwrap_or(0) > 0 {
        let parts = match choose_specialization(&prim, k.zero()) {
            Ok(_) => vec![(prim.clone(), 1)],
            Err(BivarError::NoGoodSpecialization) => squarefree_parts(&prim)?,
            Err(e) => return Err(e),
        };
        for (a, e) in parts {
            let t0 = choose_specialization(&a, k.zero())?;
            for g in factor_at(&a, t0, seed)? {
                factors.push((g, e));
            }
        }
    }
    factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    let fac = FunctionFieldFactorization {
        unit,
        content,
        factors,
    };
    if !verify_product(f, &fac) {
        return Err(BivarError::RecombinationFailure("factor product does not reproduce the input".into()));
    }
    Ok(fac)
}

/// X-degrees of the irreducible factors over `F_p(t)`, with multiplicity.
pub fn factor_degrees(f: &BiPoly, seed: u64) -> Result<Vec<usize>, BivarError> {
    Ok(factor_bivariate(f, seed)?.degrees())
}

/// Primitive gcd in `F_p[t][X]` of primitive inputs.
fn gcd_bi(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let (mut a, mut b) = if a.deg_x() >= b.deg_x() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    while !b.is_zero() {
        let r = a.prem(&b);
        a = b;
        b = r.primitive_part();
    }
    normalize(a)
}

/// Exact quotient `a / b` where `b` is primitive and divides `a`.
fn div_bi(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let k = a.field();
    let db = b.deg_x().expect("nonzero divisor");
    let lb = b.lc_x();
    let mut r = a.clone();
    let mut q = vec![UniPoly::zero(k); a.deg_x().map_or(0, |d| d.saturating_sub(db) + 1)];
    while let Some(dr) = r.deg_x() {
        if dr < db {
            break;
        }
        let c = r.lc_x().div_exact(&lb);
        q[dr - db] = c.clone();
        let mut shifted = vec![UniPoly::zero(k); dr - db];
        shifted.extend(b.coeffs().iter().map(|x| x * &c));
        r = &r - &BiPoly::new(k, shifted);
    }
    debug_assert!(r.is_zero());
    BiPoly::new(k, q)
}

/// Yun's algorithm over `F_p(t)`; parts are primitive, squarefree and
/// pairwise coprime.  Needs `deg_X < p`.
fn squarefree_parts(f: &BiPoly) -> Result<Vec<(BiPoly, u32)>, BivarError> {
    let n = f.deg_x().unwrap_or(0);
    if n >= f.field().modulus() as usize {
        return Err(BivarError::Inseparable);
    }
    let df = f.derivative_x();
    let c = gcd_bi(f, &df);
    let mut w = div_bi(f, &c);
    let mut y = div_bi(&df, &c);
    let mut z = &y - &w.derivative_x();
    let mut out = Vec::new();
    let mut i = 1;
    while w.deg_x().unwrap_or(0) > 0 {
        let g = gcd_bi(&w, &z);
        if g.deg_x().unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        w = div_bi(&w, &g);
        y = div_bi(&z, &g);
        z = &y - &w.derivative_x();
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn documented_degrees() {
        let f5 = k(5);
        let f7 = k(7);
        // t^2 - X^2
        let a = BiPoly::from_table(f5, &[vec![0, 0, 1], vec![], vec![-1]]);
        assert_eq!(factor_degrees(&a, 0).unwrap(), vec![1, 1]);
        // X^3 - t^3
        let b7 = BiPoly::from_table(f7, &[vec![0, 0, 0, -1], vec![], vec![], vec![1]]);
        assert_eq!(factor_degrees(&b7, 0).unwrap(), vec![1, 1, 1]);
        let b5 = BiPoly::from_table(f5, &[vec![0, 0, 0, -1], vec![], vec![], vec![1]]);
        assert_eq!(factor_degrees(&b5, 0).unwrap(), vec![1, 2]);
        // (X - t)(X^2 - t - 1)
        let c = &BiPoly::from_table(f7, &[vec![0, -1], vec![1]]) * &BiPoly::from_table(f7, &[vec![-1, -1], vec![], vec![1]]);
        assert_eq!(factor_degrees(&c, 0).unwrap(), vec![1, 2]);
    }

    #[test]
    fn subset_oracle_agrees() {
        let f7 = k(7);
        let c = &BiPoly::from_table(f7, &[vec![0, -1], vec![1]]) * &BiPoly::from_table(f7, &[vec![-1, -1, 0, 1], vec![], vec![1, 1]]);
        let t0 = choose_specialization(&c, f7.zero()).unwrap();
        let spec = c.eval_t(t0).monic();
        let parts: Vec<UniPoly> = factor_univariate(&spec, 0).unwrap().factors.into_iter().map(|(g, _)| g).collect();
        let local = hensel_lift(&c, t0, &parts, 2 * c.deg_t().unwrap() + 1).unwrap();
        assert_eq!(recombine(&local, &c).unwrap(), recombine_by_subsets(&local, &c).unwrap());
    }

    #[test]
    fn repeated_factors() {
        let f7 = k(7);
        let a = BiPoly::from_table(f7, &[vec![0, -1], vec![1]]);
        let b = BiPoly::from_table(f7, &[vec![-1, -1], vec![], vec![1]]);
        let f = &(&a * &a) * &b;
        let fac = factor_bivariate(&f, 0).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1, 2]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn content_is_split_off() {
        let f5 = k(5);
        // t (t + 1) (X^2 - t)
        let f = BiPoly::from_table(f5, &[vec![0, 0, -1, -1], vec![], vec![0, 1, 1]]);
        let fac = factor_bivariate(&f, 0).unwrap();
        assert_eq!(fac.content, UniPoly::from_i64(f5, &[0, 1, 1]));
        assert_eq!(fac.degrees(), vec![2]);
    }

    #[test]
    fn precision_is_checked() {
        let f7 = k(7);
        let f = BiPoly::from_table(f7, &[vec![-1, -1], vec![], vec![1]]);
        let parts = [UniPoly::from_i64(f7, &[-1, 1]), UniPoly::from_i64(f7, &[1, 1])];
        let local = hensel_lift(&f, f7.zero(), &parts, 2).unwrap();
        assert!(matches!(recombine(&local, &f), Err(BivarError::PrecisionTooLow { .. })));
    }
}
