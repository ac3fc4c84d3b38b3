use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FFElement;
use super::poly::UniPoly;
use super::FfError;

/// `f = unit * prod g_i^{e_i}` with the `g_i` monic, squarefree and pairwise
/// coprime, multiplicities strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: FFElement,
    pub parts: Vec<(UniPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit);
        for (g, e) in &self.parts {
            acc = &acc * &g.pow(*e);
        }
        acc
    }

    /// Product of the parts, i.e. the monic radical of the input.
    pub fn radical(&self) -> UniPoly {
        let f = self.unit.field();
        self.parts.iter().fold(UniPoly::one(f), |acc, (g, _)| &acc * g)
    }
}

/// Irreducible factorization `unit * prod f_i^{e_i}` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FFElement,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit);
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e);
        }
        acc
    }

    /// Factor degrees repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat(g.deg0()).take(*e as usize))
            .collect();
        d.sort_unstable();
        d
    }
}

/// Squarefree decomposition valid in characteristic `p`, including inputs with
/// `p`-th power parts.
pub fn squarefree_decompose(f: &UniPoly) -> Result<SquarefreeDecomposition, FfError> {
    if f.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    let unit = f.lc();
    let mut parts = monic_squarefree(&f.monic());
    parts.sort_by_key(|(_, e)| *e);
    // merge equal multiplicities so the sequence is strictly increasing
    let mut merged: Vec<(UniPoly, u32)> = Vec::new();
    for (g, e) in parts {
        match merged.last_mut() {
            Some((h, le)) if *le == e => *h = &*h * &g,
            _ => merged.push((g, e)),
        }
    }
    Ok(SquarefreeDecomposition {
        unit,
        parts: merged,
    })
}

fn monic_squarefree(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let field = f.field();
    let p = field.modulus();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let d = f.derivative();
    let mut c = f.gcd(&d).expect("f is nonzero");
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c).expect("w is nonzero");
        let z = w.div_exact(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        // c is a p-th power: c(X) = h(X^p), and h^p = c since a^p = a in F_p
        let root: Vec<u32> = c.coeffs().iter().step_by(p as usize).copied().collect();
        let h = UniPoly::from_residues(field, root);
        for (g, e) in monic_squarefree(&h) {
            out.push((g, e * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal
/// degree: `(product, degree)`.
pub fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let p = field.modulus() as u64;
    let x = UniPoly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut i = 1usize;
    while rest.deg0() >= 2 * i {
        h = h.pow_mod(p, &rest);
        let g = (&h - &x).gcd(&rest).expect("rest is nonzero");
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_constant() {
        let d = rest.deg0();
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a monic squarefree product of irreducibles
/// of degree `d`.
pub fn equal_degree(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.deg0();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.modulus() as u64;
    loop {
        let a = UniPoly::from_residues(field, (0..n).map(|_| rng.gen_range(0..field.modulus())).collect());
        if a.is_constant() {
            continue;
        }
        let g = a.gcd(f).expect("f is nonzero");
        let split = if !g.is_one() {
            g
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut conj = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                conj = conj.pow_mod(p, f);
                norm = norm.mul_mod(&conj, f);
            }
            let b = norm.pow_mod((p - 1) / 2, f);
            (&b - &UniPoly::one(field)).gcd(f).expect("f is nonzero")
        };
        if !split.is_one() && split.deg0() < n {
            let other = f.div_exact(&split);
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Full factorization: squarefree parts, then distinct-degree and
/// equal-degree splitting.  The output order does not depend on `seed`.
pub fn factor_univariate(f: &UniPoly, seed: u64) -> Result<Factorization, FfError> {
    let sqf = squarefree_decompose(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, e) in &sqf.parts {
        for (prod, d) in distinct_degree(part) {
            for g in equal_degree(&prod, d, &mut rng) {
                factors.push((g, *e));
            }
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization {
        unit: sqf.unit,
        factors,
    })
}

/// Irreducibility by distinct-degree certification.
pub fn is_irreducible(f: &UniPoly) -> bool {
    if f.degree() < super::Degree::Finite(1) {
        return false;
    }
    let m = f.monic();
    if !m.gcd(&m.derivative()).map(|g| g.is_one()).unwrap_or(false) {
        return false;
    }
    let dd = distinct_degree(&m);
    dd.len() == 1 && dd[0].1 == m.deg0()
}

/// `Res(f, g) = lc(f)^{deg g} * prod_{f(a)=0} g(a)`.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<FFElement, FfError> {
    if f.is_zero() || g.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    let field = f.field();
    Ok(field.elem(super::kernel::resultant(&field, f.coeffs(), g.coeffs()) as u64))
}

/// `disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)`, with `f'` taken at its
/// formal degree `d - 1`.
pub fn discriminant(f: &UniPoly) -> Result<FFElement, FfError> {
    let d = f.degree().finite().ok_or(FfError::ZeroPolynomial)?;
    let field = f.field();
    if d == 0 {
        return Err(FfError::DegreeTooSmall);
    }
    let fp = f.derivative();
    if fp.is_zero() {
        return Ok(field.zero());
    }
    let lc = f.lc();
    let mut r = resultant(f, &fp)?;
    // formal degree d-1 versus actual degree of f'
    let drop = (d - 1) - fp.deg0();
    r = r * lc.pow(drop as u64);
    let mut disc = r * lc.inv()?;
    if (d * (d - 1) / 2) % 2 == 1 {
        disc = -disc;
    }
    Ok(disc)
}
