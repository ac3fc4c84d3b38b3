//! Independent reference computations.  Each returns a one-line summary on
//! success and a description of the first disagreement otherwise.

use std::collections::HashSet;

use belyi_core::bivar::{factor_degrees, resultant_x, BiPoly};
use belyi_core::ffpoly::{factor_univariate, resultant, PrimeField, UniPoly};
use belyi_core::permgrp::{subdegree_primitivity_criterion, PermGroup, Permutation, PrimitivityVerdict};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type OracleResult = Result<String, String>;

fn monic_polys(k: PrimeField, d: usize) -> Vec<UniPoly> {
    let p = k.modulus() as u64;
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((idx % p) as u32);
                idx /= p;
            }
            c.push(1);
            UniPoly::from_residues(k, c)
        })
        .collect()
}

fn sorted(mut v: Vec<(UniPoly, u32)>) -> Vec<(Vec<u32>, u32)> {
    let mut out: Vec<(Vec<u32>, u32)> = v.drain(..).map(|(g, e)| (g.coeffs().to_vec(), e)).collect();
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
    out
}

/// Factorization of every monic polynomial of degree at most `max_deg`
/// against trial division by the monic irreducibles.
pub fn univariate_trial_division(p: u64, max_deg: usize, seed: u64) -> OracleResult {
    let k = PrimeField::new(p).unwrap();
    let mut irr: Vec<UniPoly> = Vec::new();
    for d in 1..=max_deg {
        for f in monic_polys(k, d) {
            if irr.iter().take_while(|g| 2 * g.deg0() <= d).all(|g| !g.divides(&f)) {
                irr.push(f);
            }
        }
    }
    let mut checked = 0;
    for d in 1..=max_deg {
        for f in monic_polys(k, d) {
            let mut rest = f.clone();
            let mut expect = Vec::new();
            for g in &irr {
                if g.deg0() > rest.deg0() {
                    break;
                }
                let mut e = 0;
                while g.divides(&rest) {
                    rest = rest.div_exact(g);
                    e += 1;
                }
                if e > 0 {
                    expect.push((g.clone(), e));
                }
            }
            let got = factor_univariate(&f, seed).map_err(|e| format!("{f}: {e}"))?;
            if got.unit.value() != 1 || sorted(got.factors) != sorted(expect) {
                return Err(format!("factorization of {f} over F_{p} disagrees with trial division"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} monic polynomials over F_{p}"))
}

/// The documented bivariate factor-degree examples.
pub fn bivariate_examples() -> OracleResult {
    let f5 = PrimeField::new(5).unwrap();
    let f7 = PrimeField::new(7).unwrap();
    let cases: Vec<(&str, BiPoly, Vec<usize>)> = vec![
        // Phi for the map X^2
        ("t^2 - X^2 over F_5", BiPoly::from_table(f5, &[vec![0, 0, 1], vec![], vec![-1]]), vec![1, 1]),
        ("X^2 - t over F_5", BiPoly::from_table(f5, &[vec![0, -1], vec![], vec![1]]), vec![2]),
        (
            "X^3 - t^3 over F_7",
            BiPoly::from_table(f7, &[vec![0, 0, 0, -1], vec![], vec![], vec![1]]),
            vec![1, 1, 1],
        ),
        (
            "X^3 - t^3 over F_5",
            BiPoly::from_table(f5, &[vec![0, 0, 0, -1], vec![], vec![], vec![1]]),
            vec![1, 2],
        ),
        (
            "(X - t)(X^2 - t - 1) over F_7",
            &BiPoly::from_table(f7, &[vec![0, -1], vec![1]]) * &BiPoly::from_table(f7, &[vec![-1, -1], vec![], vec![1]]),
            vec![1, 2],
        ),
    ];
    let mut failures = Vec::new();
    for (name, f, want) in &cases {
        match factor_degrees(f, 0) {
            Ok(d) if d == *want => {}
            Ok(d) => failures.push(format!("{name}: got {d:?}, want {want:?}")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok(format!("{} documented cases", cases.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn closure_size(n: usize, gens: &[Permutation]) -> usize {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.images().to_vec());
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = g.mul(s);
            if seen.insert(h.images().to_vec()) {
                frontier.push(h);
            }
        }
    }
    seen.len()
}

fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

fn cycle(n: usize, pts: &[usize]) -> Permutation {
    Permutation::from_cycles(n, &[pts.to_vec()]).unwrap()
}

fn named_groups() -> Vec<(String, usize, Vec<Permutation>)> {
    let mut v = Vec::new();
    for n in 2..=7usize {
        let all: Vec<usize> = (1..=n).collect();
        v.push((format!("C_{n}"), n, vec![cycle(n, &all)]));
        v.push((format!("S_{n}"), n, vec![cycle(n, &all), cycle(n, &[1, 2])]));
        if n >= 3 {
            let threes = (3..=n).map(|i| cycle(n, &[1, 2, i])).collect();
            v.push((format!("A_{n}"), n, threes));
            let refl: Vec<Vec<usize>> = (1..=n / 2).map(|i| vec![i, n + 1 - i]).filter(|c| c[0] != c[1]).collect();
            v.push((format!("D_{n}"), n, vec![cycle(n, &all), Permutation::from_cycles(n, &refl).unwrap()]));
        }
    }
    v
}

/// Stabilizer-chain orders against brute-force closure.
pub fn bsgs_vs_exhaustive(seed: u64, random_groups: usize) -> OracleResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = named_groups();
    for i in 0..random_groups {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Permutation> = (0..k)
            .map(|_| {
                let g = random_perm(n, &mut rng);
                // powers of random elements give plenty of small groups
                let e = rng.gen_range(1..=4);
                g.pow(e)
            })
            .collect();
        corpus.push((format!("random #{i}"), n, gens));
    }
    for (name, n, gens) in &corpus {
        let want = closure_size(*n, gens);
        let got = PermGroup::new(*n, gens.clone()).map_err(|e| format!("{name}: {e}"))?.order();
        if got != BigUint::from(want) {
            return Err(format!("{name}: chain order {got}, closure {want}"));
        }
    }
    Ok(format!("{} groups of order at most 5040", corpus.len()))
}

/// An element of `S_a wr S_b` on `a*b` points, block `i` = `{i*a+1..(i+1)*a}`.
fn wreath_element<R: Rng>(a: usize, b: usize, rng: &mut R) -> Permutation {
    let top = random_perm(b, rng);
    let mut images = vec![0u32; a * b];
    for i in 0..b {
        let inner = random_perm(a, rng);
        for j in 0..a {
            images[i * a + j] = top.images()[i] * a as u32 + inner.images()[j];
        }
    }
    Permutation::from_images(images).unwrap()
}

/// Block-system primitivity against the conclusive answers of the
/// subdegree criterion.
pub fn primitivity_agreement(seed: u64, trials: usize) -> OracleResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut groups = Vec::new();
    for n in 2..=12usize {
        let all: Vec<usize> = (1..=n).collect();
        groups.push((n, vec![cycle(n, &all)]));
        if n >= 3 {
            let refl: Vec<Vec<usize>> = (1..=n / 2).map(|i| vec![i, n + 1 - i]).filter(|c| c[0] != c[1]).collect();
            groups.push((n, vec![cycle(n, &all), Permutation::from_cycles(n, &refl).unwrap()]));
        }
    }
    for _ in 0..trials {
        let n = rng.gen_range(2..=12usize);
        let divisors: Vec<usize> = (2..n).filter(|d| n % d == 0).collect();
        let gens: Vec<Permutation> = if !divisors.is_empty() && rng.gen_bool(0.6) {
            let a = *divisors.choose(&mut rng).unwrap();
            (0..rng.gen_range(1..=3)).map(|_| wreath_element(a, n / a, &mut rng)).collect()
        } else {
            (0..rng.gen_range(1..=2)).map(|_| random_perm(n, &mut rng).pow(rng.gen_range(1..=2))).collect()
        };
        groups.push((n, gens));
    }
    let (mut tested, mut conclusive, mut imprimitive) = (0, 0, 0);
    for (n, gens) in groups {
        let g = PermGroup::new(n, gens).unwrap();
        if !g.is_transitive() {
            continue;
        }
        tested += 1;
        let prim = g.is_primitive().map_err(|e| e.to_string())?;
        if !prim {
            imprimitive += 1;
        }
        let subdegs = g.subdegrees().map_err(|e| e.to_string())?;
        let v = subdegree_primitivity_criterion(&subdegs, n).map_err(|e| e.to_string())?;
        if v == PrimitivityVerdict::ConclusivePrimitive {
            conclusive += 1;
            if !prim {
                return Err(format!("degree {n}: criterion says primitive, blocks found (subdegrees {subdegs:?})"));
            }
        }
    }
    Ok(format!(
        "{tested} transitive groups of degree at most 12 ({conclusive} conclusive, {imprimitive} imprimitive)"
    ))
}

/// Fraction-free determinant over `F_p[t]`.
fn bareiss(mut m: Vec<Vec<UniPoly>>, k: PrimeField) -> UniPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = UniPoly::one(k);
    for c in 0..n {
        if m[c][c].is_zero() {
            match (c + 1..n).find(|&r| !m[r][c].is_zero()) {
                Some(r) => {
                    m.swap(c, r);
                    sign = !sign;
                }
                None => return UniPoly::zero(k),
            }
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &(&m[i][j] * &m[c][c]) - &(&m[i][c] * &m[c][j]);
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[c][c].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Sylvester matrix of two polynomials in X given by their coefficients
/// (low degree first), entries in `F_p[t]`.
fn sylvester(f: &[UniPoly], g: &[UniPoly], k: PrimeField) -> Vec<Vec<UniPoly>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, count) in [(f, n), (g, m)] {
        for i in 0..count {
            let mut row = vec![UniPoly::zero(k); size];
            for (j, c) in src.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

fn random_uni<R: Rng>(k: PrimeField, deg: usize, rng: &mut R) -> UniPoly {
    let p = k.modulus();
    let mut c: Vec<u32> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    if c[deg] == 0 {
        c[deg] = 1;
    }
    UniPoly::from_residues(k, c)
}

fn random_bi<R: Rng>(k: PrimeField, dx: usize, dt: usize, rng: &mut R) -> BiPoly {
    let p = k.modulus();
    let mut rows: Vec<UniPoly> = (0..=dx)
        .map(|_| UniPoly::from_residues(k, (0..=dt).map(|_| rng.gen_range(0..p)).collect()))
        .collect();
    if rows[dx].is_zero() {
        rows[dx] = UniPoly::one(k);
    }
    BiPoly::new(k, rows)
}

/// Univariate resultants and resultants in X over `F_p[t]` against dense
/// Sylvester determinants.
pub fn sylvester_resultants(seed: u64, univariate: usize, bivariate: usize) -> OracleResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = [5u64, 7, 11, 101, 283];
    for i in 0..univariate {
        let k = PrimeField::new(primes[i % primes.len()]).unwrap();
        let f = random_uni(k, rng.gen_range(1..=5), &mut rng);
        let g = random_uni(k, rng.gen_range(1..=5), &mut rng);
        let lift = |h: &UniPoly| -> Vec<UniPoly> { h.coeffs().iter().map(|&c| UniPoly::from_residues(k, vec![c])).collect() };
        let want = bareiss(sylvester(&lift(&f), &lift(&g), k), k);
        let got = resultant(&f, &g).unwrap();
        if want.coeff(0) != got.value() {
            return Err(format!("Res({f}, {g}) over F_{}: {} vs Sylvester {}", k.modulus(), got.value(), want));
        }
    }
    for i in 0..bivariate {
        let k = PrimeField::new(if i % 2 == 0 { 5 } else { 101 }).unwrap();
        let f = random_bi(k, rng.gen_range(1..=3), rng.gen_range(0..=3), &mut rng);
        let g = random_bi(k, rng.gen_range(1..=3), rng.gen_range(0..=3), &mut rng);
        let want = bareiss(sylvester(f.coeffs(), g.coeffs(), k), k);
        let got = resultant_x(&f, &g).map_err(|e| e.to_string())?;
        if want != got {
            return Err(format!("Res_X({f}, {g}) over F_{}: {got} vs Sylvester {want}", k.modulus()));
        }
    }
    Ok(format!("{univariate} univariate and {bivariate} bivariate instances"))
}
