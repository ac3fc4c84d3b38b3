use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::chain::Chain;
use super::group::PermGroup;
use super::perm::{gcd, CycleType, Permutation, Triple};
use super::random::ProductReplacement;
use super::PermError;
use crate::par;

/// Groups up to this order get exhaustive conjugacy decisions.
pub const EXHAUSTIVE_LIMIT: usize = 10_000;
pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

fn perm_hash(p: &Permutation) -> u64 {
    let mut h = DefaultHasher::new();
    p.images().hash(&mut h);
    h.finish()
}

/// Hash index into a separately stored element list.
#[derive(Default, Debug)]
struct PermIndex {
    map: HashMap<u64, Vec<u32>>,
}

impl PermIndex {
    fn get(&self, elems: &[Permutation], p: &Permutation) -> Option<usize> {
        self.map
            .get(&perm_hash(p))?
            .iter()
            .map(|&i| i as usize)
            .find(|&i| &elems[i] == p)
    }

    fn insert(&mut self, p: &Permutation, i: usize) {
        self.map.entry(perm_hash(p)).or_default().push(i as u32);
    }
}

fn check_members(g: &PermGroup, ps: &[&Permutation]) -> Result<(), PermError> {
    for p in ps {
        if p.degree() != g.degree() || !g.contains(p) {
            return Err(PermError::NotInGroup);
        }
    }
    Ok(())
}

/// Some `w` in `g` with `w^{-1} a w = b`.  `None` after `max_tries` random
/// elements is inconclusive, except in groups of order at most
/// [`EXHAUSTIVE_LIMIT`], where every element is tried.
pub fn conjugacy_witness(
    g: &PermGroup,
    a: &Permutation,
    b: &Permutation,
    seed: u64,
    max_tries: usize,
) -> Result<Option<Permutation>, PermError> {
    check_members(g, &[a, b])?;
    if a.cycle_type() != b.cycle_type() {
        return Ok(None);
    }
    if a == b {
        return Ok(Some(Permutation::identity(g.degree())));
    }
    if let Some(els) = g.elements(EXHAUSTIVE_LIMIT) {
        return Ok(els.into_iter().find(|w| a.conjugates_to(w, b)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut source = ProductReplacement::new(&g.strong_generators(), &mut rng);
    for _ in 0..max_tries {
        let w = source.next(&mut rng);
        if a.conjugates_to(&w, b) {
            debug_assert_eq!(&a.conjugate(&w), b);
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RationalityVerdict {
    Rational,
    /// Some power had no witness; randomized absence proves nothing.
    Inconclusive,
    /// Decided by exhaustive enumeration.
    NotRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerWitness {
    pub k: u64,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalClassReport {
    pub element_order: u64,
    pub powers: Vec<PowerWitness>,
    pub exhaustive: bool,
    pub verdict: RationalityVerdict,
}

pub const DEFAULT_WITNESS_TRIES: usize = 5_000_000;

/// Looks for `w` with `g^w = g^k` for every unit `k` modulo the order of
/// `g`.  One stream of random elements serves all powers at once.
pub fn rational_class_check(
    group: &PermGroup,
    g: &Permutation,
    seed: u64,
    max_tries: usize,
) -> Result<RationalClassReport, PermError> {
    check_members(group, &[g])?;
    let m = g.order();
    let ks: Vec<u64> = (1..m.max(2)).filter(|&k| gcd(k, m) == 1).collect();
    let ks = if m == 1 { vec![1] } else { ks };
    let targets: Vec<Permutation> = ks.iter().map(|&k| g.pow(k as i64)).collect();
    let mut found: Vec<Option<Permutation>> = vec![None; ks.len()];
    found[0] = Some(Permutation::identity(group.degree()));
    let exhaustive;
    if let Some(els) = group.elements(EXHAUSTIVE_LIMIT) {
        exhaustive = true;
        for w in els {
            let c = g.conjugate(&w);
            if let Some(i) = targets.iter().position(|t| t == &c) {
                found[i].get_or_insert(w);
            }
        }
    } else {
        exhaustive = false;
        let mut index = PermIndex::default();
        for (i, t) in targets.iter().enumerate() {
            index.insert(t, i);
        }
        let mut remaining = found.iter().filter(|f| f.is_none()).count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut source = ProductReplacement::new(&group.strong_generators(), &mut rng);
        let mut tries = 0;
        while remaining > 0 && tries < max_tries {
            tries += 1;
            let w = source.next(&mut rng);
            let c = g.conjugate(&w);
            if let Some(i) = index.get(&targets, &c) {
                if found[i].is_none() {
                    found[i] = Some(w);
                    remaining -= 1;
                }
            }
        }
    }
    for (i, f) in found.iter().enumerate() {
        if let Some(w) = f {
            assert_eq!(g.conjugate(w), targets[i], "witness does not conjugate");
        }
    }
    let all = found.iter().all(|f| f.is_some());
    let verdict = match (all, exhaustive) {
        (true, _) => RationalityVerdict::Rational,
        (false, true) => RationalityVerdict::NotRational,
        (false, false) => RationalityVerdict::Inconclusive,
    };
    Ok(RationalClassReport {
        element_order: m,
        powers: ks
            .iter()
            .zip(found)
            .map(|(&k, w)| PowerWitness {
                k,
                witness: w.map(|w| w.to_string()),
            })
            .collect(),
        exhaustive,
        verdict,
    })
}

/// Conjugacy class of an element with a Schreier tree over the group's
/// generators.
#[derive(Debug)]
pub struct ClassOrbit {
    elements: Vec<Permutation>,
    // (parent index, generator index); the root points at itself
    parent: Vec<(u32, u32)>,
    index: PermIndex,
    gens: Vec<Permutation>,
    centralizer: PermGroup,
}

impl ClassOrbit {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.index.get(&self.elements, p)
    }

    /// `t` with `elements[0]^t = elements[i]`.
    pub fn transversal(&self, i: usize) -> Permutation {
        let mut path = Vec::new();
        let mut cur = i;
        while self.parent[cur].0 as usize != cur {
            path.push(self.parent[cur].1 as usize);
            cur = self.parent[cur].0 as usize;
        }
        let mut t = Permutation::identity(self.elements[0].degree());
        for &s in path.iter().rev() {
            t = t.mul(&self.gens[s]);
        }
        t
    }

    pub fn centralizer(&self) -> &PermGroup {
        &self.centralizer
    }

    pub fn centralizer_gens(&self) -> &[Permutation] {
        self.centralizer.generators()
    }
}

/// Breadth-first conjugacy class of `g` plus generators of its centralizer,
/// harvested as Schreier generators until orbit-stabilizer balances.
pub fn class_orbit(group: &PermGroup, g: &Permutation, cap: usize) -> Result<ClassOrbit, PermError> {
    check_members(group, &[g])?;
    let gens: Vec<Permutation> = group.generators().to_vec();
    let mut elements = vec![g.clone()];
    let mut parent = vec![(0u32, 0u32)];
    let mut index = PermIndex::default();
    index.insert(g, 0);
    let mut k = 0;
    while k < elements.len() {
        for (s, h) in gens.iter().enumerate() {
            let c = elements[k].conjugate(h);
            if index.get(&elements, &c).is_none() {
                if elements.len() >= cap {
                    return Err(PermError::ClassOrbitCap(cap));
                }
                index.insert(&c, elements.len());
                elements.push(c);
                parent.push((k as u32, s as u32));
            }
        }
        k += 1;
    }
    let mut orbit = ClassOrbit {
        elements,
        parent,
        index,
        gens,
        centralizer: PermGroup::new(group.degree(), vec![])?,
    };
    let order = group.order();
    let target = &order / BigUint::from(orbit.len());
    assert_eq!(&target * BigUint::from(orbit.len()), order, "orbit length does not divide |G|");
    orbit.centralizer = harvest_centralizer(&orbit, group.degree(), &target)?;
    Ok(orbit)
}

fn harvest_centralizer(
    orbit: &ClassOrbit,
    degree: usize,
    target: &BigUint,
) -> Result<PermGroup, PermError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc3);
    let mut cgens: Vec<Permutation> = Vec::new();
    let mut chain = Chain::schreier_sims(degree, &cgens, &[]);
    let n = orbit.len();
    let ns = orbit.gens.len();
    let all_pairs = n * ns;
    let mut tried = 0usize;
    while &chain.order() < target {
        // random Schreier generators; the whole set generates the centralizer
        let (i, s) = if tried < 4 * all_pairs {
            (rng.gen_range(0..n), rng.gen_range(0..ns))
        } else {
            return Err(PermError::Internal("centralizer harvest did not converge".into()));
        };
        tried += 1;
        let ti = orbit.transversal(i);
        let e = orbit.elements[i].conjugate(&orbit.gens[s]);
        let j = orbit.position(&e).expect("class is closed under conjugation");
        let h = ti.mul(&orbit.gens[s]).mul(&orbit.transversal(j).inverse());
        debug_assert_eq!(orbit.elements[0].conjugate(&h), orbit.elements[0]);
        if h.is_identity() || chain.contains(&h) {
            continue;
        }
        cgens.push(h);
        chain = Chain::random_schreier_sims(degree, &cgens, &[], Some(target), 24, &mut rng);
        if &chain.order() < target {
            chain = chain.verified();
        }
    }
    if &chain.order() != target {
        return Err(PermError::Internal("centralizer larger than orbit-stabilizer allows".into()));
    }
    let c = PermGroup::new(degree, cgens)?;
    Ok(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct PassportReport {
    pub class_size: usize,
    /// Class members `y'` with the right product type that generate `G`.
    pub survivors: usize,
    pub raw_orbit_count: usize,
    pub folded_orbit_count: usize,
    #[serde(skip)]
    pub representatives: Vec<Triple>,
    pub representative_strings: Vec<(String, String)>,
    pub seed: u64,
    pub wall_ms: Option<u64>,
}

pub struct PassportOptions {
    pub cap: usize,
    pub seed: u64,
}

impl Default for PassportOptions {
    fn default() -> Self {
        PassportOptions {
            cap: DEFAULT_CLASS_CAP,
            seed: 0,
        }
    }
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            self.0[x as usize] = self.0[self.0[x as usize] as usize];
            x = self.0[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b) as usize] = a.min(b);
        }
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len() as u32).filter(|&i| self.find(i) == i).count()
    }
}

/// Triples `(x, y', (x y')^{-1})` with `y'` conjugate to `y_rep`, the product
/// of the given cycle type, and `<x, y'> = G`, counted up to conjugation by
/// the centralizer of `x` and then up to the folding elements.
pub fn passport_enumerate(
    group: &PermGroup,
    x: &Permutation,
    y_rep: &Permutation,
    z_type: &CycleType,
    folding: &[Permutation],
    opts: &PassportOptions,
) -> Result<PassportReport, PermError> {
    let started = Instant::now();
    check_members(group, &[x, y_rep])?;
    let order = group.order();
    for s in folding {
        if s.degree() != group.degree()
            || group.generators().iter().any(|h| !group.contains(&h.conjugate(s)))
        {
            return Err(PermError::NotNormalizing);
        }
    }
    let class_y = class_orbit(group, y_rep, opts.cap)?;
    let typed = par::filter_indices(class_y.elements(), |y| x.mul(y).cycle_type() == *z_type);
    let generating = par::map(&typed, |&i| {
        let h = PermGroup::new(group.degree(), vec![x.clone(), class_y.elements()[i].clone()])
            .expect("same degree");
        h.order_at_least(&order, opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9))
    });
    let survivors: Vec<usize> = typed
        .iter()
        .zip(&generating)
        .filter_map(|(&i, &ok)| ok.then_some(i))
        .collect();
    let pos: HashMap<usize, u32> = survivors
        .iter()
        .enumerate()
        .map(|(k, &i)| (i, k as u32))
        .collect();
    let locate = |y: &Permutation| -> Result<u32, PermError> {
        let i = class_y.position(y).ok_or(PermError::NotInGroup)?;
        pos.get(&i)
            .copied()
            .ok_or_else(|| PermError::Internal("conjugate triple lost its properties".into()))
    };

    let class_x = class_orbit(group, x, opts.cap)?;
    let mut uf = UnionFind::new(survivors.len());
    for c in class_x.centralizer_gens() {
        for (k, &i) in survivors.iter().enumerate() {
            let j = locate(&class_y.elements()[i].conjugate(c))?;
            uf.union(k as u32, j);
        }
    }
    let raw = uf.classes();
    for s in folding {
        let xs = x.conjugate(s);
        let ix = class_x.position(&xs).ok_or(PermError::FoldingMovesClass)?;
        // x^{s t^{-1}} = x
        let back = s.mul(&class_x.transversal(ix).inverse());
        debug_assert_eq!(&x.conjugate(&back), x);
        for (k, &i) in survivors.iter().enumerate() {
            let j = locate(&class_y.elements()[i].conjugate(&back))?;
            uf.union(k as u32, j);
        }
    }
    let folded = uf.classes();
    let mut reps = Vec::new();
    for k in 0..survivors.len() {
        if uf.find(k as u32) == k as u32 {
            reps.push(Triple::new(x.clone(), class_y.elements()[survivors[k]].clone())?);
        }
    }
    Ok(PassportReport {
        class_size: class_y.len(),
        survivors: survivors.len(),
        raw_orbit_count: raw,
        folded_orbit_count: folded,
        representative_strings: reps
            .iter()
            .map(|t| (t.x.to_string(), t.y.to_string()))
            .collect(),
        representatives: reps,
        seed: opts.seed,
        wall_ms: Some(started.elapsed().as_millis() as u64),
    })
}
