use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::chain::Chain;
use super::perm::Permutation;
use super::PermError;

/// Patience for random Schreier-Sims before falling back to the
/// deterministic pass.
const RANDOM_SS_PATIENCE: usize = 24;

/// A permutation group given by generators.  The stabilizer chain is built on
/// first use and cached; every query after that is read-only.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<Chain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let g = PermGroup::new_unchecked(self.degree, self.gens.clone());
        if let Some(c) = self.chain.get() {
            let _ = g.chain.set(c.clone());
        }
        g
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        Ok(Self::new_unchecked(degree, gens))
    }

    fn new_unchecked(degree: usize, gens: Vec<Permutation>) -> Self {
        PermGroup {
            degree,
            gens,
            chain: OnceLock::new(),
        }
    }

    fn with_chain(degree: usize, gens: Vec<Permutation>, chain: Chain) -> Self {
        let g = Self::new_unchecked(degree, gens);
        let _ = g.chain.set(chain);
        g
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![1, 2]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap());
        }
        Self::new_unchecked(n, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub(crate) fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            Chain::random_schreier_sims(self.degree, &self.gens, &[], None, RANDOM_SS_PATIENCE, &mut rng)
                .verified()
        })
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base().into_iter().map(|b| b as usize + 1).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain().strong_generators()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// True iff the group has at least `target` elements.  Uses random
    /// Schreier-Sims, which either reaches `target` (a proof, since partial
    /// chains undercount) or is finished by the deterministic pass.
    pub fn order_at_least(&self, target: &BigUint, seed: u64) -> bool {
        if let Some(c) = self.chain.get() {
            return &c.order() >= target;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chain = Chain::random_schreier_sims(
            self.degree,
            &self.gens,
            &[],
            Some(target),
            RANDOM_SS_PATIENCE,
            &mut rng,
        );
        if &chain.order() >= target {
            return true;
        }
        &chain.verified().order() >= target
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// All elements, or `None` if the order exceeds `cap`.
    pub fn elements(&self, cap: usize) -> Option<Vec<Permutation>> {
        if self.order() > BigUint::from(cap) {
            return None;
        }
        Some(self.chain().elements())
    }

    fn orbits0(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orbit = vec![s as u32];
            let mut k = 0;
            while k < orbit.len() {
                let pt = orbit[k];
                for g in &self.gens {
                    let img = g.apply(pt) as usize;
                    if !seen[img] {
                        seen[img] = true;
                        orbit.push(img as u32);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Orbits as sorted 1-based point lists, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.orbits0()
            .into_iter()
            .map(|o| o.into_iter().map(|p| p as usize + 1).collect())
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits0().len() == 1
    }

    fn check_point(&self, pt: usize) -> Result<u32, PermError> {
        if pt == 0 || pt > self.degree {
            return Err(PermError::PointOutOfRange {
                point: pt,
                degree: self.degree,
            });
        }
        Ok((pt - 1) as u32)
    }

    /// Stabilizer of a 1-based point, with its own chain already built.
    pub fn point_stabilizer(&self, pt: usize) -> Result<PermGroup, PermError> {
        let p0 = self.check_point(pt)?;
        let mut chain = Chain::schreier_sims(self.degree, &self.strong_generators(), &[p0]);
        chain.levels.remove(0);
        let gens = chain.strong_generators();
        Ok(PermGroup::with_chain(self.degree, gens, chain))
    }

    /// Orbit lengths of the stabilizer of a 1-based point, ascending.
    pub fn subdegrees_at(&self, pt: usize) -> Result<Vec<usize>, PermError> {
        if !self.is_transitive() {
            return Err(PermError::Intransitive);
        }
        let stab = self.point_stabilizer(pt)?;
        let mut lens: Vec<usize> = stab.orbits0().iter().map(|o| o.len()).collect();
        lens.sort_unstable();
        Ok(lens)
    }

    pub fn subdegrees(&self) -> Result<Vec<usize>, PermError> {
        let s = self.subdegrees_at(1)?;
        if cfg!(debug_assertions) && self.degree > 1 {
            assert_eq!(s, self.subdegrees_at(self.degree)?, "subdegrees depend on the point");
        }
        Ok(s)
    }

    /// Finest block system in which 0-based points `a` and `b` share a block.
    /// Returns the block label of every point.
    pub fn minimal_block_system(&self, a: u32, b: u32) -> Vec<u32> {
        let n = self.degree;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut pairs = vec![(a, b)];
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            parent[ra.max(rb) as usize] = ra.min(rb);
        }
        while let Some((x, y)) = pairs.pop() {
            for g in &self.gens {
                let u = find(&mut parent, g.apply(x));
                let v = find(&mut parent, g.apply(y));
                if u != v {
                    parent[u.max(v) as usize] = u.min(v);
                    pairs.push((u, v));
                }
            }
        }
        (0..n as u32).map(|x| find(&mut parent, x)).collect()
    }

    pub fn is_primitive(&self) -> Result<bool, PermError> {
        if !self.is_transitive() {
            return Err(PermError::Intransitive);
        }
        for w in 1..self.degree as u32 {
            let blocks = self.minimal_block_system(0, w);
            if blocks.iter().any(|&r| r != 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrimitivityVerdict {
    ConclusivePrimitive,
    Inconclusive,
}

/// A block through the base point is a union of suborbits including the
/// trivial one, and its size divides `n`.  If no such union has a size that
/// is a proper nontrivial divisor, the group is primitive.
pub fn subdegree_primitivity_criterion(
    subdegs: &[usize],
    n: usize,
) -> Result<PrimitivityVerdict, PermError> {
    let mut rest = subdegs.to_vec();
    let one = rest
        .iter()
        .position(|&d| d == 1)
        .ok_or(PermError::MalformedSubdegrees)?;
    rest.remove(one);
    if subdegs.iter().sum::<usize>() != n || subdegs.contains(&0) {
        return Err(PermError::MalformedSubdegrees);
    }
    // reachable[s]: some sub-multiset of `rest` sums to s
    let mut reachable = vec![false; n + 1];
    reachable[0] = true;
    for &d in &rest {
        for s in (d..=n).rev() {
            if reachable[s - d] {
                reachable[s] = true;
            }
        }
    }
    let hit = (1..n).any(|s| reachable[s] && s + 1 < n && n % (s + 1) == 0);
    Ok(if hit {
        PrimitivityVerdict::Inconclusive
    } else {
        PrimitivityVerdict::ConclusivePrimitive
    })
}

/// Normal closure of `s` in `g`.
pub fn normal_closure(g: &PermGroup, s: &[Permutation]) -> PermGroup {
    let n = g.degree();
    let full = g.order();
    let mut gens: Vec<Permutation> = s.iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e63);
    let build = |gens: &[Permutation], rng: &mut ChaCha8Rng| {
        Chain::random_schreier_sims(n, gens, &[], Some(&full), RANDOM_SS_PATIENCE, rng)
    };
    let mut chain = build(&gens, &mut rng);
    // A false "not a member" answer from an incomplete chain only adds a
    // redundant generator; the final order comes from a verified chain.
    loop {
        if chain.order() == full {
            return PermGroup::with_chain(n, gens, chain);
        }
        let mut added = false;
        'scan: for k in 0..gens.len() {
            for h in g.generators() {
                let c = gens[k].conjugate(h);
                if !chain.contains(&c) {
                    gens.push(c);
                    added = true;
                    break 'scan;
                }
            }
        }
        if !added {
            return PermGroup::with_chain(n, gens, chain.verified());
        }
        chain = build(&gens, &mut rng);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub trials: usize,
    pub full_closures: usize,
    pub group_order: String,
    /// Element whose normal closure is proper, with the closure's order.
    pub witness: Option<(String, String)>,
}

impl SimplicityReport {
    pub fn all_full(&self) -> bool {
        self.witness.is_none() && self.full_closures == self.trials
    }
}

/// Monte Carlo: normal closures of random non-identity elements.
pub fn simplicity_evidence(g: &PermGroup, seed: u64, trials: usize) -> SimplicityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = g.order();
    let mut full = 0;
    let mut witness = None;
    let mut done = 0;
    if order > BigUint::from(1u32) {
        while done < trials {
            let x = g.random_element(&mut rng);
            if x.is_identity() {
                continue;
            }
            done += 1;
            let c = normal_closure(g, std::slice::from_ref(&x));
            let co = c.order();
            if co == order {
                full += 1;
            } else if witness.is_none() {
                witness = Some((x.to_string(), co.to_string()));
            }
        }
    }
    SimplicityReport {
        trials: done,
        full_closures: full,
        group_order: order.to_string(),
        witness,
    }
}
