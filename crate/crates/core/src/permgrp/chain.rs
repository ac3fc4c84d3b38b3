//! Stabilizer chains.  Each level keeps its strong generators, the basic
//! orbit, and a Schreier vector that is only ever extended, so transversal
//! elements of points already in the orbit never change.  That keeps the
//! bookkeeping of which Schreier generators have been tested valid while the
//! chain grows.

use num_bigint::BigUint;
use rand::Rng;

use super::perm::Permutation;
use super::random::ProductReplacement;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: u32,
    pub gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    // label[pt] = s with pt = pred^{gens[s]}
    label: Vec<u32>,
    // per orbit position: how many generators have been paired with it
    done: Vec<usize>,
    scan_from: usize,
}

impl Level {
    fn new(base: u32, n: usize) -> Self {
        let mut label = vec![NONE; n];
        label[base as usize] = ROOT;
        Level {
            base,
            gens: Vec::new(),
            inv_gens: Vec::new(),
            orbit: vec![base],
            label,
            done: vec![0],
            scan_from: 0,
        }
    }

    pub fn in_orbit(&self, pt: u32) -> bool {
        self.label[pt as usize] != NONE
    }

    fn add_gen(&mut self, g: Permutation) {
        let s = self.gens.len();
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        let old = self.orbit.len();
        for k in 0..old {
            let img = self.gens[s].apply(self.orbit[k]);
            self.push_point(img, s);
        }
        let mut k = old;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            for t in 0..self.gens.len() {
                let img = self.gens[t].apply(pt);
                self.push_point(img, t);
            }
            k += 1;
        }
        self.scan_from = 0;
    }

    fn push_point(&mut self, pt: u32, via: usize) {
        if self.label[pt as usize] == NONE {
            self.label[pt as usize] = via as u32;
            self.orbit.push(pt);
            self.done.push(0);
        }
    }

    /// `u` with `base^u = pt`.
    pub fn transversal(&self, pt: u32) -> Permutation {
        let mut path = Vec::new();
        let mut cur = pt;
        while self.label[cur as usize] != ROOT {
            let s = self.label[cur as usize] as usize;
            path.push(s);
            cur = self.inv_gens[s].apply(cur);
        }
        let n = self.label.len();
        let mut u = Permutation::identity(n);
        for &s in path.iter().rev() {
            u = u.mul(&self.gens[s]);
        }
        u
    }

    /// Replaces `g` by `g u^{-1}` so that the result fixes the base point.
    /// Returns false if `base^g` is outside the orbit.
    fn strip(&self, g: &mut Permutation) -> bool {
        let mut beta = g.apply(self.base);
        if !self.in_orbit(beta) {
            return false;
        }
        let mut images: Vec<u32> = g.images().to_vec();
        while self.label[beta as usize] != ROOT {
            let s = self.label[beta as usize] as usize;
            let inv = &self.inv_gens[s];
            for v in images.iter_mut() {
                *v = inv.apply(*v);
            }
            beta = inv.apply(beta);
        }
        *g = Permutation::from_images_unchecked(images);
        true
    }

    fn next_untested(&mut self) -> Option<(usize, usize)> {
        while self.scan_from < self.orbit.len() {
            let k = self.scan_from;
            if self.done[k] < self.gens.len() {
                let s = self.done[k];
                self.done[k] += 1;
                return Some((k, s));
            }
            self.scan_from += 1;
        }
        None
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

fn first_moved(g: &Permutation) -> Option<u32> {
    (0..g.degree() as u32).find(|&i| g.apply(i) != i)
}

impl Chain {
    fn empty(degree: usize, prefix: &[u32]) -> Self {
        Chain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        }
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sifts `g` through levels `from..`, returning the residue and the level
    /// where it dropped out (`levels.len()` if it went all the way through).
    pub fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            if !level.strip(&mut h) {
                return (h, l);
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Adds `r` (fixing base points `0..from`) to levels `from..=j`,
    /// extending the base if `j` runs past the end.
    fn insert_residue(&mut self, r: Permutation, from: usize, j: usize) {
        if j == self.levels.len() {
            let b = first_moved(&r).expect("residue is not the identity");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in from..=j {
            self.levels[l].add_gen(r.clone());
        }
    }

    /// Seeds levels with generators, extending the base so that no generator
    /// fixes every base point.
    fn seed(&mut self, gens: &[Permutation]) {
        for g in gens {
            if g.is_identity() {
                continue;
            }
            let mut l = 0;
            while l < self.levels.len() && g.apply(self.levels[l].base) == self.levels[l].base {
                l += 1;
            }
            self.insert_residue(g.clone(), 0, l.min(self.levels.len()));
        }
    }

    /// Deterministic Schreier-Sims.
    pub fn schreier_sims(degree: usize, gens: &[Permutation], prefix: &[u32]) -> Chain {
        let mut chain = Chain::empty(degree, prefix);
        chain.seed(gens);
        chain.complete();
        chain.drop_trivial_tail(prefix.len());
        chain
    }

    /// Runs the Schreier generator test on every level until the strong
    /// generating property holds.
    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        loop {
            let next = self.levels[i].next_untested();
            let Some((k, s)) = next else {
                if i == 0 {
                    break;
                }
                i -= 1;
                continue;
            };
            let level = &self.levels[i];
            let beta = level.orbit[k];
            let mut h = level.transversal(beta).mul(&level.gens[s]);
            let stripped = level.strip(&mut h);
            debug_assert!(stripped);
            let (r, j) = self.sift(&h, i + 1);
            if !r.is_identity() {
                self.insert_residue(r, i + 1, j);
                i = j;
            }
        }
    }

    fn drop_trivial_tail(&mut self, keep: usize) {
        while self.levels.len() > keep
            && self.levels.last().is_some_and(|l| l.orbit.len() == 1)
        {
            self.levels.pop();
        }
    }

    /// Random Schreier-Sims.  Stops as soon as the order reaches `target`
    /// (the product of basic orbit lengths never exceeds the true order, so
    /// that is a proof) or after `patience` consecutive random elements sift
    /// through.  The result is not certified complete in the second case.
    pub fn random_schreier_sims<R: Rng>(
        degree: usize,
        gens: &[Permutation],
        prefix: &[u32],
        target: Option<&BigUint>,
        patience: usize,
        rng: &mut R,
    ) -> Chain {
        let mut chain = Chain::empty(degree, prefix);
        chain.seed(gens);
        if gens.iter().all(|g| g.is_identity()) {
            return chain;
        }
        let mut source = ProductReplacement::new(gens, rng);
        let mut quiet = 0;
        while quiet < patience {
            if let Some(t) = target {
                if &chain.order() >= t {
                    break;
                }
            }
            let g = source.next(rng);
            let (r, j) = chain.sift(&g, 0);
            if r.is_identity() {
                quiet += 1;
            } else {
                quiet = 0;
                chain.insert_residue(r, 1.min(j), j);
            }
        }
        chain
    }

    /// Deterministic verification pass on top of an existing chain.
    pub fn verified(mut self) -> Chain {
        for level in self.levels.iter_mut() {
            level.scan_from = 0;
            for d in level.done.iter_mut() {
                *d = 0;
            }
        }
        self.complete();
        self
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Uniformly random element: product of random transversal elements.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let pt = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.mul(&level.transversal(pt));
        }
        g
    }

    /// All elements; only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<Permutation> = level.orbit.iter().map(|&p| level.transversal(p)).collect();
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for g in &out {
                for u in &reps {
                    next.push(g.mul(u));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyc(n: usize, c: &[usize]) -> Permutation {
        Permutation::from_cycles(n, &[c.to_vec()]).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=9usize {
            let gens = vec![cyc(n, &[1, 2]), cyc(n, &(1..=n).collect::<Vec<_>>())];
            let c = Chain::schreier_sims(n, &gens, &[]);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(c.order(), BigUint::from(fact));
        }
    }

    #[test]
    fn random_variant_agrees_after_verification() {
        let n = 8;
        let gens = vec![cyc(n, &[1, 2, 3]), cyc(n, &[3, 4, 5, 6, 7, 8])];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = Chain::random_schreier_sims(n, &gens, &[], None, 3, &mut rng).verified();
        let d = Chain::schreier_sims(n, &gens, &[]);
        assert_eq!(r.order(), d.order());
        assert_eq!(d.order(), BigUint::from(40320u32));
    }

    #[test]
    fn prefix_is_respected() {
        let gens = vec![cyc(4, &[1, 2, 3, 4])];
        let c = Chain::schreier_sims(4, &gens, &[2]);
        assert_eq!(c.base()[0], 2);
        assert_eq!(c.order(), BigUint::from(4u32));
    }

    #[test]
    fn elements_enumerate_group() {
        let gens = vec![cyc(4, &[1, 2]), cyc(4, &[1, 2, 3, 4])];
        let c = Chain::schreier_sims(4, &gens, &[]);
        let mut els = c.elements();
        els.sort();
        els.dedup();
        assert_eq!(els.len(), 24);
        assert!(els.iter().all(|g| c.contains(g)));
    }
}
