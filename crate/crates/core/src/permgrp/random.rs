use rand::Rng;

use super::perm::Permutation;

/// Product replacement with an accumulator ("rattle").
pub(crate) struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    pub fn new<R: Rng>(gens: &[Permutation], rng: &mut R) -> Self {
        let n = gens.first().map(|g| g.degree()).unwrap_or(0);
        let mut slots: Vec<Permutation> = gens.to_vec();
        if slots.is_empty() {
            slots.push(Permutation::identity(n));
        }
        let orig = slots.len();
        while slots.len() < 10.max(orig) {
            let g = slots[slots.len() % orig].clone();
            slots.push(g);
        }
        let mut pr = ProductReplacement {
            slots,
            acc: Permutation::identity(n),
        };
        for _ in 0..60 {
            pr.next(rng);
        }
        pr
    }

    pub fn next<R: Rng>(&mut self, rng: &mut R) -> Permutation {
        let k = self.slots.len();
        let i = rng.gen_range(0..k);
        let mut j = rng.gen_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        let s = if rng.gen::<bool>() {
            self.slots[i].mul(&self.slots[j])
        } else {
            self.slots[i].mul(&self.slots[j].inverse())
        };
        self.slots[i] = s;
        self.acc = self.acc.mul(&self.slots[i]);
        self.acc.clone()
    }
}
