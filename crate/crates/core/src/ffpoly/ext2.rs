//! `F_{p^2} = F_p[w] / (w^2 - c)` with `c` a non-residue.  Only used as a
//! source of extra evaluation nodes when `F_p` itself is too small.

use super::field::PrimeField;
use super::kernel::Arith;

#[derive(Clone, Copy, Debug)]
pub struct QuadExt {
    base: PrimeField,
    c: u32,
}

impl QuadExt {
    pub fn new(base: PrimeField) -> Self {
        QuadExt {
            base,
            c: base.non_residue(),
        }
    }

    /// All elements, base field first, then `a + b w` with `b != 0`.
    pub fn elements(&self) -> impl Iterator<Item = [u32; 2]> {
        let p = self.base.modulus();
        (0..p).flat_map(move |b| (0..p).map(move |a| [a, b]))
    }
}

impl Arith for QuadExt {
    type E = [u32; 2];

    fn zero(&self) -> [u32; 2] {
        [0, 0]
    }
    fn one(&self) -> [u32; 2] {
        [1, 0]
    }
    fn add(&self, a: [u32; 2], b: [u32; 2]) -> [u32; 2] {
        [self.base.add(a[0], b[0]), self.base.add(a[1], b[1])]
    }
    fn sub(&self, a: [u32; 2], b: [u32; 2]) -> [u32; 2] {
        [self.base.sub(a[0], b[0]), self.base.sub(a[1], b[1])]
    }
    fn mul(&self, a: [u32; 2], b: [u32; 2]) -> [u32; 2] {
        let f = &self.base;
        let re = f.add(f.mul(a[0], b[0]), f.mul(self.c, f.mul(a[1], b[1])));
        let im = f.add(f.mul(a[0], b[1]), f.mul(a[1], b[0]));
        [re, im]
    }
    fn neg(&self, a: [u32; 2]) -> [u32; 2] {
        [self.base.neg(a[0]), self.base.neg(a[1])]
    }
    fn inv(&self, a: [u32; 2]) -> Option<[u32; 2]> {
        let f = &self.base;
        let norm = f.sub(f.mul(a[0], a[0]), f.mul(self.c, f.mul(a[1], a[1])));
        let ni = f.inv(norm).ok()?;
        Some([f.mul(a[0], ni), f.mul(f.neg(a[1]), ni)])
    }
    fn from_base(&self, a: u32) -> [u32; 2] {
        [a, 0]
    }
}
