//! Dense polynomial kernels generic over the coefficient field.
//!
//! Polynomials here are bare coefficient slices, index `i` holding the
//! coefficient of `X^i`, trimmed so the last entry is nonzero.  The prime
//! field and the quadratic extension used for evaluation nodes both implement
//! [`Arith`].

use std::fmt::Debug;

use super::field::PrimeField;

pub trait Arith: Copy + Send + Sync {
    type E: Copy + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: Self::E, b: Self::E) -> Self::E;
    fn sub(&self, a: Self::E, b: Self::E) -> Self::E;
    fn mul(&self, a: Self::E, b: Self::E) -> Self::E;
    fn neg(&self, a: Self::E) -> Self::E;
    /// `None` on zero.
    fn inv(&self, a: Self::E) -> Option<Self::E>;
    fn from_base(&self, a: u32) -> Self::E;

    fn is_zero(&self, a: Self::E) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::E, mut e: u64) -> Self::E {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl Arith for PrimeField {
    type E = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        PrimeField::add(self, a, b)
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        PrimeField::sub(self, a, b)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        PrimeField::mul(self, a, b)
    }
    fn neg(&self, a: u32) -> u32 {
        PrimeField::neg(self, a)
    }
    fn inv(&self, a: u32) -> Option<u32> {
        PrimeField::inv(self, a).ok()
    }
    fn from_base(&self, a: u32) -> u32 {
        a
    }
}

pub fn trim<E: Copy + PartialEq>(v: &mut Vec<E>, zero: E) {
    while v.last() == Some(&zero) {
        v.pop();
    }
}

pub fn eval<A: Arith>(k: &A, f: &[A::E], x: A::E) -> A::E {
    f.iter().rev().fold(k.zero(), |acc, &c| k.add(k.mul(acc, x), c))
}

/// Quotient and remainder of `f` by a nonzero trimmed `g`.
pub fn divrem<A: Arith>(k: &A, f: &[A::E], g: &[A::E]) -> (Vec<A::E>, Vec<A::E>) {
    assert!(!g.is_empty(), "division by the zero polynomial");
    let mut r = f.to_vec();
    trim(&mut r, k.zero());
    if r.len() < g.len() {
        return (Vec::new(), r);
    }
    let dg = g.len() - 1;
    let lc_inv = k.inv(g[dg]).expect("trimmed divisor has a unit leading coefficient");
    let mut q = vec![k.zero(); r.len() - dg];
    for i in (0..q.len()).rev() {
        let c = k.mul(r[i + dg], lc_inv);
        q[i] = c;
        if k.is_zero(c) {
            continue;
        }
        for (j, &gj) in g.iter().enumerate() {
            r[i + j] = k.sub(r[i + j], k.mul(c, gj));
        }
    }
    r.truncate(dg);
    trim(&mut r, k.zero());
    (q, r)
}

pub fn rem<A: Arith>(k: &A, f: &[A::E], g: &[A::E]) -> Vec<A::E> {
    divrem(k, f, g).1
}

pub fn make_monic<A: Arith>(k: &A, f: &mut [A::E]) {
    if let Some(&lc) = f.last() {
        let inv = k.inv(lc).expect("nonzero leading coefficient");
        for c in f.iter_mut() {
            *c = k.mul(*c, inv);
        }
    }
}

/// Monic gcd; the gcd of two zero polynomials is returned as zero.
pub fn gcd<A: Arith>(k: &A, f: &[A::E], g: &[A::E]) -> Vec<A::E> {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a, k.zero());
    trim(&mut b, k.zero());
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    make_monic(k, &mut a);
    a
}

/// Resultant with `Res(f, g) = lc(f)^deg(g) * prod g(alpha)` over the roots
/// `alpha` of `f`, which agrees with the Sylvester determinant.  Both inputs
/// must be nonzero and trimmed.
pub fn resultant<A: Arith>(k: &A, f: &[A::E], g: &[A::E]) -> A::E {
    assert!(!f.is_empty() && !g.is_empty());
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    let mut acc = k.one();
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            return k.mul(acc, k.pow(b[0], m as u64));
        }
        if m == 0 {
            return k.mul(acc, k.pow(a[0], n as u64));
        }
        let r = rem(k, &a, &b);
        if r.is_empty() {
            return k.zero();
        }
        let dr = r.len() - 1;
        // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
        let mut factor = k.pow(b[n], (m - dr) as u64);
        if (m * n) % 2 == 1 {
            factor = k.neg(factor);
        }
        acc = k.mul(acc, factor);
        a = b;
        b = r;
    }
}

/// Newton-form interpolation through pairwise distinct nodes.
pub fn interpolate<A: Arith>(k: &A, xs: &[A::E], ys: &[A::E]) -> Vec<A::E> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = k.sub(dd[i], dd[i - 1]);
            let den = k.sub(xs[i], xs[i - level]);
            dd[i] = k.mul(num, k.inv(den).expect("distinct interpolation nodes"));
        }
    }
    // Horner on the Newton basis
    let mut out: Vec<A::E> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        // out = out * (X - x_i) + dd[i]
        let mut next = vec![k.zero(); out.len() + 1];
        for (j, &c) in out.iter().enumerate() {
            next[j + 1] = k.add(next[j + 1], c);
            next[j] = k.sub(next[j], k.mul(c, xs[i]));
        }
        next[0] = k.add(next[0], dd[i]);
        out = next;
    }
    trim(&mut out, k.zero());
    out
}
