use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::FfError;

/// A prime field `F_p` for an odd prime `p` that fits in 32 bits.
///
/// Residues are plain `u32` values in `[0, p)`; the field value only carries
/// the modulus so it is `Copy` and can be threaded through every kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FfError> {
        if p < 3 || p > u32::MAX as u64 || !is_prime_u64(p) {
            return Err(FfError::NotAnOddPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32, FfError> {
        if a == 0 {
            return Err(FfError::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Ok(self.reduce_i64(s0))
    }

    /// Number of `(p-1)^2` products that can be summed in a `u64` before a
    /// reduction is required.
    #[inline]
    pub(crate) fn lazy_budget(&self) -> usize {
        let m = (self.p as u64 - 1) * (self.p as u64 - 1);
        ((u64::MAX - self.p as u64) / m).min(1 << 20) as usize
    }

    pub fn elem(&self, v: u64) -> FFElement {
        FFElement {
            value: self.reduce(v),
            field: *self,
        }
    }

    pub fn elem_i64(&self, v: i64) -> FFElement {
        FFElement {
            value: self.reduce_i64(v),
            field: *self,
        }
    }

    pub fn zero(&self) -> FFElement {
        self.elem(0)
    }

    pub fn one(&self) -> FFElement {
        self.elem(1)
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.pow(a, (self.p as u64 - 1) / 2) == 1
    }

    /// Smallest quadratic non-residue.
    pub fn non_residue(&self) -> u32 {
        (2..self.p).find(|&a| !self.is_square(a)).expect("odd prime has a non-residue")
    }
}

/// An element of a [`PrimeField`], always held as the canonical residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FFElement {
    value: u32,
    field: PrimeField,
}

impl FFElement {
    #[inline]
    pub fn value(&self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<FFElement, FfError> {
        Ok(FFElement {
            value: self.field.inv(self.value)?,
            field: self.field,
        })
    }

    pub fn pow(&self, e: u64) -> FFElement {
        FFElement {
            value: self.field.pow(self.value, e),
            field: self.field,
        }
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.field.p)
    }
}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for FFElement {
            type Output = FFElement;
            fn $m(self, rhs: FFElement) -> FFElement {
                assert_eq!(self.field, rhs.field, "mixed prime fields");
                FFElement {
                    value: self.field.$m(self.value, rhs.value),
                    field: self.field,
                }
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for FFElement {
    type Output = FFElement;
    fn neg(self) -> FFElement {
        FFElement {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

/// Inverse of a nonzero element.
pub fn ff_inv(a: FFElement) -> Result<FFElement, FfError> {
    a.inv()
}

/// Square test in `F_p` via Euler's criterion.
pub fn is_square_ff(a: FFElement) -> bool {
    a.field.is_square(a.value)
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, a, m);
        }
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
