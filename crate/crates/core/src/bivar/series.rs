//! Polynomials in `X` over `F_p[[u]] / (u^prec)`, stored as a dense
//! row-major table (row `i` is the series coefficient of `X^i`).  Products
//! accumulate in `u64` and reduce only when the field's lazy budget would
//! otherwise overflow.

use crate::ffpoly::{FFElement, PrimeField, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SerPoly {
    pub prec: usize,
    pub rows: usize,
    pub data: Vec<u32>,
}

struct Acc {
    data: Vec<u64>,
    used: usize,
    budget: usize,
    p: u64,
}

impl Acc {
    fn new(len: usize, field: PrimeField) -> Self {
        Acc {
            data: vec![0; len],
            used: 0,
            budget: field.lazy_budget(),
            p: field.modulus() as u64,
        }
    }

    /// Makes room for `adds` more products in every cell.
    fn charge(&mut self, adds: usize) {
        if self.used + adds > self.budget {
            let p = self.p;
            for v in self.data.iter_mut() {
                *v %= p;
            }
            self.used = 0;
        }
        self.used += adds;
    }

    fn reduce_into(&self, out: &mut [u32]) {
        for (o, &v) in out.iter_mut().zip(&self.data) {
            *o = (v % self.p) as u32;
        }
    }
}

/// `acc += x * y mod u^acc.len()`, with at most `min(len)` products per cell.
#[inline]
fn mac_series(acc: &mut [u64], x: &[u32], y: &[u32]) {
    let prec = acc.len();
    for (a, &xa) in x.iter().enumerate().take(prec) {
        if xa == 0 {
            continue;
        }
        let xa = xa as u64;
        let top = (prec - a).min(y.len());
        for (slot, &yb) in acc[a..a + top].iter_mut().zip(&y[..top]) {
            *slot += xa * yb as u64;
        }
    }
}

/// `x * y mod u^prec`.
pub(crate) fn ser_mul(field: PrimeField, x: &[u32], y: &[u32], prec: usize) -> Vec<u32> {
    let mut out = vec![0u32; prec];
    let budget = field.lazy_budget();
    let p = field.modulus() as u64;
    if prec <= budget {
        let mut acc = vec![0u64; prec];
        mac_series(&mut acc, x, y);
        for (o, v) in out.iter_mut().zip(acc) {
            *o = (v % p) as u32;
        }
    } else {
        for (a, &xa) in x.iter().enumerate().take(prec) {
            for (b, &yb) in y.iter().enumerate().take(prec - a) {
                out[a + b] = field.add(out[a + b], field.mul(xa, yb));
            }
        }
    }
    out
}

/// `1 / x mod u^prec`; `x[0]` must be nonzero.
pub(crate) fn ser_inv(field: PrimeField, x: &[u32], prec: usize) -> Vec<u32> {
    let c = field.inv(x[0]).expect("unit constant term");
    let mut out = vec![0u32; prec];
    out[0] = c;
    for j in 1..prec {
        let mut s = 0u32;
        for i in 1..=j.min(x.len() - 1) {
            s = field.add(s, field.mul(x[i], out[j - i]));
        }
        out[j] = field.mul(field.neg(s), c);
    }
    out
}

impl SerPoly {
    pub fn zero(rows: usize, prec: usize) -> Self {
        SerPoly {
            prec,
            rows,
            data: vec![0; rows * prec],
        }
    }

    /// Constant series from a polynomial over `F_p`.
    pub fn from_uni(f: &UniPoly, prec: usize) -> Self {
        let mut s = SerPoly::zero(f.deg0() + 1, prec);
        for (i, &c) in f.coeffs().iter().enumerate() {
            s.row_mut(i)[0] = c;
        }
        s
    }

    /// Row `i` from `rows[i]`, truncated or zero-padded.
    pub fn from_rows(rows: &[Vec<u32>], prec: usize) -> Self {
        let mut s = SerPoly::zero(rows.len(), prec);
        for (i, r) in rows.iter().enumerate() {
            let n = r.len().min(prec);
            s.row_mut(i)[..n].copy_from_slice(&r[..n]);
        }
        s
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.prec..(i + 1) * self.prec]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.prec..(i + 1) * self.prec]
    }

    pub fn degree(&self) -> usize {
        self.rows - 1
    }

    /// Same rows at another precision (truncating or zero-padding).
    pub fn with_prec(&self, prec: usize) -> SerPoly {
        let mut s = SerPoly::zero(self.rows, prec);
        let n = prec.min(self.prec);
        for i in 0..self.rows {
            s.row_mut(i)[..n].copy_from_slice(&self.row(i)[..n]);
        }
        s
    }

    /// The constant term in `u`, as a polynomial in `X`.
    pub fn at_zero(&self, field: PrimeField) -> UniPoly {
        UniPoly::from_residues(field, (0..self.rows).map(|i| self.row(i)[0]).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &SerPoly, field: PrimeField) -> SerPoly {
        debug_assert_eq!(self.prec, other.prec);
        let rows = self.rows.max(other.rows);
        let mut s = SerPoly::zero(rows, self.prec);
        for i in 0..rows {
            let out = s.row_mut(i);
            if i < self.rows {
                out.copy_from_slice(self.row(i));
            }
            if i < other.rows {
                for (o, &b) in out.iter_mut().zip(other.row(i)) {
                    *o = field.add(*o, b);
                }
            }
        }
        s
    }

    pub fn sub(&self, other: &SerPoly, field: PrimeField) -> SerPoly {
        let neg = SerPoly {
            prec: other.prec,
            rows: other.rows,
            data: other.data.iter().map(|&c| field.neg(c)).collect(),
        };
        self.add(&neg, field)
    }

    /// Product modulo `u^prec`.
    pub fn mul(&self, other: &SerPoly, field: PrimeField, prec: usize) -> SerPoly {
        let rows = self.rows + other.rows - 1;
        let mut acc = Acc::new(rows * prec, field);
        let safe = prec > acc.budget;
        for i in 0..self.rows {
            let a = &self.row(i)[..self.prec.min(prec)];
            if a.iter().all(|&c| c == 0) {
                continue;
            }
            acc.charge(if safe { 1 } else { prec });
            for j in 0..other.rows {
                let b = &other.row(j)[..other.prec.min(prec)];
                let cell = &mut acc.data[(i + j) * prec..(i + j + 1) * prec];
                if safe {
                    for (c, v) in cell.iter_mut().zip(ser_mul(field, a, b, prec)) {
                        *c += v as u64;
                    }
                } else {
                    mac_series(cell, a, b);
                }
            }
        }
        let mut s = SerPoly::zero(rows, prec);
        acc.reduce_into(&mut s.data);
        s
    }

    /// Multiplies every row by the series `c`.
    pub fn scale_series(&self, c: &[u32], field: PrimeField) -> SerPoly {
        let mut s = SerPoly::zero(self.rows, self.prec);
        for i in 0..self.rows {
            let r = ser_mul(field, self.row(i), c, self.prec);
            s.row_mut(i).copy_from_slice(&r);
        }
        s
    }

    /// `d/dX`.
    pub fn derivative(&self, field: PrimeField) -> SerPoly {
        if self.rows <= 1 {
            return SerPoly::zero(1, self.prec);
        }
        let mut s = SerPoly::zero(self.rows - 1, self.prec);
        for i in 1..self.rows {
            let c = field.reduce(i as u64);
            for (o, &v) in s.row_mut(i - 1).iter_mut().zip(self.row(i)) {
                *o = field.mul(v, c);
            }
        }
        s
    }

    /// Long division by a divisor whose top row is the series 1, keeping
    /// only the top `steps` quotient rows when `steps` is given.
    fn divide(&self, g: &SerPoly, field: PrimeField, prec: usize, steps: Option<usize>) -> (SerPoly, SerPoly) {
        let d = g.degree();
        debug_assert!(g.row(d)[0] == 1 && g.row(d)[1..].iter().all(|&c| c == 0));
        if self.rows <= d {
            return (SerPoly::zero(1, prec), self.with_prec(prec));
        }
        let n = self.degree();
        let p = field.modulus();
        let neg: Vec<Vec<u32>> = (0..d)
            .map(|j| g.row(j)[..g.prec.min(prec)].iter().map(|&c| (p - c) % p).collect())
            .collect();
        let mut acc = Acc::new(self.rows * prec, field);
        for i in 0..self.rows {
            let m = self.prec.min(prec);
            for (a, &v) in acc.data[i * prec..i * prec + m].iter_mut().zip(&self.row(i)[..m]) {
                *a = v as u64;
            }
        }
        let qrows = n - d + 1;
        let mut q = SerPoly::zero(qrows, prec);
        let safe = prec > acc.budget;
        let last = steps.map_or(0, |s| qrows.saturating_sub(s));
        for i in (last..qrows).rev() {
            let top = i + d;
            let mut qi = vec![0u32; prec];
            for (o, &v) in qi.iter_mut().zip(&acc.data[top * prec..(top + 1) * prec]) {
                *o = (v % p as u64) as u32;
            }
            if qi.iter().any(|&c| c != 0) {
                acc.charge(if safe { 1 } else { prec });
                for (j, nj) in neg.iter().enumerate() {
                    let cell = &mut acc.data[(i + j) * prec..(i + j + 1) * prec];
                    if safe {
                        for (c, v) in cell.iter_mut().zip(ser_mul(field, &qi, nj, prec)) {
                            *c += v as u64;
                        }
                    } else {
                        mac_series(cell, &qi, nj);
                    }
                }
            }
            q.row_mut(i).copy_from_slice(&qi);
        }
        let rrows = d.max(1);
        let mut r = SerPoly::zero(rrows, prec);
        for i in 0..d {
            for (o, &v) in r.row_mut(i).iter_mut().zip(&acc.data[i * prec..(i + 1) * prec]) {
                *o = (v % p as u64) as u32;
            }
        }
        (q, r)
    }

    pub fn divrem_monic(&self, g: &SerPoly, field: PrimeField, prec: usize) -> (SerPoly, SerPoly) {
        self.divide(g, field, prec, None)
    }

    pub fn rem_monic(&self, g: &SerPoly, field: PrimeField, prec: usize) -> SerPoly {
        self.divide(g, field, prec, None).1
    }

    /// Rows `deg q - steps + 1 ..= deg q` of the quotient; lower rows are
    /// left zero.
    pub fn quotient_top(&self, g: &SerPoly, field: PrimeField, prec: usize, steps: usize) -> SerPoly {
        self.divide(g, field, prec, Some(steps)).0
    }

    /// Rows as polynomials in `u`.
    pub fn to_unipolys(&self, field: PrimeField) -> Vec<UniPoly> {
        (0..self.rows)
            .map(|i| UniPoly::from_residues(field, self.row(i).to_vec()))
            .collect()
    }
}

/// `c(t0 + u)` as a series of length `prec`.
pub(crate) fn shifted(c: &UniPoly, t0: FFElement, prec: usize) -> Vec<u32> {
    let mut v = c.taylor_shift(t0.value()).into_coeffs();
    v.resize(prec.max(v.len()), 0);
    v.truncate(prec);
    v
}
