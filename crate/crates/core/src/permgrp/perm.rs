use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PermError;

/// A permutation of `{1..n}`.  Stored 0-based; all user-facing text is
/// 1-based.
///
/// Products read left to right: `a.compose(&b)` applies `a` first, so
/// `(a*b)(i) = b(a(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based cycles; unmentioned points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for &pt in cyc {
                if pt == 0 || pt > n {
                    return Err(PermError::PointOutOfRange { point: pt, degree: n });
                }
                if used[pt - 1] {
                    return Err(PermError::RepeatedPoint(pt));
                }
                used[pt - 1] = true;
            }
            for (k, &pt) in cyc.iter().enumerate() {
                images[pt - 1] = (cyc[(k + 1) % cyc.len()] - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based images.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// `self` then `other`; degrees must agree.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g^{-1} self g`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[j as usize];
        }
        Permutation { images: out }
    }

    /// True iff `g^{-1} self g == b`, without building the conjugate.
    pub fn conjugates_to(&self, g: &Permutation, b: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| b.images[g.images[i] as usize] == g.images[j as usize])
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// Cycle lengths in order of their smallest point.
    fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// 1-based cycles of length at least 2.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] || self.images[s] as usize == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycle_lengths())
    }

    pub fn num_cycles(&self) -> usize {
        self.cycle_lengths().len()
    }

    /// `n - #cycles`, fixed points counted as cycles.
    pub fn index(&self) -> usize {
        self.degree() - self.num_cycles()
    }

    pub fn sign(&self) -> i8 {
        if self.index() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Panics if the order does not fit in a `u64`, which needs degree well
    /// above 400.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| {
            let l = l as u64;
            (acc / gcd(acc, l))
                .checked_mul(l)
                .expect("element order overflows u64")
        })
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]({})", self.degree(), self)
    }
}

/// Cycle lengths with multiplicities, longest first.  Written like
/// `2^134.1^12`; exponent 1 is omitted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<(usize, usize)>,
}

impl CycleType {
    pub fn from_lengths(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        let mut parts: Vec<(usize, usize)> = Vec::new();
        for l in lengths {
            match parts.last_mut() {
                Some((len, count)) if *len == l => *count += 1,
                _ => parts.push((l, 1)),
            }
        }
        CycleType { parts }
    }

    /// `(length, count)` pairs, lengths descending.
    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|(l, c)| l * c).sum()
    }

    pub fn num_cycles(&self) -> usize {
        self.parts.iter().map(|(_, c)| c).sum()
    }

    pub fn index(&self) -> usize {
        self.degree() - self.num_cycles()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.parts
            .iter()
            .flat_map(|&(l, c)| std::iter::repeat(l).take(c))
            .collect()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, c)) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            if *c == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for CycleType {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PermError::BadCycleType(s.to_string());
        let mut lengths = Vec::new();
        for part in s.trim().split('.') {
            let (l, c) = match part.split_once('^') {
                Some((l, c)) => (l, c),
                None => (part, "1"),
            };
            let l: usize = l.trim().parse().map_err(|_| bad())?;
            let c: usize = c.trim().parse().map_err(|_| bad())?;
            if l == 0 || c == 0 {
                return Err(bad());
            }
            lengths.extend(std::iter::repeat(l).take(c));
        }
        Ok(CycleType::from_lengths(lengths))
    }
}

/// `(x, y, z)` with `x*y*z = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub x: Permutation,
    pub y: Permutation,
    pub z: Permutation,
}

impl Triple {
    /// `z` is computed as `(x*y)^{-1}`.
    pub fn new(x: Permutation, y: Permutation) -> Result<Self, PermError> {
        let z = x.compose(&y)?.inverse();
        Ok(Triple { x, y, z })
    }

    pub fn degree(&self) -> usize {
        self.x.degree()
    }

    pub fn is_consistent(&self) -> bool {
        self.x.degree() == self.y.degree()
            && self.y.degree() == self.z.degree()
            && self.x.mul(&self.y).mul(&self.z).is_identity()
    }

    /// Simultaneous conjugation by `g`.
    pub fn conjugate(&self, g: &Permutation) -> Triple {
        Triple {
            x: self.x.conjugate(g),
            y: self.y.conjugate(g),
            z: self.z.conjugate(g),
        }
    }
}

/// Genus from `2 - 2g = 2n - (ind x + ind y + ind z)`.
pub fn genus_of_triple(t: &Triple) -> Result<u64, PermError> {
    if !t.is_consistent() {
        return Err(PermError::InconsistentTriple);
    }
    let group = super::PermGroup::new(t.degree(), vec![t.x.clone(), t.y.clone()])?;
    if !group.is_transitive() {
        return Err(PermError::Intransitive);
    }
    let n = t.degree() as i64;
    let total = (t.x.index() + t.y.index() + t.z.index()) as i64;
    let two_minus_2g = 2 * n - total;
    let twice_g = 2 - two_minus_2g;
    if twice_g < 0 || twice_g % 2 != 0 {
        return Err(PermError::InvalidGenus(twice_g));
    }
    Ok((twice_g / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        let v: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &v).unwrap()
    }

    #[test]
    fn left_to_right_product() {
        let a = p(3, &[&[1, 2]]);
        let b = p(3, &[&[2, 3]]);
        assert_eq!(a.compose(&b).unwrap(), p(3, &[&[1, 3, 2]]));
        assert!(a.mul(&a.inverse()).is_identity());
        assert!(a.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn cycle_data() {
        let g = p(5, &[&[1, 2], &[3, 4]]);
        assert_eq!(g.cycle_type().to_string(), "2^2.1");
        assert_eq!((g.sign(), g.order(), g.index()), (1, 2, 2));
        let id = Permutation::identity(6);
        assert_eq!(id.cycle_type().to_string(), "1^6");
        assert_eq!(id.index(), 0);
        assert_eq!(id.to_string(), "id");
    }

    #[test]
    fn cycle_type_round_trip() {
        let t: CycleType = "2^134.1^12".parse().unwrap();
        assert_eq!(t.degree(), 280);
        assert_eq!(t.index(), 134);
        assert_eq!(t.to_string(), "2^134.1^12");
        assert_eq!("1^4.3^92".parse::<CycleType>().unwrap().to_string(), "3^92.1^4");
        assert!("2^x".parse::<CycleType>().is_err());
    }

    #[test]
    fn cycles_validate() {
        assert_eq!(
            Permutation::from_cycles(3, &[vec![1, 1]]),
            Err(PermError::RepeatedPoint(1))
        );
        assert!(Permutation::from_cycles(3, &[vec![1, 4]]).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn conjugation_matches_definition() {
        let a = p(5, &[&[1, 2, 3]]);
        let g = p(5, &[&[1, 4], &[2, 5, 3]]);
        let c = g.inverse().mul(&a).mul(&g);
        assert_eq!(a.conjugate(&g), c);
        assert!(a.conjugates_to(&g, &c));
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(g.pow(6), Permutation::identity(5));
    }

    #[test]
    fn small_genera() {
        let t = Triple::new(p(3, &[&[1, 2]]), p(3, &[&[2, 3]])).unwrap();
        assert_eq!(t.z.cycle_type().to_string(), "3");
        assert_eq!(genus_of_triple(&t).unwrap(), 0);
        let c = p(5, &[&[1, 2, 3, 4, 5]]);
        let t = Triple::new(c.clone(), c.inverse()).unwrap();
        assert!(t.z.is_identity());
        assert_eq!(genus_of_triple(&t).unwrap(), 0);
        let t = Triple::new(p(4, &[&[1, 2]]), p(4, &[&[3, 4]])).unwrap();
        assert_eq!(genus_of_triple(&t), Err(PermError::Intransitive));
    }
}
