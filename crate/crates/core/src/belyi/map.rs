use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bivar::{construct_phi, discriminant_x, factor_degrees, is_square_fpt, BiPoly};
use crate::ffpoly::{squarefree_decompose, PrimeField, UniPoly};
use crate::permgrp::CycleType;

use super::{BelyiError, FactoredPoly};

/// `f = p/q = 1 + r/q` reduced modulo a prime, with `p` computed as `q + r`.
#[derive(Clone, Debug)]
pub struct BelyiModP {
    field: PrimeField,
    qbar: FactoredPoly,
    rbar: FactoredPoly,
    q: UniPoly,
    r: UniPoly,
    pbar: UniPoly,
}

impl BelyiModP {
    pub fn new(qbar: FactoredPoly, rbar: FactoredPoly) -> Result<Self, BelyiError> {
        let field = qbar.field();
        if rbar.field() != field {
            return Err(BelyiError::FieldMismatch);
        }
        let q = qbar.expand();
        let r = rbar.expand();
        let pbar = &q + &r;
        if pbar.is_zero() {
            return Err(BelyiError::ConstantMap);
        }
        Ok(BelyiModP {
            field,
            qbar,
            rbar,
            q,
            r,
            pbar,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn qbar(&self) -> &FactoredPoly {
        &self.qbar
    }

    pub fn rbar(&self) -> &FactoredPoly {
        &self.rbar
    }

    pub fn q(&self) -> &UniPoly {
        &self.q
    }

    pub fn r(&self) -> &UniPoly {
        &self.r
    }

    pub fn pbar(&self) -> &UniPoly {
        &self.pbar
    }

    /// `max(deg p, deg q)`.
    pub fn degree(&self) -> usize {
        self.pbar.deg0().max(self.q.deg0())
    }

    pub fn is_coprime(&self) -> bool {
        self.pbar.gcd(&self.q).is_ok_and(|g| g.is_one())
    }

    /// Whether the leading terms of `q` and `r` cancel in `p`.
    pub fn has_cancellation(&self) -> bool {
        self.pbar.deg0() < self.q.deg0().max(self.r.deg0())
    }

    /// Hard check of the expected shape of `p`.
    pub fn require_shape(&self, degree: usize, monic: bool) -> Result<(), BelyiError> {
        if self.pbar.deg0() != degree || (monic && !self.pbar.is_monic()) {
            return Err(BelyiError::ShapeMismatch(format!(
                "p has degree {} and leading coefficient {}, expected degree {degree}{}",
                self.pbar.deg0(),
                self.pbar.lc().value(),
                if monic { " and monic" } else { "" }
            )));
        }
        Ok(())
    }

    /// `p(X) - t q(X)`.
    pub fn generic_fiber(&self) -> BiPoly {
        let k = self.field;
        let n = self.degree();
        BiPoly::new(
            k,
            (0..=n)
                .map(|i| UniPoly::from_residues(k, vec![self.pbar.coeff(i), k.neg(self.q.coeff(i))]))
                .collect(),
        )
    }
}

/// Cycle types over `0`, `1` and `infinity`.  Written `a | b | c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub over_zero: CycleType,
    pub over_one: CycleType,
    pub over_infinity: CycleType,
    pub n: usize,
}

impl RamificationProfile {
    pub fn new(over_zero: CycleType, over_one: CycleType, over_infinity: CycleType) -> Result<Self, BelyiError> {
        let n = over_zero.degree();
        if over_one.degree() != n || over_infinity.degree() != n {
            return Err(BelyiError::InconsistentProfile(format!(
                "fibres have sizes {}, {}, {}",
                n,
                over_one.degree(),
                over_infinity.degree()
            )));
        }
        Ok(RamificationProfile {
            over_zero,
            over_one,
            over_infinity,
            n,
        })
    }

    /// Sum of `n - #parts` over the three fibres.
    pub fn total_index(&self) -> usize {
        self.over_zero.index() + self.over_one.index() + self.over_infinity.index()
    }
}

impl fmt::Display for RamificationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.over_zero, self.over_one, self.over_infinity)
    }
}

impl FromStr for RamificationProfile {
    type Err = BelyiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split('|').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(BelyiError::InconsistentProfile(format!("expected three fibres in {s:?}")));
        };
        RamificationProfile::new(a.parse()?, b.parse()?, c.parse()?)
    }
}

fn multiplicities(f: &UniPoly) -> Result<Vec<usize>, BelyiError> {
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    for (g, e) in squarefree_decompose(f)?.parts {
        out.extend(std::iter::repeat(e as usize).take(g.deg0()));
    }
    Ok(out)
}

/// Root multiplicities of `p`, `r` and `q`, plus the point at infinity.
pub fn ramification_profile(b: &BelyiModP) -> Result<RamificationProfile, BelyiError> {
    if !b.is_coprime() {
        return Err(BelyiError::NotCoprime);
    }
    let n = b.degree();
    let (dp, dq, dr) = (b.pbar.deg0(), b.q.deg0(), b.r.deg0());
    let mut zero = multiplicities(&b.pbar)?;
    let mut one = multiplicities(&b.r)?;
    let mut inf = multiplicities(&b.q)?;
    match dp.cmp(&dq) {
        std::cmp::Ordering::Less => zero.push(dq - dp),
        std::cmp::Ordering::Greater => inf.push(dp - dq),
        std::cmp::Ordering::Equal => {
            let k = b.field;
            let value = k.mul(b.pbar.lc().value(), k.inv(b.q.lc().value())?);
            if value != 1 {
                return Err(BelyiError::InfinityOffBranchPoints(value));
            }
            if dr >= dq {
                return Err(BelyiError::InconsistentProfile("r does not drop in degree".into()));
            }
            one.push(dq - dr);
        }
    }
    RamificationProfile::new(
        CycleType::from_lengths(zero),
        CycleType::from_lengths(one),
        CycleType::from_lengths(inf),
    )
    .and_then(|p| {
        if p.n != n {
            Err(BelyiError::InconsistentProfile(format!("fibres have size {} but the degree is {n}", p.n)))
        } else {
            Ok(p)
        }
    })
}

/// `(total index, genus)` from `2 - 2g = 2n - total index`.
pub fn riemann_hurwitz_check(profile: &RamificationProfile) -> Result<(usize, u64), BelyiError> {
    let total = profile.total_index() as i64;
    let two_g = total - 2 * profile.n as i64 + 2;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(BelyiError::NonIntegralGenus(two_g));
    }
    Ok((total as usize, (two_g / 2) as u64))
}

/// Squarefree support of a discriminant numerator, split against `s` and
/// `s - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPointReport {
    pub numerator: String,
    pub denominator: String,
    /// `(factor, multiplicity)`, the factors written in `s`.
    pub support: Vec<(String, u32)>,
    pub only_zero_and_one: bool,
}

/// `disc_X(p(X) - s q(X))` as a reduced fraction in `F_p(s)`.
pub fn map_discriminant(b: &BelyiModP) -> Result<(UniPoly, UniPoly), BelyiError> {
    let (num, den) = discriminant_x(&b.generic_fiber())?;
    if num.is_zero() {
        return Err(BelyiError::DegenerateDiscriminant);
    }
    Ok((num, den))
}

fn in_s(f: &UniPoly) -> String {
    f.to_string().replace('X', "s")
}

pub(crate) fn branch_support(num: &UniPoly, den: &UniPoly) -> Result<BranchPointReport, BelyiError> {
    let k = num.field();
    let s = UniPoly::x(k);
    let s1 = UniPoly::from_i64(k, &[-1, 1]);
    let mut support = Vec::new();
    let mut ok = true;
    if !num.is_constant() {
        for (g, e) in squarefree_decompose(num)?.parts {
            let mut rest = g.clone();
            for lin in [&s, &s1] {
                if rest.eval_residue(k.neg(lin.coeff(0))) == 0 {
                    support.push((in_s(lin), e));
                    rest = rest.div_exact(lin);
                }
            }
            if !rest.is_constant() {
                ok = false;
                support.push((in_s(&rest), e));
            }
        }
    }
    support.sort();
    Ok(BranchPointReport {
        numerator: in_s(num),
        denominator: in_s(den),
        support,
        only_zero_and_one: ok,
    })
}

/// Finite branch points from the discriminant of `p(X) - s q(X)`; passes
/// iff they lie in `{0, 1}`.
pub fn branch_point_check(b: &BelyiModP) -> Result<BranchPointReport, BelyiError> {
    let (num, den) = map_discriminant(b)?;
    branch_support(&num, &den)
}

/// X-degrees of the irreducible factors of `p(t) q(X) - p(X) q(t)` over
/// `F_p(t)`.
pub fn subdegrees_from_map(b: &BelyiModP, seed: u64) -> Result<Vec<usize>, BelyiError> {
    let phi = construct_phi(&b.pbar, &b.q)?;
    Ok(factor_degrees(&phi, seed)?)
}

/// Whether `disc_X(p(X) - t q(X))` is a square in `F_p(t)`.
pub fn discriminant_square_check(b: &BelyiModP) -> Result<bool, BelyiError> {
    let (num, den) = map_discriminant(b)?;
    Ok(is_square_fpt(&num, &den)?)
}

/// True iff the subdegrees rule out a 2-transitive action.
pub fn two_transitivity_obstruction(subdegs: &[usize]) -> Result<bool, BelyiError> {
    if !subdegs.contains(&1) || subdegs.contains(&0) {
        return Err(BelyiError::MalformedSubdegrees);
    }
    let n: usize = subdegs.iter().sum();
    let mut s = subdegs.to_vec();
    s.sort_unstable();
    let two_transitive = if n == 1 { s == [1] } else { s == [1, n - 1] };
    Ok(!two_transitive)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(k: PrimeField, unit: u64, factors: &[(&[i64], u32)]) -> FactoredPoly {
        FactoredPoly::new(k.elem(unit), factors.iter().map(|(c, e)| (UniPoly::from_i64(k, c), *e)).collect()).unwrap()
    }

    /// `f = 3X^2 - 2X^3` over F_7: `q = 1`, `r = 5X^3 + 3X^2 + 6`.
    fn toy() -> BelyiModP {
        let k = PrimeField::new(7).unwrap();
        let q = FactoredPoly::new(k.one(), vec![]).unwrap();
        // 5X^3 + 3X^2 + 6 = 5 (X - 1)^2 (X + 4)
        let r = fp(k, 5, &[(&[-1, 1], 2), (&[4, 1], 1)]);
        BelyiModP::new(q, r).unwrap()
    }

    #[test]
    fn toy_profile() {
        let b = toy();
        assert_eq!(b.pbar(), &UniPoly::from_i64(PrimeField::new(7).unwrap(), &[0, 0, 3, 5]));
        let p = ramification_profile(&b).unwrap();
        assert_eq!(p.to_string(), "2.1 | 2.1 | 3");
        assert_eq!(riemann_hurwitz_check(&p).unwrap(), (4, 0));
        let br = branch_point_check(&b).unwrap();
        assert!(br.only_zero_and_one);
        assert_eq!(br.support.len(), 2);
        assert_eq!(subdegrees_from_map(&b, 0).unwrap(), vec![1, 2]);
    }

    #[test]
    fn square_map() {
        let k = PrimeField::new(5).unwrap();
        // p = X^2, q = 1, r = X^2 - 1
        let q = FactoredPoly::new(k.one(), vec![]).unwrap();
        let r = fp(k, 1, &[(&[-1, 1], 1), (&[1, 1], 1)]);
        let b = BelyiModP::new(q, r).unwrap();
        let p = ramification_profile(&b).unwrap();
        assert_eq!(p.to_string(), "2 | 1^2 | 2");
        assert_eq!(riemann_hurwitz_check(&p).unwrap(), (2, 0));
        let br = branch_point_check(&b).unwrap();
        assert_eq!(br.support, vec![("s".to_string(), 1)]);
        assert!(!discriminant_square_check(&b).unwrap());
        assert_eq!(subdegrees_from_map(&b, 0).unwrap(), vec![1, 1]);
    }

    #[test]
    fn infinity_off_branch_points() {
        let k = PrimeField::new(7).unwrap();
        // q = X + 1, r = X: p = 2X + 1, infinity maps to 2
        let b = BelyiModP::new(fp(k, 1, &[(&[1, 1], 1)]), fp(k, 1, &[(&[0, 1], 1)])).unwrap();
        assert!(matches!(ramification_profile(&b), Err(BelyiError::InfinityOffBranchPoints(2))));
    }

    #[test]
    fn obstruction() {
        assert!(two_transitivity_obstruction(&[1, 36, 108, 135]).unwrap());
        assert!(!two_transitivity_obstruction(&[1, 279]).unwrap());
        assert!(!two_transitivity_obstruction(&[1, 2]).unwrap());
        assert!(two_transitivity_obstruction(&[2, 3]).is_err());
    }

    #[test]
    fn profile_strings() {
        let p: RamificationProfile = "2^134.1^12 | 7^40 | 3^92.1^4".parse().unwrap();
        assert_eq!(p.n, 280);
        assert_eq!(p.total_index(), 558);
        assert!("2 | 1".parse::<RamificationProfile>().is_err());
        assert!("2 | 1 | 1".parse::<RamificationProfile>().is_err());
    }
}
