use num_bigint::BigUint;
use serde_json::json;

use crate::bivar::is_square_fpt;
use crate::permgrp::{subdegree_primitivity_criterion, Permutation, PrimitivityVerdict, Triple};

use super::certificate::{assemble_certificate, Certificate, CheckRecord, Context, ExternalFact, Status};
use super::map::{branch_support, map_discriminant};
use super::triple::{run_triple_checks, skipped_triple_checks, timed, TripleOptions};
use super::{
    ramification_profile, riemann_hurwitz_check, subdegrees_from_map, two_transitivity_obstruction, BelyiModP,
    RamificationProfile,
};

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub triple: TripleOptions,
    /// Compared with the computed profile; defaults to the triple's cycle
    /// types when a triple is given.
    pub expected_profile: Option<RamificationProfile>,
    pub number_field: Option<String>,
    pub prime_ideal: Option<String>,
}

impl VerifyOptions {
    pub fn seed(&self) -> u64 {
        self.triple.seed
    }
}

pub struct TripleInput<'a> {
    pub triple: &'a Triple,
    pub folding: &'a [Permutation],
}

fn triple_profile(t: &Triple) -> Option<RamificationProfile> {
    RamificationProfile::new(t.x.cycle_type(), t.y.cycle_type(), t.z.cycle_type()).ok()
}

/// Steps that are cited, not computed.
pub fn external_facts(expected_order: Option<&BigUint>) -> Vec<ExternalFact> {
    let mut v = vec![
        ExternalFact {
            name: "primitive_group_identification".into(),
            statement: "The arithmetic monodromy group of the reduction is singled out among the primitive \
                        groups of this degree by its subdegrees and by the discriminant not being a square."
                .into(),
            citation: "database of primitive permutation groups (Magma)".into(),
        },
        ExternalFact {
            name: "dedekind_reduction".into(),
            statement: "The Galois group of the reduction modulo the prime ideal embeds in the Galois group \
                        over the number field, so primitivity and the identified subgroup lift."
                .into(),
            citation: "Dedekind reduction; S. Lang, Algebra, chapter VII".into(),
        },
        ExternalFact {
            name: "factor_lifting".into(),
            statement: "The factor of degree 36 computed modulo the prime stands in for the divisor of degree 36 \
                        over the number field: factors there reduce to products of factors modulo the prime, \
                        and the converse direction is cited, not computed."
                .into(),
            citation: "ancillary characteristic-0 factorization".into(),
        },
    ];
    if let Some(o) = expected_order {
        v.push(ExternalFact {
            name: "group_order_reference".into(),
            statement: format!("The expected order {o} of the monodromy group is a known constant."),
            citation: "ATLAS of finite group representations".into(),
        });
    }
    v
}

/// Runs every map-side check and, when a triple is given, every
/// triple-side check, and assembles the certificate.
pub fn verify(b: &BelyiModP, triple: Option<TripleInput<'_>>, opts: &VerifyOptions) -> Certificate {
    let seed = opts.seed();
    let timings = opts.triple.timings;
    let mut checks = Vec::new();
    let coprime = b.is_coprime();
    checks.push(CheckRecord::new(
        "map_data",
        Status::from_bool(coprime),
        json!({
            "deg_p": b.pbar().deg0(),
            "deg_q": b.q().deg0(),
            "deg_r": b.r().deg0(),
            "p_monic": b.pbar().is_monic(),
            "coprime": coprime,
            "leading_cancellation": b.has_cancellation(),
        }),
    ));

    let expected = opts
        .expected_profile
        .clone()
        .or_else(|| triple.as_ref().and_then(|t| triple_profile(t.triple)));
    let profile = ramification_profile(b);
    match &profile {
        Ok(p) => {
            let ok = expected.as_ref().is_none_or(|e| e == p);
            checks.push(CheckRecord::new(
                "ramification_profile",
                Status::from_bool(ok),
                json!({
                    "profile": p.to_string(),
                    "expected": expected.as_ref().map(|e| e.to_string()),
                    "total_index": p.total_index(),
                }),
            ));
            checks.push(match riemann_hurwitz_check(p) {
                Ok((total, genus)) => CheckRecord::new(
                    "genus",
                    Status::from_bool(genus == 0),
                    json!({"total_index": total, "genus": genus, "degree": p.n}),
                ),
                Err(e) => CheckRecord::failed("genus", e),
            });
        }
        Err(e) => {
            checks.push(CheckRecord::failed("ramification_profile", e));
            checks.push(CheckRecord::skipped("genus", "no ramification profile"));
        }
    }

    let (disc, ms) = timed(timings, || map_discriminant(b));
    match &disc {
        Ok((num, den)) => {
            checks.push(match branch_support(num, den) {
                Ok(r) => CheckRecord::new(
                    "branch_points",
                    Status::from_bool(r.only_zero_and_one),
                    json!({"support": r.support, "denominator": r.denominator}),
                )
                .with_wall(ms),
                Err(e) => CheckRecord::failed("branch_points", e),
            });
            checks.push(match is_square_fpt(num, den) {
                Ok(sq) => CheckRecord::new("discriminant_square", Status::from_bool(!sq), json!({"is_square": sq})),
                Err(e) => CheckRecord::failed("discriminant_square", e),
            });
        }
        Err(e) => {
            checks.push(CheckRecord::failed("branch_points", e));
            checks.push(CheckRecord::failed("discriminant_square", e));
        }
    }

    let (subdegs, ms) = timed(timings, || subdegrees_from_map(b, seed));
    let subdegs = match subdegs {
        Ok(mut s) => {
            s.sort_unstable();
            let ok = s.contains(&1) && s.iter().sum::<usize>() == b.degree();
            checks.push(
                CheckRecord::new("subdegrees", Status::from_bool(ok), json!({"subdegrees": s}))
                    .with_seed(seed)
                    .with_wall(ms),
            );
            ok.then_some(s)
        }
        Err(e) => {
            checks.push(CheckRecord::failed("subdegrees", e).with_seed(seed));
            None
        }
    };
    match &subdegs {
        Some(s) => {
            checks.push(match subdegree_primitivity_criterion(s, b.degree()) {
                Ok(v) => CheckRecord::new(
                    "primitivity_criterion",
                    if v == PrimitivityVerdict::ConclusivePrimitive {
                        Status::Pass
                    } else {
                        Status::Inconclusive
                    },
                    json!({"verdict": v}),
                ),
                Err(e) => CheckRecord::failed("primitivity_criterion", e),
            });
            checks.push(match two_transitivity_obstruction(s) {
                Ok(o) => CheckRecord::new(
                    "two_transitivity",
                    Status::from_bool(o),
                    json!({"obstruction": o, "factor_degrees": s}),
                ),
                Err(e) => CheckRecord::failed("two_transitivity", e),
            });
        }
        None => {
            checks.push(CheckRecord::skipped("primitivity_criterion", "no subdegrees"));
            checks.push(CheckRecord::skipped("two_transitivity", "no subdegrees"));
        }
    }

    match &triple {
        Some(t) => {
            let against = profile.as_ref().ok().cloned().or_else(|| opts.expected_profile.clone());
            checks.extend(run_triple_checks(
                t.triple,
                against.as_ref(),
                t.folding,
                subdegs.as_deref(),
                &opts.triple,
            ));
        }
        None => checks.extend(skipped_triple_checks("no triple given")),
    }

    let context = Context {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        prime: b.field().modulus(),
        degree: b.degree(),
        number_field: opts.number_field.clone(),
        prime_ideal: opts.prime_ideal.clone(),
        inputs: Vec::new(),
    };
    assemble_certificate(context, checks, external_facts(opts.triple.expected_order.as_ref()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belyi::FactoredPoly;
    use crate::ffpoly::{PrimeField, UniPoly};

    fn toy() -> BelyiModP {
        let k = PrimeField::new(7).unwrap();
        let q = FactoredPoly::new(k.one(), vec![]).unwrap();
        let r = FactoredPoly::new(
            k.elem(5),
            vec![(UniPoly::from_i64(k, &[-1, 1]), 2), (UniPoly::from_i64(k, &[4, 1]), 1)],
        )
        .unwrap();
        BelyiModP::new(q, r).unwrap()
    }

    #[test]
    fn map_only_run() {
        let c = verify(&toy(), None, &VerifyOptions::default());
        assert_eq!(c.check("passport").unwrap().status, Status::Skipped);
        assert_eq!(c.check("genus").unwrap().status, Status::Pass);
        assert_eq!(c.check("branch_points").unwrap().status, Status::Pass);
        // S_3 is 2-transitive, so the obstruction check fails
        assert_eq!(c.check("two_transitivity").unwrap().status, Status::Fail);
        assert_eq!(c.verdict, Status::Fail);
        assert!(c.checks.len() >= 12);
    }

    #[test]
    fn toy_with_triple_fails_parity() {
        // over 0: 2.1, over 1: 2.1, over infinity: 3
        let x = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let y = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        let t = Triple::new(x, y).unwrap();
        let c = verify(
            &toy(),
            Some(TripleInput {
                triple: &t,
                folding: &[],
            }),
            &VerifyOptions::default(),
        );
        assert_eq!(c.check("ramification_profile").unwrap().status, Status::Pass);
        assert_eq!(c.check("cycle_types").unwrap().status, Status::Pass);
        assert_eq!(c.check("even_parity").unwrap().status, Status::Fail);
        assert_eq!(c.check("triple_subdegrees").unwrap().status, Status::Pass);
        assert_eq!(c.verdict, Status::Fail);
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
    }
}
