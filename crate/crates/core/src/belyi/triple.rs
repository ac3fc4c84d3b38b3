use std::time::Instant;

use num_bigint::BigUint;
use serde_json::json;

use crate::permgrp::{
    genus_of_triple, passport_enumerate, rational_class_check, simplicity_evidence, PassportOptions, PermError,
    PermGroup, Permutation, RationalityVerdict, Triple, DEFAULT_CLASS_CAP, DEFAULT_WITNESS_TRIES,
};

use super::certificate::{CheckRecord, Status};
use super::RamificationProfile;

#[derive(Clone, Debug)]
pub struct TripleOptions {
    pub seed: u64,
    pub cap: usize,
    pub witness_tries: usize,
    pub simplicity_trials: usize,
    pub expected_order: Option<BigUint>,
    pub timings: bool,
}

impl Default for TripleOptions {
    fn default() -> Self {
        TripleOptions {
            seed: 0,
            cap: DEFAULT_CLASS_CAP,
            witness_tries: DEFAULT_WITNESS_TRIES,
            simplicity_trials: 20,
            expected_order: None,
            timings: false,
        }
    }
}

pub(crate) fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, Option<u64>) {
    let start = Instant::now();
    let out = f();
    (out, on.then(|| start.elapsed().as_millis() as u64))
}

/// Whether `fine` splits into groups whose sums are exactly `coarse`.
pub fn is_coarsening(coarse: &[usize], fine: &[usize]) -> bool {
    if coarse.iter().sum::<usize>() != fine.iter().sum::<usize>() {
        return false;
    }
    let mut items = fine.to_vec();
    items.sort_unstable_by(|a, b| b.cmp(a));
    let mut bins = coarse.to_vec();
    fn place(items: &[usize], bins: &mut [usize]) -> bool {
        let Some((&x, rest)) = items.split_first() else {
            return bins.iter().all(|&b| b == 0);
        };
        let mut tried = Vec::new();
        for i in 0..bins.len() {
            if bins[i] >= x && !tried.contains(&bins[i]) {
                tried.push(bins[i]);
                bins[i] -= x;
                if place(rest, bins) {
                    return true;
                }
                bins[i] += x;
            }
        }
        false
    }
    place(&items, &mut bins)
}

const TRIPLE_CHECKS: [&str; 10] = [
    "cycle_types",
    "group_order",
    "transitivity",
    "primitivity",
    "even_parity",
    "triple_genus",
    "rational_classes",
    "simplicity",
    "triple_subdegrees",
    "passport",
];

/// Records for every triple-side check, all skipped.
pub fn skipped_triple_checks(why: &str) -> Vec<CheckRecord> {
    TRIPLE_CHECKS.iter().map(|n| CheckRecord::skipped(n, why)).collect()
}

/// Group-theoretic checks on a triple.  A cycle-type mismatch with
/// `expected` stops the run; the remaining checks are then skipped.
/// `map_subdegrees`, when given, must be a coarsening of the subdegrees of
/// `<x, y>`.
pub fn run_triple_checks(
    t: &Triple,
    expected: Option<&RamificationProfile>,
    folding: &[Permutation],
    map_subdegrees: Option<&[usize]>,
    opts: &TripleOptions,
) -> Vec<CheckRecord> {
    let (x, y, z) = (&t.x, &t.y, &t.z);
    let types = [x.cycle_type(), y.cycle_type(), z.cycle_type()];
    let mut out = Vec::new();
    let mut types_ok = true;
    let mut values = json!({
        "x": types[0].to_string(),
        "y": types[1].to_string(),
        "z": types[2].to_string(),
    });
    if let Some(e) = expected {
        types_ok = [&e.over_zero, &e.over_one, &e.over_infinity]
            .into_iter()
            .zip(&types)
            .all(|(a, b)| a == b);
        values["expected"] = json!(e.to_string());
    }
    out.push(CheckRecord::new("cycle_types", Status::from_bool(types_ok), values));
    if !types_ok {
        out.extend(skipped_triple_checks("cycle types do not match").into_iter().skip(1));
        return out;
    }

    let n = t.degree();
    let (g, ms) = timed(opts.timings, || PermGroup::new(n, vec![x.clone(), y.clone()]));
    let g = match g {
        Ok(g) => g,
        Err(e) => {
            out.push(CheckRecord::failed("group_order", e));
            out.extend(skipped_triple_checks("no group").into_iter().skip(2));
            return out;
        }
    };
    let order = g.order();
    let order_ok = opts.expected_order.as_ref().is_none_or(|o| *o == order);
    out.push(
        CheckRecord::new(
            "group_order",
            Status::from_bool(order_ok),
            json!({
                "order": order.to_string(),
                "expected": opts.expected_order.as_ref().map(|o| o.to_string()),
            }),
        )
        .with_wall(ms),
    );

    let transitive = g.is_transitive();
    out.push(CheckRecord::new(
        "transitivity",
        Status::from_bool(transitive),
        json!({"orbits": g.orbits().len()}),
    ));

    let (prim, ms) = timed(opts.timings, || g.is_primitive());
    out.push(match prim {
        Ok(p) => CheckRecord::new("primitivity", Status::from_bool(p), json!({"primitive": p})).with_wall(ms),
        Err(e) => CheckRecord::failed("primitivity", e),
    });

    let signs = [x.sign(), y.sign(), z.sign()];
    out.push(CheckRecord::new(
        "even_parity",
        Status::from_bool(signs.iter().all(|&s| s == 1)),
        json!({"sign_x": signs[0], "sign_y": signs[1], "sign_z": signs[2]}),
    ));

    out.push(match genus_of_triple(t) {
        Ok(genus) => CheckRecord::new(
            "triple_genus",
            Status::from_bool(genus == 0),
            json!({
                "genus": genus,
                "indices": [x.index(), y.index(), z.index()],
            }),
        ),
        Err(e) => CheckRecord::failed("triple_genus", e),
    });

    let (rc, ms) = timed(opts.timings, || {
        [x, y, z]
            .into_iter()
            .enumerate()
            .map(|(i, e)| rational_class_check(&g, e, opts.seed.wrapping_add(i as u64), opts.witness_tries))
            .collect::<Result<Vec<_>, PermError>>()
    });
    out.push(match rc {
        Ok(reports) => {
            let ok = reports.iter().all(|r| r.verdict == RationalityVerdict::Rational);
            let values = json!({
                "x": {"order": reports[0].element_order, "verdict": reports[0].verdict},
                "y": {"order": reports[1].element_order, "verdict": reports[1].verdict},
                "z": {"order": reports[2].element_order, "verdict": reports[2].verdict},
            });
            let status = if ok {
                Status::Pass
            } else if reports.iter().any(|r| r.verdict == RationalityVerdict::NotRational) {
                Status::Fail
            } else {
                Status::Inconclusive
            };
            CheckRecord::new("rational_classes", status, values)
        }
        Err(e) => CheckRecord::failed("rational_classes", e),
    }
    .with_seed(opts.seed)
    .with_wall(ms));

    let (simp, ms) = timed(opts.timings, || simplicity_evidence(&g, opts.seed, opts.simplicity_trials));
    out.push(
        CheckRecord::new(
            "simplicity",
            Status::from_bool(simp.all_full()),
            json!({
                "trials": simp.trials,
                "full_closures": simp.full_closures,
                "witness": simp.witness,
            }),
        )
        .with_seed(opts.seed)
        .with_wall(ms),
    );

    let (sub, ms) = timed(opts.timings, || g.subdegrees());
    out.push(match sub {
        Ok(mut s) => {
            s.sort_unstable();
            let consistent = map_subdegrees.map(|m| is_coarsening(m, &s));
            CheckRecord::new(
                "triple_subdegrees",
                Status::from_bool(consistent != Some(false)),
                json!({
                    "subdegrees": s,
                    "map_subdegrees": map_subdegrees,
                    "map_side_is_coarsening": consistent,
                }),
            )
            .with_wall(ms)
        }
        Err(e) => CheckRecord::failed("triple_subdegrees", e),
    });

    let popts = PassportOptions {
        cap: opts.cap,
        seed: opts.seed,
    };
    let (pp, ms) = timed(opts.timings, || passport_enumerate(&g, x, y, &types[2], folding, &popts));
    out.push(match pp {
        Ok(r) => {
            let ok = r.raw_orbit_count >= 1 && r.folded_orbit_count >= 1 && r.folded_orbit_count <= r.raw_orbit_count;
            CheckRecord::new(
                "passport",
                Status::from_bool(ok),
                json!({
                    "class_size": r.class_size,
                    "survivors": r.survivors,
                    "raw_orbit_count": r.raw_orbit_count,
                    "folded_orbit_count": r.folded_orbit_count,
                    "folding_elements": folding.len(),
                }),
            )
        }
        Err(PermError::ClassOrbitCap(c)) => CheckRecord::new(
            "passport",
            Status::Inconclusive,
            json!({"cap_exceeded": true, "cap": c}),
        ),
        Err(e) => CheckRecord::failed("passport", e),
    }
    .with_seed(opts.seed)
    .with_wall(ms));
    out
}
