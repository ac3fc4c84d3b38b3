//! Regenerates the J2 permutation-triple fixture.
//!
//! J2 is built from a presentation by coset enumeration over the cyclic
//! subgroup `<ab>` (index 86400), then acts on the 280 cyclic subgroups
//! generated by elements of the class 3A (centralizer order 1080, class size
//! 560).  In that action `a`, `ab`, `b^-1` have cycle types 2^134.1^12,
//! 7^40 and 3^92.1^4.  The folding element realizes the outer automorphism
//! `a -> a, b -> b'` for a suitable conjugate `b'` of `b`.

mod coset;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use belyi_core::permgrp::{class_orbit, PermGroup, Permutation, DEFAULT_CLASS_CAP};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coset::{word, CosetTable};

const J2_ORDER: u32 = 604_800;

fn relators() -> Vec<String> {
    vec![
        "aa".into(),
        "bbb".into(),
        "ab".repeat(7),
        "aBab".repeat(12),
        "BaBabaBaba".repeat(6),
    ]
}

fn eval_word(w: &str, a: &Permutation, b: &Permutation) -> Permutation {
    let bi = b.inverse();
    let mut acc = Permutation::identity(a.degree());
    for c in w.chars() {
        acc = acc.mul(match c {
            'a' => a,
            'b' => b,
            'B' => &bi,
            _ => unreachable!(),
        });
    }
    acc
}

/// A conjugacy class by breadth-first search, or `None` once it exceeds
/// `cap` elements.
fn small_class(g: &Permutation, gens: &[Permutation], cap: usize) -> Option<Vec<Permutation>> {
    let mut list = vec![g.clone()];
    let mut seen: HashMap<Permutation, usize> = HashMap::from([(g.clone(), 0)]);
    let mut k = 0;
    while k < list.len() {
        for h in gens {
            let c = list[k].conjugate(h);
            if !seen.contains_key(&c) {
                if list.len() >= cap {
                    return None;
                }
                seen.insert(c.clone(), list.len());
                list.push(c);
            }
        }
        k += 1;
    }
    Some(list)
}

fn find_3a_class(a: &Permutation, b: &Permutation, rng: &mut ChaCha8Rng) -> Vec<Permutation> {
    let gens = [a.clone(), b.clone()];
    let mut cur = a.clone();
    for _ in 0..10_000 {
        cur = cur.mul(&gens[rng.gen_range(0..2)]);
        let o = cur.order();
        if o % 3 != 0 {
            continue;
        }
        let c = cur.pow((o / 3) as i64);
        if let Some(class) = small_class(&c, &gens, 600) {
            assert_eq!(class.len(), 560, "unexpected small class of elements of order 3");
            return class;
        }
    }
    panic!("no 3A element found");
}

/// Conjugation action on the subgroups `<c>` for `c` in the class.
fn subgroup_action(class: &[Permutation], gens: &[&Permutation]) -> Vec<Permutation> {
    let pos: HashMap<&Permutation, usize> = class.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut point = vec![usize::MAX; class.len()];
    let mut n = 0;
    for i in 0..class.len() {
        if point[i] == usize::MAX {
            let j = pos[&class[i].inverse()];
            point[i] = n;
            point[j] = n;
            n += 1;
        }
    }
    gens.iter()
        .map(|g| {
            let mut img = vec![0u32; n];
            for (i, c) in class.iter().enumerate() {
                img[point[i]] = point[pos[&c.conjugate(g)]] as u32;
            }
            Permutation::from_images(img).expect("conjugation permutes the subgroups")
        })
        .collect()
}

/// `pi` with `pi^-1 a pi = a2` and `pi^-1 b pi = b2`, if one exists.
fn intertwiner(a: &Permutation, b: &Permutation, a2: &Permutation, b2: &Permutation) -> Option<Permutation> {
    let n = a.degree();
    'start: for j in 0..n as u32 {
        let mut pi = vec![u32::MAX; n];
        pi[0] = j;
        let mut queue = vec![0u32];
        while let Some(i) = queue.pop() {
            for (g, g2) in [(a, a2), (b, b2)] {
                let src = g.apply(i) as usize;
                let dst = g2.apply(pi[i as usize]);
                if pi[src] == u32::MAX {
                    pi[src] = dst;
                    queue.push(src as u32);
                } else if pi[src] != dst {
                    continue 'start;
                }
            }
        }
        if let Ok(p) = Permutation::from_images(pi) {
            return Some(p);
        }
    }
    None
}

fn cycles_line(name: &str, p: &Permutation) -> String {
    format!("perm {name} = {p}\n")
}

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("crates/core/fixtures/j2_280.triple"));
    let rels: Vec<Vec<usize>> = relators().iter().map(|r| word(r)).collect();
    let mut table = CosetTable::new(&rels, 4_000_000);
    let index = table.enumerate(&[word("ab")]).expect("coset enumeration hit its limit");
    assert_eq!(index * 7, J2_ORDER as usize, "presentation does not define a group of order 604800");
    eprintln!("cosets of <ab>: {index}");
    let [ia, ib] = table.generator_images();
    drop(table);
    let big_a = Permutation::from_images(ia).unwrap();
    let big_b = Permutation::from_images(ib).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let class = find_3a_class(&big_a, &big_b, &mut rng);
    let acts = subgroup_action(&class, &[&big_a, &big_b]);
    drop(class);
    let (a, b) = (acts[0].clone(), acts[1].clone());
    let n = a.degree();
    eprintln!("degree {n}");

    let g = PermGroup::new(n, vec![a.clone(), b.clone()]).unwrap();
    assert_eq!(g.order(), BigUint::from(J2_ORDER));
    for r in relators() {
        assert!(eval_word(&r, &a, &b).is_identity());
    }
    let x = a.clone();
    let y = a.mul(&b);

    // b' runs through the class of b; the map a -> a, b -> b' is an
    // automorphism whenever the relators hold, and outer iff no element of
    // G realizes it.
    let bclass = class_orbit(&g, &b, DEFAULT_CLASS_CAP).unwrap();
    let mut fold = None;
    for b2 in bclass.elements() {
        if !relators().iter().all(|r| eval_word(r, &a, b2).is_identity()) {
            continue;
        }
        let Some(pi) = intertwiner(&a, &b, &a, b2) else { continue };
        if !g.contains(&pi) {
            fold = Some(pi);
            break;
        }
    }
    let fold = fold.expect("no outer automorphism found");
    assert!(g.generators().iter().all(|h| g.contains(&h.conjugate(&fold))));

    let mut text = String::new();
    writeln!(text, "# J2 on the 280 subgroups generated by 3A elements (right action).").unwrap();
    writeln!(text, "# Generated by belyi-fixturegen from").unwrap();
    writeln!(
        text,
        "#   < a, b | a^2, b^3, (ab)^7, (a b^-1 a b)^12, (b^-1 a b^-1 a b a b^-1 a b a)^6 >"
    )
    .unwrap();
    writeln!(text, "# x = a, y = a*b, so z = (x*y)^-1 = b^-1.  fold1 induces an outer automorphism.").unwrap();
    writeln!(text, "degree {n}").unwrap();
    text.push_str(&cycles_line("x", &x));
    text.push_str(&cycles_line("y", &y));
    text.push_str(&cycles_line("fold1", &fold));
    std::fs::write(&out, text).expect("write fixture");
    eprintln!(
        "wrote {}: x {}, y {}, z {}",
        out.display(),
        x.cycle_type(),
        y.cycle_type(),
        b.inverse().cycle_type()
    );
}
