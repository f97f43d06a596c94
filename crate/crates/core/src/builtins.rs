//! Built-in example systems, registered by name.
//!
//! | name | system |
//! |------|--------|
//! | `abs` | squaring / inclusion / absolute value on `X = {-1,0,1}`, `Y = {0,1}` |
//! | `pair2`..`pair6` | pair groupoid on n objects over one-point spaces (full matrix algebra) |
//! | `swap` | `Z/2` swapping two points |
//! | `triv2` | `Z/2` acting trivially on one point |
//! | `prod` | `Z/2 × Z/2` on two points, first factor swaps, second acts trivially |
//! | `subsets2` | all maps between nonempty subsets of a two-point set |
//! | `arrow` | two objects, one non-identity arrow, one-point spaces |

use std::collections::{BTreeMap, BTreeSet};

use crate::category::{Category, CategorySpec, MorphismSpec};
use crate::dynsys::{DynSys, DynSysSpec, PartialFunction, PartialSystem};

pub const NAMES: &[&str] = &[
    "abs", "pair2", "pair3", "pair4", "pair5", "pair6", "swap", "triv2", "prod", "subsets2", "arrow",
];

pub fn by_name(name: &str) -> Option<DynSys> {
    Some(match name {
        "abs" => abs(),
        "swap" => swap(),
        "triv2" => triv2(),
        "prod" => prod(),
        "subsets2" => subsets(2),
        "arrow" => arrow(),
        _ => {
            let n: usize = name.strip_prefix("pair")?.parse().ok()?;
            if !(2..=6).contains(&n) {
                return None;
            }
            pair(n)
        }
    })
}

fn strings<const N: usize>(items: [&str; N]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn graph(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// The partially defined system of squaring, square root and absolute value
/// on the finite surrogate `X = {-1, 0, 1}`, `Y = {0, 1}` (the smallest sets
/// closed under the three maps on which all five functions are distinct).
pub fn abs_partial() -> PartialSystem {
    let ambient = strings(["-1", "0", "1"]);
    let objects = BTreeMap::from([
        ("X".to_string(), strings(["-1", "0", "1"])),
        ("Y".to_string(), strings(["0", "1"])),
    ]);
    let f = |name: &str, dom: &str, cod: &str, g: &[(&str, &str)]| PartialFunction {
        name: name.into(),
        dom: dom.into(),
        cod: cod.into(),
        graph: graph(g),
    };
    let functions = vec![
        f("id_X", "X", "X", &[("-1", "-1"), ("0", "0"), ("1", "1")]),
        f("id_Y", "Y", "Y", &[("0", "0"), ("1", "1")]),
        f("sqr", "X", "Y", &[("-1", "1"), ("0", "0"), ("1", "1")]),
        f("sqrt", "Y", "X", &[("0", "0"), ("1", "1")]),
        f("abs", "X", "X", &[("-1", "1"), ("0", "0"), ("1", "1")]),
    ];
    PartialSystem::new(ambient, objects, functions).expect("abs system is closed")
}

pub fn abs() -> DynSys {
    abs_partial().to_dynsys().expect("valid")
}

/// All maps between all nonempty subsets of a `k`-point set.
pub fn subsets_partial(k: usize) -> PartialSystem {
    assert!((1..=3).contains(&k), "subsets(k) supports 1 <= k <= 3");
    let points: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let ambient: BTreeSet<String> = points.iter().cloned().collect();
    let mut objects = BTreeMap::new();
    for mask in 1u32..(1 << k) {
        let subset: BTreeSet<String> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| points[i].clone()).collect();
        let name = format!("{{{}}}", subset.iter().cloned().collect::<Vec<_>>().join(","));
        objects.insert(name, subset);
    }
    let mut generators = Vec::new();
    for (dn, d) in &objects {
        for (cn, c) in &objects {
            let d: Vec<&String> = d.iter().collect();
            let c: Vec<&String> = c.iter().collect();
            let total = c.len().pow(d.len() as u32);
            for code in 0..total {
                let mut rest = code;
                let mut g = BTreeMap::new();
                for x in &d {
                    g.insert((*x).clone(), c[rest % c.len()].clone());
                    rest /= c.len();
                }
                generators.push((dn.clone(), cn.clone(), g));
            }
        }
    }
    PartialSystem::close(ambient, objects, generators, usize::MAX).expect("all maps are closed")
}

pub fn subsets(k: usize) -> DynSys {
    subsets_partial(k).to_dynsys().expect("valid")
}

fn build(cat: CategorySpec, spaces: &[(&str, &[&str])], maps: &[(&str, &[(&str, &str)])]) -> DynSys {
    let category = Category::validate(&cat).expect("built-in category is valid");
    let spec = DynSysSpec {
        spaces: spaces
            .iter()
            .map(|(o, pts)| (o.to_string(), pts.iter().map(|p| p.to_string()).collect()))
            .collect(),
        maps: maps.iter().map(|(m, g)| (m.to_string(), graph(g))).collect(),
    };
    DynSys::validate(category, &spec).expect("built-in system is valid")
}

/// One object with a group of named elements; `mul(i, j)` indexes the
/// product of elements `i` and `j`.
fn group_category(elements: &[&str], mul: impl Fn(usize, usize) -> usize) -> CategorySpec {
    let mut spec = CategorySpec {
        objects: vec!["o".into()],
        identities: BTreeMap::from([("o".to_string(), elements[0].to_string())]),
        ..Default::default()
    };
    for e in elements {
        spec.morphisms.push(MorphismSpec {
            name: e.to_string(),
            dom: "o".into(),
            cod: "o".into(),
        });
    }
    for i in 0..elements.len() {
        for j in 0..elements.len() {
            spec.composition
                .push((elements[i].into(), elements[j].into(), elements[mul(i, j)].into()));
        }
    }
    spec
}

pub fn swap() -> DynSys {
    build(
        group_category(&["e", "g"], |i, j| i ^ j),
        &[("o", &["p", "q"])],
        &[("e", &[("p", "p"), ("q", "q")]), ("g", &[("p", "q"), ("q", "p")])],
    )
}

pub fn triv2() -> DynSys {
    build(
        group_category(&["e", "g"], |i, j| i ^ j),
        &[("o", &["p"])],
        &[("e", &[("p", "p")]), ("g", &[("p", "p")])],
    )
}

/// `Z/2 × Z/2`; the element index bits are (first factor, second factor).
pub fn prod() -> DynSys {
    let id = &[("p", "p"), ("q", "q")][..];
    let sw = &[("p", "q"), ("q", "p")][..];
    build(
        group_category(&["(e,e)", "(g,e)", "(e,h)", "(g,h)"], |i, j| i ^ j),
        &[("o", &["p", "q"])],
        &[("(e,e)", id), ("(g,e)", sw), ("(e,h)", id), ("(g,h)", sw)],
    )
}

pub fn arrow() -> DynSys {
    let cat = CategorySpec {
        objects: vec!["e".into(), "f".into()],
        morphisms: vec![
            MorphismSpec { name: "id_e".into(), dom: "e".into(), cod: "e".into() },
            MorphismSpec { name: "id_f".into(), dom: "f".into(), cod: "f".into() },
            MorphismSpec { name: "a".into(), dom: "e".into(), cod: "f".into() },
        ],
        identities: BTreeMap::from([("e".into(), "id_e".into()), ("f".into(), "id_f".into())]),
        composition: vec![
            ("id_e".into(), "id_e".into(), "id_e".into()),
            ("id_f".into(), "id_f".into(), "id_f".into()),
            ("a".into(), "id_e".into(), "a".into()),
            ("id_f".into(), "a".into(), "a".into()),
        ],
    };
    let pt = &[("*", "*")][..];
    build(cat, &[("e", &["*"]), ("f", &["*"])], &[("id_e", pt), ("id_f", pt), ("a", pt)])
}

/// Name of the pair-groupoid morphism with codomain `i` and domain `j`.
pub fn pair_morphism(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("u{i}{j}")
    } else {
        format!("u{i}_{j}")
    }
}

/// The pair groupoid on objects `1..=n` over one-point spaces: exactly one
/// morphism `u_ij` with codomain `i` and domain `j`, and `u_ij u_jk = u_ik`.
pub fn pair(n: usize) -> DynSys {
    assert!(n >= 1);
    let mut cat = CategorySpec::default();
    let mut maps = DynSysSpec::default();
    for i in 1..=n {
        cat.objects.push(i.to_string());
        cat.identities.insert(i.to_string(), pair_morphism(n, i, i));
        maps.spaces.insert(i.to_string(), vec!["*".into()]);
    }
    for i in 1..=n {
        for j in 1..=n {
            let name = pair_morphism(n, i, j);
            cat.morphisms.push(MorphismSpec {
                name: name.clone(),
                dom: j.to_string(),
                cod: i.to_string(),
            });
            maps.maps.insert(name, graph(&[("*", "*")]));
            for k in 1..=n {
                cat.composition
                    .push((pair_morphism(n, i, j), pair_morphism(n, j, k), pair_morphism(n, i, k)));
            }
        }
    }
    let category = Category::validate_with(
        &cat,
        crate::category::Limits {
            max_objects: usize::MAX,
            max_morphisms: usize::MAX,
        },
    )
    .expect("pair groupoid is a category");
    DynSys::validate(category, &maps).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for name in NAMES {
            assert!(by_name(name).is_some(), "{name}");
        }
        assert!(by_name("pair7").is_none());
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn abs_table_matches_function_composition() {
        // In the opposite category m·n = n ∘ m.
        let d = abs();
        let g = d.category();
        let m = |s: &str| g.morphism(s).unwrap();
        assert_eq!(g.compose(m("sqr"), m("sqrt")), Some(m("abs"))); // sqrt ∘ sqr = abs
        assert_eq!(g.compose(m("sqrt"), m("sqr")), Some(m("id_Y"))); // sqr ∘ sqrt = id_Y
        assert_eq!(g.compose(m("sqrt"), m("abs")), Some(m("sqrt"))); // abs ∘ sqrt = sqrt
        assert_eq!(g.compose(m("abs"), m("sqr")), Some(m("sqr"))); // sqr ∘ abs = sqr
        assert_eq!(g.compose(m("abs"), m("abs")), Some(m("abs")));
        assert_eq!(g.compose(m("sqr"), m("sqr")), None);
        assert_eq!(g.compose(m("sqrt"), m("sqrt")), None);
        assert_eq!(g.compose(m("abs"), m("sqrt")), None);
    }
}
