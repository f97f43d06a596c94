//! Greedy reduction of failing instances.

use std::collections::BTreeSet;

use super::generate::Instance;
use crate::category::{MorId, ObjId};
use crate::dynsys::DynSys;

fn rebuild(inst: &Instance, system: DynSys) -> Instance {
    Instance::new(system, &inst.tags.source, inst.tags.seed)
}

fn all_points(sys: &DynSys) -> Vec<Vec<usize>> {
    sys.category()
        .object_ids()
        .map(|e| (0..sys.space_size(e)).collect())
        .collect()
}

/// Drops `x` at `e` together with every point that some map sends into a
/// dropped point. `None` when an object would lose all its points.
fn without_point(sys: &DynSys, e: ObjId, x: usize) -> Option<DynSys> {
    let g = sys.category();
    let mut dropped: Vec<Vec<bool>> = g.object_ids().map(|o| vec![false; sys.space_size(o)]).collect();
    dropped[e.0][x] = true;
    loop {
        let mut grew = false;
        for n in g.morphism_ids() {
            let (src, dst) = (g.cod(n).0, g.dom(n).0);
            for y in 0..sys.space_size(g.cod(n)) {
                if !dropped[src][y] && dropped[dst][sys.apply(n, y)] {
                    dropped[src][y] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let keep: Vec<Vec<usize>> = dropped
        .iter()
        .map(|d| (0..d.len()).filter(|&y| !d[y]).collect())
        .collect();
    if keep.iter().any(Vec::is_empty) {
        return None;
    }
    let objects: BTreeSet<ObjId> = g.object_ids().collect();
    let morphisms: BTreeSet<MorId> = g.morphism_ids().collect();
    sys.restrict(&objects, &morphisms, &keep).ok().map(|(s, _)| s)
}

fn without_object(sys: &DynSys, e: ObjId) -> Option<DynSys> {
    let g = sys.category();
    let objects: BTreeSet<ObjId> = g.object_ids().filter(|&o| o != e).collect();
    if objects.is_empty() {
        return None;
    }
    let morphisms: BTreeSet<MorId> = g
        .morphism_ids()
        .filter(|&m| objects.contains(&g.dom(m)) && objects.contains(&g.cod(m)))
        .collect();
    sys.restrict(&objects, &morphisms, &all_points(sys)).ok().map(|(s, _)| s)
}

fn generated_by(sys: &DynSys, gens: &BTreeSet<MorId>) -> Option<DynSys> {
    let g = sys.category();
    let objects: BTreeSet<ObjId> = g.object_ids().collect();
    let morphisms = g.generated_morphisms(&objects, gens);
    if morphisms.len() == g.num_morphisms() {
        return None;
    }
    sys.restrict(&objects, &morphisms, &all_points(sys)).ok().map(|(s, _)| s)
}

fn candidates(sys: &DynSys) -> Vec<DynSys> {
    let g = sys.category();
    let mut out = Vec::new();
    for e in g.object_ids() {
        out.extend(without_object(sys, e));
    }
    let loose: Vec<MorId> = g.morphism_ids().filter(|&m| !g.is_identity(m)).collect();
    for &m in &loose {
        out.extend(generated_by(sys, &BTreeSet::from([m])));
    }
    for &m in &loose {
        let rest: BTreeSet<MorId> = loose.iter().copied().filter(|&n| n != m).collect();
        out.extend(generated_by(sys, &rest));
    }
    for e in g.object_ids() {
        for x in 0..sys.space_size(e) {
            out.extend(without_point(sys, e, x));
        }
    }
    out
}

fn size(sys: &DynSys) -> (usize, usize, usize) {
    let g = sys.category();
    let points = g.object_ids().map(|e| sys.space_size(e)).sum();
    (g.num_objects(), g.num_morphisms(), points)
}

/// Repeatedly replaces the instance by a strictly smaller subsystem on
/// which `fails` still holds, until no candidate qualifies. Returns the
/// input unchanged when `fails` does not hold for it.
pub fn shrink(inst: &Instance, fails: impl Fn(&Instance) -> bool) -> Instance {
    let mut current = inst.clone();
    if !fails(&current) {
        return current;
    }
    'outer: loop {
        let before = size(&current.system);
        for cand in candidates(&current.system) {
            let (o, m, p) = size(&cand);
            if o + m + p >= before.0 + before.1 + before.2 {
                continue;
            }
            let next = rebuild(&current, cand);
            if fails(&next) {
                current = next;
                continue 'outer;
            }
        }
        return current;
    }
}
