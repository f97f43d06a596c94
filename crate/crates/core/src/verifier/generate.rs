//! Seeded random instance generators.
//!
//! Groupoid systems: each connected component is a pair groupoid on `k`
//! objects times a finite group `H`. One `H`-set `X` (a disjoint union of
//! right coset spaces `K\H`) is transported to every object by a random
//! bijection `τ_i`, and the morphism `(i, j, h)` (codomain `i`, domain `j`)
//! acts by `x ↦ τ_j(τ_i⁻¹(x)·h)`. Abelian `H` is a product of at most two
//! cyclic groups of order at most 6; non-abelian components use `S3`.
//!
//! Partial systems: random functions between random nonempty subsets of a
//! set of at most four points, closed under composition.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::groups::FiniteGroup;
use crate::category::{Category, CategorySpec, MorphismSpec};
use crate::dynsys::{DynSys, DynSysSpec, PartialSystem, PartialSystemError};
use crate::io::algebra_dim;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenBounds {
    pub max_dim: usize,
    pub max_components: usize,
    pub max_objects_per_component: usize,
    pub max_points: usize,
    pub max_functions: usize,
}

impl Default for GenBounds {
    fn default() -> Self {
        GenBounds {
            max_dim: 64,
            max_components: 2,
            max_objects_per_component: 3,
            max_points: 4,
            max_functions: 40,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("bounds cannot be met: {0}")]
    BoundsExceeded(String),
    #[error(transparent)]
    Closure(#[from] PartialSystemError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// groupoids, mostly locally abelian, occasionally with `S3` isotropy
    Groupoid,
    LocallyAbelianGroupoid,
    Partial,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::Groupoid => "groupoid",
            Generator::LocallyAbelianGroupoid => "abelian_groupoid",
            Generator::Partial => "partial",
        }
    }

    pub fn from_name(name: &str) -> Option<Generator> {
        [Generator::Groupoid, Generator::LocallyAbelianGroupoid, Generator::Partial]
            .into_iter()
            .find(|g| g.name() == name)
    }

    pub fn generate(self, seed: u64, bounds: &GenBounds) -> Result<Instance, GenError> {
        match self {
            Generator::Groupoid => gen_groupoid_system(seed, bounds),
            Generator::LocallyAbelianGroupoid => gen_locally_abelian_groupoid_system(seed, bounds),
            Generator::Partial => gen_partial_system(seed, bounds),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tags {
    pub groupoid: bool,
    pub locally_abelian: bool,
    pub source: String,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub system: DynSys,
    /// the partially defined system this instance was built from, if any
    pub partial: Option<PartialSystem>,
    pub tags: Tags,
}

impl Instance {
    pub fn new(system: DynSys, source: &str, seed: u64) -> Instance {
        let p = system.category().structure_predicates();
        Instance {
            tags: Tags {
                groupoid: p.groupoid,
                locally_abelian: p.locally_abelian,
                source: source.into(),
                seed,
            },
            system,
            partial: None,
        }
    }

    pub fn is_locally_abelian_groupoid(&self) -> bool {
        self.tags.groupoid && self.tags.locally_abelian
    }
}

struct ComponentPlan {
    objects: usize,
    group: FiniteGroup,
    /// right coset spaces making up `X`
    orbits: Vec<Vec<Vec<usize>>>,
}

impl ComponentPlan {
    fn points(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }

    fn dim(&self) -> usize {
        self.objects * self.objects * self.group.order() * self.points()
    }

    /// `h` acting on `X` from the right.
    fn action(&self, h: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.points());
        let mut offset = 0;
        for cosets in &self.orbits {
            out.extend(self.group.coset_action(cosets, h).into_iter().map(|c| c + offset));
            offset += cosets.len();
        }
        out
    }
}

fn draw_component<R: Rng>(rng: &mut R, bounds: &GenBounds, nonabelian: bool) -> ComponentPlan {
    let objects = match rng.random_range(0..20) {
        0..9 => 1,
        9..17 => 2,
        _ => 3,
    }
    .min(bounds.max_objects_per_component.max(1));
    let group = if nonabelian {
        FiniteGroup::symmetric3()
    } else {
        let factors = match rng.random_range(0..20) {
            0..3 => 0,
            3..15 => 1,
            _ => 2,
        };
        let orders: Vec<usize> = (0..factors).map(|_| rng.random_range(2..=6)).collect();
        FiniteGroup::cyclic_product(&orders)
    };
    let orbit_count = if rng.random_bool(0.7) { 1 } else { 2 };
    let orbits = (0..orbit_count)
        .map(|_| {
            let k = group.random_subgroup(rng, 0.5);
            group.right_cosets(&k)
        })
        .collect();
    ComponentPlan { objects, group, orbits }
}

fn trivial_component() -> ComponentPlan {
    let group = FiniteGroup::cyclic_product(&[]);
    let orbits = vec![group.right_cosets(&[0])];
    ComponentPlan {
        objects: 1,
        group,
        orbits,
    }
}

fn groupoid_system<R: Rng>(rng: &mut R, bounds: &GenBounds, p_nonabelian: f64) -> Result<DynSys, GenError> {
    if bounds.max_dim == 0 || bounds.max_components == 0 {
        return Err(GenError::BoundsExceeded("no room for a component".into()));
    }
    let components = if bounds.max_components > 1 && rng.random_bool(0.3) { 2 } else { 1 };
    let mut budget = bounds.max_dim;
    let mut plans = Vec::new();
    for _ in 0..components {
        if budget == 0 {
            break;
        }
        let nonabelian = rng.random_bool(p_nonabelian);
        let plan = (0..32)
            .map(|_| draw_component(rng, bounds, nonabelian))
            .find(|p| p.dim() <= budget)
            .unwrap_or_else(trivial_component);
        budget -= plan.dim();
        plans.push(plan);
    }
    let mut cat = CategorySpec::default();
    let mut dyn_spec = DynSysSpec::default();
    for (c, plan) in plans.iter().enumerate() {
        let order = plan.group.order();
        let n = plan.points();
        let object = |i: usize| format!("c{c}o{i}");
        let morphism = |i: usize, j: usize, h: usize| format!("c{c}m{i}{j}h{h}");
        let point = |x: usize| format!("x{x}");
        let transports: Vec<Vec<usize>> = (0..plan.objects)
            .map(|_| {
                let mut t: Vec<usize> = (0..n).collect();
                t.shuffle(rng);
                t
            })
            .collect();
        let inverses: Vec<Vec<usize>> = transports
            .iter()
            .map(|t| {
                let mut inv = vec![0; n];
                for (x, &y) in t.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        let actions: Vec<Vec<usize>> = (0..order).map(|h| plan.action(h)).collect();
        for i in 0..plan.objects {
            cat.objects.push(object(i));
            cat.identities.insert(object(i), morphism(i, i, 0));
            dyn_spec.spaces.insert(object(i), (0..n).map(point).collect());
        }
        for i in 0..plan.objects {
            for (j, transport) in transports.iter().enumerate() {
                for h in 0..order {
                    let name = morphism(i, j, h);
                    cat.morphisms.push(MorphismSpec {
                        name: name.clone(),
                        dom: object(j),
                        cod: object(i),
                    });
                    let table = (0..n)
                        .map(|x| (point(x), point(transport[actions[h][inverses[i][x]]])))
                        .collect();
                    dyn_spec.maps.insert(name.clone(), table);
                    for l in 0..plan.objects {
                        for h2 in 0..order {
                            cat.composition.push((
                                name.clone(),
                                morphism(j, l, h2),
                                morphism(i, l, plan.group.mul(h, h2)),
                            ));
                        }
                    }
                }
            }
        }
    }
    let category = Category::validate(&cat).expect("pair groupoid times a group is a category");
    Ok(DynSys::validate(category, &dyn_spec).expect("transported right actions are functorial"))
}

/// Mostly locally abelian groupoid systems; about one component in eight
/// has `S3` isotropy.
pub fn gen_groupoid_system(seed: u64, bounds: &GenBounds) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sys = groupoid_system(&mut rng, bounds, 0.125)?;
    Ok(Instance::new(sys, Generator::Groupoid.name(), seed))
}

pub fn gen_locally_abelian_groupoid_system(seed: u64, bounds: &GenBounds) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sys = groupoid_system(&mut rng, bounds, 0.0)?;
    Ok(Instance::new(sys, Generator::LocallyAbelianGroupoid.name(), seed))
}

fn subset_name(points: &BTreeSet<String>) -> String {
    format!("{{{}}}", points.iter().cloned().collect::<Vec<_>>().join(","))
}

pub fn gen_partial_system(seed: u64, bounds: &GenBounds) -> Result<Instance, GenError> {
    if bounds.max_points == 0 || bounds.max_dim == 0 {
        return Err(GenError::BoundsExceeded("no points allowed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = bounds.max_points.min(4);
    let size = rng.random_range(hi.min(2)..=hi);
    let ambient: Vec<String> = ["a", "b", "c", "d"][..size].iter().map(|s| s.to_string()).collect();
    let bijective = rng.random_bool(0.3);
    let count = rng.random_range(1..=3);
    let mut objects: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut generators = Vec::new();
    let random_subset = |rng: &mut ChaCha8Rng, k: usize| -> Vec<String> {
        let mut pts = ambient.clone();
        pts.shuffle(rng);
        pts.truncate(k);
        pts
    };
    for _ in 0..count {
        let (dom, cod) = if bijective {
            let k = rng.random_range(1..=size);
            (random_subset(&mut rng, k), random_subset(&mut rng, k))
        } else {
            let (kd, kc) = (rng.random_range(1..=size), rng.random_range(1..=size));
            (random_subset(&mut rng, kd), random_subset(&mut rng, kc))
        };
        let mut images = cod.clone();
        if bijective {
            images.shuffle(&mut rng);
        } else {
            images = dom.iter().map(|_| cod[rng.random_range(0..cod.len())].clone()).collect();
        }
        let graph: BTreeMap<String, String> = dom.iter().cloned().zip(images).collect();
        let (dom, cod): (BTreeSet<String>, BTreeSet<String>) = (dom.into_iter().collect(), cod.into_iter().collect());
        let (dn, cn) = (subset_name(&dom), subset_name(&cod));
        objects.insert(dn.clone(), dom);
        objects.insert(cn.clone(), cod);
        generators.push((dn, cn, graph));
    }
    let used: BTreeSet<String> = objects.values().flatten().cloned().collect();
    let partial = PartialSystem::close(used, objects, generators, bounds.max_functions)?;
    let system = partial.to_dynsys()?;
    let dim = algebra_dim(&system);
    if dim > bounds.max_dim {
        return Err(GenError::BoundsExceeded(format!("algebra dimension {dim} > {}", bounds.max_dim)));
    }
    let mut instance = Instance::new(system, Generator::Partial.name(), seed);
    instance.partial = Some(partial);
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::instance_to_json;

    #[test]
    fn generators_are_deterministic() {
        let b = GenBounds::default();
        for g in [Generator::Groupoid, Generator::LocallyAbelianGroupoid, Generator::Partial] {
            for seed in 0..20 {
                let (x, y) = (g.generate(seed, &b), g.generate(seed, &b));
                match (x, y) {
                    (Ok(x), Ok(y)) => assert_eq!(instance_to_json(&x.system), instance_to_json(&y.system)),
                    (Err(x), Err(y)) => assert_eq!(x, y),
                    _ => panic!("nondeterministic outcome"),
                }
            }
        }
    }

    #[test]
    fn groupoid_outputs_respect_bounds() {
        let b = GenBounds::default();
        for seed in 0..200 {
            let inst = gen_locally_abelian_groupoid_system(seed, &b).unwrap();
            assert!(inst.is_locally_abelian_groupoid());
            assert!(algebra_dim(&inst.system) <= b.max_dim);
            let g = inst.system.category();
            for n in g.morphism_ids() {
                let mut image = inst.system.pointmap(n).to_vec();
                image.sort_unstable();
                image.dedup();
                assert_eq!(image.len(), inst.system.space_size(g.cod(n)));
            }
        }
    }

    #[test]
    fn some_groupoids_have_nonabelian_isotropy() {
        let b = GenBounds::default();
        let nonabelian = (0..200)
            .filter(|&s| !gen_groupoid_system(s, &b).unwrap().tags.locally_abelian)
            .count();
        assert!(nonabelian > 0);
    }

    #[test]
    fn zero_bounds_are_rejected() {
        let b = GenBounds {
            max_dim: 0,
            ..GenBounds::default()
        };
        assert!(matches!(gen_groupoid_system(1, &b), Err(GenError::BoundsExceeded(_))));
        assert!(matches!(gen_partial_system(1, &b), Err(GenError::BoundsExceeded(_))));
    }
}
