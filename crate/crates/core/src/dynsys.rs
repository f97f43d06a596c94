//! Finite discrete category dynamical systems.
//!
//! A system assigns a finite nonempty point set to every object and, to every
//! morphism `n`, a map `space(cod n) -> space(dom n)`. The assignment is
//! contravariant: `map(mn) = map(n) ∘ map(m)`.
//!
//! Every space is discrete, so closures are trivial, "dense" means "all
//! points", and ideals of the function ring `Q^space` are exactly the
//! functions vanishing on a subset.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::category::{Category, CategorySpec, Congruence, Limits, MorId, MorphismSpec, ObjId};

/// Point sets and point maps by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynSysSpec {
    pub spaces: BTreeMap<String, Vec<String>>,
    /// morphism -> (point of space(cod) -> point of space(dom))
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "error")]
pub enum DynSysError {
    #[error("unknown object {name:?}")]
    UnknownObject { name: String },
    #[error("unknown morphism {name:?}")]
    UnknownMorphism { name: String },
    #[error("object {object:?} has no space")]
    MissingSpace { object: String },
    #[error("space of {object:?} is empty")]
    EmptySpace { object: String },
    #[error("point {point:?} listed twice in the space of {object:?}")]
    DuplicatePoint { object: String, point: String },
    #[error("morphism {morphism:?} has no map")]
    MissingMap { morphism: String },
    #[error("map of {morphism:?} at {point:?}: {reason}")]
    MapTypeMismatch {
        morphism: String,
        point: String,
        reason: String,
    },
    #[error("identity of {object:?} sends {point:?} to {image:?}")]
    IdentityNotIdentity {
        object: String,
        point: String,
        image: String,
    },
    #[error("not functorial at ({m:?}, {n:?}) on {point:?}: composite gives {composite:?}, components give {components:?}")]
    NotFunctorial {
        m: String,
        n: String,
        point: String,
        composite: String,
        components: String,
    },
}

/// A validated category dynamical system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynSys {
    category: Category,
    spaces: Vec<Vec<String>>,
    /// per morphism, indexed by point of space(cod), valued in space(dom)
    maps: Vec<Vec<usize>>,
}

/// A nonempty proper subset of `space(object)` invariant under `G_object`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSubset {
    pub object: ObjId,
    pub points: Vec<usize>,
}

impl DynSys {
    pub fn validate(category: Category, spec: &DynSysSpec) -> Result<DynSys, DynSysError> {
        use DynSysError::*;
        for name in spec.spaces.keys() {
            if category.object(name).is_none() {
                return Err(UnknownObject { name: name.clone() });
            }
        }
        for name in spec.maps.keys() {
            if category.morphism(name).is_none() {
                return Err(UnknownMorphism { name: name.clone() });
            }
        }
        let mut spaces = Vec::with_capacity(category.num_objects());
        for e in category.object_ids() {
            let name = category.object_name(e);
            let mut pts = spec
                .spaces
                .get(name)
                .ok_or_else(|| MissingSpace { object: name.into() })?
                .clone();
            if pts.is_empty() {
                return Err(EmptySpace { object: name.into() });
            }
            pts.sort();
            if let Some(w) = pts.windows(2).find(|w| w[0] == w[1]) {
                return Err(DuplicatePoint {
                    object: name.into(),
                    point: w[0].clone(),
                });
            }
            spaces.push(pts);
        }
        let index = |e: ObjId, p: &str| spaces[e.0].binary_search_by(|q| q.as_str().cmp(p)).ok();

        let mut maps = Vec::with_capacity(category.num_morphisms());
        for n in category.morphism_ids() {
            let name = category.name(n);
            let table = spec.maps.get(name).ok_or_else(|| MissingMap { morphism: name.into() })?;
            let (src, dst) = (category.cod(n), category.dom(n));
            for key in table.keys() {
                if index(src, key).is_none() {
                    return Err(MapTypeMismatch {
                        morphism: name.into(),
                        point: key.clone(),
                        reason: format!("not a point of {}", category.object_name(src)),
                    });
                }
            }
            let mut images = Vec::with_capacity(spaces[src.0].len());
            for p in &spaces[src.0] {
                let image = table.get(p).ok_or_else(|| MapTypeMismatch {
                    morphism: name.into(),
                    point: p.clone(),
                    reason: "no image".into(),
                })?;
                let j = index(dst, image).ok_or_else(|| MapTypeMismatch {
                    morphism: name.into(),
                    point: p.clone(),
                    reason: format!("image {image:?} is not a point of {}", category.object_name(dst)),
                })?;
                images.push(j);
            }
            maps.push(images);
        }

        let sys = DynSys {
            category,
            spaces,
            maps,
        };
        sys.check_functorial()?;
        Ok(sys)
    }

    fn check_functorial(&self) -> Result<(), DynSysError> {
        let g = &self.category;
        for e in g.object_ids() {
            let id = g.identity(e);
            for (x, &y) in self.maps[id.0].iter().enumerate() {
                if x != y {
                    return Err(DynSysError::IdentityNotIdentity {
                        object: g.object_name(e).into(),
                        point: self.spaces[e.0][x].clone(),
                        image: self.spaces[e.0][y].clone(),
                    });
                }
            }
        }
        for m in g.morphism_ids() {
            for n in g.morphisms_with_cod(g.dom(m)) {
                let mn = g.compose(m, n).expect("composable");
                for x in 0..self.spaces[g.cod(m).0].len() {
                    let composite = self.apply(mn, x);
                    let components = self.apply(n, self.apply(m, x));
                    if composite != components {
                        let d = g.dom(n).0;
                        return Err(DynSysError::NotFunctorial {
                            m: g.name(m).into(),
                            n: g.name(n).into(),
                            point: self.spaces[g.cod(m).0][x].clone(),
                            composite: self.spaces[d][composite].clone(),
                            components: self.spaces[d][components].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn category(&self) -> &Category {
        &self.category
    }

    pub fn space(&self, e: ObjId) -> &[String] {
        &self.spaces[e.0]
    }

    pub fn space_size(&self, e: ObjId) -> usize {
        self.spaces[e.0].len()
    }

    pub fn point_index(&self, e: ObjId, name: &str) -> Option<usize> {
        self.spaces[e.0].binary_search_by(|q| q.as_str().cmp(name)).ok()
    }

    /// The map of `n` as a table `space(cod n) -> space(dom n)`.
    pub fn pointmap(&self, n: MorId) -> &[usize] {
        &self.maps[n.0]
    }

    pub fn apply(&self, n: MorId, x: usize) -> usize {
        self.maps[n.0][x]
    }

    pub fn to_spec(&self) -> (CategorySpec, DynSysSpec) {
        let g = &self.category;
        let spaces = g
            .object_ids()
            .map(|e| (g.object_name(e).to_string(), self.spaces[e.0].clone()))
            .collect();
        let maps = g
            .morphism_ids()
            .map(|n| {
                let (src, dst) = (g.cod(n).0, g.dom(n).0);
                let table = self.maps[n.0]
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| (self.spaces[src][x].clone(), self.spaces[dst][y].clone()))
                    .collect();
                (g.name(n).to_string(), table)
            })
            .collect();
        (g.to_spec(), DynSysSpec { spaces, maps })
    }

    fn check_object(&self, e: ObjId) -> Result<(), DynSysError> {
        if e.0 < self.category.num_objects() {
            Ok(())
        } else {
            Err(DynSysError::UnknownObject {
                name: format!("#{}", e.0),
            })
        }
    }

    fn nonidentity_loops(&self, e: ObjId) -> Vec<MorId> {
        let id = self.category.identity(e);
        self.category
            .endomorphisms(e)
            .into_iter()
            .filter(|&n| n != id)
            .collect()
    }

    /// Points moved by every nonidentity endomorphism of `e`.
    pub fn aperiodic_points(&self, e: ObjId) -> Result<Vec<usize>, DynSysError> {
        self.check_object(e)?;
        let loops = self.nonidentity_loops(e);
        Ok((0..self.space_size(e))
            .filter(|&x| loops.iter().all(|&n| self.apply(n, x) != x))
            .collect())
    }

    /// A periodic point `(e, x, n)` with `n` a nonidentity loop fixing `x`.
    pub fn periodic_witness(&self) -> Option<(ObjId, usize, MorId)> {
        for e in self.category.object_ids() {
            for n in self.nonidentity_loops(e) {
                if let Some(x) = (0..self.space_size(e)).find(|&x| self.apply(n, x) == x) {
                    return Some((e, x, n));
                }
            }
        }
        None
    }

    pub fn is_topologically_free(&self) -> bool {
        self.periodic_witness().is_none()
    }

    /// Closure of `{x}` under the maps of `G_e`, sorted.
    pub fn orbit_closure(&self, e: ObjId, x: usize) -> Vec<usize> {
        let loops = self.category.endomorphisms(e);
        let mut seen = vec![false; self.space_size(e)];
        let mut queue = VecDeque::from([x]);
        seen[x] = true;
        while let Some(y) = queue.pop_front() {
            for &n in &loops {
                let z = self.apply(n, y);
                if !seen[z] {
                    seen[z] = true;
                    queue.push_back(z);
                }
            }
        }
        (0..seen.len()).filter(|&y| seen[y]).collect()
    }

    /// A nonempty proper invariant subset at some object, found as a proper
    /// orbit closure.
    pub fn minimality_witness(&self) -> Option<InvariantSubset> {
        for e in self.category.object_ids() {
            for x in 0..self.space_size(e) {
                let orbit = self.orbit_closure(e, x);
                if orbit.len() < self.space_size(e) {
                    return Some(InvariantSubset {
                        object: e,
                        points: orbit,
                    });
                }
            }
        }
        None
    }

    pub fn is_minimal(&self) -> bool {
        self.minimality_witness().is_none()
    }

    /// A nonidentity endomorphism acting as the identity map.
    pub fn faithfulness_witness(&self) -> Option<(ObjId, MorId)> {
        for e in self.category.object_ids() {
            for n in self.nonidentity_loops(e) {
                if self.maps[n.0].iter().enumerate().all(|(x, &y)| x == y) {
                    return Some((e, n));
                }
            }
        }
        None
    }

    pub fn is_faithful(&self) -> bool {
        self.faithfulness_witness().is_none()
    }

    /// Relates parallel morphisms with identical point maps. On discrete
    /// spaces indicator functions separate points, so this is exactly the
    /// kernel of the induced functor into rings.
    pub fn sigma_kernel(&self) -> Congruence {
        let g = &self.category;
        let labels: Vec<usize> = g
            .morphism_ids()
            .map(|m| {
                g.morphism_ids()
                    .find(|&n| g.dom(n) == g.dom(m) && g.cod(n) == g.cod(m) && self.maps[n.0] == self.maps[m.0])
                    .expect("m itself qualifies")
                    .0
            })
            .collect();
        let kernel = Congruence::from_labels_unchecked(labels.clone());
        debug_assert!(
            Congruence::from_labels(g, &labels).is_ok(),
            "kernel relation must be a congruence"
        );
        kernel
    }

    /// Decides `G_e`-simplicity of the function ring `Q^space(e)` by growing,
    /// for each point `x`, the smallest invariant ideal containing the
    /// indicator of `x`. Ideals of `Q^k` are spanned by indicators, and
    /// `σ(n)` sends the indicator of `t` to the indicator of the preimage
    /// `s(n)^{-1}(t)`. Returns the vanishing set of a proper invariant ideal
    /// when one exists.
    pub fn ge_simplicity_witness(&self, e: ObjId) -> Result<Option<Vec<usize>>, DynSysError> {
        self.check_object(e)?;
        let size = self.space_size(e);
        let loops = self.category.endomorphisms(e);
        let mut preimages: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); size]; loops.len()];
        for (k, &n) in loops.iter().enumerate() {
            for y in 0..size {
                preimages[k][self.apply(n, y)].push(y);
            }
        }
        for x in 0..size {
            let mut support = vec![false; size];
            support[x] = true;
            let mut stack = vec![x];
            while let Some(t) = stack.pop() {
                for pre in &preimages {
                    for &y in &pre[t] {
                        if !support[y] {
                            support[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            let vanishing: Vec<usize> = (0..size).filter(|&y| !support[y]).collect();
            if !vanishing.is_empty() {
                return Ok(Some(vanishing));
            }
        }
        Ok(None)
    }

    pub fn is_ge_simple(&self, e: ObjId) -> Result<bool, DynSysError> {
        Ok(self.ge_simplicity_witness(e)?.is_none())
    }

    /// The system restricted to the single object `e` and its endomorphisms.
    pub fn endomorphism_system(&self, e: ObjId) -> Result<(DynSys, Vec<MorId>), DynSysError> {
        self.check_object(e)?;
        let objects = BTreeSet::from([e]);
        let morphisms: BTreeSet<MorId> = self.category.endomorphisms(e).into_iter().collect();
        let keep: Vec<Vec<usize>> = self
            .category
            .object_ids()
            .map(|o| (0..self.space_size(o)).collect())
            .collect();
        self.restrict(&objects, &morphisms, &keep)
    }

    /// Restriction to a subcategory and to subsets of points (`points` is
    /// indexed by parent object). The morphism set must be closed under
    /// composition and contain the identities, and each kept map must send
    /// kept points to kept points. Returns the parent morphism of each new
    /// morphism.
    pub fn restrict(
        &self,
        objects: &BTreeSet<ObjId>,
        morphisms: &BTreeSet<MorId>,
        points: &[Vec<usize>],
    ) -> Result<(DynSys, Vec<MorId>), DynSysError> {
        let g = &self.category;
        let (sub, parents) = g.subcategory(objects, morphisms).ok_or_else(|| DynSysError::UnknownMorphism {
            name: "restriction is not a subcategory".into(),
        })?;
        let mut spec = DynSysSpec::default();
        for &e in objects {
            spec.spaces.insert(
                g.object_name(e).into(),
                points[e.0].iter().map(|&x| self.spaces[e.0][x].clone()).collect(),
            );
        }
        for &n in morphisms {
            let (src, dst) = (g.cod(n).0, g.dom(n).0);
            let table = points[src]
                .iter()
                .map(|&x| (self.spaces[src][x].clone(), self.spaces[dst][self.apply(n, x)].clone()))
                .collect();
            spec.maps.insert(g.name(n).into(), table);
        }
        Ok((DynSys::validate(sub, &spec)?, parents))
    }
}

/// A function between two named subsets of the ambient set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFunction {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub graph: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "error")]
pub enum PartialSystemError {
    #[error("point {point:?} of {object:?} is not in the ambient set")]
    UnknownPoint { object: String, point: String },
    #[error("subset {object:?} is empty")]
    EmptySubset { object: String },
    #[error("objects {a:?} and {b:?} are the same subset")]
    DuplicateSubset { a: String, b: String },
    #[error("unknown object {name:?}")]
    UnknownObject { name: String },
    #[error("function name {name:?} used twice")]
    DuplicateName { name: String },
    #[error("function {name:?} is not a map between its domain and codomain: {reason}")]
    BadFunction { name: String, reason: String },
    #[error("functions {a:?} and {b:?} are equal")]
    DuplicateFunction { a: String, b: String },
    #[error("identity of {object:?} is missing")]
    MissingIdentity { object: String },
    #[error("{f:?} ∘ {g:?} is not in the system")]
    NotClosed { f: String, g: String },
    #[error("composition closure exceeded {cap} functions")]
    ClosureExplosion { cap: usize },
}

/// A composition-closed collection of functions between subsets of a finite
/// discrete set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSystem {
    ambient: BTreeSet<String>,
    objects: BTreeMap<String, BTreeSet<String>>,
    functions: Vec<PartialFunction>,
}

type FunctionKey = (String, String, Vec<(String, String)>);

fn key_of(f: &PartialFunction) -> FunctionKey {
    (
        f.dom.clone(),
        f.cod.clone(),
        f.graph.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
    )
}

fn is_identity(f: &PartialFunction) -> bool {
    f.dom == f.cod && f.graph.iter().all(|(a, b)| a == b)
}

/// `f ∘ g`, assuming `dom(f) == cod(g)`.
fn compose_fn(f: &PartialFunction, g: &PartialFunction) -> BTreeMap<String, String> {
    g.graph
        .iter()
        .map(|(x, y)| (x.clone(), f.graph[y].clone()))
        .collect()
}

impl PartialSystem {
    pub fn new(
        ambient: BTreeSet<String>,
        objects: BTreeMap<String, BTreeSet<String>>,
        functions: Vec<PartialFunction>,
    ) -> Result<PartialSystem, PartialSystemError> {
        use PartialSystemError::*;
        let mut by_subset: BTreeMap<&BTreeSet<String>, &String> = BTreeMap::new();
        for (name, subset) in &objects {
            if subset.is_empty() {
                return Err(EmptySubset { object: name.clone() });
            }
            if let Some(p) = subset.iter().find(|p| !ambient.contains(*p)) {
                return Err(UnknownPoint {
                    object: name.clone(),
                    point: p.clone(),
                });
            }
            if let Some(prev) = by_subset.insert(subset, name) {
                return Err(DuplicateSubset {
                    a: prev.clone(),
                    b: name.clone(),
                });
            }
        }
        let mut names = BTreeSet::new();
        let mut keys: BTreeMap<FunctionKey, String> = BTreeMap::new();
        for f in &functions {
            if !names.insert(f.name.clone()) {
                return Err(DuplicateName { name: f.name.clone() });
            }
            let dom = objects.get(&f.dom).ok_or_else(|| UnknownObject { name: f.dom.clone() })?;
            let cod = objects.get(&f.cod).ok_or_else(|| UnknownObject { name: f.cod.clone() })?;
            let keys_ok = f.graph.keys().eq(dom.iter());
            if !keys_ok {
                return Err(BadFunction {
                    name: f.name.clone(),
                    reason: "graph is not defined exactly on the domain".into(),
                });
            }
            if let Some(y) = f.graph.values().find(|y| !cod.contains(*y)) {
                return Err(BadFunction {
                    name: f.name.clone(),
                    reason: format!("value {y:?} outside the codomain"),
                });
            }
            if let Some(prev) = keys.insert(key_of(f), f.name.clone()) {
                return Err(DuplicateFunction {
                    a: prev,
                    b: f.name.clone(),
                });
            }
        }
        for object in objects.keys() {
            if !functions.iter().any(|f| &f.dom == object && is_identity(f)) {
                return Err(MissingIdentity { object: object.clone() });
            }
        }
        for f in &functions {
            for g in &functions {
                if f.dom != g.cod {
                    continue;
                }
                let key = (g.dom.clone(), f.cod.clone(), compose_fn(f, g).into_iter().collect());
                if !keys.contains_key(&key) {
                    return Err(NotClosed {
                        f: f.name.clone(),
                        g: g.name.clone(),
                    });
                }
            }
        }
        Ok(PartialSystem {
            ambient,
            objects,
            functions,
        })
    }

    /// Closes `generators` (given as `(dom, cod, graph)`) together with the
    /// identities of all objects under composition, and names every function
    /// canonically. Fails once more than `max_functions` functions appear.
    pub fn close(
        ambient: BTreeSet<String>,
        objects: BTreeMap<String, BTreeSet<String>>,
        generators: Vec<(String, String, BTreeMap<String, String>)>,
        max_functions: usize,
    ) -> Result<PartialSystem, PartialSystemError> {
        let mut found: BTreeSet<FunctionKey> = BTreeSet::new();
        let mut queue: Vec<FunctionKey> = Vec::new();
        let push = |key: FunctionKey, found: &mut BTreeSet<FunctionKey>, queue: &mut Vec<FunctionKey>| {
            if found.insert(key.clone()) {
                queue.push(key);
            }
        };
        for (name, subset) in &objects {
            let graph = subset.iter().map(|p| (p.clone(), p.clone())).collect();
            push((name.clone(), name.clone(), graph), &mut found, &mut queue);
        }
        for (dom, cod, graph) in generators {
            push((dom, cod, graph.into_iter().collect()), &mut found, &mut queue);
        }
        let as_fn = |k: &FunctionKey| PartialFunction {
            name: String::new(),
            dom: k.0.clone(),
            cod: k.1.clone(),
            graph: k.2.iter().cloned().collect(),
        };
        while let Some(key) = queue.pop() {
            if found.len() > max_functions {
                return Err(PartialSystemError::ClosureExplosion { cap: max_functions });
            }
            let new = as_fn(&key);
            let existing: Vec<FunctionKey> = found.iter().cloned().collect();
            for other in &existing {
                let other = as_fn(other);
                for (f, g) in [(&new, &other), (&other, &new)] {
                    if f.dom == g.cod {
                        let graph = compose_fn(f, g);
                        push((g.dom.clone(), f.cod.clone(), graph.into_iter().collect()), &mut found, &mut queue);
                    }
                }
            }
        }
        if found.len() > max_functions {
            return Err(PartialSystemError::ClosureExplosion { cap: max_functions });
        }
        let functions = found
            .iter()
            .map(|k| {
                let mut f = as_fn(k);
                f.name = canonical_name(&f, &objects);
                f
            })
            .collect();
        PartialSystem::new(ambient, objects, functions)
    }

    pub fn ambient(&self) -> &BTreeSet<String> {
        &self.ambient
    }

    pub fn objects(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.objects
    }

    pub fn functions(&self) -> &[PartialFunction] {
        &self.functions
    }

    fn loops_on<'a>(&'a self, object: &'a str) -> impl Iterator<Item = &'a PartialFunction> + 'a {
        self.functions
            .iter()
            .filter(move |f| f.dom == object && f.cod == object)
    }

    /// Every point of the ambient set is aperiodic: no nonidentity loop
    /// fixes it.
    pub fn is_topologically_free(&self) -> bool {
        self.ambient.iter().all(|x| {
            !self
                .functions
                .iter()
                .any(|f| f.dom == f.cod && !is_identity(f) && f.graph.get(x) == Some(x))
        })
    }

    /// Direct check of the definition by scanning all nonempty proper subsets
    /// of every domain (domains here are small).
    pub fn is_minimal(&self) -> bool {
        for (name, subset) in &self.objects {
            let points: Vec<&String> = subset.iter().collect();
            assert!(points.len() < 24, "subset scan is exponential");
            let loops: Vec<&PartialFunction> = self.loops_on(name).collect();
            let full = (1u32 << points.len()) - 1;
            for mask in 1..full {
                let invariant = loops.iter().all(|f| {
                    (0..points.len())
                        .filter(|i| mask & (1 << i) != 0)
                        .all(|i| {
                            let image = &f.graph[points[i]];
                            let j = points.iter().position(|p| *p == image).unwrap();
                            mask & (1 << j) != 0
                        })
                });
                if invariant {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_faithful(&self) -> bool {
        self.functions
            .iter()
            .filter(|f| f.dom == f.cod && !is_identity(f))
            .all(|f| f.graph.iter().any(|(x, y)| x != y))
    }

    /// The system over the opposite category: a function `f: A -> B`
    /// becomes a morphism with codomain `A` and domain `B` whose point map
    /// is `f` itself.
    pub fn to_dynsys(&self) -> Result<DynSys, PartialSystemError> {
        let keys: BTreeMap<FunctionKey, &str> = self
            .functions
            .iter()
            .map(|f| (key_of(f), f.name.as_str()))
            .collect();
        let mut spec = CategorySpec {
            objects: self.objects.keys().cloned().collect(),
            ..Default::default()
        };
        for f in &self.functions {
            spec.morphisms.push(MorphismSpec {
                name: f.name.clone(),
                dom: f.cod.clone(),
                cod: f.dom.clone(),
            });
            if is_identity(f) {
                spec.identities.insert(f.dom.clone(), f.name.clone());
            }
        }
        // In the opposite category m·n = n ∘ m, defined when cod(m) = dom(n).
        for m in &self.functions {
            for n in &self.functions {
                if m.cod != n.dom {
                    continue;
                }
                let key = (m.dom.clone(), n.cod.clone(), compose_fn(n, m).into_iter().collect());
                let composite = keys.get(&key).ok_or_else(|| PartialSystemError::NotClosed {
                    f: n.name.clone(),
                    g: m.name.clone(),
                })?;
                spec.composition
                    .push((m.name.clone(), n.name.clone(), composite.to_string()));
            }
        }
        let limits = Limits {
            max_objects: usize::MAX,
            max_morphisms: usize::MAX,
        };
        let category = Category::validate_with(&spec, limits).map_err(|e| PartialSystemError::BadFunction {
            name: String::new(),
            reason: e.to_string(),
        })?;
        let dyn_spec = DynSysSpec {
            spaces: self
                .objects
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().cloned().collect()))
                .collect(),
            maps: self
                .functions
                .iter()
                .map(|f| (f.name.clone(), f.graph.clone()))
                .collect(),
        };
        DynSys::validate(category, &dyn_spec).map_err(|e| PartialSystemError::BadFunction {
            name: String::new(),
            reason: e.to_string(),
        })
    }
}

fn canonical_name(f: &PartialFunction, objects: &BTreeMap<String, BTreeSet<String>>) -> String {
    if is_identity(f) {
        return format!("id_{}", f.dom);
    }
    let images: Vec<&str> = objects[&f.dom].iter().map(|x| f.graph[x].as_str()).collect();
    format!("{}->{}[{}]", f.dom, f.cod, images.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn swap_is_free_minimal_faithful() {
        let d = builtins::swap();
        let o = ObjId(0);
        assert_eq!(d.aperiodic_points(o).unwrap(), vec![0, 1]);
        assert!(d.is_topologically_free());
        assert!(d.is_minimal());
        assert!(d.is_faithful());
        assert!(d.is_ge_simple(o).unwrap());
        assert!(d.sigma_kernel().is_locally_trivial(d.category()));
        assert_eq!(d.sigma_kernel(), Congruence::equality(d.category()));
    }

    #[test]
    fn collapsing_involution_is_not_functorial() {
        let d = builtins::swap();
        let (cat, mut spec) = d.to_spec();
        let g = spec.maps.get_mut("g").unwrap();
        g.insert("p".into(), "p".into());
        g.insert("q".into(), "p".into());
        let err = DynSys::validate(Category::validate(&cat).unwrap(), &spec).unwrap_err();
        assert!(matches!(err, DynSysError::NotFunctorial { .. }), "{err:?}");
    }

    #[test]
    fn empty_space_is_rejected() {
        let d = builtins::triv2();
        let (cat, mut spec) = d.to_spec();
        spec.spaces.insert("o".into(), vec![]);
        let err = DynSys::validate(Category::validate(&cat).unwrap(), &spec).unwrap_err();
        assert_eq!(err, DynSysError::EmptySpace { object: "o".into() });
    }

    #[test]
    fn map_into_wrong_space() {
        let d = builtins::arrow();
        let (cat, mut spec) = d.to_spec();
        spec.maps.get_mut("a").unwrap().insert("*".into(), "nowhere".into());
        let err = DynSys::validate(Category::validate(&cat).unwrap(), &spec).unwrap_err();
        assert!(matches!(err, DynSysError::MapTypeMismatch { .. }));
    }

    #[test]
    fn trivial_action_on_a_point() {
        let d = builtins::triv2();
        let o = ObjId(0);
        assert!(d.aperiodic_points(o).unwrap().is_empty());
        assert!(!d.is_topologically_free());
        let (e, g) = d.faithfulness_witness().unwrap();
        assert_eq!((e, d.category().name(g)), (o, "g"));
        let k = d.sigma_kernel();
        assert!(k.related(d.category().morphism("e").unwrap(), g));
        assert!(!k.is_locally_trivial(d.category()));
    }

    #[test]
    fn abs_surrogate_verdicts() {
        let d = builtins::abs();
        let g = d.category();
        let x = g.object("X").unwrap();
        let y = g.object("Y").unwrap();
        let aperiodic: Vec<&str> = d
            .aperiodic_points(x)
            .unwrap()
            .into_iter()
            .map(|i| d.space(x)[i].as_str())
            .collect();
        assert_eq!(aperiodic, vec!["-1"]);
        assert!(!d.is_topologically_free());
        let w = d.minimality_witness().unwrap();
        assert_eq!(w.object, x);
        let pts: Vec<&str> = w.points.iter().map(|&i| d.space(x)[i].as_str()).collect();
        assert_eq!(pts, vec!["-1", "1"]);
        assert!(d.is_faithful());
        // S = {0, 1} at X; at Y the monoid is trivial so {"0"} is invariant.
        let s: Vec<&str> = d
            .ge_simplicity_witness(x)
            .unwrap()
            .unwrap()
            .into_iter()
            .map(|i| d.space(x)[i].as_str())
            .collect();
        assert_eq!(s, vec!["0", "1"]);
        assert!(!d.is_ge_simple(y).unwrap());
    }

    #[test]
    fn product_action_is_minimal_not_faithful() {
        let d = builtins::prod();
        let g = d.category();
        assert!(d.is_minimal());
        let (_, n) = d.faithfulness_witness().unwrap();
        assert_eq!(g.name(n), "(e,h)");
        let k = d.sigma_kernel();
        let m = |s: &str| g.morphism(s).unwrap();
        assert!(k.related(m("(g,e)"), m("(g,h)")));
        assert!(k.related(m("(e,e)"), m("(e,h)")));
        assert!(!k.related(m("(e,e)"), m("(g,e)")));
        assert!(!k.is_locally_trivial(g));
    }

    #[test]
    fn subsets_example() {
        let p = builtins::subsets_partial(2);
        let d = p.to_dynsys().unwrap();
        assert_eq!(d.category().num_objects(), 3);
        assert!(!d.category().is_groupoid());
        assert!(d.is_minimal() && d.is_faithful() && !d.is_topologically_free());
        assert!(p.is_minimal() && p.is_faithful() && !p.is_topologically_free());
    }

    #[test]
    fn singleton_partial_system_is_terminal() {
        let ambient = BTreeSet::from(["x".to_string()]);
        let objects = BTreeMap::from([("A".to_string(), ambient.clone())]);
        let p = PartialSystem::close(ambient, objects, vec![], 10).unwrap();
        let d = p.to_dynsys().unwrap();
        assert_eq!(d.category().num_morphisms(), 1);
        assert_eq!(d.space(ObjId(0)).len(), 1);
    }

    #[test]
    fn partial_system_errors() {
        let ambient: BTreeSet<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let objects = BTreeMap::from([("X".to_string(), ambient.clone())]);
        let id = PartialFunction {
            name: "id".into(),
            dom: "X".into(),
            cod: "X".into(),
            graph: [("a", "a"), ("b", "b")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
        };
        let c = PartialFunction {
            name: "c".into(),
            dom: "X".into(),
            cod: "X".into(),
            graph: [("a", "a"), ("b", "a")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
        };
        let swap = PartialFunction {
            name: "s".into(),
            dom: "X".into(),
            cod: "X".into(),
            graph: [("a", "b"), ("b", "a")].iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
        };
        assert!(matches!(
            PartialSystem::new(ambient.clone(), objects.clone(), vec![c.clone()]),
            Err(PartialSystemError::MissingIdentity { .. })
        ));
        assert!(matches!(
            PartialSystem::new(ambient.clone(), objects.clone(), vec![id.clone(), c.clone(), swap.clone()]),
            Err(PartialSystemError::NotClosed { .. })
        ));
        assert!(PartialSystem::new(ambient.clone(), objects.clone(), vec![id.clone(), swap]).is_ok());
        assert!(matches!(
            PartialSystem::close(ambient, objects, vec![("X".into(), "X".into(), c.graph)], 1),
            Err(PartialSystemError::ClosureExplosion { cap: 1 })
        ));
    }
}
