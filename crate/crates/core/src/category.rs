//! Finite small categories with explicit composition tables, and congruence
//! relations on them.
//!
//! Composition follows the convention `compose(m, n) = mn`, defined exactly
//! when `dom(m) == cod(n)`; the composite has `dom(mn) = dom(n)` and
//! `cod(mn) = cod(m)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorId(pub usize);

/// Size caps applied during validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_objects: 64,
            max_morphisms: 512,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// Unvalidated description of a category by names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    /// object -> identity morphism
    pub identities: BTreeMap<String, String>,
    /// `(m, n, mn)`
    pub composition: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "error")]
pub enum CategoryError {
    #[error("a category needs at least one object")]
    Empty,
    #[error("too large: {objects} objects / {morphisms} morphisms (caps {max_objects} / {max_morphisms})")]
    TooLarge {
        objects: usize,
        morphisms: usize,
        max_objects: usize,
        max_morphisms: usize,
    },
    #[error("duplicate object {name:?}")]
    DuplicateObject { name: String },
    #[error("duplicate morphism {name:?}")]
    DuplicateMorphism { name: String },
    #[error("unknown object {name:?}")]
    UnknownObject { name: String },
    #[error("unknown morphism {name:?}")]
    UnknownMorphism { name: String },
    #[error("object {object:?} has no identity")]
    MissingIdentity { object: String },
    #[error("identity {morphism:?} of {object:?} is not an endomorphism of it")]
    BadIdentity { object: String, morphism: String },
    #[error("composite {m:?}{n:?} = {composite:?} is invalid: {reason}")]
    BadComposite {
        m: String,
        n: String,
        composite: String,
        reason: String,
    },
    #[error("composite {m:?}{n:?} given twice: {first:?} and {second:?}")]
    ConflictingComposite {
        m: String,
        n: String,
        first: String,
        second: String,
    },
    #[error("composable pair ({m:?}, {n:?}) has no composite")]
    PartialComposition { m: String, n: String },
    #[error("identity law fails for {morphism:?} with {identity:?}")]
    IdentityLaw { morphism: String, identity: String },
    #[error("({m:?}{n:?}){p:?} = {left:?} but {m:?}({n:?}{p:?}) = {right:?}")]
    NonAssociative {
        m: String,
        n: String,
        p: String,
        left: String,
        right: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A validated finite category. Immutable; identifiers are sorted
/// lexicographically so indices are canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Category {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    /// dense `m * |mor| + n`
    table: Vec<Option<MorId>>,
    object_index: HashMap<String, ObjId>,
    morphism_index: HashMap<String, MorId>,
}

/// The four structural predicates reported together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructurePredicates {
    pub connected: bool,
    pub groupoid: bool,
    pub locally_group: bool,
    pub locally_abelian: bool,
}

impl Category {
    pub fn validate(spec: &CategorySpec) -> Result<Category, CategoryError> {
        Category::validate_with(spec, Limits::default())
    }

    pub fn validate_with(spec: &CategorySpec, limits: Limits) -> Result<Category, CategoryError> {
        use CategoryError::*;
        if spec.objects.is_empty() {
            return Err(Empty);
        }
        if spec.objects.len() > limits.max_objects || spec.morphisms.len() > limits.max_morphisms {
            return Err(TooLarge {
                objects: spec.objects.len(),
                morphisms: spec.morphisms.len(),
                max_objects: limits.max_objects,
                max_morphisms: limits.max_morphisms,
            });
        }

        let mut objects = spec.objects.clone();
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                return Err(DuplicateObject { name: w[0].clone() });
            }
        }
        let object_index: HashMap<String, ObjId> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), ObjId(i)))
            .collect();
        let obj = |name: &str| {
            object_index
                .get(name)
                .copied()
                .ok_or_else(|| UnknownObject { name: name.into() })
        };

        let mut sorted_morphisms = spec.morphisms.clone();
        sorted_morphisms.sort_by(|a, b| a.name.cmp(&b.name));
        for w in sorted_morphisms.windows(2) {
            if w[0].name == w[1].name {
                return Err(DuplicateMorphism {
                    name: w[0].name.clone(),
                });
            }
        }
        let mut morphisms = Vec::with_capacity(sorted_morphisms.len());
        for m in &sorted_morphisms {
            morphisms.push(Morphism {
                name: m.name.clone(),
                dom: obj(&m.dom)?,
                cod: obj(&m.cod)?,
            });
        }
        let morphism_index: HashMap<String, MorId> = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.name.clone(), MorId(i)))
            .collect();
        let mor = |name: &str| {
            morphism_index
                .get(name)
                .copied()
                .ok_or_else(|| UnknownMorphism { name: name.into() })
        };

        for name in spec.identities.keys() {
            obj(name)?;
        }
        let mut identity = Vec::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            let name = spec
                .identities
                .get(o)
                .ok_or_else(|| MissingIdentity { object: o.clone() })?;
            let id = mor(name)?;
            let m = &morphisms[id.0];
            if m.dom != ObjId(i) || m.cod != ObjId(i) {
                return Err(BadIdentity {
                    object: o.clone(),
                    morphism: name.clone(),
                });
            }
            identity.push(id);
        }

        let count = morphisms.len();
        let mut table: Vec<Option<MorId>> = vec![None; count * count];
        for (m_name, n_name, c_name) in &spec.composition {
            let (m, n, c) = (mor(m_name)?, mor(n_name)?, mor(c_name)?);
            let bad = |reason: &str| BadComposite {
                m: m_name.clone(),
                n: n_name.clone(),
                composite: c_name.clone(),
                reason: reason.into(),
            };
            let (mm, nn, cc) = (&morphisms[m.0], &morphisms[n.0], &morphisms[c.0]);
            if mm.dom != nn.cod {
                return Err(bad("pair is not composable"));
            }
            if cc.dom != nn.dom || cc.cod != mm.cod {
                return Err(bad("composite has the wrong domain or codomain"));
            }
            let slot = &mut table[m.0 * count + n.0];
            match slot {
                Some(prev) if *prev != c => {
                    return Err(ConflictingComposite {
                        m: m_name.clone(),
                        n: n_name.clone(),
                        first: morphisms[prev.0].name.clone(),
                        second: c_name.clone(),
                    })
                }
                _ => *slot = Some(c),
            }
        }

        for m in 0..count {
            for n in 0..count {
                if morphisms[m].dom == morphisms[n].cod && table[m * count + n].is_none() {
                    return Err(PartialComposition {
                        m: morphisms[m].name.clone(),
                        n: morphisms[n].name.clone(),
                    });
                }
            }
        }

        let category = Category {
            objects,
            morphisms,
            identity,
            table,
            object_index,
            morphism_index,
        };
        category.check_identity_laws()?;
        category.check_associativity()?;
        Ok(category)
    }

    fn check_identity_laws(&self) -> Result<(), CategoryError> {
        for m in self.morphism_ids() {
            for id in [self.identity(self.dom(m)), self.identity(self.cod(m))] {
                let ok = if self.dom(m) == self.cod(id) {
                    self.compose(m, id) == Some(m)
                } else {
                    true
                } && if self.cod(m) == self.dom(id) {
                    self.compose(id, m) == Some(m)
                } else {
                    true
                };
                if !ok {
                    return Err(CategoryError::IdentityLaw {
                        morphism: self.name(m).into(),
                        identity: self.name(id).into(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<(), CategoryError> {
        for m in self.morphism_ids() {
            for n in self.morphisms_with_cod(self.dom(m)) {
                let mn = self.compose(m, n).expect("table is total");
                for p in self.morphisms_with_cod(self.dom(n)) {
                    let left = self.compose(mn, p).expect("table is total");
                    let np = self.compose(n, p).expect("table is total");
                    let right = self.compose(m, np).expect("table is total");
                    if left != right {
                        return Err(CategoryError::NonAssociative {
                            m: self.name(m).into(),
                            n: self.name(n).into(),
                            p: self.name(p).into(),
                            left: self.name(left).into(),
                            right: self.name(right).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, e: ObjId) -> &str {
        &self.objects[e.0]
    }

    pub fn name(&self, m: MorId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn object(&self, name: &str) -> Option<ObjId> {
        self.object_index.get(name).copied()
    }

    pub fn morphism(&self, name: &str) -> Option<MorId> {
        self.morphism_index.get(name).copied()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].dom
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].cod
    }

    pub fn identity(&self, e: ObjId) -> MorId {
        self.identity[e.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        let e = self.dom(m);
        self.identity[e.0] == m
    }

    /// `mn`, defined iff `dom(m) == cod(n)`.
    pub fn compose(&self, m: MorId, n: MorId) -> Option<MorId> {
        self.table[m.0 * self.morphisms.len() + n.0]
    }

    pub fn morphisms_with_cod(&self, e: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.morphism_ids().filter(move |&m| self.cod(m) == e)
    }

    /// Morphisms `n` with `dom(n) == dom` and `cod(n) == cod`.
    pub fn hom(&self, dom: ObjId, cod: ObjId) -> Vec<MorId> {
        self.morphism_ids()
            .filter(|&m| self.dom(m) == dom && self.cod(m) == cod)
            .collect()
    }

    /// The endomorphism monoid `G_e`.
    pub fn endomorphisms(&self, e: ObjId) -> Vec<MorId> {
        self.hom(e, e)
    }

    /// Names of all composition entries, sorted; the inverse of validation.
    pub fn to_spec(&self) -> CategorySpec {
        let mut composition = Vec::new();
        for m in self.morphism_ids() {
            for n in self.morphism_ids() {
                if let Some(c) = self.compose(m, n) {
                    composition.push((self.name(m).into(), self.name(n).into(), self.name(c).into()));
                }
            }
        }
        composition.sort();
        CategorySpec {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismSpec {
                    name: m.name.clone(),
                    dom: self.objects[m.dom.0].clone(),
                    cod: self.objects[m.cod.0].clone(),
                })
                .collect(),
            identities: self
                .object_ids()
                .map(|e| (self.object_name(e).into(), self.name(self.identity(e)).into()))
                .collect(),
            composition,
        }
    }

    /// For every ordered pair `(e, f)` some `(m, n)` with
    /// `dom(m) = cod(n) = f` and `mn = id_e`; on failure the first pair
    /// without such a factorization.
    pub fn inverse_connectivity(&self) -> Result<BTreeMap<(ObjId, ObjId), (MorId, MorId)>, (ObjId, ObjId)> {
        let mut witnesses = BTreeMap::new();
        for e in self.object_ids() {
            let id = self.identity(e);
            for f in self.object_ids() {
                let found = self.hom(e, f).into_iter().find_map(|n| {
                    self.hom(f, e)
                        .into_iter()
                        .find(|&m| self.compose(m, n) == Some(id))
                        .map(|m| (m, n))
                });
                match found {
                    Some(w) => {
                        witnesses.insert((e, f), w);
                    }
                    None => return Err((e, f)),
                }
            }
        }
        Ok(witnesses)
    }

    pub fn is_inverse_connected(&self) -> bool {
        self.inverse_connectivity().is_ok()
    }

    /// Two-sided inverse of `m`, if any.
    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let (d, c) = (self.dom(m), self.cod(m));
        self.hom(c, d).into_iter().find(|&n| {
            self.compose(m, n) == Some(self.identity(c)) && self.compose(n, m) == Some(self.identity(d))
        })
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphism_ids().all(|m| self.inverse(m).is_some())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for m in &self.morphisms {
            let (a, b) = (find(&mut parent, m.dom.0), find(&mut parent, m.cod.0));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|x| find(&mut parent, x) == root)
    }

    /// Connected components of the underlying undirected graph, each sorted.
    pub fn components(&self) -> Vec<Vec<ObjId>> {
        let mut seen = vec![false; self.objects.len()];
        let mut out = Vec::new();
        for start in 0..self.objects.len() {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(x) = stack.pop() {
                comp.push(ObjId(x));
                for m in &self.morphisms {
                    for (a, b) in [(m.dom.0, m.cod.0), (m.cod.0, m.dom.0)] {
                        if a == x && !seen[b] {
                            seen[b] = true;
                            stack.push(b);
                        }
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn structure_predicates(&self) -> StructurePredicates {
        let mut locally_group = true;
        let mut locally_abelian = true;
        for e in self.object_ids() {
            let loops = self.endomorphisms(e);
            let id = self.identity(e);
            for &a in &loops {
                let invertible = loops
                    .iter()
                    .any(|&b| self.compose(a, b) == Some(id) && self.compose(b, a) == Some(id));
                locally_group &= invertible;
                for &b in &loops {
                    if self.compose(a, b) != self.compose(b, a) {
                        locally_abelian = false;
                    }
                }
            }
        }
        StructurePredicates {
            connected: self.is_connected(),
            groupoid: self.is_groupoid(),
            locally_group,
            locally_abelian,
        }
    }

    /// Full subcategory on the given objects.
    pub fn full_subcategory(&self, keep: &BTreeSet<ObjId>) -> Option<(Category, Vec<MorId>)> {
        let morphisms: BTreeSet<MorId> = self
            .morphism_ids()
            .filter(|&m| keep.contains(&self.dom(m)) && keep.contains(&self.cod(m)))
            .collect();
        self.subcategory(keep, &morphisms)
    }

    /// Subcategory on `objects` with morphism set `morphisms`, which must
    /// contain the identities and be closed under composition. Returns the
    /// category and, for each of its morphisms, the parent morphism.
    pub fn subcategory(
        &self,
        objects: &BTreeSet<ObjId>,
        morphisms: &BTreeSet<MorId>,
    ) -> Option<(Category, Vec<MorId>)> {
        let spec = CategorySpec {
            objects: objects.iter().map(|&e| self.object_name(e).to_string()).collect(),
            morphisms: morphisms
                .iter()
                .map(|&m| MorphismSpec {
                    name: self.name(m).into(),
                    dom: self.object_name(self.dom(m)).into(),
                    cod: self.object_name(self.cod(m)).into(),
                })
                .collect(),
            identities: objects
                .iter()
                .map(|&e| (self.object_name(e).to_string(), self.name(self.identity(e)).to_string()))
                .collect(),
            composition: morphisms
                .iter()
                .flat_map(|&m| morphisms.iter().map(move |&n| (m, n)))
                .filter_map(|(m, n)| {
                    let c = self.compose(m, n)?;
                    Some((self.name(m).into(), self.name(n).into(), self.name(c).into()))
                })
                .collect(),
        };
        let sub = Category::validate_with(&spec, Limits {
            max_objects: usize::MAX,
            max_morphisms: usize::MAX,
        })
        .ok()?;
        let parents = sub
            .morphism_ids()
            .map(|m| self.morphism(sub.name(m)).expect("same names"))
            .collect();
        Some((sub, parents))
    }

    /// Closure of `generators` plus all identities of `objects` under
    /// composition.
    pub fn generated_morphisms(&self, objects: &BTreeSet<ObjId>, generators: &BTreeSet<MorId>) -> BTreeSet<MorId> {
        let mut set: BTreeSet<MorId> = objects.iter().map(|&e| self.identity(e)).collect();
        set.extend(generators.iter().copied());
        loop {
            let current: Vec<MorId> = set.iter().copied().collect();
            let mut grew = false;
            for &m in &current {
                for &n in &current {
                    if let Some(c) = self.compose(m, n) {
                        grew |= set.insert(c);
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "error")]
pub enum CongruenceError {
    #[error("not a partition: {reason}")]
    NotAPartition { reason: String },
    #[error("not compatible: ({m}, {m2}) and ({n}, {n2}) related but {mn} and {m2n2} are not")]
    NotCompatible {
        m: String,
        m2: String,
        n: String,
        n2: String,
        mn: String,
        m2n2: String,
    },
}

/// A congruence relation: an equivalence relation on each hom-set,
/// compatible with composition. Stored as a class label per morphism;
/// labels are the smallest morphism index in the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    class: Vec<usize>,
}

impl Congruence {
    pub fn equality(category: &Category) -> Congruence {
        Congruence {
            class: (0..category.num_morphisms()).collect(),
        }
    }

    /// Validates partition blocks (every morphism in exactly one block, each
    /// block inside one hom-set) and checks compatibility exhaustively.
    pub fn validate(category: &Category, blocks: &[Vec<MorId>]) -> Result<Congruence, CongruenceError> {
        let n = category.num_morphisms();
        let mut class: Vec<Option<usize>> = vec![None; n];
        for block in blocks {
            let Some(&first) = block.first() else {
                return Err(CongruenceError::NotAPartition {
                    reason: "empty block".into(),
                });
            };
            if block.iter().any(|m| m.0 >= n) {
                return Err(CongruenceError::NotAPartition {
                    reason: "unknown morphism".into(),
                });
            }
            let label = block.iter().map(|m| m.0).min().unwrap();
            for &m in block {
                if category.dom(m) != category.dom(first) || category.cod(m) != category.cod(first) {
                    return Err(CongruenceError::NotAPartition {
                        reason: format!(
                            "{} and {} are not parallel",
                            category.name(first),
                            category.name(m)
                        ),
                    });
                }
                if class[m.0].replace(label).is_some() {
                    return Err(CongruenceError::NotAPartition {
                        reason: format!("{} appears twice", category.name(m)),
                    });
                }
            }
        }
        let class = class
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| CongruenceError::NotAPartition {
                    reason: format!("{} is not covered", category.name(MorId(i))),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let congruence = Congruence { class };
        congruence.check_compatible(category)?;
        Ok(congruence)
    }

    /// Partition blocks from a class labelling, validated.
    pub fn from_labels(category: &Category, labels: &[usize]) -> Result<Congruence, CongruenceError> {
        let mut blocks: BTreeMap<usize, Vec<MorId>> = BTreeMap::new();
        for (m, &l) in labels.iter().enumerate() {
            blocks.entry(l).or_default().push(MorId(m));
        }
        let blocks: Vec<Vec<MorId>> = blocks.into_values().collect();
        Congruence::validate(category, &blocks)
    }

    /// The smallest congruence relating every given pair. Pairs must be
    /// parallel; non-parallel pairs are ignored.
    pub fn generated_by(category: &Category, pairs: &[(MorId, MorId)]) -> Congruence {
        let n = category.num_morphisms();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra == rb {
                return false;
            }
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            parent[hi] = lo;
            true
        }
        for &(a, b) in pairs {
            if category.dom(a) == category.dom(b) && category.cod(a) == category.cod(b) {
                union(&mut parent, a.0, b.0);
            }
        }
        loop {
            let mut changed = false;
            for m in 0..n {
                let r = find(&mut parent, m);
                if r == m {
                    continue;
                }
                let (mm, rr) = (MorId(m), MorId(r));
                for p in category.morphism_ids() {
                    if let (Some(a), Some(b)) = (category.compose(p, mm), category.compose(p, rr)) {
                        changed |= union(&mut parent, a.0, b.0);
                    }
                    if let (Some(a), Some(b)) = (category.compose(mm, p), category.compose(rr, p)) {
                        changed |= union(&mut parent, a.0, b.0);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let class = (0..n).map(|m| find(&mut parent, m)).collect();
        let congruence = Congruence { class };
        debug_assert!(congruence.check_compatible(category).is_ok());
        congruence
    }

    pub(crate) fn from_labels_unchecked(class: Vec<usize>) -> Congruence {
        Congruence { class }
    }

    /// All products of two composable classes must land in one class.
    fn check_compatible(&self, category: &Category) -> Result<(), CongruenceError> {
        let classes = self.blocks();
        for c1 in &classes {
            for c2 in &classes {
                if category.dom(c1[0]) != category.cod(c2[0]) {
                    continue;
                }
                let (m0, n0) = (c1[0], c2[0]);
                let p0 = category.compose(m0, n0).expect("composable");
                for &m in c1 {
                    for &n in c2 {
                        let p = category.compose(m, n).expect("composable");
                        if self.class[p.0] != self.class[p0.0] {
                            return Err(CongruenceError::NotCompatible {
                                m: category.name(m0).into(),
                                m2: category.name(m).into(),
                                n: category.name(n0).into(),
                                n2: category.name(n).into(),
                                mn: category.name(p0).into(),
                                m2n2: category.name(p).into(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn related(&self, a: MorId, b: MorId) -> bool {
        self.class[a.0] == self.class[b.0]
    }

    pub fn class_label(&self, m: MorId) -> usize {
        self.class[m.0]
    }

    /// The class `[m]`, sorted.
    pub fn class_of(&self, m: MorId) -> Vec<MorId> {
        let label = self.class[m.0];
        (0..self.class.len())
            .filter(|&i| self.class[i] == label)
            .map(MorId)
            .collect()
    }

    /// All classes, each sorted, ordered by smallest member.
    pub fn blocks(&self) -> Vec<Vec<MorId>> {
        let mut blocks: BTreeMap<usize, Vec<MorId>> = BTreeMap::new();
        for (m, &l) in self.class.iter().enumerate() {
            blocks.entry(l).or_default().push(MorId(m));
        }
        blocks.into_values().collect()
    }

    /// Equality on every endomorphism set `hom(e, e)`.
    pub fn is_locally_trivial(&self, category: &Category) -> bool {
        category
            .morphism_ids()
            .filter(|&m| category.dom(m) == category.cod(m))
            .all(|m| self.class.iter().filter(|&&l| l == self.class[m.0]).count() == 1)
    }

    /// `self ⊆ other` as relations.
    pub fn is_contained_in(&self, other: &Congruence) -> bool {
        (0..self.class.len()).all(|m| other.class[m] == other.class[self.class[m]])
    }
}
