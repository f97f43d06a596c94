//! JSON wire formats: instance files, algebra elements, and analysis
//! reports. Every document is emitted with sorted keys.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{
    self, center, enveloping_rank_oracle, ideal_generated, is_simple_over_c, maximal_commutativity, Algebra,
    AlgebraError, Element, NonSimplicity,
};
use crate::category::{Category, CategoryError, CategorySpec, MorId, MorphismSpec, ObjId};
use crate::dynsys::{DynSys, DynSysError, DynSysSpec};
use crate::linalg::{parse_rational, Rational, Subspace};

/// Default cap on the algebra dimension for analyses.
pub const DEFAULT_MAX_DIM: usize = 64;
pub const MAX_DIM_ENV: &str = "SKEWCAT_MAX_DIM";

/// The dimension cap, honouring `SKEWCAT_MAX_DIM` when it parses.
pub fn max_dim_from_env() -> usize {
    std::env::var(MAX_DIM_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<(String, String, String)>,
    pub spaces: BTreeMap<String, Vec<String>>,
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

impl InstanceFile {
    pub fn from_dynsys(sys: &DynSys) -> InstanceFile {
        let (cat, dyn_spec) = sys.to_spec();
        InstanceFile {
            objects: cat.objects,
            morphisms: cat.morphisms,
            identities: cat.identities,
            composition: cat.composition,
            spaces: dyn_spec.spaces,
            maps: dyn_spec.maps,
        }
    }

    pub fn into_dynsys(self) -> Result<DynSys, InputError> {
        let cat = Category::validate(&CategorySpec {
            objects: self.objects,
            morphisms: self.morphisms,
            identities: self.identities,
            composition: self.composition,
        })?;
        Ok(DynSys::validate(
            cat,
            &DynSysSpec {
                spaces: self.spaces,
                maps: self.maps,
            },
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON at {line}:{column}: {message}")]
    Json { message: String, line: usize, column: usize },
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    DynSys(#[from] DynSysError),
    #[error("bad element: {0}")]
    Element(String),
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Json {
            message: e.to_string(),
            line: e.line(),
            column: e.column(),
        }
    }
}

impl InputError {
    /// Machine-readable form: `{"error": <kind>, ...fields}`.
    pub fn to_json(&self) -> Value {
        match self {
            InputError::Io { path, message } => serde_json::json!({"error": "Io", "path": path, "message": message}),
            InputError::Json { message, line, column } => {
                serde_json::json!({"error": "Json", "message": message, "line": line, "column": column})
            }
            InputError::Category(e) => serde_json::to_value(e).expect("serializable"),
            InputError::DynSys(e) => serde_json::to_value(e).expect("serializable"),
            InputError::Element(message) => serde_json::json!({"error": "Element", "message": message}),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<DynSys, InputError> {
    serde_json::from_str::<InstanceFile>(text)?.into_dynsys()
}

pub fn read_instance(path: &std::path::Path) -> Result<DynSys, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_instance(&text)
}

/// Canonical pretty JSON with sorted keys.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

pub fn instance_to_json(sys: &DynSys) -> String {
    to_canonical_json(&InstanceFile::from_dynsys(sys))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermInput {
    morphism: String,
    /// all points of `space(cod morphism)` when absent
    point: Option<String>,
    coeff: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ElementInput {
    Keyword(String),
    Terms(Vec<TermInput>),
}

/// Parses `"unit"` or a list of `{morphism, point?, coeff?}` terms with
/// coefficients written `"p"` or `"p/q"`.
pub fn parse_element(a: &Algebra, text: &str) -> Result<Element, InputError> {
    let input: ElementInput = serde_json::from_str(text)?;
    let terms = match input {
        ElementInput::Keyword(k) if k == "unit" => return Ok(a.unit()),
        ElementInput::Keyword(k) => return Err(InputError::Element(format!("unknown keyword {k:?}"))),
        ElementInput::Terms(t) => t,
    };
    let sys = a.system();
    let g = sys.category();
    let mut out = Element::zero();
    for t in terms {
        let n = g
            .morphism(&t.morphism)
            .ok_or_else(|| InputError::Element(format!("unknown morphism {:?}", t.morphism)))?;
        let coeff = match &t.coeff {
            Some(c) => parse_rational(c).map_err(|e| InputError::Element(e.to_string()))?,
            None => Rational::one(),
        };
        let points: Vec<usize> = match &t.point {
            Some(p) => vec![sys
                .point_index(g.cod(n), p)
                .ok_or_else(|| InputError::Element(format!("{p:?} is not a point of the codomain of {:?}", t.morphism)))?],
            None => (0..sys.space_size(g.cod(n))).collect(),
        };
        for x in points {
            out.add_term(a.index(n, x), &coeff);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermOutput {
    pub morphism: String,
    pub point: String,
    pub numerator: String,
    pub denominator: String,
}

pub fn element_to_terms(a: &Algebra, e: &Element) -> Vec<TermOutput> {
    let sys = a.system();
    let g = sys.category();
    e.terms()
        .map(|(i, c)| {
            let b = a.basis()[i];
            TermOutput {
                morphism: g.name(b.morphism).into(),
                point: sys.space(g.cod(b.morphism))[b.point].clone(),
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            }
        })
        .collect()
}

pub fn element_from_terms(a: &Algebra, terms: &[TermOutput]) -> Result<Element, InputError> {
    let sys = a.system();
    let g = sys.category();
    let mut out = Element::zero();
    for t in terms {
        let bad = || InputError::Element(format!("bad term {t:?}"));
        let n = g.morphism(&t.morphism).ok_or_else(bad)?;
        let x = sys.point_index(g.cod(n), &t.point).ok_or_else(bad)?;
        let c = parse_rational(&format!("{}/{}", t.numerator, t.denominator)).map_err(|_| bad())?;
        out.add_term(a.index(n, x), &c);
    }
    Ok(out)
}

fn subspace_terms(a: &Algebra, s: &Subspace) -> Vec<Vec<TermOutput>> {
    s.basis()
        .iter()
        .map(|v| element_to_terms(a, &Element::from_dense(v)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SimplicityWitness {
    /// basis of the radical
    Radical { basis: Vec<Vec<TermOutput>> },
    Central {
        element: Vec<TermOutput>,
        /// `element - eigenvalue` generates a proper ideal (present only when
        /// a rational eigenvalue was found)
        eigenvalue: Option<String>,
        ideal_dim: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectPair {
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSet {
    pub object: String,
    pub points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPoint {
    pub object: String,
    pub point: String,
    pub morphism: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismPair {
    pub first: String,
    pub second: String,
}

/// Evidence for every negative verdict of a [`Report`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witnesses {
    pub simple: Option<SimplicityWitness>,
    /// `(from, to)` with no factorization of `id_from` through `to`
    pub inverse_connected: Option<ObjectPair>,
    /// a nonempty proper invariant subset
    pub minimal: Option<PointSet>,
    /// a nonidentity loop acting trivially
    pub faithful: Option<String>,
    pub top_free: Option<FixedPoint>,
    /// commutes with every `A_e` but lies outside `⊕_e A_e`
    pub maximal_commutative: Option<Vec<TermOutput>>,
    /// per object, the vanishing set of a proper invariant ideal
    pub ge_simple: BTreeMap<String, Vec<String>>,
    /// two distinct parallel loops with the same point map
    pub sigma_kernel_locally_trivial: Option<MorphismPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub simple: bool,
    pub inverse_connected: bool,
    pub minimal: bool,
    pub faithful: bool,
    pub top_free: bool,
    pub maximal_commutative: bool,
    pub ge_simple: BTreeMap<String, bool>,
    pub corner_center_dims: BTreeMap<String, usize>,
    pub sigma_kernel_locally_trivial: bool,
    pub connected: bool,
    pub groupoid: bool,
    pub locally_abelian: bool,
    /// rank of the span of `x ↦ b_i x b_j`; absent above the oracle cap
    pub enveloping_rank: Option<usize>,
    pub witnesses: Witnesses,
}

/// Dimension of the algebra of `sys` without building it.
pub fn algebra_dim(sys: &DynSys) -> usize {
    let g = sys.category();
    g.morphism_ids().map(|n| sys.space_size(g.cod(n))).sum()
}

fn point_names(sys: &DynSys, e: ObjId, points: &[usize]) -> Vec<String> {
    points.iter().map(|&x| sys.space(e)[x].clone()).collect()
}

/// Full structural analysis of a system, refusing algebras above `max_dim`.
pub fn analyze(sys: &DynSys, max_dim: usize) -> Result<Report, AlgebraError> {
    let dim = algebra_dim(sys);
    if dim > max_dim {
        return Err(AlgebraError::DimensionCapExceeded { dim, cap: max_dim });
    }
    let a = Algebra::new(sys.clone());
    let g = sys.category();
    let verdict = is_simple_over_c(&a);
    let mut w = Witnesses::default();
    w.simple = verdict.witness.as_ref().map(|wit| match wit {
        NonSimplicity::Radical(r) => SimplicityWitness::Radical {
            basis: subspace_terms(&a, r),
        },
        NonSimplicity::Central {
            element,
            rational_ideal,
        } => SimplicityWitness::Central {
            element: element_to_terms(&a, element),
            eigenvalue: rational_ideal.as_ref().map(|r| r.eigenvalue.to_string()),
            ideal_dim: rational_ideal.as_ref().map(|r| r.ideal_dim),
        },
    });
    w.inverse_connected = g.inverse_connectivity().err().map(|(e, f)| ObjectPair {
        from: g.object_name(e).into(),
        to: g.object_name(f).into(),
    });
    w.minimal = sys.minimality_witness().map(|s| PointSet {
        object: g.object_name(s.object).into(),
        points: point_names(sys, s.object, &s.points),
    });
    w.faithful = sys.faithfulness_witness().map(|(_, n)| g.name(n).to_string());
    w.top_free = sys.periodic_witness().map(|(e, x, n)| FixedPoint {
        object: g.object_name(e).into(),
        point: sys.space(e)[x].clone(),
        morphism: g.name(n).into(),
    });
    let maxcomm = maximal_commutativity(&a);
    w.maximal_commutative = maxcomm.witness.as_ref().map(|e| element_to_terms(&a, e));
    let mut ge_simple = BTreeMap::new();
    let mut corner_center_dims = BTreeMap::new();
    for e in g.object_ids() {
        let name = g.object_name(e).to_string();
        let vanishing = sys.ge_simplicity_witness(e).expect("valid object");
        if let Some(v) = &vanishing {
            w.ge_simple.insert(name.clone(), point_names(sys, e, v));
        }
        ge_simple.insert(name.clone(), vanishing.is_none());
        let corner = algebra::corner_algebra(&a, e).expect("valid object");
        corner_center_dims.insert(name, center(&corner.algebra).dim());
    }
    let kernel = sys.sigma_kernel();
    w.sigma_kernel_locally_trivial = g.object_ids().find_map(|e| {
        let loops = g.endomorphisms(e);
        loops.iter().find_map(|&m| {
            loops
                .iter()
                .find(|&&n| n != m && kernel.related(m, n))
                .map(|&n| MorphismPair {
                    first: g.name(m).into(),
                    second: g.name(n).into(),
                })
        })
    });
    let preds = g.structure_predicates();
    let enveloping_rank = enveloping_rank_oracle(&a).ok().map(|r| r.rank);
    Ok(Report {
        algebra_dim: dim,
        radical_dim: verdict.radical_dim,
        center_dim: verdict.center_dim,
        simple: verdict.simple,
        inverse_connected: w.inverse_connected.is_none(),
        minimal: w.minimal.is_none(),
        faithful: w.faithful.is_none(),
        top_free: w.top_free.is_none(),
        maximal_commutative: maxcomm.maximal,
        ge_simple,
        corner_center_dims,
        sigma_kernel_locally_trivial: w.sigma_kernel_locally_trivial.is_none(),
        connected: preds.connected,
        groupoid: preds.groupoid,
        locally_abelian: preds.locally_abelian,
        enveloping_rank,
        witnesses: w,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("witness for {verdict} does not hold: {reason}")]
pub struct WitnessError {
    pub verdict: &'static str,
    pub reason: String,
}

fn fail(verdict: &'static str, reason: impl Into<String>) -> WitnessError {
    WitnessError {
        verdict,
        reason: reason.into(),
    }
}

fn lookup_object(g: &Category, verdict: &'static str, name: &str) -> Result<ObjId, WitnessError> {
    g.object(name).ok_or_else(|| fail(verdict, format!("unknown object {name:?}")))
}

fn lookup_morphism(g: &Category, verdict: &'static str, name: &str) -> Result<MorId, WitnessError> {
    g.morphism(name)
        .ok_or_else(|| fail(verdict, format!("unknown morphism {name:?}")))
}

fn lookup_points(sys: &DynSys, verdict: &'static str, e: ObjId, names: &[String]) -> Result<Vec<usize>, WitnessError> {
    names
        .iter()
        .map(|p| {
            sys.point_index(e, p)
                .ok_or_else(|| fail(verdict, format!("unknown point {p:?}")))
        })
        .collect()
}

fn commutes_with(a: &Algebra, z: &Element, indices: impl IntoIterator<Item = usize>) -> bool {
    indices.into_iter().all(|i| {
        let b = Element::basis(i);
        a.multiply(z, &b) == a.multiply(&b, z)
    })
}

/// Re-verifies every witness of a report against `sys` from first
/// principles, and checks that each negative verdict has one.
pub fn recheck_witnesses(sys: &DynSys, report: &Report) -> Result<(), WitnessError> {
    let g = sys.category();
    let w = &report.witnesses;
    let need = |verdict: &'static str, holds: bool, present: bool| {
        if holds == present {
            Err(fail(verdict, "witness presence does not match the verdict"))
        } else {
            Ok(())
        }
    };
    need("simple", report.simple, w.simple.is_some())?;
    need("inverse_connected", report.inverse_connected, w.inverse_connected.is_some())?;
    need("minimal", report.minimal, w.minimal.is_some())?;
    need("faithful", report.faithful, w.faithful.is_some())?;
    need("top_free", report.top_free, w.top_free.is_some())?;
    need(
        "maximal_commutative",
        report.maximal_commutative,
        w.maximal_commutative.is_some(),
    )?;
    need(
        "sigma_kernel_locally_trivial",
        report.sigma_kernel_locally_trivial,
        w.sigma_kernel_locally_trivial.is_some(),
    )?;
    let a = Algebra::new(sys.clone());
    let parse = |verdict: &'static str, terms: &[TermOutput]| {
        element_from_terms(&a, terms).map_err(|e| fail(verdict, e.to_string()))
    };

    match &w.simple {
        None => {}
        Some(SimplicityWitness::Radical { basis }) => {
            let elems = basis
                .iter()
                .map(|t| parse("simple", t))
                .collect::<Result<Vec<_>, _>>()?;
            if elems.iter().any(Element::is_zero) {
                return Err(fail("simple", "zero vector in radical basis"));
            }
            let dense: Vec<_> = elems.iter().map(|e| e.to_dense(a.dim())).collect();
            let span = Subspace::span(a.dim(), &dense);
            if !algebra::is_ideal(&a, &span) || !algebra::is_nilpotent(&a, &span) {
                return Err(fail("simple", "span is not a nilpotent ideal"));
            }
        }
        Some(SimplicityWitness::Central {
            element,
            eigenvalue,
            ideal_dim,
        }) => {
            let z = parse("simple", element)?;
            if !commutes_with(&a, &z, 0..a.dim()) {
                return Err(fail("simple", "element is not central"));
            }
            let unit = a.unit().to_dense(a.dim());
            let scalars = Subspace::span(a.dim(), [&unit]);
            if scalars.contains(&z.to_dense(a.dim())).expect("same ambient") {
                return Err(fail("simple", "element is a scalar"));
            }
            if let Some(lambda) = eigenvalue {
                let lambda = parse_rational(lambda).map_err(|e| fail("simple", e.to_string()))?;
                let ideal = ideal_generated(&a, &[z.sub(&a.unit().scale(&lambda))]);
                if ideal.is_zero() || ideal.is_full() || Some(ideal.dim()) != *ideal_dim {
                    return Err(fail("simple", "rational eigenvalue does not give a proper ideal"));
                }
            }
        }
    }

    if let Some(pair) = &w.inverse_connected {
        let e = lookup_object(g, "inverse_connected", &pair.from)?;
        let f = lookup_object(g, "inverse_connected", &pair.to)?;
        let id = g.identity(e);
        let factors = g.morphism_ids().any(|m| {
            g.dom(m) == f
                && g.cod(m) == e
                && g.morphism_ids()
                    .any(|n| g.cod(n) == f && g.compose(m, n) == Some(id))
        });
        if factors {
            return Err(fail("inverse_connected", "the identity factors through the object"));
        }
    }

    if let Some(s) = &w.minimal {
        let e = lookup_object(g, "minimal", &s.object)?;
        let pts = lookup_points(sys, "minimal", e, &s.points)?;
        let mut member = vec![false; sys.space_size(e)];
        pts.iter().for_each(|&x| member[x] = true);
        let count = member.iter().filter(|&&b| b).count();
        if count == 0 || count == member.len() {
            return Err(fail("minimal", "subset is empty or everything"));
        }
        for n in g.endomorphisms(e) {
            if pts.iter().any(|&x| !member[sys.apply(n, x)]) {
                return Err(fail("minimal", format!("not invariant under {:?}", g.name(n))));
            }
        }
    }

    if let Some(name) = &w.faithful {
        let n = lookup_morphism(g, "faithful", name)?;
        let e = g.dom(n);
        if g.cod(n) != e || g.is_identity(n) || (0..sys.space_size(e)).any(|x| sys.apply(n, x) != x) {
            return Err(fail("faithful", "not a nonidentity loop acting trivially"));
        }
    }

    if let Some(p) = &w.top_free {
        let e = lookup_object(g, "top_free", &p.object)?;
        let n = lookup_morphism(g, "top_free", &p.morphism)?;
        let x = lookup_points(sys, "top_free", e, std::slice::from_ref(&p.point))?[0];
        if g.dom(n) != e || g.cod(n) != e || g.is_identity(n) || sys.apply(n, x) != x {
            return Err(fail("top_free", "point is not fixed by a nonidentity loop"));
        }
    }

    if let Some(terms) = &w.maximal_commutative {
        let z = parse("maximal_commutative", terms)?;
        let diag = a.diagonal();
        if !commutes_with(&a, &z, a.diagonal_indices())
            || diag.contains(&z.to_dense(a.dim())).expect("same ambient")
        {
            return Err(fail("maximal_commutative", "element does not enlarge the commutative subalgebra"));
        }
    }

    for (name, simple) in &report.ge_simple {
        let e = lookup_object(g, "ge_simple", name)?;
        match (simple, w.ge_simple.get(name)) {
            (true, None) => {}
            (false, Some(points)) => {
                let pts = lookup_points(sys, "ge_simple", e, points)?;
                let mut member = vec![false; sys.space_size(e)];
                pts.iter().for_each(|&x| member[x] = true);
                let count = member.iter().filter(|&&b| b).count();
                let invariant = g
                    .endomorphisms(e)
                    .into_iter()
                    .all(|n| pts.iter().all(|&x| member[sys.apply(n, x)]));
                if count == 0 || count == member.len() || !invariant {
                    return Err(fail("ge_simple", format!("vanishing set at {name:?} is not a proper invariant set")));
                }
            }
            _ => return Err(fail("ge_simple", "witness presence does not match the verdict")),
        }
    }

    if let Some(pair) = &w.sigma_kernel_locally_trivial {
        let m = lookup_morphism(g, "sigma_kernel_locally_trivial", &pair.first)?;
        let n = lookup_morphism(g, "sigma_kernel_locally_trivial", &pair.second)?;
        let e = g.dom(m);
        let is_loop = |k: MorId| g.dom(k) == e && g.cod(k) == e;
        if m == n || !is_loop(m) || !is_loop(n) || sys.pointmap(m) != sys.pointmap(n) {
            return Err(fail("sigma_kernel_locally_trivial", "not two distinct loops with equal maps"));
        }
    }
    Ok(())
}

/// Ideal dimension, properness, and `I ∩ A_e` dimensions for a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub algebra_dim: usize,
    pub ideal_dim: usize,
    pub proper: bool,
    pub component_dims: BTreeMap<String, usize>,
    pub meets_diagonal_trivially: bool,
}

pub fn ideal_report(a: &Algebra, generator: &Element) -> IdealReport {
    let ideal = ideal_generated(a, std::slice::from_ref(generator));
    let g = a.system().category();
    let component_dims = algebra::intersect_with_components(a, &ideal)
        .into_iter()
        .map(|(e, s)| (g.object_name(e).to_string(), s.dim()))
        .collect();
    let diagonal = ideal.intersection(&a.diagonal()).expect("same ambient");
    IdealReport {
        algebra_dim: a.dim(),
        ideal_dim: ideal.dim(),
        proper: !ideal.is_full(),
        component_dims,
        meets_diagonal_trivially: diagonal.is_zero(),
    }
}
