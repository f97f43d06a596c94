//! Executable forms of the simplicity theorem and its supporting
//! propositions, evaluated on one instance at a time.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::generate::Instance;
use crate::algebra::{
    center, corner_algebra, enveloping_rank_oracle, estonia_check, ideal_generated, intersect_with_components,
    is_simple_over_c, maximal_commutativity, Algebra, Element, SimplicityVerdict, ORACLE_DIM_CAP,
};
use crate::category::{Congruence, MorId, StructurePredicates};
use crate::io::{analyze, recheck_witnesses, InstanceFile};
use crate::linalg::rational::from_int;

/// Deliberate weakenings used to confirm that the checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// decide simplicity from the center alone
    SkipRadical,
    /// drop inverse connectivity from the right side of part (b)
    DropInverseConnected,
    DropMinimal,
    DropFaithful,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::SkipRadical,
        Mutation::DropInverseConnected,
        Mutation::DropMinimal,
        Mutation::DropFaithful,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::SkipRadical => "skip-radical",
            Mutation::DropInverseConnected => "drop-inverse-connected",
            Mutation::DropMinimal => "drop-minimal",
            Mutation::DropFaithful => "drop-faithful",
        }
    }

    pub fn from_name(name: &str) -> Option<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub mutation: Option<Mutation>,
    pub oracle_cap: usize,
    pub ideal_samples: usize,
    /// random sub-congruences of `ker σ` per instance
    pub congruence_samples: usize,
    pub exhaustive_associativity_dim: usize,
    pub associativity_samples: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            mutation: None,
            oracle_cap: ORACLE_DIM_CAP,
            ideal_samples: 10,
            congruence_samples: 2,
            exhaustive_associativity_dim: 20,
            associativity_samples: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// number of sub-cases evaluated (ideals, congruences, triples, ...)
    pub cases: usize,
    pub witness: Option<Value>,
    pub micros: u64,
}

/// Everything the checks share, computed once per instance.
pub struct Facts {
    pub algebra: Algebra,
    pub verdict: SimplicityVerdict,
    /// simplicity as seen by the checks (differs from `verdict.simple` only
    /// under [`Mutation::SkipRadical`])
    pub simple: bool,
    pub predicates: StructurePredicates,
    pub inverse_connected: bool,
    pub minimal: bool,
    pub faithful: bool,
    pub top_free: bool,
    pub ge_simple: Vec<bool>,
    pub corner_center_dims: Vec<usize>,
    pub kernel: Congruence,
    pub kernel_locally_trivial: bool,
    pub maximal_commutative: bool,
}

impl Facts {
    pub fn compute(inst: &Instance, config: &CheckConfig) -> Facts {
        let sys = &inst.system;
        let g = sys.category();
        let algebra = Algebra::new(sys.clone());
        let verdict = is_simple_over_c(&algebra);
        let simple = match config.mutation {
            Some(Mutation::SkipRadical) => verdict.center_dim == 1,
            _ => verdict.simple,
        };
        let kernel = sys.sigma_kernel();
        let corner_center_dims = g
            .object_ids()
            .map(|e| center(&corner_algebra(&algebra, e).expect("valid object").algebra).dim())
            .collect();
        Facts {
            predicates: g.structure_predicates(),
            inverse_connected: g.is_inverse_connected(),
            minimal: sys.is_minimal(),
            faithful: sys.is_faithful(),
            top_free: sys.is_topologically_free(),
            ge_simple: g.object_ids().map(|e| sys.is_ge_simple(e).expect("valid object")).collect(),
            corner_center_dims,
            kernel_locally_trivial: kernel.is_locally_trivial(g),
            kernel,
            maximal_commutative: maximal_commutativity(&algebra).maximal,
            algebra,
            verdict,
            simple,
        }
    }

    fn verdicts(&self) -> Value {
        json!({
            "simple": self.simple,
            "radical_dim": self.verdict.radical_dim,
            "center_dim": self.verdict.center_dim,
            "inverse_connected": self.inverse_connected,
            "minimal": self.minimal,
            "faithful": self.faithful,
            "top_free": self.top_free,
            "maximal_commutative": self.maximal_commutative,
            "ge_simple": self.ge_simple,
            "corner_center_dims": self.corner_center_dims,
            "kernel_locally_trivial": self.kernel_locally_trivial,
        })
    }
}

fn witness(inst: &Instance, facts: &Facts, detail: Value) -> Value {
    json!({
        "instance": serde_json::to_value(InstanceFile::from_dynsys(&inst.system)).expect("serializable"),
        "source": inst.tags.source,
        "seed": inst.tags.seed,
        "verdicts": facts.verdicts(),
        "detail": detail,
    })
}

struct Outcome {
    passed: bool,
    cases: usize,
    detail: Value,
}

fn outcome(passed: bool, detail: Value) -> Outcome {
    Outcome {
        passed,
        cases: 1,
        detail,
    }
}

fn timed(
    name: &'static str,
    inst: &Instance,
    facts: &Facts,
    f: impl FnOnce() -> Outcome,
) -> CheckResult {
    let start = Instant::now();
    let o = f();
    CheckResult {
        name,
        passed: o.passed,
        cases: o.cases,
        witness: (!o.passed).then(|| witness(inst, facts, o.detail)),
        micros: start.elapsed().as_micros() as u64,
    }
}

/// Part (a): simple implies inverse connected, minimal and faithful. Part
/// (b), for locally abelian groupoids: the converse.
pub fn check_theorem3(inst: &Instance, facts: &Facts, config: &CheckConfig) -> CheckResult {
    timed("theorem3", inst, facts, || {
        let triple = facts.inverse_connected && facts.minimal && facts.faithful;
        if facts.simple && !triple {
            return outcome(false, json!({"part": "a"}));
        }
        if inst.is_locally_abelian_groupoid() {
            let rhs = match config.mutation {
                Some(Mutation::DropInverseConnected) => facts.minimal && facts.faithful,
                Some(Mutation::DropMinimal) => facts.inverse_connected && facts.faithful,
                Some(Mutation::DropFaithful) => facts.inverse_connected && facts.minimal,
                _ => triple,
            };
            if rhs != facts.simple {
                return outcome(false, json!({"part": "b", "right_side": rhs}));
            }
        }
        outcome(true, Value::Null)
    })
}

fn all(v: &[bool]) -> bool {
    v.iter().all(|&b| b)
}

fn conditions_ii_to_v(facts: &Facts) -> bool {
    facts.inverse_connected
        && all(&facts.ge_simple)
        && facts.corner_center_dims.iter().all(|&d| d == 1)
        && facts.kernel_locally_trivial
}

pub fn check_simplicity_a(inst: &Instance, facts: &Facts) -> CheckResult {
    timed("P-simp-a", inst, facts, || {
        outcome(!facts.simple || conditions_ii_to_v(facts), Value::Null)
    })
}

pub fn check_simplicity_b(inst: &Instance, facts: &Facts) -> CheckResult {
    timed("P-simp-b", inst, facts, || {
        outcome(facts.simple == conditions_ii_to_v(facts), Value::Null)
    })
}

/// With the diagonal subalgebra commutative (always, here): simple implies
/// (ii)-(vi), and for groupoids the converse.
pub fn check_commutative_a(inst: &Instance, facts: &Facts) -> CheckResult {
    timed("P-commA", inst, facts, || {
        let rhs = conditions_ii_to_v(facts) && facts.maximal_commutative;
        let ok = if inst.tags.groupoid { rhs == facts.simple } else { !facts.simple || rhs };
        outcome(ok, json!({"right_side": rhs}))
    })
}

pub fn check_top_free_maxcomm(inst: &Instance, facts: &Facts) -> CheckResult {
    timed("P-pajo", inst, facts, || {
        outcome(facts.top_free == facts.maximal_commutative, Value::Null)
    })
}

pub fn check_minimality(inst: &Instance, facts: &Facts) -> CheckResult {
    timed("P-min", inst, facts, || outcome(facts.minimal == all(&facts.ge_simple), Value::Null))
}

pub fn check_faithfulness(inst: &Instance, facts: &Facts) -> CheckResult {
    timed("P-faith", inst, facts, || {
        outcome(facts.faithful == facts.kernel_locally_trivial, Value::Null)
    })
}

fn instance_rng(inst: &Instance, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(inst.tags.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_element<R: Rng>(rng: &mut R, dim: usize) -> Element {
    let terms = rng.random_range(1..=3);
    Element::from_terms((0..terms).map(|_| {
        let c = [-2, -1, 1, 2][rng.random_range(0..4)];
        (rng.random_range(0..dim), from_int(c))
    }))
}

/// Generated ideals: `I = R` iff every `I ∩ A_e = A_e`, and for inverse
/// connected categories iff some `I ∩ A_e = A_e`.
pub fn check_intersections(inst: &Instance, facts: &Facts, config: &CheckConfig) -> CheckResult {
    timed("P-int", inst, facts, || {
        let a = &facts.algebra;
        let g = inst.system.category();
        let mut rng = instance_rng(inst, 1);
        let mut gens = vec![a.unit(), a.u(g.identity(g.object_ids().next().expect("nonempty")))];
        while gens.len() < config.ideal_samples {
            gens.push(random_element(&mut rng, a.dim()));
        }
        for z in &gens {
            let ideal = ideal_generated(a, std::slice::from_ref(z));
            let parts = intersect_with_components(a, &ideal);
            let full_at: Vec<bool> = parts
                .iter()
                .map(|(&e, s)| s.dim() == a.object_component(e).len())
                .collect();
            let everywhere = all(&full_at);
            let somewhere = full_at.iter().any(|&b| b);
            if ideal.is_full() != everywhere || (facts.inverse_connected && ideal.is_full() != somewhere) {
                let terms = crate::io::element_to_terms(a, z);
                return outcome(false, json!({"generator": terms, "ideal_dim": ideal.dim(), "full_at": full_at}));
            }
        }
        Outcome {
            passed: true,
            cases: gens.len(),
            detail: Value::Null,
        }
    })
}

/// The ideal generated by `δ_x u_{id_e} - δ_x u_m`, `m` related to `id_e`
/// by a sub-congruence of `ker σ`, meets `⊕ A_e` trivially. `cases` counts
/// the congruences that produced at least one generator.
pub fn check_estonia(inst: &Instance, facts: &Facts, config: &CheckConfig) -> CheckResult {
    timed("P-est", inst, facts, || {
        let g = inst.system.category();
        let mut rng = instance_rng(inst, 2);
        let pairs: Vec<(MorId, MorId)> = g
            .morphism_ids()
            .flat_map(|m| facts.kernel.class_of(m).into_iter().map(move |n| (m, n)))
            .filter(|(m, n)| m < n)
            .collect();
        let mut congruences = vec![facts.kernel.clone()];
        if !pairs.is_empty() {
            for _ in 0..config.congruence_samples {
                let chosen: Vec<(MorId, MorId)> = pairs.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
                congruences.push(Congruence::generated_by(g, &chosen));
            }
        }
        let mut seen = BTreeSet::new();
        let mut cases = 0;
        for r in congruences {
            if !seen.insert(r.blocks()) {
                continue;
            }
            match estonia_check(&facts.algebra, &r) {
                Ok(o) if o.generators.is_empty() => {}
                Ok(o) if o.meets_trivially() => cases += 1,
                Ok(o) => {
                    let blocks: Vec<Vec<&str>> = r
                        .blocks()
                        .iter()
                        .map(|b| b.iter().map(|&m| g.name(m)).collect())
                        .collect();
                    return outcome(false, json!({"congruence": blocks, "diagonal_dim": o.diagonal_part.dim()}));
                }
                Err(e) => return outcome(false, json!({"error": e.to_string()})),
            }
        }
        Outcome {
            passed: true,
            cases,
            detail: Value::Null,
        }
    })
}

pub fn check_oracle(inst: &Instance, facts: &Facts) -> CheckResult {
    timed("oracle", inst, facts, || match enveloping_rank_oracle(&facts.algebra) {
        Ok(r) => outcome(r.full == facts.simple, json!({"rank": r.rank})),
        Err(e) => outcome(false, json!({"error": e.to_string()})),
    })
}

pub fn check_axioms(inst: &Instance, facts: &Facts, config: &CheckConfig) -> CheckResult {
    timed("axioms", inst, facts, || {
        let a = &facts.algebra;
        let (assoc, triples) = if a.dim() <= config.exhaustive_associativity_dim {
            (a.check_associativity_exhaustive(), a.dim().pow(3))
        } else {
            let mut rng = instance_rng(inst, 3);
            (
                a.check_associativity_sampled(&mut rng, config.associativity_samples),
                config.associativity_samples,
            )
        };
        match assoc.and_then(|_| a.check_unit()).and_then(|_| a.check_strong_grading()) {
            Ok(()) => Outcome {
                passed: true,
                cases: triples,
                detail: Value::Null,
            },
            Err(v) => outcome(false, json!({"violation": v.to_string()})),
        }
    })
}

/// Tags agree with the category, groupoid components are exactly the
/// inverse connected pieces, invertible morphisms act bijectively, and an
/// inverse connected category whose loops are invertible is a groupoid.
pub fn check_structure(inst: &Instance, facts: &Facts) -> CheckResult {
    timed("structure", inst, facts, || {
        let sys = &inst.system;
        let g = sys.category();
        let p = &facts.predicates;
        if inst.tags.groupoid != p.groupoid || inst.tags.locally_abelian != p.locally_abelian {
            return outcome(false, json!({"reason": "tags disagree with the category"}));
        }
        if facts.inverse_connected && p.locally_group && !p.groupoid {
            return outcome(false, json!({"reason": "inverse connected with group loops but not a groupoid"}));
        }
        if p.groupoid {
            if p.connected != facts.inverse_connected {
                return outcome(false, json!({"reason": "connected and inverse connected differ"}));
            }
            for n in g.morphism_ids() {
                let mut image = sys.pointmap(n).to_vec();
                image.sort_unstable();
                image.dedup();
                if image.len() != sys.space_size(g.cod(n)) || sys.space_size(g.cod(n)) != sys.space_size(g.dom(n)) {
                    return outcome(false, json!({"reason": "invertible morphism acts non-bijectively", "morphism": g.name(n)}));
                }
            }
        }
        outcome(true, Value::Null)
    })
}

/// A partially defined system and its category dynamical system agree on
/// topological freeness, minimality and faithfulness.
pub fn check_partial_transfer(inst: &Instance, facts: &Facts) -> Option<CheckResult> {
    let p = inst.partial.as_ref()?;
    Some(timed("partial-transfer", inst, facts, || {
        let pairs = [
            ("top_free", p.is_topologically_free(), facts.top_free),
            ("minimal", p.is_minimal(), facts.minimal),
            ("faithful", p.is_faithful(), facts.faithful),
        ];
        match pairs.iter().find(|(_, a, b)| a != b) {
            None => Outcome {
                passed: true,
                cases: pairs.len(),
                detail: Value::Null,
            },
            Some((name, a, b)) => outcome(false, json!({"predicate": name, "partial": a, "system": b})),
        }
    }))
}

/// The analysis report's witnesses all re-verify.
pub fn check_report(inst: &Instance, facts: &Facts) -> CheckResult {
    timed("report", inst, facts, || match analyze(&inst.system, usize::MAX) {
        Ok(r) if r.simple != facts.verdict.simple => outcome(false, json!({"reason": "report disagrees"})),
        Ok(r) => match recheck_witnesses(&inst.system, &r) {
            Ok(()) => outcome(true, Value::Null),
            Err(e) => outcome(false, json!({"reason": e.to_string()})),
        },
        Err(e) => outcome(false, json!({"reason": e.to_string()})),
    })
}

/// Every applicable check, in a fixed order.
pub fn run_checks(inst: &Instance, config: &CheckConfig) -> Vec<CheckResult> {
    let facts = Facts::compute(inst, config);
    let mut out = vec![check_theorem3(inst, &facts, config), check_simplicity_a(inst, &facts)];
    if inst.is_locally_abelian_groupoid() {
        out.push(check_simplicity_b(inst, &facts));
    }
    out.push(check_commutative_a(inst, &facts));
    if inst.tags.groupoid {
        out.push(check_top_free_maxcomm(inst, &facts));
    }
    out.push(check_minimality(inst, &facts));
    out.push(check_faithfulness(inst, &facts));
    out.push(check_intersections(inst, &facts, config));
    out.push(check_estonia(inst, &facts, config));
    if facts.algebra.dim() <= config.oracle_cap {
        out.push(check_oracle(inst, &facts));
    }
    out.push(check_axioms(inst, &facts, config));
    out.push(check_structure(inst, &facts));
    out.extend(check_partial_transfer(inst, &facts));
    out.push(check_report(inst, &facts));
    out
}

/// Re-runs only the named check; used while shrinking.
pub fn rerun_check(name: &str, inst: &Instance, config: &CheckConfig) -> Option<CheckResult> {
    run_checks(inst, config).into_iter().find(|r| r.name == name)
}
