use std::collections::BTreeMap;

use num_traits::One;

use super::{Algebra, AlgebraError, Element};
use crate::category::{Congruence, ObjId};
use crate::linalg::{Echelon, IntRow, Rational, Subspace};

/// The two-sided ideal generated by `gens`.
///
/// Worklist closure: every vector that enlarges the current span is queued and
/// later multiplied on both sides by all basis elements.
pub fn ideal_generated(a: &Algebra, gens: &[Element]) -> Subspace {
    let dim = a.dim();
    let mut span = Echelon::new(dim);
    let mut queue: Vec<Element> = Vec::new();
    let push = |v: Element, span: &mut Echelon, queue: &mut Vec<Element>| {
        if v.is_zero() || span.is_full() {
            return;
        }
        let row = IntRow::from_rationals(dim, v.terms());
        if span.insert(row) {
            queue.push(v);
        }
    };
    for g in gens {
        push(g.clone(), &mut span, &mut queue);
    }
    while let Some(v) = queue.pop() {
        for i in 0..dim {
            push(a.left_mul_basis(i, &v), &mut span, &mut queue);
            push(a.right_mul_basis(&v, i), &mut span, &mut queue);
        }
    }
    Subspace::from_echelon(span)
}

/// `I ∩ A_e` for every object, as subspaces of the whole algebra.
pub fn intersect_with_components(a: &Algebra, ideal: &Subspace) -> BTreeMap<ObjId, Subspace> {
    a.system()
        .category()
        .object_ids()
        .map(|e| {
            let ae = Subspace::coordinate(a.dim(), a.object_component(e));
            (e, ideal.intersection(&ae).expect("same ambient"))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct EstoniaOutcome {
    /// `δ_x u_{id_e} - δ_x u_m` for `m ~ id_e`, `m != id_e`
    pub generators: Vec<Element>,
    pub ideal: Subspace,
    /// `ideal ∩ ⊕_e A_e`
    pub diagonal_part: Subspace,
}

impl EstoniaOutcome {
    pub fn meets_trivially(&self) -> bool {
        self.diagonal_part.is_zero()
    }
}

/// Builds the ideal generated by the differences `δ_x u_{id_e} - δ_x u_m`
/// over all `m` related to an identity by `r`, and intersects it with the
/// diagonal subalgebra. Requires `r` to be contained in the kernel of `σ`.
pub fn estonia_check(a: &Algebra, r: &Congruence) -> Result<EstoniaOutcome, AlgebraError> {
    let sys = a.system();
    let g = sys.category();
    let kernel = sys.sigma_kernel();
    for m in g.morphism_ids() {
        for n in r.class_of(m) {
            if !kernel.related(m, n) {
                return Err(AlgebraError::NotContainedInKernel {
                    m: g.name(m).into(),
                    n: g.name(n).into(),
                });
            }
        }
    }
    let mut generators = Vec::new();
    for e in g.object_ids() {
        let id = g.identity(e);
        for m in r.class_of(id) {
            if m == id {
                continue;
            }
            for x in 0..sys.space_size(e) {
                generators.push(Element::from_terms([
                    (a.index(id, x), Rational::one()),
                    (a.index(m, x), -Rational::one()),
                ]));
            }
        }
    }
    let ideal = ideal_generated(a, &generators);
    let diagonal_part = ideal.intersection(&a.diagonal()).expect("same ambient");
    Ok(EstoniaOutcome {
        generators,
        ideal,
        diagonal_part,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn ideal_of_abs_generator() {
        // u_sqrt u_abs u_sqr = u_sqrt u_sqr = u_{id_Y}, so A_Y u_{id_Y} is in
        // the ideal alongside A_X u_abs, A_X u_sqr and A_Y u_sqrt.
        let a = Algebra::new(builtins::abs());
        let g = a.system().category();
        let ideal = ideal_generated(&a, &[a.u(g.morphism("abs").unwrap())]);
        assert_eq!(ideal.dim(), 10);
        let expected: Vec<usize> = ["abs", "sqr", "sqrt", "id_Y"]
            .iter()
            .flat_map(|n| a.component(g.morphism(n).unwrap()))
            .collect();
        assert_eq!(ideal, Subspace::coordinate(a.dim(), expected));
    }

    #[test]
    fn unit_generates_everything() {
        let a = Algebra::new(builtins::prod());
        assert!(ideal_generated(&a, &[a.unit()]).is_full());
        assert!(ideal_generated(&a, &[]).is_zero());
    }

    #[test]
    fn estonia_on_triv2() {
        let a = Algebra::new(builtins::triv2());
        let sys = a.system();
        let outcome = estonia_check(&a, &sys.sigma_kernel()).unwrap();
        assert_eq!(outcome.generators.len(), 1);
        assert_eq!(outcome.ideal.dim(), 1);
        assert!(outcome.meets_trivially());
    }

    #[test]
    fn estonia_rejects_relations_outside_the_kernel() {
        let a = Algebra::new(builtins::swap());
        let g = a.system().category();
        let all = Congruence::generated_by(g, &[(g.morphism("e").unwrap(), g.morphism("g").unwrap())]);
        assert!(matches!(
            estonia_check(&a, &all),
            Err(AlgebraError::NotContainedInKernel { .. })
        ));
    }
}
