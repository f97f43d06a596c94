//! The skew category algebra of a finite discrete dynamical system, as a
//! structure-constant algebra over the rationals.
//!
//! The basis is `δ_x u_n` for every morphism `n` and every point `x` of
//! `space(cod n)`. Instantiating the multiplication rule
//! `(a_m u_m)(b_n u_n) = a_m σ(m)(b_n) u_{mn}` with `σ(m)(f) = f ∘ s(m)` on
//! indicator functions gives
//!
//! ```text
//! (δ_x u_m)(δ_y u_n) = δ_x u_{mn}   if dom(m) = cod(n) and s(m)(x) = y
//!                    = 0            otherwise
//! ```
//!
//! so every product of two basis elements is a basis element or zero.

mod ideal;
mod structure;

use std::collections::BTreeMap;
use std::ops::Range;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::category::{MorId, ObjId};
use crate::dynsys::DynSys;
use crate::linalg::{Rational, Subspace};

pub use ideal::{estonia_check, ideal_generated, intersect_with_components, EstoniaOutcome};
pub use structure::{
    center, commutant, corner_algebra, enveloping_rank_oracle, is_ideal, is_nilpotent, is_simple_over_c, maximal_commutativity, radical,
    CornerAlgebra, EnvelopingRank, MaximalCommutativity, NonSimplicity, RationalIdeal, SimplicityVerdict,
    ORACLE_DIM_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "error")]
pub enum AlgebraError {
    #[error("unknown object #{index}")]
    UnknownObject { index: usize },
    #[error("algebra dimension {dim} exceeds the cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("relation relates {m:?} and {n:?}, which act differently")]
    NotContainedInKernel { m: String, n: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
pub enum AxiomViolation {
    #[error("(b{0} b{1}) b{2} != b{0} (b{1} b{2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit fails on basis element {0}")]
    Unit(usize),
    #[error("T_m T_n != T_mn for morphisms {0:?}, {1:?}")]
    StrongGrading(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub morphism: MorId,
    /// index into `space(cod morphism)`
    pub point: usize,
}

/// A finitely supported rational combination of basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<usize, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(i: usize) -> Self {
        Element::from_terms([(i, Rational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Rational)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (i, c) in terms {
            e.add_term(i, &c);
        }
        e
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        Element::from_terms(v.iter().enumerate().map(|(i, c)| (i, c.clone())))
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for (&i, c) in &self.terms {
            v[i] = c.clone();
        }
        v
    }

    pub fn add_term(&mut self, i: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.terms.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(&i, x)| (i, x * c)).collect(),
        }
    }

    pub fn to_sparse(&self) -> Vec<(usize, Rational)> {
        self.terms.iter().map(|(&i, c)| (i, c.clone())).collect()
    }
}

/// The skew category algebra of a [`DynSys`]. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Algebra {
    system: DynSys,
    basis: Vec<BasisElement>,
    /// `offsets[n]..offsets[n+1]` is the graded component `T_n`
    offsets: Vec<usize>,
    /// `left[i]` lists `(j, k)` with `b_i b_j = b_k`
    left: Vec<Vec<(usize, usize)>>,
    /// `right[j]` lists `(i, k)` with `b_i b_j = b_k`
    right: Vec<Vec<(usize, usize)>>,
}

impl Algebra {
    pub fn new(system: DynSys) -> Algebra {
        let g = system.category();
        let mut basis = Vec::new();
        let mut offsets = Vec::with_capacity(g.num_morphisms() + 1);
        for n in g.morphism_ids() {
            offsets.push(basis.len());
            for x in 0..system.space_size(g.cod(n)) {
                basis.push(BasisElement { morphism: n, point: x });
            }
        }
        offsets.push(basis.len());
        let dim = basis.len();
        let mut left = vec![Vec::new(); dim];
        let mut right = vec![Vec::new(); dim];
        for (i, b) in basis.iter().enumerate() {
            let m = b.morphism;
            let y = system.apply(m, b.point);
            for n in g.morphisms_with_cod(g.dom(m)) {
                let mn = g.compose(m, n).expect("composable");
                let j = offsets[n.0] + y;
                let k = offsets[mn.0] + b.point;
                left[i].push((j, k));
                right[j].push((i, k));
            }
        }
        Algebra {
            system,
            basis,
            offsets,
            left,
            right,
        }
    }

    pub fn system(&self) -> &DynSys {
        &self.system
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    /// Index of `δ_x u_n`.
    pub fn index(&self, n: MorId, x: usize) -> usize {
        debug_assert!(self.offsets[n.0] + x < self.offsets[n.0 + 1]);
        self.offsets[n.0] + x
    }

    /// Index range of the homogeneous component `T_n = A_{cod n} u_n`.
    pub fn component(&self, n: MorId) -> Range<usize> {
        self.offsets[n.0]..self.offsets[n.0 + 1]
    }

    /// `u_n = 1_{A_{cod n}} u_n`.
    pub fn u(&self, n: MorId) -> Element {
        Element::from_terms(self.component(n).map(|i| (i, Rational::one())))
    }

    pub fn unit(&self) -> Element {
        let g = self.system.category();
        g.object_ids()
            .fold(Element::zero(), |acc, e| acc.add(&self.u(g.identity(e))))
    }

    /// Indices spanning `A_e = A_e u_{id_e}`.
    pub fn object_component(&self, e: ObjId) -> Range<usize> {
        self.component(self.system.category().identity(e))
    }

    /// Indices spanning `A = ⊕_e A_e`.
    pub fn diagonal_indices(&self) -> Vec<usize> {
        self.system
            .category()
            .object_ids()
            .flat_map(|e| self.object_component(e))
            .collect()
    }

    pub fn diagonal(&self) -> Subspace {
        Subspace::coordinate(self.dim(), self.diagonal_indices())
    }

    /// `b_i b_j` as a basis index, or `None` for zero.
    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (self.basis[i], self.basis[j]);
        let g = self.system.category();
        if g.dom(a.morphism) != g.cod(b.morphism) || self.system.apply(a.morphism, a.point) != b.point {
            return None;
        }
        let mn = g.compose(a.morphism, b.morphism).expect("composable");
        Some(self.offsets[mn.0] + a.point)
    }

    pub fn left_products(&self, i: usize) -> &[(usize, usize)] {
        &self.left[i]
    }

    pub fn right_products(&self, j: usize) -> &[(usize, usize)] {
        &self.right[j]
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                if let Some(k) = self.product(i, j) {
                    out.add_term(k, &(x * y));
                }
            }
        }
        out
    }

    /// `b_i v`.
    pub fn left_mul_basis(&self, i: usize, v: &Element) -> Element {
        let mut out = Element::zero();
        for (j, c) in v.terms() {
            if let Some(k) = self.product(i, j) {
                out.add_term(k, c);
            }
        }
        out
    }

    /// `v b_j`.
    pub fn right_mul_basis(&self, v: &Element, j: usize) -> Element {
        let mut out = Element::zero();
        for (i, c) in v.terms() {
            if let Some(k) = self.product(i, j) {
                out.add_term(k, c);
            }
        }
        out
    }

    /// Number of basis elements `b_l` with `b_k b_l = b_l`: the trace of
    /// left multiplication by `b_k`.
    pub fn left_trace(&self, k: usize) -> usize {
        self.left[k].iter().filter(|(j, out)| j == out).count()
    }

    pub fn check_associativity_exhaustive(&self) -> Result<(), AxiomViolation> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for k in 0..self.dim() {
                    self.check_triple(i, j, k)?;
                }
            }
        }
        Ok(())
    }

    pub fn check_associativity_sampled<R: Rng>(&self, rng: &mut R, samples: usize) -> Result<(), AxiomViolation> {
        let n = self.dim();
        for _ in 0..samples {
            self.check_triple(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
        }
        Ok(())
    }

    fn check_triple(&self, i: usize, j: usize, k: usize) -> Result<(), AxiomViolation> {
        let left = self.product(i, j).and_then(|ij| self.product(ij, k));
        let right = self.product(j, k).and_then(|jk| self.product(i, jk));
        if left == right {
            Ok(())
        } else {
            Err(AxiomViolation::NonAssociative(i, j, k))
        }
    }

    pub fn check_unit(&self) -> Result<(), AxiomViolation> {
        let unit = self.unit();
        for i in 0..self.dim() {
            let b = Element::basis(i);
            if self.multiply(&unit, &b) != b || self.multiply(&b, &unit) != b {
                return Err(AxiomViolation::Unit(i));
            }
        }
        Ok(())
    }

    /// `T_m T_n = T_{mn}` for composable pairs and `{0}` otherwise. Products
    /// of basis elements are basis elements, so the span of `T_m T_n` is the
    /// coordinate subspace on the set of nonzero products.
    pub fn check_strong_grading(&self) -> Result<(), AxiomViolation> {
        let g = self.system.category();
        for m in g.morphism_ids() {
            for n in g.morphism_ids() {
                let mut products: Vec<usize> = self
                    .component(m)
                    .flat_map(|i| self.component(n).filter_map(move |j| self.product(i, j)))
                    .collect();
                products.sort_unstable();
                products.dedup();
                let expected: Vec<usize> = match g.compose(m, n) {
                    Some(mn) => self.component(mn).collect(),
                    None => Vec::new(),
                };
                if products != expected {
                    return Err(AxiomViolation::StrongGrading(g.name(m).into(), g.name(n).into()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::linalg::rational::from_int;

    #[test]
    fn dimensions() {
        assert_eq!(Algebra::new(builtins::pair(3)).dim(), 9);
        assert_eq!(Algebra::new(builtins::abs()).dim(), 13);
        assert_eq!(Algebra::new(builtins::triv2()).dim(), 2);
        assert_eq!(Algebra::new(builtins::swap()).dim(), 4);
    }

    #[test]
    fn matrix_unit_relations() {
        let a = Algebra::new(builtins::pair(2));
        let g = a.system().category();
        let u = |s: &str| a.u(g.morphism(s).unwrap());
        assert_eq!(a.multiply(&u("u12"), &u("u21")), u("u11"));
        assert!(a.multiply(&u("u12"), &u("u12")).is_zero());
    }

    #[test]
    fn unit_laws_on_random_elements() {
        let a = Algebra::new(builtins::abs());
        let x = Element::from_terms((0..a.dim()).map(|i| (i, from_int(i as i64 * 3 - 7))));
        let unit = a.unit();
        assert_eq!(a.multiply(&unit, &x), x);
        assert_eq!(a.multiply(&x, &unit), x);
    }

    #[test]
    fn axioms_hold_on_builtins() {
        for name in builtins::NAMES {
            let a = Algebra::new(builtins::by_name(name).unwrap());
            a.check_associativity_exhaustive().unwrap();
            a.check_unit().unwrap();
            a.check_strong_grading().unwrap();
        }
    }

    #[test]
    fn triv2_is_commutative_with_square_one() {
        let a = Algebra::new(builtins::triv2());
        let g = a.system().category();
        let ug = a.u(g.morphism("g").unwrap());
        assert_eq!(a.multiply(&ug, &ug), a.unit());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(a.product(i, j), a.product(j, i));
            }
        }
    }
}
