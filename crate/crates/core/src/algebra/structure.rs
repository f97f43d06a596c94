use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{ideal_generated, Algebra, AlgebraError, Element};
use crate::category::ObjId;
use crate::linalg::modular::{rank_mod_prime, DEFAULT_PRIME};
use crate::linalg::{Echelon, IntRow, Rational, Subspace};

/// Largest algebra dimension accepted by [`enveloping_rank_oracle`].
pub const ORACLE_DIM_CAP: usize = 36;

/// Algebras up to this dimension get their radical double-checked in debug
/// builds.
const DEBUG_RADICAL_CHECK_DIM: usize = 24;

/// Largest constant/leading coefficient for which rational roots of a minimal
/// polynomial are searched.
const ROOT_SEARCH_BOUND: i64 = 1_000_000;

fn int_row(ncols: usize, entries: BTreeMap<usize, i64>) -> IntRow {
    IntRow::from_sparse_ints(
        ncols,
        entries
            .into_iter()
            .filter(|(_, v)| *v != 0)
            .map(|(c, v)| (c, BigInt::from(v)))
            .collect(),
    )
}

/// `Z(A) = {z : z b_k = b_k z for all k}`.
pub fn center(a: &Algebra) -> Subspace {
    let n = a.dim();
    let rows = (0..n).flat_map(|k| {
        let mut by_out: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
        for &(i, out) in a.right_products(k) {
            *by_out.entry(out).or_default().entry(i).or_default() += 1;
        }
        for &(j, out) in a.left_products(k) {
            *by_out.entry(out).or_default().entry(j).or_default() -= 1;
        }
        by_out.into_values().map(move |row| int_row(n, row)).collect::<Vec<_>>()
    });
    Subspace::kernel_of_rows(n, rows)
}

/// `{z : z s = s z for all s in S}`.
pub fn commutant(a: &Algebra, s: &Subspace) -> Subspace {
    let n = a.dim();
    let rows = s.basis().iter().flat_map(|v| {
        let v = Element::from_dense(v);
        let mut by_out: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for j in 0..n {
            let diff = a.left_mul_basis(j, &v).sub(&a.right_mul_basis(&v, j));
            for (out, c) in diff.terms() {
                by_out.entry(out).or_default().push((j, c.clone()));
            }
        }
        by_out
            .into_values()
            .map(move |row| IntRow::from_rationals(n, row.iter().map(|(c, v)| (*c, v))))
            .collect::<Vec<_>>()
    });
    Subspace::kernel_of_rows(n, rows)
}

/// The Jacobson radical, computed as the radical of the trace form
/// `(a, b) ↦ tr(L_{ab})`, which over a field of characteristic zero is the
/// largest nilpotent ideal.
pub fn radical(a: &Algebra) -> Subspace {
    let n = a.dim();
    let traces: Vec<i64> = (0..n).map(|k| a.left_trace(k) as i64).collect();
    let rows = (0..n).map(|j| {
        let mut row = BTreeMap::new();
        for i in 0..n {
            if let Some(k) = a.product(i, j) {
                row.insert(i, traces[k]);
            }
        }
        int_row(n, row)
    });
    let r = Subspace::kernel_of_rows(n, rows);
    debug_assert!(n > DEBUG_RADICAL_CHECK_DIM || (is_ideal(a, &r) && is_nilpotent(a, &r)));
    r
}

pub fn is_ideal(a: &Algebra, s: &Subspace) -> bool {
    let mut span = Echelon::new(a.dim());
    for v in s.basis() {
        span.insert_dense(v);
    }
    s.basis().iter().all(|v| {
        let v = Element::from_dense(v);
        (0..a.dim()).all(|i| {
            span.contains_sparse(&a.left_mul_basis(i, &v).to_sparse())
                && span.contains_sparse(&a.right_mul_basis(&v, i).to_sparse())
        })
    })
}

pub fn is_nilpotent(a: &Algebra, s: &Subspace) -> bool {
    let base: Vec<Element> = s.basis().iter().map(|v| Element::from_dense(v)).collect();
    let mut power = base.clone();
    let mut dim = power.len();
    while dim > 0 {
        let mut next = Echelon::new(a.dim());
        for x in &power {
            for y in &base {
                next.insert_sparse(&a.multiply(x, y).to_sparse());
            }
        }
        if next.rank() >= dim {
            return false;
        }
        dim = next.rank();
        power = Subspace::from_echelon(next)
            .basis()
            .iter()
            .map(|v| Element::from_dense(v))
            .collect();
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalIdeal {
    pub eigenvalue: Rational,
    /// `z - eigenvalue`, a central zero divisor
    pub generator: Element,
    pub ideal_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonSimplicity {
    /// A nonzero nilpotent ideal; its basis is the witness.
    Radical(Subspace),
    /// A central element outside the scalars. When its minimal polynomial
    /// has a rational root, the ideal generated by `z - λ` is a proper
    /// nonzero ideal.
    Central {
        element: Element,
        rational_ideal: Option<RationalIdeal>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub witness: Option<NonSimplicity>,
}

/// Simplicity of `A ⊗ C`: a finite-dimensional algebra over a field of
/// characteristic zero is simple over the algebraic closure exactly when it
/// is semisimple with one-dimensional center.
pub fn is_simple_over_c(a: &Algebra) -> SimplicityVerdict {
    let rad = radical(a);
    let z = center(a);
    let (radical_dim, center_dim) = (rad.dim(), z.dim());
    let witness = if !rad.is_zero() {
        Some(NonSimplicity::Radical(rad))
    } else if center_dim > 1 {
        let unit = a.unit().to_dense(a.dim());
        let scalars = Subspace::span(a.dim(), [&unit]);
        let v = z
            .basis()
            .iter()
            .find(|v| !scalars.contains(v).expect("same ambient"))
            .expect("center is larger than the scalars");
        let element = Element::from_dense(v);
        let rational_ideal = central_ideal(a, &element);
        Some(NonSimplicity::Central { element, rational_ideal })
    } else {
        None
    };
    SimplicityVerdict {
        simple: witness.is_none(),
        radical_dim,
        center_dim,
        witness,
    }
}

fn central_ideal(a: &Algebra, z: &Element) -> Option<RationalIdeal> {
    let poly = minimal_polynomial(a, z);
    let lambda = rational_root(&poly)?;
    let generator = z.sub(&a.unit().scale(&lambda));
    let ideal = ideal_generated(a, std::slice::from_ref(&generator));
    debug_assert!(!ideal.is_zero() && !ideal.is_full());
    Some(RationalIdeal {
        eigenvalue: lambda,
        generator,
        ideal_dim: ideal.dim(),
    })
}

/// Coefficients `c_0, ..., c_k` (lowest degree first, integers) of the
/// minimal polynomial of `z`.
pub(crate) fn minimal_polynomial(a: &Algebra, z: &Element) -> Vec<BigInt> {
    let n = a.dim();
    let mut powers = vec![a.unit()];
    let mut span = Echelon::new(n);
    span.insert_sparse(&powers[0].to_sparse());
    loop {
        let next = a.multiply(powers.last().expect("nonempty"), z);
        let independent = span.insert_sparse(&next.to_sparse());
        powers.push(next);
        if !independent {
            break;
        }
    }
    let k = powers.len();
    let dense: Vec<Vec<Rational>> = powers.iter().map(|p| p.to_dense(n)).collect();
    let rows = (0..n).map(|t| IntRow::from_rationals(k, (0..k).map(|i| (i, &dense[i][t]))));
    let relation = Subspace::kernel_of_rows(k, rows);
    debug_assert_eq!(relation.dim(), 1);
    IntRow::from_rationals(k, relation.basis()[0].iter().enumerate())
        .to_rationals(k)
        .into_iter()
        .map(|c| c.to_integer())
        .collect()
}

fn divisors(v: &BigInt) -> Option<Vec<i64>> {
    let v = v.abs().to_i64()?;
    if v == 0 || v > ROOT_SEARCH_BOUND {
        return None;
    }
    Some((1..=v).filter(|d| v % d == 0).collect())
}

fn rational_root(poly: &[BigInt]) -> Option<Rational> {
    if poly[0].is_zero() {
        return Some(Rational::zero());
    }
    let eval = |x: &Rational| {
        poly.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    };
    let ps = divisors(&poly[0])?;
    let qs = divisors(poly.last().expect("nonempty"))?;
    for &q in &qs {
        for &p in &ps {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1, -1] {
                let x = Rational::new(BigInt::from(sign * p), BigInt::from(q));
                if eval(&x).is_zero() {
                    return Some(x);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopingRank {
    pub rank: usize,
    pub full: bool,
}

/// Rank of the span of the operators `x ↦ b_i x b_j` inside `End(A)`. By the
/// density theorem this is `dim(A)^2` exactly when `A ⊗ C` is simple.
pub fn enveloping_rank_oracle(a: &Algebra) -> Result<EnvelopingRank, AlgebraError> {
    let n = a.dim();
    if n > ORACLE_DIM_CAP {
        return Err(AlgebraError::DimensionCapExceeded {
            dim: n,
            cap: ORACLE_DIM_CAP,
        });
    }
    let mut rows: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            let row: Vec<usize> = a
                .left_products(i)
                .iter()
                .filter_map(|&(k, t)| a.product(t, j).map(|out| k * n + out))
                .collect();
            if !row.is_empty() {
                rows.insert(row);
            }
        }
    }
    let target = n * n;
    let sparse: Vec<Vec<(usize, i64)>> = rows.iter().map(|r| r.iter().map(|&c| (c, 1)).collect()).collect();
    if rank_mod_prime(target, &sparse, DEFAULT_PRIME) == target {
        return Ok(EnvelopingRank { rank: target, full: true });
    }
    let mut e = Echelon::new(target);
    for r in &rows {
        let mut sorted = r.clone();
        sorted.sort_unstable();
        e.insert(IntRow::from_sparse_ints(
            target,
            sorted.into_iter().map(|c| (c, BigInt::one())).collect(),
        ));
    }
    Ok(EnvelopingRank {
        rank: e.rank(),
        full: e.rank() == target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalCommutativity {
    pub maximal: bool,
    /// an element commuting with `⊕_e A_e` but lying outside it
    pub witness: Option<Element>,
}

pub fn maximal_commutativity(a: &Algebra) -> MaximalCommutativity {
    let diag = a.diagonal();
    let comm = commutant(a, &diag);
    let witness = comm
        .basis()
        .iter()
        .find(|v| !diag.contains(v).expect("same ambient"))
        .map(|v| Element::from_dense(v));
    MaximalCommutativity {
        maximal: witness.is_none(),
        witness,
    }
}

/// The corner `1_e S 1_e`, which is the skew monoid algebra of the
/// endomorphism monoid of `e` acting on `space(e)`.
#[derive(Clone, Debug)]
pub struct CornerAlgebra {
    pub object: ObjId,
    pub algebra: Algebra,
    /// basis index in the parent algebra of each corner basis element
    pub embedding: Vec<usize>,
}

pub fn corner_algebra(a: &Algebra, e: ObjId) -> Result<CornerAlgebra, AlgebraError> {
    let (sys, parents) = a
        .system()
        .endomorphism_system(e)
        .map_err(|_| AlgebraError::UnknownObject { index: e.0 })?;
    let algebra = Algebra::new(sys);
    let embedding = algebra
        .basis()
        .iter()
        .map(|b| a.index(parents[b.morphism.0], b.point))
        .collect();
    Ok(CornerAlgebra {
        object: e,
        algebra,
        embedding,
    })
}
