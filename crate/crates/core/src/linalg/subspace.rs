use num_traits::Zero;

use super::{Echelon, IntRow, LinalgError, Rational};

/// A subspace of `Q^ambient` stored as its canonical reduced row-echelon
/// basis (leading ones, rows ordered by pivot column).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::coordinate(ambient, 0..ambient)
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate<I: IntoIterator<Item = usize>>(ambient: usize, indices: I) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let basis = idx
            .iter()
            .map(|&i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = super::rational::one();
                v
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: idx,
        }
    }

    pub fn span<'a, I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<Rational>>,
    {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert_dense(v);
        }
        Subspace::from_echelon(e)
    }

    pub fn from_echelon(e: Echelon) -> Self {
        let ambient = e.ncols();
        let basis = e.into_rref();
        let pivots = basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after subtracting its projection along the pivots.
    pub fn residual(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        self.check(v.len())?;
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let factor = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &factor * b;
                }
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        Ok(self.residual(v)?.iter().all(|x| x.is_zero()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        other.check(self.ambient)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other.ambient)?;
        Ok(Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()),
        ))
    }

    /// `U ∩ V` from the kernel of `[U^T | -V^T]`: a kernel vector `(a, b)`
    /// gives the common element `Σ a_i u_i = Σ b_j v_j`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let k = self.dim();
        let unknowns = k + other.dim();
        let mut e = Echelon::new(unknowns);
        for coord in 0..self.ambient {
            let mut entries: Vec<(usize, Rational)> = Vec::new();
            for (i, u) in self.basis.iter().enumerate() {
                if !u[coord].is_zero() {
                    entries.push((i, u[coord].clone()));
                }
            }
            for (j, v) in other.basis.iter().enumerate() {
                if !v[coord].is_zero() {
                    entries.push((k + j, -v[coord].clone()));
                }
            }
            if !entries.is_empty() {
                e.insert_sparse(&entries);
            }
        }
        let ker = Subspace::from_echelon(e).orthogonal_kernel();
        let vectors: Vec<Vec<Rational>> = ker
            .basis
            .iter()
            .map(|coeffs| {
                let mut w = vec![Rational::zero(); self.ambient];
                for (a, u) in coeffs[..k].iter().zip(&self.basis) {
                    if a.is_zero() {
                        continue;
                    }
                    for (x, y) in w.iter_mut().zip(u) {
                        if !y.is_zero() {
                            *x += a * y;
                        }
                    }
                }
                w
            })
            .collect();
        Ok(Subspace::span(self.ambient, &vectors))
    }

    /// The null space of the matrix whose rows span `self`, i.e.
    /// `{v : <row, v> = 0 for all rows}`.
    pub fn orthogonal_kernel(&self) -> Subspace {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let vectors: Vec<Vec<Rational>> = (0..self.ambient)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ambient];
                v[f] = super::rational::one();
                for (row, &p) in self.basis.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vectors)
    }

    /// Kernel of a sparse system given row by row.
    pub fn kernel_of_rows<I>(ncols: usize, rows: I) -> Subspace
    where
        I: IntoIterator<Item = IntRow>,
    {
        let mut e = Echelon::new(ncols);
        for row in rows {
            if e.is_full() {
                break;
            }
            e.insert(row);
        }
        Subspace::from_echelon(e).orthogonal_kernel()
    }

    fn check(&self, other: usize) -> Result<(), LinalgError> {
        if self.ambient == other {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                left: self.ambient,
                right: other,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::from_int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| from_int(x)).collect()
    }

    #[test]
    fn equal_subspaces() {
        let u = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersection(&u).unwrap(), u);
    }

    #[test]
    fn complementary_coordinate_planes() {
        let u = Subspace::coordinate(4, [0, 1]);
        let w = Subspace::coordinate(4, [2, 3]);
        assert!(u.intersection(&w).unwrap().is_zero());
        assert!(u.sum(&w).unwrap().is_full());
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Subspace::span(3, &[v(&[1, 2, 3]), v(&[4, 5, 6])]);
        let b = Subspace::span(3, &[v(&[5, 7, 9]), v(&[3, 3, 3])]);
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert_eq!(
            a.sum(&b),
            Err(LinalgError::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(a.contains(&v(&[1, 2, 3])).is_err());
    }

    #[test]
    fn orthogonal_kernel_annihilates_rows() {
        let a = Subspace::span(4, &[v(&[1, 0, 2, -1]), v(&[0, 1, 1, 1])]);
        let k = a.orthogonal_kernel();
        assert_eq!(k.dim(), 2);
        for row in a.basis() {
            for w in k.basis() {
                let dot = row
                    .iter()
                    .zip(w)
                    .fold(Rational::zero(), |acc, (x, y)| acc + x * y);
                assert!(dot.is_zero());
            }
        }
    }
}
