use num_traits::Zero;

use super::{Echelon, LinalgError, Rational, Subspace};

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            rows: vec![vec![Rational::zero(); ncols]; nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = super::rational::one();
        }
        m
    }

    /// `ncols` is needed to describe matrices with zero rows.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(LinalgError::Ragged {
                    row: i,
                    found: row.len(),
                    expected: ncols,
                });
            }
        }
        Ok(Matrix {
            nrows: rows.len(),
            ncols,
            rows,
        })
    }

    pub fn from_i64(ncols: usize, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Matrix::from_rows(
            ncols,
            rows.iter()
                .map(|r| r.iter().map(|&x| super::rational::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.rows[r][c] = value;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols, self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                t.rows[c][r] = v.clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.ncols {
            return Err(LinalgError::DimensionMismatch {
                left: self.ncols,
                right: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub(crate) fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ncols);
        for row in &self.rows {
            e.insert_dense(row);
        }
        e
    }
}

/// Canonical basis of the row space together with the rank.
pub fn rref(m: &Matrix) -> (Subspace, usize) {
    let space = Subspace::from_echelon(m.echelon());
    let rank = space.dim();
    (space, rank)
}

/// Canonical basis of the right null space `{v : M v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let ker = Subspace::from_echelon(m.echelon()).orthogonal_kernel();
    debug_assert_eq!(
        m.echelon().rank() + ker.dim(),
        m.ncols(),
        "rank-nullity violated"
    );
    ker
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank() {
        let (basis, rank) = rref(&Matrix::identity(3));
        assert_eq!(rank, 3);
        assert_eq!(basis.basis(), Matrix::identity(3).rows());
        assert_eq!(kernel(&Matrix::identity(3)).dim(), 0);
    }

    #[test]
    fn dependent_rows_collapse() {
        let m = Matrix::from_i64(2, &[vec![1, 2], vec![2, 4]]).unwrap();
        let (basis, rank) = rref(&m);
        assert_eq!(rank, 1);
        assert_eq!(basis.basis(), Matrix::from_i64(2, &[vec![1, 2]]).unwrap().rows());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let ker = kernel(&Matrix::zeros(2, 3));
        assert_eq!(ker.dim(), 3);
        assert!(ker.is_full());
    }

    #[test]
    fn ragged_rows_are_rejected() {
        assert!(Matrix::from_i64(2, &[vec![1, 2], vec![1]]).is_err());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_i64(4, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, -1, 2]]).unwrap();
        let ker = kernel(&m);
        assert_eq!(ker.dim(), 2);
        for v in ker.basis() {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }
}
