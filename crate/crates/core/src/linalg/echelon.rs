//! Fraction-free incremental elimination.
//!
//! Rows are kept as primitive integer vectors (content divided out after
//! every combination), so coefficient growth stays bounded by the actual
//! size of the reduced entries rather than the product of all pivots.
//! Rows whose density is below [`SPARSE_DENSITY`] are stored sparsely.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Rows with fewer than this fraction of nonzero entries are stored sparsely.
pub const SPARSE_DENSITY: f64 = 0.10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntRow {
    Dense(Vec<BigInt>),
    /// Sorted by column, no explicit zeros.
    Sparse(Vec<(usize, BigInt)>),
}

impl IntRow {
    /// Builds a primitive integer row from rational entries.
    /// Entries may be given in any order; duplicates are summed.
    pub fn from_rationals<'a, I>(ncols: usize, entries: I) -> IntRow
    where
        I: IntoIterator<Item = (usize, &'a Rational)>,
    {
        let mut collected: Vec<(usize, Rational)> = Vec::new();
        for (col, value) in entries {
            debug_assert!(col < ncols);
            collected.push((col, value.clone()));
        }
        collected.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(collected.len());
        for (col, value) in collected {
            match merged.last_mut() {
                Some((c, v)) if *c == col => *v += value,
                _ => merged.push((col, value)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        let lcm = merged
            .iter()
            .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        let ints: Vec<(usize, BigInt)> = merged
            .into_iter()
            .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
            .collect();
        let mut row = IntRow::from_sparse_ints(ncols, ints);
        row.make_primitive();
        row
    }

    pub fn from_sparse_ints(ncols: usize, entries: Vec<(usize, BigInt)>) -> IntRow {
        if (entries.len() as f64) < SPARSE_DENSITY * ncols as f64 {
            IntRow::Sparse(entries)
        } else {
            let mut dense = vec![BigInt::zero(); ncols];
            for (c, v) in entries {
                dense[c] = v;
            }
            IntRow::Dense(dense)
        }
    }

    pub fn get(&self, col: usize) -> Option<&BigInt> {
        match self {
            IntRow::Dense(v) => v.get(col).filter(|x| !x.is_zero()),
            IntRow::Sparse(v) => v
                .binary_search_by_key(&col, |(c, _)| *c)
                .ok()
                .map(|i| &v[i].1),
        }
    }

    pub fn leading(&self) -> Option<usize> {
        match self {
            IntRow::Dense(v) => v.iter().position(|x| !x.is_zero()),
            IntRow::Sparse(v) => v.first().map(|(c, _)| *c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.leading().is_none()
    }

    pub fn nonzeros(&self) -> Box<dyn Iterator<Item = (usize, &BigInt)> + '_> {
        match self {
            IntRow::Dense(v) => Box::new(
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero()),
            ),
            IntRow::Sparse(v) => Box::new(v.iter().map(|(c, x)| (*c, x))),
        }
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, v) in self.nonzeros() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn make_primitive(&mut self) {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return;
        }
        match self {
            IntRow::Dense(v) => v.iter_mut().for_each(|x| *x /= &g),
            IntRow::Sparse(v) => v.iter_mut().for_each(|(_, x)| *x /= &g),
        }
    }

    /// Replaces `self` by a primitive multiple of `a*self - b*pivot`, where
    /// `a = pivot[col]`, `b = self[col]`, so that `self[col]` becomes zero.
    pub fn eliminate(&mut self, pivot: &IntRow, col: usize) {
        let (a, b) = match (pivot.get(col), self.get(col)) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => return,
        };
        let g = a.gcd(&b);
        let (a, b) = (&a / &g, &b / &g);
        match self {
            IntRow::Dense(v) => {
                if !a.is_one() {
                    v.iter_mut().filter(|x| !x.is_zero()).for_each(|x| *x *= &a);
                }
                for (c, p) in pivot.nonzeros() {
                    v[c] -= &b * p;
                }
            }
            IntRow::Sparse(v) => {
                let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(v.len() + 4);
                let mut mine = std::mem::take(v).into_iter().peekable();
                let mut theirs = pivot.nonzeros().peekable();
                loop {
                    let take_mine = match (mine.peek(), theirs.peek()) {
                        (None, None) => break,
                        (Some(_), None) => Some(true),
                        (None, Some(_)) => Some(false),
                        (Some((cm, _)), Some((ct, _))) => {
                            if cm < ct {
                                Some(true)
                            } else if ct < cm {
                                Some(false)
                            } else {
                                None
                            }
                        }
                    };
                    match take_mine {
                        Some(true) => {
                            let (c, x) = mine.next().unwrap();
                            out.push((c, x * &a));
                        }
                        Some(false) => {
                            let (c, p) = theirs.next().unwrap();
                            out.push((c, -(&b * p)));
                        }
                        None => {
                            let (c, x) = mine.next().unwrap();
                            let (_, p) = theirs.next().unwrap();
                            let value = x * &a - &b * p;
                            if !value.is_zero() {
                                out.push((c, value));
                            }
                        }
                    }
                }
                *v = out;
            }
        }
        self.make_primitive();
    }

    pub fn to_rationals(&self, ncols: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); ncols];
        for (c, v) in self.nonzeros() {
            out[c] = Rational::from_integer(v.clone());
        }
        out
    }
}

/// Incrementally maintained semi-echelon basis.
///
/// Every stored row is zero at the pivot columns of all rows stored before
/// it, and its own pivot is its leading column. Rows are never modified after
/// insertion, which keeps `insert` cheap; [`Echelon::into_rref`] performs the
/// final back substitution.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<IntRow>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `row` modulo the stored rows.
    pub fn reduce(&self, mut row: IntRow) -> IntRow {
        for (pivot_row, &col) in self.rows.iter().zip(&self.pivots) {
            if row.is_zero() {
                break;
            }
            if row.get(col).is_some() {
                row.eliminate(pivot_row, col);
            }
        }
        row
    }

    /// Adds `row` to the span; returns whether the rank increased.
    pub fn insert(&mut self, row: IntRow) -> bool {
        let reduced = self.reduce(row);
        match reduced.leading() {
            Some(col) => {
                self.rows.push(reduced);
                self.pivots.push(col);
                true
            }
            None => false,
        }
    }

    pub fn insert_sparse(&mut self, entries: &[(usize, Rational)]) -> bool {
        let row = IntRow::from_rationals(self.ncols, entries.iter().map(|(c, v)| (*c, v)));
        self.insert(row)
    }

    pub fn insert_dense(&mut self, vector: &[Rational]) -> bool {
        assert_eq!(vector.len(), self.ncols, "vector length mismatch");
        let row = IntRow::from_rationals(self.ncols, vector.iter().enumerate());
        self.insert(row)
    }

    pub fn contains_dense(&self, vector: &[Rational]) -> bool {
        let row = IntRow::from_rationals(self.ncols, vector.iter().enumerate());
        self.reduce(row).is_zero()
    }

    pub fn contains_sparse(&self, entries: &[(usize, Rational)]) -> bool {
        let row = IntRow::from_rationals(self.ncols, entries.iter().map(|(c, v)| (*c, v)));
        self.reduce(row).is_zero()
    }

    /// Canonical reduced row-echelon basis with leading ones, ordered by
    /// pivot column.
    pub fn into_rref(self) -> Vec<Vec<Rational>> {
        let ncols = self.ncols;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<IntRow> = Vec::with_capacity(order.len());
        let mut pivots: Vec<usize> = Vec::with_capacity(order.len());
        let mut taken: Vec<Option<IntRow>> = self.rows.into_iter().map(Some).collect();
        for i in order {
            rows.push(taken[i].take().unwrap());
            pivots.push(self.pivots[i]);
        }
        for k in (0..rows.len()).rev() {
            let (upper, lower) = rows.split_at_mut(k);
            let pivot_row = &lower[0];
            let col = pivots[k];
            for row in upper.iter_mut() {
                if row.get(col).is_some() {
                    row.eliminate(pivot_row, col);
                }
            }
        }
        rows.iter()
            .zip(&pivots)
            .map(|(row, &col)| {
                let lead = row.get(col).expect("pivot entry vanished").clone();
                let mut out = row.to_rationals(ncols);
                let lead = Rational::from_integer(lead);
                for x in out.iter_mut().filter(|x| !x.is_zero()) {
                    *x /= &lead;
                }
                out
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::from_int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| from_int(x)).collect()
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        let ncols = 40;
        let mut sparse = Echelon::new(ncols);
        let mut dense = Echelon::new(ncols);
        let vectors: Vec<Vec<i64>> = (0..12)
            .map(|r| (0..ncols).map(|c| ((r * 7 + c * 3) % 5) as i64 - 2).collect())
            .collect();
        for v in &vectors {
            let entries: Vec<(usize, Rational)> = v
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(c, x)| (c, from_int(*x)))
                .collect();
            // Force the sparse representation regardless of density.
            let row = IntRow::Sparse(
                entries
                    .iter()
                    .map(|(c, x)| (*c, x.numer().clone()))
                    .collect(),
            );
            sparse.insert(row);
            dense.insert_dense(&ints(v));
        }
        assert_eq!(sparse.rank(), dense.rank());
        assert_eq!(sparse.into_rref(), dense.into_rref());
    }

    #[test]
    fn elimination_keeps_rows_primitive() {
        let mut e = Echelon::new(3);
        assert!(e.insert_dense(&ints(&[4, 6, 8])));
        assert!(e.insert_dense(&ints(&[6, 9, 13])));
        for row in &e.rows {
            let g = row.content();
            assert!(g.is_one(), "row {row:?} not primitive");
        }
    }
}
