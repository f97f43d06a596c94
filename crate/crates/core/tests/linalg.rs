use num_traits::Zero;
use proptest::prelude::*;
use skewcat::linalg::modular::{rank_mod_prime, DEFAULT_PRIME};
use skewcat::linalg::rational::from_int;
use skewcat::linalg::{kernel, rref, Matrix, Subspace};
use skewcat::Rational;

/// Fraction-free determinant on machine integers.
fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Rank by fraction-free elimination with row swaps.
fn bareiss_rank(mut a: Vec<Vec<i128>>) -> usize {
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
    }
    rank
}

fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_i64(rows[0].len(), rows).unwrap()
}

fn widen(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Integer matrices that are singular fairly often: some rows are copied
/// or combined from earlier rows.
fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (
        prop::collection::vec(prop::collection::vec(-9i64..=9, cols), rows),
        prop::collection::vec((any::<bool>(), 0usize..64, -2i64..=2), rows),
    )
        .prop_map(|(mut m, mix)| {
            for (i, (dep, src, k)) in mix.into_iter().enumerate() {
                if dep && i > 0 && src % 3 == 0 {
                    let s = src % i;
                    let row: Vec<i64> = m[s].iter().zip(&m[i - 1]).map(|(a, b)| k * a + b).collect();
                    m[i] = row;
                }
            }
            m
        })
}

fn subspace(ambient: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, ambient), 0..=ambient).prop_map(move |rows| {
        let vs: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| from_int(x)).collect()).collect();
        Subspace::span(ambient, &vs)
    })
}

#[test]
fn identity_and_dependent_rows() {
    let (s, r) = rref(&Matrix::identity(3));
    assert_eq!(r, 3);
    assert_eq!(s, Subspace::full(3));
    let (s, r) = rref(&to_matrix(&[vec![1, 2], vec![2, 4]]));
    assert_eq!(r, 1);
    assert_eq!(s.basis(), &[vec![from_int(1), from_int(2)]]);
}

#[test]
fn kernel_of_zero_and_identity() {
    assert_eq!(kernel(&Matrix::zeros(2, 3)).dim(), 3);
    assert_eq!(kernel(&Matrix::identity(4)).dim(), 0);
}

#[test]
fn bareiss_oracle_on_known_determinants() {
    assert_eq!(bareiss_det(vec![vec![2, 1], vec![7, 4]]), 1);
    assert_eq!(bareiss_det(vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]), -2);
    assert_eq!(bareiss_rank(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn full_rank_iff_nonzero_determinant(m in matrix(8, 8)) {
        let (_, r) = rref(&to_matrix(&m));
        prop_assert_eq!(r == 8, bareiss_det(widen(&m)) != 0);
    }

    #[test]
    fn rank_matches_fraction_free_elimination(m in (1usize..7, 1usize..9).prop_flat_map(|(r, c)| matrix(r, c))) {
        let (_, r) = rref(&to_matrix(&m));
        prop_assert_eq!(r, bareiss_rank(widen(&m)));
    }

    #[test]
    fn modular_rank_never_exceeds_rational_rank(m in (1usize..7, 1usize..9).prop_flat_map(|(r, c)| matrix(r, c))) {
        let sparse: Vec<Vec<(usize, i64)>> = m
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect())
            .collect();
        let (_, r) = rref(&to_matrix(&m));
        let rp = rank_mod_prime(m[0].len(), &sparse, DEFAULT_PRIME);
        prop_assert!(rp <= r);
        // a 31-bit prime dividing every maximal minor is vanishingly unlikely here
        prop_assert_eq!(rp, r);
    }

    #[test]
    fn kernel_is_annihilated_and_rank_nullity_holds(m in (1usize..7, 1usize..9).prop_flat_map(|(r, c)| matrix(r, c))) {
        let mat = to_matrix(&m);
        let ker = kernel(&mat);
        let (_, r) = rref(&mat);
        prop_assert_eq!(ker.dim() + r, mat.ncols());
        for v in ker.basis() {
            for row in mat.rows() {
                prop_assert!(dot(row, v).is_zero());
            }
        }
    }

    #[test]
    fn rref_is_idempotent(m in (1usize..7, 1usize..9).prop_flat_map(|(r, c)| matrix(r, c))) {
        let (s, _) = rref(&to_matrix(&m));
        prop_assert_eq!(Subspace::span(s.ambient(), s.basis()), s.clone());
        for row in to_matrix(&m).rows() {
            prop_assert!(s.contains(row).unwrap());
        }
    }

    #[test]
    fn dimension_formula(u in subspace(6), v in subspace(6)) {
        let sum = u.sum(&v).unwrap();
        let meet = u.intersection(&v).unwrap();
        prop_assert_eq!(u.dim() + v.dim(), sum.dim() + meet.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap());
        prop_assert!(meet.is_subspace_of(&v).unwrap());
        prop_assert!(u.is_subspace_of(&sum).unwrap());
        prop_assert!(v.is_subspace_of(&sum).unwrap());
    }
}
