//! Rank of integer matrices modulo a prime.
//!
//! For an integer matrix the rank over `Z/p` never exceeds the rank over
//! `Q`, so a full rank modulo `p` is an exact certificate of full rational
//! rank. Deficient modular rank proves nothing and callers must fall back to
//! exact elimination.

/// 2^31 - 1; products of two residues fit in a `u64`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

fn inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Rank over `Z/p` of the matrix with the given sparse integer rows.
pub fn rank_mod_prime(ncols: usize, rows: &[Vec<(usize, i64)>], p: u64) -> usize {
    // Stored rows are sparse, normalized to a leading 1, and each is zero at
    // the pivots of rows stored before it.
    let mut stored: Vec<(usize, Vec<(usize, u64)>)> = Vec::new();
    let mut scratch = vec![0u64; ncols];
    for row in rows {
        if stored.len() == ncols {
            break;
        }
        let mut touched: Vec<usize> = Vec::with_capacity(row.len());
        for &(c, v) in row {
            let r = reduce(v, p);
            if scratch[c] == 0 && r != 0 {
                touched.push(c);
            }
            scratch[c] = (scratch[c] + r) % p;
        }
        for (pivot, prow) in &stored {
            let factor = scratch[*pivot];
            if factor == 0 {
                continue;
            }
            for &(c, v) in prow {
                if scratch[c] == 0 {
                    touched.push(c);
                }
                scratch[c] = (scratch[c] + p - factor * v % p) % p;
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut out: Vec<(usize, u64)> = Vec::new();
        for c in touched {
            if scratch[c] != 0 {
                out.push((c, scratch[c]));
            }
            scratch[c] = 0;
        }
        if let Some(&(lead, lv)) = out.first() {
            let inv = inverse(lv, p);
            for (_, v) in out.iter_mut() {
                *v = *v * inv % p;
            }
            stored.push((lead, out));
        }
    }
    stored.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_dependence() {
        let rows = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(2, 5)]];
        assert_eq!(rank_mod_prime(3, &rows, DEFAULT_PRIME), 2);
    }

    #[test]
    fn small_prime_can_lose_rank() {
        // det = 2, singular mod 2.
        let rows = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, -1)]];
        assert_eq!(rank_mod_prime(2, &rows, 2), 1);
        assert_eq!(rank_mod_prime(2, &rows, DEFAULT_PRIME), 2);
    }
}
