//! Small finite groups given by multiplication tables, with subgroups and
//! right coset actions.

use std::collections::BTreeSet;

use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    /// `mul[a][b] = ab`; element 0 is the identity
    mul: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// `Z/orders[0] × Z/orders[1] × ...`; the empty product is trivial.
    pub fn cyclic_product(orders: &[usize]) -> FiniteGroup {
        let order: usize = orders.iter().product();
        let digits = |mut x: usize| {
            orders
                .iter()
                .map(|&o| {
                    let d = x % o;
                    x /= o;
                    d
                })
                .collect::<Vec<_>>()
        };
        let undigits = |ds: &[usize]| ds.iter().zip(orders).rev().fold(0, |acc, (&d, &o)| acc * o + d);
        let mul = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| {
                        let sum: Vec<usize> = digits(a)
                            .iter()
                            .zip(digits(b))
                            .zip(orders)
                            .map(|((x, y), o)| (x + y) % o)
                            .collect();
                        undigits(&sum)
                    })
                    .collect()
            })
            .collect();
        let name = if orders.is_empty() {
            "1".to_string()
        } else {
            orders.iter().map(|o| format!("Z{o}")).collect::<Vec<_>>().join("xZ")
        };
        FiniteGroup { name, mul }
    }

    /// Permutations of three letters, composed right to left.
    pub fn symmetric3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let mul = perms
            .iter()
            .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        FiniteGroup {
            name: "S3".into(),
            mul,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Trivial with probability `p_trivial`, otherwise generated by one
    /// random element.
    pub fn random_subgroup<R: Rng>(&self, rng: &mut R, p_trivial: f64) -> Vec<usize> {
        if rng.random_bool(p_trivial) {
            vec![0]
        } else {
            self.subgroup(&[rng.random_range(0..self.order())])
        }
    }

    /// Right cosets `Kg`, each sorted, ordered by smallest element.
    pub fn right_cosets(&self, k: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut cosets = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = k.iter().map(|&x| self.mul(x, g)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// The right action of `h` on the cosets of `k`: `Kg ↦ Kgh`, as a map on
    /// coset indices.
    pub fn coset_action(&self, cosets: &[Vec<usize>], h: usize) -> Vec<usize> {
        let mut which = vec![0; self.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                which[x] = i;
            }
        }
        cosets.iter().map(|c| which[self.mul(c[0], h)]).collect()
    }
}
