use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Orders up to this bound get a full associativity check; larger tables are
/// spot-checked on a fixed pseudo-random sample of triples.
const FULL_CHECK_ORDER: usize = 64;
const SPOT_CHECKS: usize = 20_000;

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates `table` (identity, inverses, associativity) and builds the group.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let order = table.len();
        let invalid = |msg: String| Err(Error::InvalidSpec(msg));
        if order == 0 {
            return invalid("finite group of order 0".into());
        }
        if identity >= order {
            return invalid(format!("identity index {identity} out of range"));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return invalid(format!("table row {i} has length {}", row.len()));
            }
            if let Some(bad) = row.iter().find(|&&x| x >= order) {
                return invalid(format!("table entry {bad} out of range"));
            }
            flat.extend_from_slice(row);
        }
        let group = FiniteGroup {
            order,
            table: flat,
            identity,
            inverses: vec![usize::MAX; order],
        };
        for a in 0..order {
            if group.mul(identity, a) != a || group.mul(a, identity) != a {
                return invalid(format!("{identity} is not a two-sided identity"));
            }
        }
        // Latin square: every row and column is a permutation.
        for a in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for b in 0..order {
                row_seen[group.mul(a, b)] = true;
                col_seen[group.mul(b, a)] = true;
            }
            if row_seen.iter().any(|s| !s) || col_seen.iter().any(|s| !s) {
                return invalid(format!("row/column {a} is not a permutation"));
            }
        }
        if order <= FULL_CHECK_ORDER {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !group.associates(a, b, c) {
                            return invalid(format!("not associative at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..SPOT_CHECKS {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !group.associates(a, b, c) {
                    return invalid(format!("not associative at ({a},{b},{c})"));
                }
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| group.mul(a, b) == identity)
                .expect("latin square has inverses");
        }
        Ok(FiniteGroup { inverses, ..group })
    }

    /// The cyclic group of order `n` with element `i` standing for the `i`-th power.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::new(table, 0).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    fn associates(&self, a: usize, b: usize, c: usize) -> bool {
        self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_inverses() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(z6.inv(2), 4);
        assert_eq!(z6.mul(5, 3), 2);
    }

    #[test]
    fn rejects_non_groups() {
        // Not a latin square.
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        // Latin square without associativity (a quasigroup with identity 0).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::new(loop5, 0).is_err());
        assert!(FiniteGroup::new(vec![], 0).is_err());
    }

    #[test]
    fn nonzero_identity_is_allowed() {
        // Z/2 with the identity stored at index 1.
        let g = FiniteGroup::new(vec![vec![1, 0], vec![0, 1]], 1).unwrap();
        assert_eq!(g.inv(0), 0);
        assert_eq!(g.mul(0, 0), 1);
    }
}
