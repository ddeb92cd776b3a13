//! Validation of multiplication-table specs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Full associativity check up to this order, sampling above it.
pub(crate) const FULL_CHECK_LIMIT: usize = 256;
pub(crate) const SAMPLED_TRIPLES: usize = 1000;
const SAMPLE_SEED: u64 = 0x5eed_7ab1e;

/// Validates shape, Latin property, identity, and associativity. Returns the
/// identity label.
pub(crate) fn validate(order: usize, table: &[Vec<usize>]) -> Result<usize> {
    if order == 0 {
        return Err(Error::InvalidSpec("table order must be at least 1".into()));
    }
    if table.len() != order || table.iter().any(|row| row.len() != order) {
        return Err(Error::InvalidSpec(format!("table must be {order}x{order}")));
    }
    let mut seen = vec![false; order];
    for (i, row) in table.iter().enumerate() {
        seen.iter_mut().for_each(|s| *s = false);
        for &x in row {
            if x >= order {
                return Err(Error::InvalidSpec(format!("entry {x} out of range")));
            }
            if seen[x] {
                return Err(Error::TableNotGroup(format!("row {i} repeats {x}")));
            }
            seen[x] = true;
        }
    }
    for j in 0..order {
        seen.iter_mut().for_each(|s| *s = false);
        for row in table {
            let x = row[j];
            if seen[x] {
                return Err(Error::TableNotGroup(format!("column {j} repeats {x}")));
            }
            seen[x] = true;
        }
    }
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::TableNotGroup("no identity row/column".into()))?;

    let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
    if order <= FULL_CHECK_LIMIT {
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if !assoc(a, b, c) {
                        return Err(Error::TableNotGroup(format!(
                            "({a}*{b})*{c} != {a}*({b}*{c})"
                        )));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLED_TRIPLES {
            let (a, b, c) = (
                rng.gen_range(0..order),
                rng.gen_range(0..order),
                rng.gen_range(0..order),
            );
            if !assoc(a, b, c) {
                return Err(Error::TableNotGroup(format!(
                    "({a}*{b})*{c} != {a}*({b}*{c})"
                )));
            }
        }
    }
    Ok(identity)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
    }

    #[test]
    fn accepts_cyclic() {
        assert_eq!(validate(5, &cyclic_table(5)).unwrap(), 0);
    }

    #[test]
    fn rejects_latin_square_that_is_not_associative() {
        // A Latin square with identity 0 that is a loop but not a group
        // (the smallest non-associative loop has order 5).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(validate(5, &t), Err(Error::TableNotGroup(_))));
    }

    #[test]
    fn rejects_repeated_row_entry() {
        let mut t = cyclic_table(3);
        t[1][2] = 1;
        assert!(validate(3, &t).is_err());
    }
}
