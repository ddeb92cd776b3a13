//! Permutation arithmetic. Composition is `(a * b)(i) = a(b(i))`.

use crate::error::{Error, Result};

pub(crate) fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub(crate) fn invert(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub(crate) fn identity(degree: usize) -> Vec<usize> {
    (0..degree).collect()
}

pub(crate) fn check_bijection(degree: usize, g: &[usize]) -> Result<()> {
    if g.len() != degree {
        return Err(Error::InvalidSpec(format!(
            "generator has {} images, degree is {degree}",
            g.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in g {
        if x >= degree || seen[x] {
            return Err(Error::InvalidSpec(format!(
                "generator {g:?} is not a bijection on 0..{degree}"
            )));
        }
        seen[x] = true;
    }
    Ok(())
}

/// A transposition and an n-cycle.
pub fn symmetric_generators(n: usize) -> Vec<Vec<usize>> {
    if n < 2 {
        return vec![identity(n.max(1))];
    }
    let mut swap = identity(n);
    swap.swap(0, 1);
    let cycle = (0..n).map(|i| (i + 1) % n).collect();
    vec![swap, cycle]
}

/// The 3-cycles `(0 1 i)` for `i >= 2`.
pub fn alternating_generators(n: usize) -> Vec<Vec<usize>> {
    if n < 3 {
        return vec![identity(n.max(1))];
    }
    (2..n)
        .map(|i| {
            let mut p = identity(n);
            p[0] = 1;
            p[1] = i;
            p[i] = 0;
            p
        })
        .collect()
}
