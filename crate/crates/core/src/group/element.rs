use std::fmt;

use num_rational::Ratio;

/// Which cyclic factor an amalgam element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    A,
    B,
}

/// Exact payload of a group element. Equality is equality of canonical
/// payloads; every constructor in this crate canonicalizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Residue modulo `n`.
    Residue(u64),
    /// `r^rot s^flip`.
    Dihedral { rot: u64, flip: bool },
    /// `a^exp b^b` in the dicyclic group.
    Dicyclic { exp: u64, b: bool },
    Tuple(Vec<u64>),
    /// Image list of a permutation on `0..degree`.
    Perm(Vec<usize>),
    /// Row label in a multiplication table.
    Table(usize),
    Int(i64),
    Rational(Ratio<i64>),
    /// `a^exp` or `b^exp`; `b^{qk}` is always stored as `a^{pk}`.
    Amalgam { branch: Branch, exp: i64 },
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Residue(r) => write!(f, "{r}"),
            Element::Dihedral { rot, flip } => match (rot, flip) {
                (0, false) => f.write_str("e"),
                (0, true) => f.write_str("s"),
                (r, false) => write!(f, "r^{r}"),
                (r, true) => write!(f, "r^{r}s"),
            },
            Element::Dicyclic { exp, b } => match (exp, b) {
                (0, false) => f.write_str("e"),
                (0, true) => f.write_str("b"),
                (i, false) => write!(f, "a^{i}"),
                (i, true) => write!(f, "a^{i}b"),
            },
            Element::Tuple(t) => {
                f.write_str("(")?;
                for (i, x) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Element::Perm(p) => write_cycles(f, p),
            Element::Table(t) => write!(f, "t{t}"),
            Element::Int(n) => write!(f, "{n}"),
            Element::Rational(r) => {
                if *r.denom() == 1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Element::Amalgam { branch, exp } => {
                if *exp == 0 {
                    f.write_str("e")
                } else {
                    let name = match branch {
                        Branch::A => 'a',
                        Branch::B => 'b',
                    };
                    write!(f, "{name}^{exp}")
                }
            }
        }
    }
}

fn write_cycles(f: &mut fmt::Formatter<'_>, p: &[usize]) -> fmt::Result {
    let mut seen = vec![false; p.len()];
    let mut any = false;
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        any = true;
        f.write_str("(")?;
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{i}")?;
            first = false;
            i = p[i];
        }
        f.write_str(")")?;
    }
    if !any {
        f.write_str("()")?;
    }
    Ok(())
}
