use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::perm::{alternating_generators, symmetric_generators};
use crate::error::{Error, Result};

/// Description of a group model. Serialized as one JSON object with a
/// `kind` tag; [`GroupSpec::to_canonical_json`] is byte-stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { n: u64 },
    /// Dihedral group with `n` rotations (order `2n`).
    Dihedral { n: u64 },
    /// Dicyclic group of order `4k`.
    Dicyclic { k: u64 },
    Abelian { invariants: Vec<u64> },
    Permutation { degree: usize, generators: Vec<Vec<usize>> },
    Table { order: usize, table: Vec<Vec<usize>> },
    /// The integers, windowed to `[-radius, radius]`.
    ZWindow { radius: u64 },
    /// Rationals whose denominators divide `prod p^cap`, windowed to
    /// numerators `|m| <= radius` over that common denominator.
    QSubgroupWindow { caps: Vec<(u64, u32)>, radius: u64 },
    /// The subset `<a> ∪ <b>` of `<a, b | a^p = b^q>`, exponents windowed
    /// to `[-radius, radius]`.
    Amalgam { p: u64, q: u64, radius: u64 },
}

impl GroupSpec {
    pub fn symmetric(n: usize) -> GroupSpec {
        GroupSpec::Permutation { degree: n.max(1), generators: symmetric_generators(n) }
    }

    pub fn alternating(n: usize) -> GroupSpec {
        GroupSpec::Permutation { degree: n.max(1), generators: alternating_generators(n) }
    }

    pub fn is_window(&self) -> bool {
        matches!(
            self,
            GroupSpec::ZWindow { .. } | GroupSpec::QSubgroupWindow { .. } | GroupSpec::Amalgam { .. }
        )
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("group specs always serialize")
    }

    pub fn from_json(s: &str) -> Result<GroupSpec> {
        Ok(serde_json::from_str(s)?)
    }

    /// Short human-readable name, also accepted by [`FromStr`] for the
    /// catalog kinds.
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Cyclic { n } => format!("cyclic({n})"),
            GroupSpec::Dihedral { n } => format!("dihedral({n})"),
            GroupSpec::Dicyclic { k } => format!("dicyclic({k})"),
            GroupSpec::Abelian { invariants } => format!("abelian({})", join(invariants)),
            GroupSpec::Permutation { degree, generators } => {
                format!("permutation({degree};{} gens)", generators.len())
            }
            GroupSpec::Table { order, .. } => format!("table({order})"),
            GroupSpec::ZWindow { radius } => format!("z_window({radius})"),
            GroupSpec::QSubgroupWindow { caps, radius } => {
                let caps: Vec<String> = caps.iter().map(|(p, e)| format!("{p}:{e}")).collect();
                format!("q_subgroup_window({{{}}},N={radius})", caps.join(","))
            }
            GroupSpec::Amalgam { p, q, radius } => format!("amalgam({p},{q},N={radius})"),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSpec(m.to_string()));
        match self {
            GroupSpec::Cyclic { n } if *n == 0 => bad("cyclic order must be >= 1"),
            GroupSpec::Dihedral { n } if *n == 0 => bad("dihedral rotation order must be >= 1"),
            GroupSpec::Dicyclic { k } if *k == 0 => bad("dicyclic parameter must be >= 1"),
            GroupSpec::Abelian { invariants } if invariants.contains(&0) => {
                bad("abelian invariants must be >= 1")
            }
            GroupSpec::Permutation { degree, .. } if *degree == 0 => bad("degree must be >= 1"),
            GroupSpec::ZWindow { radius } | GroupSpec::QSubgroupWindow { radius, .. }
                if *radius == 0 =>
            {
                bad("window radius must be >= 1")
            }
            GroupSpec::QSubgroupWindow { caps, .. }
                if caps.iter().any(|&(p, _)| !crate::arith::is_prime(p)) =>
            {
                bad("q_subgroup_window caps must be keyed by primes")
            }
            GroupSpec::Amalgam { p, q, radius } if *p < 2 || *q < 2 || *radius == 0 => {
                bad("amalgam requires p >= 2, q >= 2 and radius >= 1")
            }
            _ => Ok(()),
        }
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Parses shorthand such as `cyclic(6)`, `abelian(2,4)`, `symmetric(4)`,
/// `amalgam(2,3,N=24)` or `q_subgroup_window({2:2,3:1},N=48)`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidSpec(format!("cannot parse group shorthand {s:?}"));
        let s = match s.as_str() {
            "trivial" | "quaternion" => format!("{s}()"),
            _ => s.clone(),
        };
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let name = &s[..open];
        let mut body = &s[open + 1..s.len() - 1];

        let mut caps = Vec::new();
        if name == "q_subgroup_window" {
            let close = body.find('}').ok_or_else(bad)?;
            let inner = body.strip_prefix('{').ok_or_else(bad)?;
            for pair in inner[..close - 1].split(',').filter(|x| !x.is_empty()) {
                let (p, e) = pair.split_once(':').ok_or_else(bad)?;
                caps.push((p.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?));
            }
            body = body[close + 1..].trim_start_matches(',');
        }

        let args: Vec<u64> = body
            .split(',')
            .filter(|a| !a.is_empty())
            .map(|a| {
                let a = a.strip_prefix("N=").unwrap_or(a);
                a.parse::<u64>().map_err(|_| bad())
            })
            .collect::<Result<_>>()?;
        let one = || match args.as_slice() {
            [x] => Ok(*x),
            _ => Err(bad()),
        };

        let spec = match name {
            "cyclic" => GroupSpec::Cyclic { n: one()? },
            "trivial" if args.is_empty() => GroupSpec::Cyclic { n: 1 },
            "dihedral" => GroupSpec::Dihedral { n: one()? },
            "dicyclic" => GroupSpec::Dicyclic { k: one()? },
            "quaternion" if args.is_empty() => GroupSpec::Dicyclic { k: 2 },
            "abelian" => GroupSpec::Abelian { invariants: args.clone() },
            "symmetric" => GroupSpec::symmetric(one()? as usize),
            "alternating" => GroupSpec::alternating(one()? as usize),
            "z_window" => GroupSpec::ZWindow { radius: one()? },
            "q_subgroup_window" => GroupSpec::QSubgroupWindow { caps, radius: one()? },
            "amalgam" => match args.as_slice() {
                [p, q, radius] => GroupSpec::Amalgam { p: *p, q: *q, radius: *radius },
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}
