//! Brute-force oracle and the end-to-end check: reconstruct from the bare
//! undirected graph, then compare with the oracle up to isomorphism.

use std::time::Instant;

use serde::Serialize;

use crate::classes::{classify_center_case, CenterCase};
use crate::error::{Error, Result};
use crate::graph::{DiGraph, UGraph};
use crate::group::{GroupModel, GroupSpec};
use crate::iso::{digraph_isomorphic, replay, IsoOutcome};
use crate::powergraph::zpm_power_graph;
use crate::reconstruct::{reconstruct_with_plan, ClassRole};

/// Multiplication table by vertex id. Finite models only.
pub fn cayley_table(g: &GroupModel) -> Result<Vec<Vec<usize>>> {
    if !g.is_finite() {
        return Err(Error::NotFiniteModel);
    }
    let els = g.elements();
    Ok(els
        .iter()
        .map(|x| {
            els.iter()
                .map(|y| g.index_of(&g.mul(x, y).expect("finite models are closed")).expect("closed"))
                .collect()
        })
        .collect())
}

/// Directed Z±-power graph by walking `x, x^2, x^3, ...` in the Cayley
/// table until the identity.
#[allow(clippy::needless_range_loop)]
pub fn oracle_digraph(g: &GroupModel) -> Result<DiGraph> {
    let t = cayley_table(g)?;
    let mut d = DiGraph::new(g.elements().iter().map(ToString::to_string).collect());
    for x in 0..t.len() {
        let mut y = x;
        loop {
            if y != x {
                d.add_arc(x, y);
            }
            if y == 0 {
                break;
            }
            y = t[y][x];
        }
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    /// Reconstruction is isomorphic to the oracle.
    Verified,
    Mismatch { reason: String },
    Error { error: String },
    /// Reconstruction succeeded but there is no oracle (graph input).
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub role: ClassRole,
    pub size: usize,
    pub p: Option<u64>,
    pub s: Option<u32>,
    pub r: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub id: String,
    pub vertices: usize,
    pub center_case: Option<CenterCase>,
    pub classes: Vec<ClassRow>,
    pub isomorphic: bool,
    /// Image in the oracle of each reconstructed vertex.
    pub witness: Option<Vec<usize>>,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl VerifyReport {
    fn new(id: &str, vertices: usize) -> VerifyReport {
        VerifyReport {
            id: id.to_string(),
            vertices,
            center_case: None,
            classes: Vec::new(),
            isomorphic: false,
            witness: None,
            outcome: Outcome::Unverified,
            wall_ms: None,
        }
    }

    fn failed(id: &str, e: &Error) -> VerifyReport {
        VerifyReport { outcome: Outcome::Error { error: e.to_string() }, ..VerifyReport::new(id, 0) }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Verified
    }

    /// One JSON line; wall time only when `timings` is set, so that reports
    /// are byte-reproducible by default.
    pub fn to_json_line(&self, timings: bool) -> String {
        let mut r = self.clone();
        if !timings {
            r.wall_ms = None;
        }
        serde_json::to_string(&r).expect("reports serialize")
    }
}

/// Reconstructs from `phi` (labels stripped first) and compares with
/// `oracle` when one is given.
pub fn verify_graph(id: &str, phi: &UGraph, oracle: Option<&DiGraph>) -> VerifyReport {
    let start = Instant::now();
    let mut report = VerifyReport::new(id, phi.len());
    let phi = phi.strip_labels();
    report.center_case = classify_center_case(&phi).ok().map(|s| s.case);
    match reconstruct_with_plan(&phi) {
        Err(e) => report.outcome = Outcome::Error { error: e.to_string() },
        Ok((d, plan)) => {
            report.classes = plan
                .classes
                .iter()
                .map(|c| ClassRow { role: c.role, size: c.vertices.len(), p: c.p, s: c.s, r: c.r })
                .collect();
            if let Some(oracle) = oracle {
                report.outcome = match digraph_isomorphic(&d, oracle) {
                    Ok(IsoOutcome::Isomorphic { witness }) if replay(&d, oracle, &witness) => {
                        report.isomorphic = true;
                        report.witness = Some(witness);
                        Outcome::Verified
                    }
                    Ok(IsoOutcome::Isomorphic { .. }) => Outcome::Mismatch { reason: "witness failed replay".into() },
                    Ok(IsoOutcome::NotIsomorphic { reason }) => Outcome::Mismatch { reason },
                    Err(e) => Outcome::Error { error: e.to_string() },
                };
            }
        }
    }
    report.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    report
}

/// End-to-end check of one finite group.
pub fn verify_spec(spec: &GroupSpec) -> VerifyReport {
    verify_spec_as(&spec.name(), spec)
}

pub fn verify_spec_as(id: &str, spec: &GroupSpec) -> VerifyReport {
    let start = Instant::now();
    let built = GroupModel::new(spec).and_then(|g| {
        let oracle = oracle_digraph(&g)?;
        Ok((zpm_power_graph(&g), oracle))
    });
    let mut report = match built {
        Ok((phi, oracle)) => verify_graph(id, &phi, Some(&oracle)),
        Err(e) => VerifyReport::failed(id, &e),
    };
    report.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powergraph::zpm_directed_power_graph;

    fn model(s: &str) -> GroupModel {
        GroupModel::new(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    #[test]
    fn oracle_arc_counts() {
        assert_eq!(oracle_digraph(&model("cyclic(4)")).unwrap().arc_count(), 7);
        assert_eq!(oracle_digraph(&model("abelian(2,2)")).unwrap().arc_count(), 3);
        assert_eq!(oracle_digraph(&model("trivial")).unwrap().arc_count(), 0);
        assert_eq!(oracle_digraph(&model("z_window(3)")), Err(Error::NotFiniteModel));
    }

    #[test]
    fn oracle_agrees_with_constructor() {
        for s in ["dihedral(6)", "dicyclic(3)", "symmetric(4)", "abelian(2,6)"] {
            let g = model(s);
            assert_eq!(oracle_digraph(&g).unwrap(), zpm_directed_power_graph(&g), "{s}");
        }
    }

    #[test]
    fn dicyclic_three_verifies() {
        let r = verify_spec(&"dicyclic(3)".parse().unwrap());
        assert!(r.passed(), "{r:?}");
        assert!(r.isomorphic);
        assert!(!r.to_json_line(false).contains("wall_ms"));
        assert!(r.to_json_line(true).contains("wall_ms"));
    }

    #[test]
    fn five_cycle_reports_error() {
        let r = verify_graph("c5", &UGraph::cycle(5), None);
        assert!(matches!(r.outcome, Outcome::Error { .. }));
        assert!(!r.passed());
    }
}
