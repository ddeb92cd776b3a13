//! Inputs shared by the benchmarks.

use powgraph_core::{zpm_power_graph, GroupModel, GroupSpec, UGraph};

/// Groups of a few different shapes, each with a few hundred elements at most.
pub fn bench_specs() -> Vec<(&'static str, GroupSpec)> {
    [
        ("cyclic(96)", "cyclic(96)"),
        ("dihedral(48)", "dihedral(48)"),
        ("dicyclic(24)", "dicyclic(24)"),
        ("abelian(2,4,8)", "abelian(2,4,8)"),
        ("symmetric(5)", "symmetric(5)"),
    ]
    .into_iter()
    .map(|(name, s)| (name, s.parse().expect("bench spec parses")))
    .collect()
}

/// Model plus its label-free power graph.
pub fn prepared(spec: &GroupSpec) -> (GroupModel, UGraph) {
    let g = GroupModel::new(spec).expect("bench group builds");
    let phi = zpm_power_graph(&g).strip_labels();
    (g, phi)
}
