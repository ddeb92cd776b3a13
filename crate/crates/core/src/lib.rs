//! Power graphs of groups, and reconstruction of the directed power graph
//! from the undirected one.
//!
//! The pipeline: build a [`GroupModel`], form its power graph, strip the
//! labels, [`reconstruct`] the orientation from structure alone, and compare
//! against the brute-force [`oracle_digraph`] with [`digraph_isomorphic`].

pub mod arith;
mod card;
pub mod classes;
pub mod corpus;
mod error;
pub mod graph;
pub mod group;
pub mod iso;
pub mod powergraph;
pub mod reconstruct;
pub mod verify;
pub mod window;

pub use card::Card;
pub use classes::{
    center, class_order_multiset, classify_center_case, classify_class, classify_profile_class,
    CenterCase, CenterSummary, ClassKind, ClassProfile, EquivClassInfo,
};
pub use error::{Error, Result};
pub use graph::{DiGraph, UGraph};
pub use group::{Branch, CyclicSubgroup, Element, GroupModel, GroupSpec};
pub use iso::{digraph_isomorphic, IsoOutcome};
pub use powergraph::{
    approx_classes, closed_neighborhood, common_closed_neighborhood, directed_power_graph,
    double_neighborhood, equiv_classes, power_graph, split_by_order, zpm_directed_power_graph,
    zpm_power_graph, PartitionKind, VertexPartition,
};
pub use reconstruct::{canonical_cyclic_dpg, reconstruct, reconstruct_with_plan, OrientationPlan};
pub use verify::{oracle_digraph, verify_spec, Outcome, VerifyReport};
