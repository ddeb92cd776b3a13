//! Power graphs, Z±-power graphs, neighborhood operators and the ≈ / ≡
//! partitions.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, UGraph};
use crate::group::GroupModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionKind {
    /// Same generated cyclic subgroup.
    Approx,
    /// Same closed neighborhood.
    Equiv,
}

/// Disjoint blocks covering the vertex set, each sorted, ordered by least
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPartition {
    pub blocks: Vec<Vec<usize>>,
    pub kind: PartitionKind,
}

impl VertexPartition {
    /// `block_index()[v]` is the block containing `v`.
    pub fn block_index(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(Vec::len).sum();
        let mut idx = vec![usize::MAX; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                idx[v] = b;
            }
        }
        idx
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &VertexPartition) -> bool {
        let idx = coarser.block_index();
        self.blocks.iter().all(|b| b.iter().all(|&v| idx[v] == idx[b[0]]))
    }
}

fn labels(g: &GroupModel) -> Vec<String> {
    g.elements().iter().map(ToString::to_string).collect()
}

fn build_directed(g: &GroupModel, nonzero: bool) -> DiGraph {
    let mut d = DiGraph::new(labels(g));
    let els = g.elements();
    if g.is_finite() && !nonzero {
        for x in 0..g.len() {
            for y in g.cyclic_subgroup(x).members {
                d.add_arc(x, y);
            }
        }
    } else if g.is_finite() {
        // x, x^2, ..., x^{o(x)} = e: exactly the nonzero powers
        for (x, ex) in els.iter().enumerate() {
            let mut y = ex.clone();
            loop {
                d.add_arc(x, g.index_of(&y).expect("closed"));
                if y == *g.identity() {
                    break;
                }
                y = g.mul(&y, ex).expect("closed");
            }
        }
    } else {
        for (x, ex) in els.iter().enumerate() {
            for (y, ey) in els.iter().enumerate() {
                let member = if nonzero { g.is_nonzero_power(ex, ey) } else { g.is_power_member(ex, ey) };
                if x != y && member {
                    d.add_arc(x, y);
                }
            }
        }
    }
    d
}

/// Arc `x -> y` iff `x != y` and `y ∈ <x>`.
pub fn directed_power_graph(g: &GroupModel) -> DiGraph {
    build_directed(g, false)
}

/// Arc `x -> y` iff `x != y` and `y = x^n` for some `n != 0`.
pub fn zpm_directed_power_graph(g: &GroupModel) -> DiGraph {
    build_directed(g, true)
}

pub fn power_graph(g: &GroupModel) -> UGraph {
    directed_power_graph(g).underlying()
}

pub fn zpm_power_graph(g: &GroupModel) -> UGraph {
    zpm_directed_power_graph(g).underlying()
}

fn check_vertex(gr: &UGraph, v: usize) -> Result<()> {
    if v >= gr.len() {
        Err(Error::VertexOutOfRange(v, gr.len()))
    } else {
        Ok(())
    }
}

/// `N̄(x)`: neighbors of `x` together with `x`.
pub fn closed_neighborhood(gr: &UGraph, x: usize) -> Result<FixedBitSet> {
    check_vertex(gr, x)?;
    let mut n = gr.neighbors(x).clone();
    n.insert(x);
    Ok(n)
}

/// `N̄(S)`: intersection of the closed neighborhoods of `S`.
pub fn common_closed_neighborhood(gr: &UGraph, s: &[usize]) -> Result<FixedBitSet> {
    let (&first, rest) = s.split_first().ok_or(Error::EmptySet)?;
    let mut acc = closed_neighborhood(gr, first)?;
    for &x in rest {
        acc.intersect_with(&closed_neighborhood(gr, x)?);
    }
    Ok(acc)
}

/// `Ŝ = N̄(N̄(S))`. Never empty for nonempty `S`, since `S ⊆ Ŝ`.
pub fn double_neighborhood(gr: &UGraph, s: &[usize]) -> Result<FixedBitSet> {
    let inner: Vec<usize> = common_closed_neighborhood(gr, s)?.ones().collect();
    common_closed_neighborhood(gr, &inner)
}

/// Partition by equality of closed neighborhoods.
pub fn equiv_classes(gr: &UGraph) -> VertexPartition {
    let mut by_nbhd: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in 0..gr.len() {
        let mut key = gr.neighbors(v).clone();
        key.insert(v);
        let b = *by_nbhd.entry(key).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(v);
    }
    VertexPartition { blocks, kind: PartitionKind::Equiv }
}

/// Partition by equality of generated cyclic subgroups.
pub fn approx_classes(g: &GroupModel) -> VertexPartition {
    let n = g.len();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    if g.is_finite() {
        let mut by_sub: HashMap<Vec<usize>, usize> = HashMap::new();
        for v in 0..n {
            let b = *by_sub.entry(g.cyclic_subgroup(v).members).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
        }
    } else {
        // windows are exact about membership, so compare <x> and <y> directly
        let els = g.elements();
        let mut assigned = vec![false; n];
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let block: Vec<usize> = (x..n)
                .filter(|&y| {
                    !assigned[y]
                        && g.is_power_member(&els[x], &els[y])
                        && g.is_power_member(&els[y], &els[x])
                })
                .collect();
            for &y in &block {
                assigned[y] = true;
            }
            blocks.push(block);
        }
    }
    VertexPartition { blocks, kind: PartitionKind::Approx }
}

/// `(finite-order vertices, infinite-order vertices)`.
pub fn split_by_order(g: &GroupModel) -> (Vec<usize>, Vec<usize>) {
    (0..g.len()).partition(|&v| g.order(g.element(v)).is_finite())
}
