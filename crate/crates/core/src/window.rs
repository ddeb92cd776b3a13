//! Experiments on windows of infinite groups: I/O/M sets, complement
//! graphs, almost-connectedness, direction recovery through common
//! successors, and the locally cyclic check.
//!
//! Membership is always exact; only vertex sets are truncated. Where a
//! criterion quantifies over an infinite set, a count against a threshold
//! over the outer part of the window stands in for it, and counts that
//! are neither zero nor past the threshold are reported as undecided.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, UGraph};
use crate::group::GroupModel;
use crate::powergraph::{zpm_directed_power_graph, zpm_power_graph};

pub const DEFAULT_GUARD: u32 = 5;
pub const DEFAULT_TAU: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IomSets {
    pub x: usize,
    /// Predecessors of `x`, other than `x` and `x⁻¹`.
    pub i: Vec<usize>,
    /// Successors of `x` by nonzero powers, other than `x` and `x⁻¹`.
    pub o: Vec<usize>,
    pub m: Vec<usize>,
}

/// An induced subgraph remembering which window vertices it was built on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedGraph {
    pub graph: UGraph,
    pub vertices: Vec<usize>,
}

impl InducedGraph {
    fn position(&self) -> HashMap<usize, usize> {
        self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlmostConnectedReport {
    pub isolated: Vec<usize>,
    pub bulk: Vec<usize>,
    pub verdict: bool,
    /// Whether the window was large enough for the verdict to mean
    /// anything; always set for plain graphs.
    pub guard: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma4Report {
    pub x: usize,
    pub guarded_o: Vec<usize>,
    pub i: Vec<usize>,
    /// Complement edges joining an O vertex to an I vertex.
    pub cross_edges: Vec<(usize, usize)>,
    /// Number of components of Ō meeting the guarded O vertices.
    pub guarded_components: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionRecovery {
    /// Window digraph with the recovered arcs between guarded vertices.
    pub digraph: DiGraph,
    pub guarded: Vec<usize>,
    /// Ordered guarded pairs `(u, v)` with `u ∼ v`, `v != u⁻¹` that were
    /// decided.
    pub decided: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocallyCyclicReport {
    pub pairs_checked: usize,
    /// Non-adjacent pairs with no common predecessor in the window.
    pub no_common_predecessor: Vec<(usize, usize)>,
    /// Pairs whose cyclic subgroups meet trivially.
    pub trivial_intersections: Vec<(usize, usize)>,
    pub truncated: bool,
    pub verdict: bool,
}

/// A window model with its Z±-power graph.
pub struct Window<'a> {
    pub g: &'a GroupModel,
    pub gr: UGraph,
}

impl<'a> Window<'a> {
    pub fn new(g: &'a GroupModel) -> Result<Window<'a>> {
        if !g.is_window() {
            return Err(Error::NotWindowModel);
        }
        Ok(Window { g, gr: zpm_power_graph(g) })
    }

    fn inverse_id(&self, x: usize) -> Option<usize> {
        self.g.index_of(&self.g.inverse(self.g.element(x)))
    }

    /// `v^k` lies in the window.
    pub fn power_in_window(&self, v: usize, k: i64) -> bool {
        self.g.index_of(&self.g.power(self.g.element(v), k)).is_some()
    }

    /// Vertices whose `guard`-th power stays inside the window.
    pub fn guarded(&self, guard: u32) -> Vec<usize> {
        (1..self.g.len()).filter(|&v| self.power_in_window(v, guard as i64)).collect()
    }

    pub fn iom(&self, x: usize) -> Result<IomSets> {
        if x >= self.g.len() {
            return Err(Error::VertexOutOfRange(x, self.g.len()));
        }
        if x == 0 {
            return Err(Error::IdentityArgument);
        }
        let inv = self.inverse_id(x);
        let els = self.g.elements();
        let ex = &els[x];
        let eligible = |y: usize| y != x && Some(y) != inv;
        let i: Vec<usize> = (0..els.len()).filter(|&y| eligible(y) && self.g.is_nonzero_power(&els[y], ex)).collect();
        let o: Vec<usize> = (0..els.len()).filter(|&y| eligible(y) && self.g.is_nonzero_power(ex, &els[y])).collect();
        let mut m: Vec<usize> = i.iter().chain(&o).copied().collect();
        m.sort_unstable();
        m.dedup();
        Ok(IomSets { x, i, o, m })
    }

    /// Complement of the power graph induced on `vertices`.
    pub fn complement_on(&self, vertices: &[usize]) -> InducedGraph {
        InducedGraph { graph: self.gr.induced(vertices).complement(), vertices: vertices.to_vec() }
    }

    pub fn complements(&self, x: usize) -> Result<(InducedGraph, InducedGraph)> {
        let s = self.iom(x)?;
        Ok((self.complement_on(&s.o), self.complement_on(&s.m)))
    }

    pub fn lemma4(&self, x: usize, guard: u32) -> Result<Lemma4Report> {
        let s = self.iom(x)?;
        if !self.power_in_window(x, guard as i64) {
            return Err(Error::WindowTooSmall(format!(
                "{}^{guard} lies outside the window",
                self.g.element(x)
            )));
        }
        let guarded_o: Vec<usize> = (2..=guard as i64)
            .flat_map(|k| [k, -k])
            .filter_map(|k| self.g.index_of(&self.g.power(self.g.element(x), k)))
            .filter(|v| s.o.contains(v))
            .collect();
        if guarded_o.len() + s.i.len() < 5 {
            return Err(Error::WindowTooSmall(format!(
                "only {} guarded vertices around {}",
                guarded_o.len() + s.i.len(),
                self.g.element(x)
            )));
        }
        let cross_edges: Vec<(usize, usize)> = s
            .o
            .iter()
            .flat_map(|&o| s.i.iter().map(move |&i| (o, i)))
            .filter(|&(o, i)| !self.gr.has_edge(o, i))
            .collect();
        let obar = self.complement_on(&s.o);
        let pos = obar.position();
        let comp_of = component_index(&obar.graph);
        let mut comps: Vec<usize> = guarded_o.iter().map(|v| comp_of[pos[v]]).collect();
        comps.sort_unstable();
        comps.dedup();
        let holds = cross_edges.is_empty() && comps.len() == 1;
        Ok(Lemma4Report { x, guarded_o, i: s.i, cross_edges, guarded_components: comps.len(), holds })
    }

    /// `M(x) ∩ M(y)` as window vertices.
    pub fn common_m(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        let (mx, my) = (self.iom(x)?.m, self.iom(y)?.m);
        Ok(mx.into_iter().filter(|v| my.contains(v)).collect())
    }

    /// `O(x) ∩ O(y)` as window vertices.
    pub fn common_o(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        let (ox, oy) = (self.iom(x)?.o, self.iom(y)?.o);
        Ok(ox.into_iter().filter(|v| oy.contains(v)).collect())
    }

    /// Almost-connectedness of `M̄(x) ∩ M̄(y)`, with the guard flag set when
    /// both witnesses are guarded.
    pub fn m_intersection_report(&self, x: usize, y: usize, guard: u32) -> Result<AlmostConnectedReport> {
        let common = self.complement_on(&self.common_m(x, y)?);
        let mut r = almost_connected(&common.graph);
        r.isolated = r.isolated.iter().map(|&i| common.vertices[i]).collect();
        r.bulk = r.bulk.iter().map(|&i| common.vertices[i]).collect();
        r.guard = self.power_in_window(x, guard as i64) && self.power_in_window(y, guard as i64);
        Ok(r)
    }

    pub fn recover_directions(&self, x: usize, y: usize, tau: usize, guard: u32) -> Result<DirectionRecovery> {
        if x == y || self.gr.has_edge(x, y) {
            return Err(Error::NotAlmostConnected);
        }
        let report = self.m_intersection_report(x, y, guard)?;
        if !report.verdict {
            return Err(Error::NotAlmostConnected);
        }
        let n = self.g.len();
        let mut target = FixedBitSet::with_capacity(n);
        self.common_m(x, y)?.into_iter().for_each(|v| target.insert(v));
        let guarded = self.guarded(guard);
        let mut is_guarded = FixedBitSet::with_capacity(n);
        guarded.iter().for_each(|&v| is_guarded.insert(v));
        // only the outer part of the window can witness an infinite intersection
        let mut outer_target = target.clone();
        outer_target.difference_with(&is_guarded);

        let mut d = DiGraph::new(self.gr.labels().to_vec());
        let mut decided = 0;
        let mut undecided = Vec::new();
        for &u in &guarded {
            let s = self.iom(u)?;
            let mbar = self.complement_on(&s.m);
            let comp_of = component_index(&mbar.graph);
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for (i, &w) in mbar.vertices.iter().enumerate() {
                if outer_target.contains(w) {
                    *counts.entry(comp_of[i]).or_insert(0) += 1;
                }
            }
            let inv = self.inverse_id(u);
            if let Some(inv) = inv {
                d.add_arc(u, inv);
            }
            for (i, &v) in mbar.vertices.iter().enumerate() {
                if !is_guarded.contains(v) || Some(v) == inv || !self.gr.has_edge(u, v) {
                    continue;
                }
                match counts.get(&comp_of[i]).copied().unwrap_or(0) {
                    0 => decided += 1,
                    c if c >= tau => {
                        d.add_arc(u, v);
                        decided += 1;
                    }
                    c => undecided.push(format!("{} -> {} (count {c})", self.g.element(u), self.g.element(v))),
                }
            }
        }
        if let Some(first) = undecided.first() {
            return Err(Error::ThresholdUndecided { tau, count: undecided.len(), first: first.clone() });
        }
        Ok(DirectionRecovery { digraph: d, guarded, decided })
    }

    /// Guarded ordered edges `(u, v)`, `v != u⁻¹`, where the recovered arc
    /// disagrees with the model's directed graph.
    pub fn disagreements(&self, rec: &DirectionRecovery) -> Vec<(usize, usize)> {
        let oracle = zpm_directed_power_graph(self.g);
        let mut out = Vec::new();
        for &u in &rec.guarded {
            let inv = self.inverse_id(u);
            for &v in &rec.guarded {
                if u != v && Some(v) != inv && self.gr.has_edge(u, v) && rec.digraph.has_arc(u, v) != oracle.has_arc(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn locally_cyclic(&self, pair_cap: usize) -> LocallyCyclicReport {
        let els = self.g.elements();
        let n = els.len();
        let mut report = LocallyCyclicReport {
            pairs_checked: 0,
            no_common_predecessor: Vec::new(),
            trivial_intersections: Vec::new(),
            truncated: false,
            verdict: false,
        };
        'outer: for x in 1..n {
            for y in x + 1..n {
                if self.gr.has_edge(x, y) {
                    continue;
                }
                if report.pairs_checked == pair_cap {
                    report.truncated = true;
                    break 'outer;
                }
                report.pairs_checked += 1;
                let common = (1..n).any(|z| self.g.is_power_member(&els[z], &els[x]) && self.g.is_power_member(&els[z], &els[y]));
                if !common {
                    report.no_common_predecessor.push((x, y));
                }
                let meets = self.g.intersection_generator(&els[x], &els[y]).is_some_and(|z| {
                    z != *self.g.identity() && self.g.is_power_member(&els[x], &z) && self.g.is_power_member(&els[y], &z)
                });
                if !meets {
                    report.trivial_intersections.push((x, y));
                }
            }
        }
        report.verdict = report.no_common_predecessor.is_empty() && report.trivial_intersections.is_empty();
        report
    }

    /// First guarded non-adjacent pair whose `M̄` intersection is almost
    /// connected.
    pub fn find_witness_pair(&self, guard: u32) -> Option<(usize, usize)> {
        let guarded = self.guarded(guard);
        for (i, &x) in guarded.iter().enumerate() {
            for &y in &guarded[i + 1..] {
                if !self.gr.has_edge(x, y) && self.m_intersection_report(x, y, guard).is_ok_and(|r| r.verdict) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Window vertex with the given label, e.g. `a^2`, `-7` or `1/12`.
    pub fn vertex(&self, label: &str) -> Result<usize> {
        let label: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        self.gr
            .labels()
            .iter()
            .position(|l| *l == label)
            .ok_or(Error::UnknownElement(label))
    }
}

fn component_index(gr: &UGraph) -> Vec<usize> {
    let mut idx = vec![0; gr.len()];
    for (c, comp) in gr.components().iter().enumerate() {
        for &v in comp {
            idx[v] = c;
        }
    }
    idx
}

pub fn iom_sets(g: &GroupModel, x: usize) -> Result<IomSets> {
    Window::new(g)?.iom(x)
}

/// `(Ō(x), M̄(x))`.
pub fn complement_graphs(g: &GroupModel, x: usize) -> Result<(InducedGraph, InducedGraph)> {
    Window::new(g)?.complements(x)
}

pub fn lemma4_check(g: &GroupModel, x: usize, guard: u32) -> Result<Lemma4Report> {
    Window::new(g)?.lemma4(x, guard)
}

/// Exactly two isolated vertices and a nonempty connected remainder.
pub fn almost_connected(gr: &UGraph) -> AlmostConnectedReport {
    let (isolated, bulk): (Vec<usize>, Vec<usize>) = (0..gr.len()).partition(|&v| gr.degree(v) == 0);
    let verdict = isolated.len() == 2 && !bulk.is_empty() && gr.induced(&bulk).is_connected();
    AlmostConnectedReport { isolated, bulk, verdict, guard: true }
}

pub fn recover_directions(g: &GroupModel, x: usize, y: usize, tau: usize) -> Result<DirectionRecovery> {
    Window::new(g)?.recover_directions(x, y, tau, DEFAULT_GUARD)
}

pub fn locally_cyclic_check(g: &GroupModel) -> Result<LocallyCyclicReport> {
    Ok(Window::new(g)?.locally_cyclic(200_000))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Element, GroupSpec};

    fn model(s: &str) -> GroupModel {
        GroupModel::new(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn ints(g: &GroupModel, ids: &[usize]) -> Vec<i64> {
        let mut v: Vec<i64> = ids
            .iter()
            .map(|&i| match g.element(i) {
                Element::Int(x) => *x,
                _ => unreachable!(),
            })
            .collect();
        v.sort_unstable();
        v
    }

    fn id(g: &GroupModel, x: i64) -> usize {
        g.index_of(&Element::Int(x)).unwrap()
    }

    #[test]
    fn iom_in_z_window() {
        let g = model("z_window(30)");
        let s = iom_sets(&g, id(&g, 6)).unwrap();
        assert_eq!(ints(&g, &s.o), [-30, -24, -18, -12, 12, 18, 24, 30]);
        assert_eq!(ints(&g, &s.i), [-3, -2, -1, 1, 2, 3]);
        let g = model("z_window(10)");
        let s = iom_sets(&g, id(&g, 7)).unwrap();
        assert_eq!(ints(&g, &s.i), [-1, 1]);
        assert!(s.o.is_empty());
        assert_eq!(iom_sets(&g, 0), Err(Error::IdentityArgument));
    }

    #[test]
    fn iom_in_amalgam() {
        let g = model("amalgam(2,3,N=12)");
        let w = Window::new(&g).unwrap();
        let s = w.iom(w.vertex("a^1").unwrap()).unwrap();
        assert!(s.i.is_empty());
        assert_eq!(s.o.len(), 2 * 11);
    }

    #[test]
    fn complement_adjacency() {
        let g = model("z_window(60)");
        let (obar, _) = complement_graphs(&g, id(&g, 2)).unwrap();
        let pos = obar.position();
        let (p4, p8, p12) = (pos[&id(&g, 4)], pos[&id(&g, 8)], pos[&id(&g, 12)]);
        assert!(!obar.graph.has_edge(p4, p8));
        assert!(obar.graph.has_edge(p8, p12));
        assert!(obar.graph.is_connected());
    }

    #[test]
    fn lemma4_examples() {
        let g = model("z_window(200)");
        assert!(lemma4_check(&g, id(&g, 4), 5).unwrap().holds);
        let r = lemma4_check(&g, id(&g, 7), 5).unwrap();
        assert!(r.holds);
        assert_eq!(ints(&g, &r.guarded_o), [-35, -28, -21, -14, 14, 21, 28, 35]);
        let small = model("z_window(6)");
        assert!(matches!(lemma4_check(&small, id(&small, 4), 5), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn almost_connected_examples() {
        let g = model("z_window(120)");
        let w = Window::new(&g).unwrap();
        let common = w.complement_on(&w.common_o(id(&g, 4), id(&g, 6)).unwrap());
        let r = almost_connected(&common.graph);
        assert!(r.verdict);
        let isolated: Vec<usize> = r.isolated.iter().map(|&i| common.vertices[i]).collect();
        assert_eq!(ints(&g, &isolated), [-12, 12]);
        assert!(!almost_connected(&UGraph::from_edges(3, &[(0, 1), (1, 2)])).verdict);
        assert!(!almost_connected(&UGraph::unlabeled(2)).verdict);
    }

    #[test]
    fn z_window_fails_the_almost_connected_test() {
        let g = model("z_window(60)");
        let w = Window::new(&g).unwrap();
        let r = w.m_intersection_report(id(&g, 4), id(&g, 6), 5).unwrap();
        assert!(!r.verdict);
        assert!(w.find_witness_pair(5).is_none());
    }

    #[test]
    fn locally_cyclic_examples() {
        assert!(locally_cyclic_check(&model("z_window(50)")).unwrap().verdict);
        assert!(locally_cyclic_check(&model("q_subgroup_window({2:2,3:1},N=48)")).unwrap().verdict);
        let r = locally_cyclic_check(&model("amalgam(2,3,N=12)")).unwrap();
        assert!(!r.verdict);
        assert!(!r.no_common_predecessor.is_empty());
        assert!(r.trivial_intersections.is_empty());
    }

    #[test]
    fn amalgam_directions() {
        let g = model("amalgam(2,3,N=24)");
        let w = Window::new(&g).unwrap();
        let (a, b) = (w.vertex("a^1").unwrap(), w.vertex("b^1").unwrap());
        let rec = w.recover_directions(a, b, 3, 5).unwrap();
        let d = &rec.digraph;
        let a4 = w.vertex("a^4").unwrap();
        assert!(d.has_arc(a, a4));
        assert!(!d.has_arc(a4, a));
        // b^6 = a^4
        assert!(d.has_arc(b, a4));
        assert!(rec.decided > 0);
        let inv = w.vertex("a^-1").unwrap();
        assert!(d.has_arc(a, inv) && d.has_arc(inv, a));
        assert!(w.disagreements(&rec).is_empty());
        let mut broken = rec.clone();
        broken.digraph.add_arc(a4, a);
        assert_eq!(w.disagreements(&broken), [(a4, a)]);
    }

    #[test]
    fn window_required() {
        assert!(matches!(iom_sets(&model("cyclic(4)"), 1), Err(Error::NotWindowModel)));
    }
}
