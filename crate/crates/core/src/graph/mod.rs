//! Simple undirected graphs and digraphs over dense vertex indices.
//!
//! Adjacency is stored as one bitset per vertex, so neighborhood equality
//! and intersection are word operations.

mod io;

pub use io::{read_graph, to_dot, write_graph, AnyGraph};

use fixedbitset::FixedBitSet;

/// Simple undirected graph. Vertex `i` carries `labels[i]` for diagnostics
/// only; nothing in the analysis reads labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UGraph {
    labels: Vec<String>,
    adj: Vec<FixedBitSet>,
}

/// Simple digraph: no loops, arcs may run both ways between a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    labels: Vec<String>,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl UGraph {
    pub fn new(labels: Vec<String>) -> UGraph {
        let n = labels.len();
        UGraph { labels, adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// Graph on `n` vertices labelled by their indices.
    pub fn unlabeled(n: usize) -> UGraph {
        UGraph::new(index_labels(n))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> UGraph {
        let mut g = UGraph::unlabeled(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> UGraph {
        let mut g = UGraph::unlabeled(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> UGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        UGraph::from_edges(n, &edges)
    }

    pub fn petersen() -> UGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        UGraph::from_edges(10, &edges)
    }

    /// Adds `{u, v}`. Loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Open neighborhood of `v`.
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> UGraph {
        let mut g = UGraph::new(vertices.iter().map(|&v| self.labels[v].clone()).collect());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> UGraph {
        let n = self.len();
        let mut g = UGraph::new(self.labels.clone());
        for u in 0..n {
            let mut row = self.adj[u].clone();
            row.toggle_range(..);
            row.set(u, false);
            g.adj[u] = row;
        }
        g
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.adj[u].ones() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Moves vertex `i` to position `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> UGraph {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
        }
        let mut g = UGraph::new(labels);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Same graph with labels replaced by vertex indices.
    pub fn strip_labels(&self) -> UGraph {
        UGraph { labels: index_labels(self.len()), adj: self.adj.clone() }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> UGraph {
        assert_eq!(labels.len(), self.len(), "label count must match vertex count");
        self.labels = labels;
        self
    }

    /// Universal vertices: adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let n = self.len();
        (0..n).filter(|&v| self.degree(v) + 1 == n).collect()
    }
}

impl DiGraph {
    pub fn new(labels: Vec<String>) -> DiGraph {
        let n = labels.len();
        let empty = vec![FixedBitSet::with_capacity(n); n];
        DiGraph { labels, out: empty.clone(), inn: empty }
    }

    pub fn unlabeled(n: usize) -> DiGraph {
        DiGraph::new(index_labels(n))
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> DiGraph {
        let mut g = DiGraph::unlabeled(n);
        for &(u, v) in arcs {
            g.add_arc(u, v);
        }
        g
    }

    /// Adds `u -> v`. Loops are ignored.
    pub fn add_arc(&mut self, u: usize, v: usize) {
        if u != v {
            self.out[u].insert(v);
            self.inn[v].insert(u);
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones(..)
    }

    /// Arcs sorted lexicographically.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.out[u].ones().map(move |v| (u, v)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|a| a.count_ones(..)).sum()
    }

    /// Edge `{u, v}` iff an arc runs in at least one direction.
    pub fn underlying(&self) -> UGraph {
        let mut g = UGraph::new(self.labels.clone());
        for (u, v) in self.arcs() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn induced(&self, vertices: &[usize]) -> DiGraph {
        let mut g = DiGraph::new(vertices.iter().map(|&v| self.labels[v].clone()).collect());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_arc(u, v) {
                    g.add_arc(i, j);
                }
            }
        }
        g
    }

    /// Moves vertex `i` to position `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> DiGraph {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
        }
        let mut g = DiGraph::new(labels);
        for (u, v) in self.arcs() {
            g.add_arc(perm[u], perm[v]);
        }
        g
    }

    pub fn strip_labels(&self) -> DiGraph {
        DiGraph { labels: index_labels(self.len()), out: self.out.clone(), inn: self.inn.clone() }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> DiGraph {
        assert_eq!(labels.len(), self.len(), "label count must match vertex count");
        self.labels = labels;
        self
    }

    /// `u -> v -> w` implies `u -> w` whenever `u != w`.
    pub fn is_transitive(&self) -> bool {
        (0..self.len()).all(|u| {
            self.out[u].ones().all(|v| {
                self.out[v].ones().all(|w| w == u || self.out[u].contains(w))
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_cycle() {
        let c = UGraph::cycle(5);
        let cc = c.complement();
        assert_eq!(cc.edge_count(), 5);
        assert!(!cc.has_edge(0, 1));
        assert!(cc.has_edge(0, 2));
        assert_eq!(cc.complement(), c);
    }

    #[test]
    fn components_ordered_by_least_vertex() {
        let g = UGraph::from_edges(6, &[(4, 1), (0, 5)]);
        assert_eq!(g.components(), vec![vec![0, 5], vec![1, 4], vec![2], vec![3]]);
        assert!(!g.is_connected());
        assert!(UGraph::unlabeled(0).is_connected());
    }

    #[test]
    fn petersen_is_cubic() {
        let p = UGraph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert!(p.universal_vertices().is_empty());
    }

    #[test]
    fn induced_and_relabel() {
        let g = UGraph::complete(4);
        let h = g.induced(&[1, 3]);
        assert_eq!(h.edges(), vec![(0, 1)]);
        assert_eq!(h.labels(), ["1", "3"]);
        let d = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]);
        let r = d.relabel(&[2, 0, 1]);
        assert_eq!(r.arcs(), vec![(0, 1), (2, 0)]);
        assert_eq!(r.label(2), "0");
    }

    #[test]
    fn underlying_merges_mutual_arcs() {
        let d = DiGraph::from_arcs(3, &[(0, 1), (1, 0), (2, 0)]);
        assert_eq!(d.underlying().edges(), vec![(0, 1), (0, 2)]);
        assert!(!d.is_transitive());
        assert!(DiGraph::from_arcs(3, &[(0, 1), (1, 2), (0, 2)]).is_transitive());
    }
}
