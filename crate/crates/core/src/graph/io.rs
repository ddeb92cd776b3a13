use std::fmt::Write as _;

use serde::Deserialize;

use super::{DiGraph, UGraph};
use crate::error::{Error, Result};

/// Either kind of graph, as read from a graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Undirected(UGraph),
    Directed(DiGraph),
}

impl AnyGraph {
    pub fn len(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.len(),
            AnyGraph::Directed(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<UGraph> for AnyGraph {
    fn from(g: UGraph) -> Self {
        AnyGraph::Undirected(g)
    }
}

impl From<DiGraph> for AnyGraph {
    fn from(g: DiGraph) -> Self {
        AnyGraph::Directed(g)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    directed: bool,
    vertices: Vec<String>,
    #[serde(default)]
    edges: Option<Vec<(usize, usize)>>,
    #[serde(default)]
    arcs: Option<Vec<(usize, usize)>>,
}

/// Serializes to the graph file format: one JSON object with `directed`,
/// `vertices` and sorted `edges` or `arcs`. Output is byte-deterministic.
pub fn write_graph(g: &AnyGraph) -> String {
    let (directed, labels, key, pairs) = match g {
        AnyGraph::Undirected(g) => (false, g.labels(), "edges", g.edges()),
        AnyGraph::Directed(g) => (true, g.labels(), "arcs", g.arcs()),
    };
    let mut s = String::new();
    writeln!(s, "{{").unwrap();
    writeln!(s, "  \"directed\": {directed},").unwrap();
    let labels: Vec<_> = labels.iter().map(|l| serde_json::to_string(l).unwrap()).collect();
    writeln!(s, "  \"vertices\": [{}],", labels.join(", ")).unwrap();
    let pairs: Vec<_> = pairs.iter().map(|(u, v)| format!("[{u}, {v}]")).collect();
    writeln!(s, "  \"{key}\": [{}]", pairs.join(", ")).unwrap();
    writeln!(s, "}}").unwrap();
    s
}

pub fn read_graph(text: &str) -> Result<AnyGraph> {
    let raw: RawGraph = serde_json::from_str(text)?;
    let n = raw.vertices.len();
    let (key, pairs) = match (raw.directed, raw.edges, raw.arcs) {
        (false, Some(e), None) => ("edges", e),
        (true, None, Some(a)) => ("arcs", a),
        (false, None, None) | (true, None, None) => ("", Vec::new()),
        (false, _, Some(_)) => return Err(Error::Parse("undirected graph with `arcs`".into())),
        (true, Some(_), _) => return Err(Error::Parse("directed graph with `edges`".into())),
    };
    for &(u, v) in &pairs {
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange(w, n));
            }
        }
        if u == v {
            return Err(Error::Parse(format!("loop at vertex {u} in `{key}`")));
        }
    }
    Ok(if raw.directed {
        let mut g = DiGraph::new(raw.vertices);
        for (u, v) in pairs {
            g.add_arc(u, v);
        }
        AnyGraph::Directed(g)
    } else {
        let mut g = UGraph::new(raw.vertices);
        for (u, v) in pairs {
            g.add_edge(u, v);
        }
        AnyGraph::Undirected(g)
    })
}

/// Graphviz rendering, vertices named by index and labelled.
pub fn to_dot(g: &AnyGraph) -> String {
    let (kind, op, labels, pairs) = match g {
        AnyGraph::Undirected(g) => ("graph", "--", g.labels(), g.edges()),
        AnyGraph::Directed(g) => ("digraph", "->", g.labels(), g.arcs()),
    };
    let mut s = format!("{kind} G {{\n");
    for (i, l) in labels.iter().enumerate() {
        writeln!(s, "  {i} [label={}];", serde_json::to_string(l).unwrap()).unwrap();
    }
    for (u, v) in pairs {
        writeln!(s, "  {u} {op} {v};").unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_round_trip() {
        let g = UGraph::cycle(4).with_labels(vec!["a".into(), "b\"q".into(), "c".into(), "d".into()]);
        let text = write_graph(&g.clone().into());
        assert_eq!(read_graph(&text).unwrap(), AnyGraph::Undirected(g));
        assert!(text.contains("\"edges\": [[0, 1], [0, 3], [1, 2], [2, 3]]"));
    }

    #[test]
    fn directed_round_trip() {
        let d = DiGraph::from_arcs(3, &[(2, 0), (0, 1), (1, 0)]);
        let text = write_graph(&d.clone().into());
        assert_eq!(write_graph(&read_graph(&text).unwrap()), text);
        assert!(text.contains("\"arcs\": [[0, 1], [1, 0], [2, 0]]"));
    }

    #[test]
    fn rejects_bad_input() {
        let oob = r#"{"directed": false, "vertices": ["0"], "edges": [[0, 1]]}"#;
        assert_eq!(read_graph(oob), Err(Error::VertexOutOfRange(1, 1)));
        let mixed = r#"{"directed": true, "vertices": ["0", "1"], "edges": [[0, 1]]}"#;
        assert!(matches!(read_graph(mixed), Err(Error::Parse(_))));
        assert!(matches!(read_graph("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn dot_output() {
        let d = DiGraph::from_arcs(2, &[(1, 0)]);
        assert_eq!(to_dot(&d.into()), "digraph G {\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  1 -> 0;\n}\n");
    }
}
