//! Digraph isomorphism by colour refinement with individualization.
//!
//! Both graphs are refined jointly so colours are comparable across them.
//! Cheap invariants (degree pairs, ≡-class sizes, `|N̂|` sizes) are checked
//! first and double as non-isomorphism certificates.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::powergraph::{double_neighborhood, equiv_classes};

pub const ISO_SIZE_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoOutcome {
    /// `witness[u]` is the image in the second graph of vertex `u`.
    Isomorphic { witness: Vec<usize> },
    NotIsomorphic { reason: String },
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic { .. })
    }
}

/// True iff `map` is a bijection carrying the arcs of `d1` exactly onto
/// the arcs of `d2`.
pub fn replay(d1: &DiGraph, d2: &DiGraph, map: &[usize]) -> bool {
    let n = d1.len();
    if d2.len() != n || map.len() != n || d1.arc_count() != d2.arc_count() {
        return false;
    }
    let mut hit = vec![false; n];
    for &v in map {
        if v >= n || std::mem::replace(&mut hit[v], true) {
            return false;
        }
    }
    d1.arcs().into_iter().all(|(u, v)| d2.has_arc(map[u], map[v]))
}

pub fn digraph_isomorphic(d1: &DiGraph, d2: &DiGraph) -> Result<IsoOutcome> {
    isomorphic_with_colors(d1, &vec![0; d1.len()], d2, &vec![0; d2.len()])
}

/// Isomorphism that must also preserve the given vertex colours.
pub fn isomorphic_with_colors(d1: &DiGraph, c1: &[u64], d2: &DiGraph, c2: &[u64]) -> Result<IsoOutcome> {
    for n in [d1.len(), d2.len()] {
        if n > ISO_SIZE_LIMIT {
            return Err(Error::SizeLimit { limit: ISO_SIZE_LIMIT, got: n });
        }
    }
    let fail = |reason: String| Ok(IsoOutcome::NotIsomorphic { reason });
    if d1.len() != d2.len() {
        return fail(format!("vertex counts differ: {} vs {}", d1.len(), d2.len()));
    }
    if d1.arc_count() != d2.arc_count() {
        return fail(format!("arc counts differ: {} vs {}", d1.arc_count(), d2.arc_count()));
    }
    let (inv1, inv2) = (invariants(d1, c1), invariants(d2, c2));
    let mismatch = compare("given colour", &inv1.color, &inv2.color)
        .or_else(|| compare("(in, out) degree", &inv1.degrees, &inv2.degrees))
        .or_else(|| compare("≡-class size", &inv1.class_size, &inv2.class_size))
        .or_else(|| compare("|N̂| size", &inv1.hat_size, &inv2.hat_size));
    if let Some(reason) = mismatch {
        return fail(reason);
    }

    let search = Search::new(d1, d2);
    let (a, b) = search.initial_colors(&inv1, &inv2);
    let Some((a, b)) = search.refine(a, b) else {
        return fail("colour refinement histograms differ".into());
    };
    match search.dfs(a, b) {
        Some(witness) => {
            debug_assert!(replay(d1, d2, &witness));
            Ok(IsoOutcome::Isomorphic { witness })
        }
        None => fail("exhaustive search found no arc-preserving bijection".into()),
    }
}

struct Invariants {
    color: Vec<u64>,
    degrees: Vec<(usize, usize)>,
    class_size: Vec<usize>,
    hat_size: Vec<usize>,
}

fn invariants(d: &DiGraph, colors: &[u64]) -> Invariants {
    let u = d.underlying();
    let classes = equiv_classes(&u);
    let mut class_size = vec![0; d.len()];
    for b in &classes.blocks {
        for &v in b {
            class_size[v] = b.len();
        }
    }
    // N̂ is constant on ≡-classes
    let mut hat_size = vec![0; d.len()];
    for b in &classes.blocks {
        let h = double_neighborhood(&u, &b[..1]).map(|s| s.count_ones(..)).unwrap_or(0);
        for &v in b {
            hat_size[v] = h;
        }
    }
    Invariants {
        color: colors.to_vec(),
        degrees: (0..d.len()).map(|v| (d.in_degree(v), d.out_degree(v))).collect(),
        class_size,
        hat_size,
    }
}

fn compare<T: Ord + Clone + std::fmt::Debug>(name: &str, a: &[T], b: &[T]) -> Option<String> {
    let (h1, h2) = (histogram(a), histogram(b));
    (h1 != h2).then(|| format!("{name} multisets differ: {h1:?} vs {h2:?}"))
}

fn histogram<T: Ord + Clone>(xs: &[T]) -> BTreeMap<T, usize> {
    let mut h = BTreeMap::new();
    for x in xs {
        *h.entry(x.clone()).or_insert(0) += 1;
    }
    h
}

type Colors = Vec<u32>;

struct Search<'a> {
    d1: &'a DiGraph,
    d2: &'a DiGraph,
    out1: Vec<Vec<usize>>,
    in1: Vec<Vec<usize>>,
    out2: Vec<Vec<usize>>,
    in2: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(d1: &'a DiGraph, d2: &'a DiGraph) -> Self {
        let lists = |d: &DiGraph| -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
            (
                (0..d.len()).map(|v| d.out_neighbors(v).ones().collect()).collect(),
                (0..d.len()).map(|v| d.in_neighbors(v).ones().collect()).collect(),
            )
        };
        let (out1, in1) = lists(d1);
        let (out2, in2) = lists(d2);
        Search { d1, d2, out1, in1, out2, in2 }
    }

    /// Initial colours ordered by ascending ≡-class size, then `|N̂|`.
    fn initial_colors(&self, i1: &Invariants, i2: &Invariants) -> (Colors, Colors) {
        let key = |i: &Invariants, v: usize| (i.class_size[v], i.hat_size[v], i.color[v], i.degrees[v]);
        let mut keys: Vec<_> = (0..self.d1.len())
            .map(|v| key(i1, v))
            .chain((0..self.d2.len()).map(|v| key(i2, v)))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        let rank: HashMap<_, u32> = keys.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        (
            (0..self.d1.len()).map(|v| rank[&key(i1, v)]).collect(),
            (0..self.d2.len()).map(|v| rank[&key(i2, v)]).collect(),
        )
    }

    /// Joint 1-dimensional refinement. `None` if the colour histograms of
    /// the two graphs diverge.
    fn refine(&self, mut a: Colors, mut b: Colors) -> Option<(Colors, Colors)> {
        let mut classes = count_colors(&a, &b);
        loop {
            if histogram(&a) != histogram(&b) {
                return None;
            }
            let sig = |c: &Colors, v: usize, out: &[Vec<usize>], inn: &[Vec<usize>]| {
                let mut o: Vec<u32> = out[v].iter().map(|&w| c[w]).collect();
                let mut i: Vec<u32> = inn[v].iter().map(|&w| c[w]).collect();
                o.sort_unstable();
                i.sort_unstable();
                (c[v], o, i)
            };
            let s1: Vec<_> = (0..a.len()).map(|v| sig(&a, v, &self.out1, &self.in1)).collect();
            let s2: Vec<_> = (0..b.len()).map(|v| sig(&b, v, &self.out2, &self.in2)).collect();
            let mut all: Vec<&_> = s1.iter().chain(s2.iter()).collect();
            all.sort_unstable();
            all.dedup();
            let rank: HashMap<_, u32> = all.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
            a = s1.iter().map(|s| rank[s]).collect();
            b = s2.iter().map(|s| rank[s]).collect();
            let now = count_colors(&a, &b);
            if now == classes {
                return (histogram(&a) == histogram(&b)).then_some((a, b));
            }
            classes = now;
        }
    }

    fn dfs(&self, a: Colors, b: Colors) -> Option<Vec<usize>> {
        let n = a.len();
        // smallest non-singleton cell
        let hist = histogram(&a);
        let Some((&cell, _)) = hist.iter().filter(|(_, &k)| k > 1).min_by_key(|(&c, &k)| (k, c)) else {
            let mut pos = vec![usize::MAX; n];
            for (v, &c) in b.iter().enumerate() {
                pos[c as usize] = v;
            }
            let map: Vec<usize> = a.iter().map(|&c| pos[c as usize]).collect();
            return replay(self.d1, self.d2, &map).then_some(map);
        };
        let u = a.iter().position(|&c| c == cell).unwrap();
        let fresh = n as u32 + a.iter().chain(b.iter()).copied().max().unwrap_or(0) + 1;
        for v in (0..n).filter(|&v| b[v] == cell) {
            let (mut a2, mut b2) = (a.clone(), b.clone());
            a2[u] = fresh;
            b2[v] = fresh;
            let (a2, b2) = compact(a2, &b2);
            if let Some((a3, b3)) = self.refine(a2, b2) {
                if let Some(m) = self.dfs(a3, b3) {
                    return Some(m);
                }
            }
        }
        None
    }
}

fn count_colors(a: &Colors, b: &Colors) -> usize {
    let mut all: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Renumbers the joint colouring densely, preserving order.
fn compact(a: Colors, b: &Colors) -> (Colors, Colors) {
    let mut all: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    let rank: HashMap<u32, u32> = all.into_iter().enumerate().map(|(i, c)| (c, i as u32)).collect();
    (a.iter().map(|c| rank[c]).collect(), b.iter().map(|c| rank[c]).collect())
}
