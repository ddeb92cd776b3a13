//! Graph-only analysis of a finite-order component: the center, the
//! five-way center case split, and recognition of simple and complex
//! ≡-classes.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith::{ipow, prime_power_parse, totient};
use crate::card::Card;
use crate::error::{Error, Result};
use crate::graph::UGraph;
use crate::powergraph::{double_neighborhood, equiv_classes, VertexPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CenterCase {
    TrivialCenter,
    CyclicPrimePower,
    CyclicPQ,
    CyclicComposite,
    PGroupNoncyclic,
    PruferLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CenterSummary {
    pub case: CenterCase,
    pub center_size: Card,
    pub vertices: Card,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Simple,
    Complex,
    InfinitelyComplex,
}

/// An ≡-class with its recognized kind. For complex classes the member
/// orders run over `p^s, ..., p^r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivClassInfo {
    /// `None` for symbolic classes read from a profile.
    pub vertices: Option<Vec<usize>>,
    pub card: Card,
    pub kind: ClassKind,
    pub p: Option<u64>,
    pub s: Option<u32>,
    pub r: Option<u32>,
    pub hat_size: Card,
}

/// Vertices adjacent to every other vertex.
pub fn center(gr: &UGraph) -> Result<Vec<usize>> {
    let s = gr.universal_vertices();
    if s.is_empty() {
        Err(Error::NotFiniteOrderComponent)
    } else {
        Ok(s)
    }
}

pub fn classify_center_case(gr: &UGraph) -> Result<CenterSummary> {
    let s = center(gr)?;
    let n = gr.len();
    let case = if s.len() == 1 {
        CenterCase::TrivialCenter
    } else if s.len() == n {
        CenterCase::CyclicPrimePower
    } else {
        let mut in_s = FixedBitSet::with_capacity(n);
        s.iter().for_each(|&v| in_s.insert(v));
        let rest: Vec<usize> = (0..n).filter(|&v| !in_s.contains(v)).collect();
        if gr.induced(&rest).is_connected() {
            CenterCase::CyclicComposite
        } else if 2 * s.len() >= n {
            CenterCase::CyclicPQ
        } else {
            CenterCase::PGroupNoncyclic
        }
    };
    Ok(CenterSummary { case, center_size: Card::from(s.len()), vertices: Card::from(n) })
}

/// Shared state for classifying many classes of one graph.
pub(crate) struct ClassContext<'a> {
    gr: &'a UGraph,
    pub(crate) partition: VertexPartition,
    pub(crate) block_of: Vec<usize>,
}

impl<'a> ClassContext<'a> {
    /// Fails unless the graph has exactly one universal vertex.
    pub(crate) fn new(gr: &'a UGraph) -> Result<ClassContext<'a>> {
        let s = center(gr)?;
        if s.len() != 1 {
            return Err(Error::NotTrivialCenter(s.len()));
        }
        let partition = equiv_classes(gr);
        let block_of = partition.block_index();
        Ok(ClassContext { gr, partition, block_of })
    }

    fn rep(&self, b: usize) -> usize {
        self.partition.blocks[b][0]
    }

    pub(crate) fn blocks_adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.gr.has_edge(self.rep(a), self.rep(b))
    }

    pub(crate) fn classify(&self, b: usize) -> Result<EquivClassInfo> {
        let c = &self.partition.blocks[b];
        let hat = double_neighborhood(self.gr, c)?.count_ones(..) as u64;
        let card = c.len() as u64;
        let mut info = EquivClassInfo {
            vertices: Some(c.clone()),
            card: Card::Fin(card),
            kind: ClassKind::Simple,
            p: None,
            s: None,
            r: None,
            hat_size: Card::Fin(hat),
        };
        let Some((p, s, r)) = tower_exponents(hat, hat - card) else {
            return Ok(info);
        };
        // no two mutually non-adjacent classes D, E adjacent to C with |D|, |E| <= |C|
        let small: Vec<usize> = (0..self.partition.blocks.len())
            .filter(|&d| self.blocks_adjacent(b, d) && self.partition.blocks[d].len() as u64 <= card)
            .collect();
        let spread = small
            .iter()
            .enumerate()
            .any(|(i, &d)| small[i + 1..].iter().any(|&e| !self.blocks_adjacent(d, e)));
        if !spread {
            info.kind = ClassKind::Complex;
            (info.p, info.s, info.r) = (Some(p), Some(s), Some(r));
        }
        Ok(info)
    }
}

/// Solves `hat = p^r`, `delta = p^{s-1}` with `r > s > 0`.
fn tower_exponents(hat: u64, delta: u64) -> Option<(u64, u32, u32)> {
    let (p, r) = prime_power_parse(hat)?;
    let s = if delta == 1 {
        1
    } else {
        match prime_power_parse(delta)? {
            (q, k) if q == p => k + 1,
            _ => return None,
        }
    };
    (r > s).then_some((p, s, r))
}

/// Classifies the ≡-class `c` of a graph with trivial center.
pub fn classify_class(gr: &UGraph, c: &[usize]) -> Result<EquivClassInfo> {
    let ctx = ClassContext::new(gr)?;
    let mut sorted = c.to_vec();
    sorted.sort_unstable();
    let b = match sorted.first() {
        Some(&v) if v < gr.len() => ctx.block_of[v],
        _ => return Err(Error::NotAnEquivClass),
    };
    if ctx.partition.blocks[b] != sorted {
        return Err(Error::NotAnEquivClass);
    }
    ctx.classify(b)
}

/// One class of a symbolic profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileClass {
    pub card: Card,
    /// `|Ĉ∖C|`.
    pub hat_delta: Card,
}

/// A class-level description of a (possibly infinite) finite-order
/// component: class sizes, `|Ĉ∖C|` per class, and class adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassProfile {
    pub classes: Vec<ProfileClass>,
    /// Symmetric 0/1 matrix; the diagonal is ignored.
    pub adjacency: Vec<Vec<u8>>,
}

impl ClassProfile {
    pub fn from_json(text: &str) -> Result<ClassProfile> {
        let p: ClassProfile = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.classes.len();
        let bad = |m: String| Err(Error::ProfileInconsistent(m));
        if self.adjacency.len() != k || self.adjacency.iter().any(|row| row.len() != k) {
            return bad(format!("adjacency must be {k}x{k}"));
        }
        for i in 0..k {
            for j in 0..k {
                let a = self.adjacency[i][j];
                if a > 1 {
                    return bad(format!("adjacency entry ({i},{j}) is {a}, expected 0 or 1"));
                }
                if i != j && a != self.adjacency[j][i] {
                    return bad(format!("adjacency not symmetric at ({i},{j})"));
                }
            }
        }
        if let Some(i) = self.classes.iter().position(|c| c.card == Card::Fin(0)) {
            return bad(format!("class {i} is empty"));
        }
        Ok(())
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.adjacency[i][j] == 1
    }

    fn universal_classes(&self) -> Vec<usize> {
        let k = self.classes.len();
        (0..k).filter(|&i| (0..k).all(|j| j == i || self.adjacent(i, j))).collect()
    }

    /// Center case decided at class level. `PruferLike` when the center is
    /// infinite.
    pub fn center_case(&self) -> Result<CenterSummary> {
        let s = self.universal_classes();
        if s.is_empty() {
            return Err(Error::NotFiniteOrderComponent);
        }
        let total = |idx: &mut dyn Iterator<Item = usize>| {
            idx.fold(Card::Fin(0), |acc, i| acc.plus(self.classes[i].card))
        };
        let center_size = total(&mut s.iter().copied());
        let vertices = total(&mut (0..self.classes.len()));
        let case = if center_size == Card::Aleph0 {
            CenterCase::PruferLike
        } else if center_size == Card::Fin(1) {
            CenterCase::TrivialCenter
        } else if center_size == vertices {
            CenterCase::CyclicPrimePower
        } else {
            let rest: Vec<usize> = (0..self.classes.len()).filter(|i| !s.contains(i)).collect();
            let mut q = UGraph::unlabeled(rest.len());
            for (a, &i) in rest.iter().enumerate() {
                for (b, &j) in rest.iter().enumerate().skip(a + 1) {
                    if self.adjacent(i, j) {
                        q.add_edge(a, b);
                    }
                }
            }
            let half = match vertices {
                Card::Fin(v) => center_size.finite().unwrap() * 2 >= v,
                Card::Aleph0 => false,
            };
            if q.is_connected() {
                CenterCase::CyclicComposite
            } else if half {
                CenterCase::CyclicPQ
            } else {
                CenterCase::PGroupNoncyclic
            }
        };
        Ok(CenterSummary { case, center_size, vertices })
    }
}

/// Classifies class `i` of a symbolic profile. Infinite classes are
/// infinitely complex with `p^{s-1} = |Ĉ∖C|`; finite classes go through the
/// same two conditions as [`classify_class`].
pub fn classify_profile_class(profile: &ClassProfile, i: usize) -> Result<EquivClassInfo> {
    profile.validate()?;
    let class = profile
        .classes
        .get(i)
        .ok_or_else(|| Error::ProfileInconsistent(format!("no class {i}")))?;
    let Card::Fin(delta) = class.hat_delta else {
        return Err(Error::ProfileInconsistent(format!("class {i}: |Ĉ∖C| must be finite")));
    };
    let mut info = EquivClassInfo {
        vertices: None,
        card: class.card,
        kind: ClassKind::Simple,
        p: None,
        s: None,
        r: None,
        hat_size: class.card.plus(class.hat_delta),
    };
    match class.card {
        Card::Aleph0 => {
            info.kind = ClassKind::InfinitelyComplex;
            if delta != 1 {
                let (p, k) = prime_power_parse(delta).ok_or_else(|| {
                    Error::ProfileInconsistent(format!("class {i}: |Ĉ∖C| = {delta} is not a prime power"))
                })?;
                info.p = Some(p);
                info.s = Some(k + 1);
            } else {
                info.s = Some(1);
            }
        }
        Card::Fin(card) => {
            if let Some((p, s, r)) = tower_exponents(card + delta, delta) {
                let small: Vec<usize> = (0..profile.classes.len())
                    .filter(|&d| profile.adjacent(i, d) && profile.classes[d].card <= class.card)
                    .collect();
                let spread = small
                    .iter()
                    .enumerate()
                    .any(|(a, &d)| small[a + 1..].iter().any(|&e| !profile.adjacent(d, e)));
                if !spread {
                    info.kind = ClassKind::Complex;
                    (info.p, info.s, info.r) = (Some(p), Some(s), Some(r));
                }
            }
        }
    }
    Ok(info)
}

/// One ≈-block inside a class: its element order and size `φ(order)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderBlock {
    pub order: u64,
    pub size: u64,
}

/// The orders occurring in a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrderMultiset {
    Finite(Vec<OrderBlock>),
    /// `p^s, p^{s+1}, ...`; `p` may be unknown when `s = 1`.
    Ascending { p: Option<u64>, s: u32 },
}

impl OrderMultiset {
    /// Sum of block sizes; infinite for ascending chains.
    pub fn total(&self) -> Card {
        match self {
            OrderMultiset::Finite(b) => Card::Fin(b.iter().map(|b| b.size).sum()),
            OrderMultiset::Ascending { .. } => Card::Aleph0,
        }
    }
}

impl fmt::Display for OrderMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderMultiset::Finite(blocks) => {
                let o: Vec<_> = blocks.iter().map(|b| b.order.to_string()).collect();
                write!(f, "{{{}}}", o.join(","))
            }
            OrderMultiset::Ascending { p: Some(p), s } => {
                let o: Vec<_> = (0..3).map(|k| ipow(*p, s + k).to_string()).collect();
                write!(f, "{{{},...}}", o.join(","))
            }
            OrderMultiset::Ascending { p: None, s } => write!(f, "{{p^{s},p^{},...}}", s + 1),
        }
    }
}

/// Orders of the members of a class. Simple classes need their order
/// supplied from outside; without it the answer is `None`.
pub fn class_order_multiset(info: &EquivClassInfo, simple_order: Option<u64>) -> Option<OrderMultiset> {
    match info.kind {
        ClassKind::Complex => {
            let (p, s, r) = (info.p?, info.s?, info.r?);
            let blocks = (s..=r)
                .map(|k| {
                    let order = ipow(p, k);
                    OrderBlock { order, size: totient(order) }
                })
                .collect();
            Some(OrderMultiset::Finite(blocks))
        }
        ClassKind::InfinitelyComplex => Some(OrderMultiset::Ascending { p: info.p, s: info.s? }),
        ClassKind::Simple => {
            let order = simple_order?;
            Some(OrderMultiset::Finite(vec![OrderBlock { order, size: totient(order) }]))
        }
    }
}
