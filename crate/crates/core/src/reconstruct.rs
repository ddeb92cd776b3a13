//! Recovering the directed Z±-power graph of a finite-order component from
//! the undirected graph alone.
//!
//! Three branches, by center case: cyclic groups get the canonical cyclic
//! digraph transported along a quotient isomorphism; noncyclic p-groups are
//! oriented by `|N̂|`; trivial-center graphs go class by class, using the
//! complex-class recognition and the direction predicate.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::arith::{gcd, ipow, prime_power_parse, totient};
use crate::classes::{classify_center_case, ClassContext, ClassKind, CenterCase, EquivClassInfo};
use crate::error::{Error, Result};
use crate::graph::{DiGraph, UGraph};
use crate::iso::{isomorphic_with_colors, IsoOutcome};
use crate::powergraph::{double_neighborhood, equiv_classes, VertexPartition};

/// An ≈-class as seen by [`direction_predicate`]: its size and any vertex
/// of the ≡-class containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockDescriptor {
    pub size: usize,
    pub rep: usize,
}

/// Vertex sets the direction predicate consults.
#[derive(Debug, Clone)]
pub struct PredicateContext {
    /// Vertices whose ≈-class is a singleton.
    pub singleton: FixedBitSet,
    /// Universal vertices of the component.
    pub universal: FixedBitSet,
    /// The identity, when known. Arcs always point into it.
    pub identity: Option<usize>,
}

/// `A -> B` for adjacent ≈-classes `A`, `B`.
pub fn direction_predicate(gr: &UGraph, ctx: &PredicateContext, a: BlockDescriptor, b: BlockDescriptor) -> bool {
    if a == b {
        return true;
    }
    if ctx.identity == Some(b.rep) {
        return true;
    }
    if ctx.identity == Some(a.rep) {
        return false;
    }
    if b.size < a.size {
        return true;
    }
    b.size == a.size
        && gr
            .neighbors(a.rep)
            .ones()
            .any(|z| ctx.singleton.contains(z) && !ctx.universal.contains(z))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

fn bottom_block(info: &EquivClassInfo) -> Result<BlockDescriptor> {
    let vertices = info
        .vertices
        .as_ref()
        .ok_or_else(|| Error::StructureError("class has no vertices".into()))?;
    let size = match (info.kind, info.p, info.s) {
        (ClassKind::Complex, Some(p), Some(s)) => totient(ipow(p, s)) as usize,
        _ => vertices.len(),
    };
    Ok(BlockDescriptor { size, rep: vertices[0] })
}

/// Direction between two adjacent distinct ≡-classes: `Forward` is `c -> d`.
pub fn orient_between(gr: &UGraph, ctx: &PredicateContext, c: &EquivClassInfo, d: &EquivClassInfo) -> Result<Direction> {
    use ClassKind::*;
    match (c.kind, d.kind) {
        (InfinitelyComplex, _) => return Ok(Direction::Forward),
        (_, InfinitelyComplex) => return Ok(Direction::Backward),
        (Complex, Complex) => {
            let (pc, sc, rc) = (c.p.unwrap(), c.s.unwrap(), c.r.unwrap());
            let (pd, sd, rd) = (d.p.unwrap(), d.s.unwrap(), d.r.unwrap());
            return if ipow(pd, rd) < ipow(pc, sc) {
                Ok(Direction::Forward)
            } else if ipow(pc, rc) < ipow(pd, sd) {
                Ok(Direction::Backward)
            } else {
                Err(Error::StructureError(format!(
                    "complex classes with orders {pc}^{sc}..{pc}^{rc} and {pd}^{sd}..{pd}^{rd} are adjacent but not nested"
                )))
            };
        }
        _ => {}
    }
    let (a, b) = (bottom_block(c)?, bottom_block(d)?);
    match (direction_predicate(gr, ctx, a, b), direction_predicate(gr, ctx, b, a)) {
        (true, false) => Ok(Direction::Forward),
        (false, true) => Ok(Direction::Backward),
        (fwd, _) => Err(Error::StructureError(format!(
            "classes at vertices {} and {} admit {} orientation",
            a.rep,
            b.rep,
            if fwd { "more than one" } else { "no" }
        ))),
    }
}

/// One ≈-block of a tower; `order` is known except for simple classes of the
/// trivial-center branch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerBlock {
    pub order: Option<u64>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerFragment {
    pub blocks: Vec<TowerBlock>,
    pub arcs: Vec<(usize, usize)>,
}

/// Blocks of orders `p^s, ..., p^r` cut from `vertices` in order, with
/// mutual arcs inside blocks and arcs from every higher block to every
/// lower one. `s = 0` puts a single identity block at the bottom.
fn tower(p: u64, s: u32, r: u32, vertices: &[usize]) -> Result<TowerFragment> {
    let sizes: Vec<u64> = (s..=r).map(|k| totient(ipow(p, k))).collect();
    if sizes.iter().sum::<u64>() != vertices.len() as u64 {
        return Err(Error::SizeMismatch { blocks: sizes, vertices: vertices.len() });
    }
    let mut blocks = Vec::new();
    let mut rest = vertices;
    for (k, &size) in (s..=r).zip(&sizes) {
        let (head, tail) = rest.split_at(size as usize);
        blocks.push(TowerBlock { order: Some(ipow(p, k)), vertices: head.to_vec() });
        rest = tail;
    }
    let mut arcs = Vec::new();
    for (i, hi) in blocks.iter().enumerate() {
        for lo in &blocks[..=i] {
            for &u in &hi.vertices {
                arcs.extend(lo.vertices.iter().filter(|&&v| v != u).map(|&v| (u, v)));
            }
        }
    }
    Ok(TowerFragment { blocks, arcs })
}

/// Tower layout for a complex class on the given vertices.
pub fn synthesize_class_tower(info: &EquivClassInfo, vertices: &[usize]) -> Result<TowerFragment> {
    match (info.kind, info.p, info.s, info.r) {
        (ClassKind::Complex, Some(p), Some(s), Some(r)) => tower(p, s, r, vertices),
        _ => Err(Error::StructureError("tower synthesis needs a complex class".into())),
    }
}

/// Directed power graph of `Z_n` on residues `0..n`.
pub fn canonical_cyclic_dpg(n: u64) -> DiGraph {
    let mut d = DiGraph::unlabeled(n as usize);
    for a in 0..n {
        let step = gcd(a, n);
        for b in (0..n).step_by(step as usize) {
            d.add_arc(a as usize, b as usize);
        }
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassRole {
    Identity,
    Center,
    Simple,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanClass {
    pub role: ClassRole,
    pub vertices: Vec<usize>,
    pub p: Option<u64>,
    pub s: Option<u32>,
    pub r: Option<u32>,
    pub blocks: Vec<TowerBlock>,
}

/// How the output was oriented: the ≡-classes of the input with their
/// tower layouts, and the direction of every adjacent class pair as
/// `[from, to]` class indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientationPlan {
    pub case: CenterCase,
    pub classes: Vec<PlanClass>,
    pub directions: Vec<[usize; 2]>,
}

impl OrientationPlan {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes") + "\n"
    }
}

pub fn reconstruct(gr: &UGraph) -> Result<DiGraph> {
    reconstruct_with_plan(gr).map(|(d, _)| d)
}

pub fn reconstruct_with_plan(gr: &UGraph) -> Result<(DiGraph, OrientationPlan)> {
    let summary = classify_center_case(gr)?;
    let (d, mut classes) = match summary.case {
        CenterCase::CyclicPrimePower | CenterCase::CyclicPQ | CenterCase::CyclicComposite => cyclic_branch(gr)?,
        CenterCase::PGroupNoncyclic => p_group_branch(gr)?,
        CenterCase::TrivialCenter => trivial_center_branch(gr)?,
        CenterCase::PruferLike => unreachable!("finite graphs have finite centers"),
    };
    if d.underlying() != *gr {
        return Err(Error::StructureError("oriented graph does not forget to the input".into()));
    }
    if !d.is_transitive() {
        return Err(Error::StructureError("oriented graph is not transitive".into()));
    }
    classes.sort_by_key(|c| c.vertices[0]);
    let reps: Vec<usize> = classes.iter().map(|c| c.vertices[0]).collect();
    let mut directions = Vec::new();
    for (i, &u) in reps.iter().enumerate() {
        for (j, &v) in reps.iter().enumerate() {
            if i != j && d.has_arc(u, v) {
                directions.push([i, j]);
            }
        }
    }
    Ok((d, OrientationPlan { case: summary.case, classes, directions }))
}

fn quotient(gr: &UGraph, part: &VertexPartition) -> (DiGraph, Vec<u64>) {
    let k = part.blocks.len();
    let mut q = DiGraph::unlabeled(k);
    for i in 0..k {
        for j in 0..k {
            if i != j && gr.has_edge(part.blocks[i][0], part.blocks[j][0]) {
                q.add_arc(i, j);
            }
        }
    }
    (q, part.blocks.iter().map(|b| b.len() as u64).collect())
}

fn cyclic_branch(gr: &UGraph) -> Result<(DiGraph, Vec<PlanClass>)> {
    let n = gr.len();
    let canon = canonical_cyclic_dpg(n as u64);
    let cu = canon.underlying();
    let (p1, p2) = (equiv_classes(gr), equiv_classes(&cu));
    let (q1, c1) = quotient(gr, &p1);
    let (q2, c2) = quotient(&cu, &p2);
    let IsoOutcome::Isomorphic { witness } = isomorphic_with_colors(&q1, &c1, &q2, &c2)? else {
        return Err(Error::StructureError(format!("center case says cyclic, but the graph is not the power graph of Z_{n}")));
    };
    let mut to_input = vec![0; n];
    for (i, block) in p1.blocks.iter().enumerate() {
        for (&v, &c) in block.iter().zip(&p2.blocks[witness[i]]) {
            to_input[c] = v;
        }
    }
    let mut d = DiGraph::new(gr.labels().to_vec());
    for (a, b) in canon.arcs() {
        d.add_arc(to_input[a], to_input[b]);
    }
    let universal = gr.universal_vertices();
    let classes = p1
        .blocks
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let mut by_order: Vec<(u64, usize)> = p2.blocks[witness[i]]
                .iter()
                .zip(block)
                .map(|(&c, &v)| (n as u64 / gcd(c as u64, n as u64), v))
                .collect();
            by_order.sort_unstable();
            let mut blocks: Vec<TowerBlock> = Vec::new();
            for (o, v) in by_order {
                match blocks.last_mut() {
                    Some(b) if b.order == Some(o) => b.vertices.push(v),
                    _ => blocks.push(TowerBlock { order: Some(o), vertices: vec![v] }),
                }
            }
            let role = if universal.contains(&block[0]) {
                ClassRole::Center
            } else if blocks.len() == 1 {
                ClassRole::Simple
            } else {
                ClassRole::Complex
            };
            PlanClass { role, vertices: block.clone(), p: None, s: None, r: None, blocks }
        })
        .collect();
    Ok((d, classes))
}

fn p_group_branch(gr: &UGraph) -> Result<(DiGraph, Vec<PlanClass>)> {
    let center = gr.universal_vertices();
    let (p, m) = prime_power_parse(center.len() as u64).ok_or_else(|| {
        Error::StructureError(format!("center of size {} is not a prime power", center.len()))
    })?;
    let mut d = DiGraph::new(gr.labels().to_vec());
    let center_tower = tower(p, 0, m, &center)?;
    center_tower.arcs.iter().for_each(|&(u, v)| d.add_arc(u, v));
    let mut classes = vec![PlanClass {
        role: ClassRole::Center,
        vertices: center.clone(),
        p: Some(p),
        s: Some(0),
        r: Some(m),
        blocks: center_tower.blocks,
    }];

    let part = equiv_classes(gr);
    let mut in_center = FixedBitSet::with_capacity(gr.len());
    center.iter().for_each(|&v| in_center.insert(v));
    let others: Vec<&Vec<usize>> = part.blocks.iter().filter(|b| !in_center.contains(b[0])).collect();
    let mut hat_sizes = Vec::new();
    for block in &others {
        let hat = double_neighborhood(gr, block)?;
        let hat_size = hat.count_ones(..) as u64;
        let r = match prime_power_parse(hat_size) {
            Some((q, r)) if q == p => r,
            _ => return Err(Error::StructureError(format!("|Ĉ| = {hat_size} is not a power of {p}"))),
        };
        let mut low = 0;
        for z in hat.ones().filter(|z| !block.contains(z)) {
            low = low.max(double_neighborhood(gr, &[z])?.count_ones(..) as u64);
        }
        let s = match prime_power_parse(low) {
            Some((q, k)) if q == p && k < r => k + 1,
            _ => return Err(Error::StructureError(format!("max |N̂(z)| = {low} below a class of |Ĉ| = {hat_size}"))),
        };
        let t = tower(p, s, r, block)?;
        t.arcs.iter().for_each(|&(u, v)| d.add_arc(u, v));
        for &u in block.iter() {
            for &c in &center {
                d.add_arc(u, c);
            }
        }
        classes.push(PlanClass {
            role: if s == r { ClassRole::Simple } else { ClassRole::Complex },
            vertices: block.to_vec(),
            p: Some(p),
            s: Some(s),
            r: Some(r),
            blocks: t.blocks,
        });
        hat_sizes.push(hat_size);
    }
    for (i, ci) in others.iter().enumerate() {
        for (j, cj) in others.iter().enumerate().skip(i + 1) {
            if !gr.has_edge(ci[0], cj[0]) {
                continue;
            }
            let (from, to) = match hat_sizes[i].cmp(&hat_sizes[j]) {
                std::cmp::Ordering::Greater => (ci, cj),
                std::cmp::Ordering::Less => (cj, ci),
                std::cmp::Ordering::Equal => {
                    return Err(Error::StructureError(format!(
                        "adjacent classes at {} and {} have equal |N̂| = {}",
                        ci[0], cj[0], hat_sizes[i]
                    )))
                }
            };
            for &u in from.iter() {
                for &v in to.iter() {
                    d.add_arc(u, v);
                }
            }
        }
    }
    Ok((d, classes))
}

fn trivial_center_branch(gr: &UGraph) -> Result<(DiGraph, Vec<PlanClass>)> {
    let ctx = ClassContext::new(gr)?;
    let e = gr.universal_vertices()[0];
    let n = gr.len();
    let mut d = DiGraph::new(gr.labels().to_vec());
    for v in 0..n {
        d.add_arc(v, e);
    }
    let mut classes = vec![PlanClass {
        role: ClassRole::Identity,
        vertices: vec![e],
        p: None,
        s: None,
        r: None,
        blocks: vec![TowerBlock { order: Some(1), vertices: vec![e] }],
    }];

    let blocks: Vec<usize> = (0..ctx.partition.blocks.len()).filter(|&b| ctx.partition.blocks[b][0] != e).collect();
    let infos: Vec<EquivClassInfo> = blocks.iter().map(|&b| ctx.classify(b)).collect::<Result<_>>()?;

    let mut singleton = FixedBitSet::with_capacity(n);
    for info in &infos {
        let vs = info.vertices.as_ref().unwrap();
        let involutions = match info.kind {
            ClassKind::Simple => vs.len() == 1,
            ClassKind::Complex => info.p == Some(2) && info.s == Some(1),
            ClassKind::InfinitelyComplex => false,
        };
        if involutions {
            vs.iter().for_each(|&v| singleton.insert(v));
        }
    }
    let mut universal = FixedBitSet::with_capacity(n);
    universal.insert(e);
    let pctx = PredicateContext { singleton, universal, identity: Some(e) };

    for info in &infos {
        let vs = info.vertices.as_ref().unwrap();
        let (arcs, layout) = match info.kind {
            ClassKind::Complex => {
                let t = synthesize_class_tower(info, vs)?;
                (t.arcs, t.blocks)
            }
            _ => {
                let arcs = vs.iter().flat_map(|&u| vs.iter().filter(move |&&v| v != u).map(move |&v| (u, v))).collect();
                (arcs, vec![TowerBlock { order: None, vertices: vs.clone() }])
            }
        };
        arcs.into_iter().for_each(|(u, v)| d.add_arc(u, v));
        classes.push(PlanClass {
            role: if info.kind == ClassKind::Complex { ClassRole::Complex } else { ClassRole::Simple },
            vertices: vs.clone(),
            p: info.p,
            s: info.s,
            r: info.r,
            blocks: layout,
        });
    }

    for (i, ci) in infos.iter().enumerate() {
        for (j, cj) in infos.iter().enumerate().skip(i + 1) {
            if !ctx.blocks_adjacent(blocks[i], blocks[j]) {
                continue;
            }
            let (from, to) = match orient_between(gr, &pctx, ci, cj)? {
                Direction::Forward => (ci, cj),
                Direction::Backward => (cj, ci),
            };
            for &u in from.vertices.as_ref().unwrap() {
                for &v in to.vertices.as_ref().unwrap() {
                    d.add_arc(u, v);
                }
            }
        }
    }
    Ok((d, classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupModel, GroupSpec};
    use crate::iso::digraph_isomorphic;
    use crate::powergraph::{zpm_directed_power_graph, zpm_power_graph};

    fn model(s: &str) -> GroupModel {
        GroupModel::new(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn roundtrip(s: &str) -> (DiGraph, DiGraph) {
        let g = model(s);
        let out = reconstruct(&zpm_power_graph(&g).strip_labels()).unwrap();
        (out, zpm_directed_power_graph(&g))
    }

    #[test]
    fn canonical_cyclic() {
        assert_eq!(canonical_cyclic_dpg(1).arc_count(), 0);
        assert_eq!(
            canonical_cyclic_dpg(4).arcs(),
            vec![(1, 0), (1, 2), (1, 3), (2, 0), (3, 0), (3, 1), (3, 2)]
        );
        assert_eq!(canonical_cyclic_dpg(6).arc_count(), 15);
    }

    #[test]
    fn towers() {
        let t = tower(3, 1, 2, &(0..8).collect::<Vec<_>>()).unwrap();
        let sizes: Vec<_> = t.blocks.iter().map(|b| b.vertices.len()).collect();
        assert_eq!(sizes, [2, 6]);
        // 2 + 30 mutual, 12 downward
        assert_eq!(t.arcs.len(), 44);
        let t = tower(2, 1, 2, &[4, 5, 6]).unwrap();
        assert_eq!(t.blocks[0].vertices, [4]);
        assert_eq!(t.arcs.len(), 4);
        assert!(matches!(tower(3, 1, 2, &[0, 1, 2]), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn predicate_on_z6() {
        let gr = zpm_power_graph(&model("cyclic(6)"));
        let mut singleton = FixedBitSet::with_capacity(6);
        singleton.insert(0);
        singleton.insert(3);
        let mut universal = FixedBitSet::with_capacity(6);
        [0, 1, 5].iter().for_each(|&v| universal.insert(v));
        let ctx = PredicateContext { singleton, universal, identity: Some(0) };
        let one = BlockDescriptor { size: 2, rep: 1 };
        let two = BlockDescriptor { size: 2, rep: 2 };
        let three = BlockDescriptor { size: 1, rep: 3 };
        assert!(direction_predicate(&gr, &ctx, one, three));
        assert!(direction_predicate(&gr, &ctx, one, two));
        assert!(!direction_predicate(&gr, &ctx, two, one));
        assert!(direction_predicate(&gr, &ctx, two, two));
    }

    #[test]
    fn s3_identity_is_a_sink() {
        let (out, oracle) = roundtrip("symmetric(3)");
        assert_eq!(out.in_degree(0), 5);
        assert_eq!(out.out_degree(0), 0);
        assert!(digraph_isomorphic(&out, &oracle).unwrap().is_isomorphic());
    }

    #[test]
    fn each_branch_matches_the_oracle() {
        for s in ["cyclic(12)", "cyclic(1)", "cyclic(8)", "dicyclic(2)", "dicyclic(3)", "dihedral(9)", "abelian(2,4)", "alternating(4)"] {
            let (out, oracle) = roundtrip(s);
            assert!(digraph_isomorphic(&out, &oracle).unwrap().is_isomorphic(), "{s}");
        }
    }

    #[test]
    fn plan_records_complex_class() {
        let g = model("dihedral(9)");
        let (_, plan) = reconstruct_with_plan(&zpm_power_graph(&g)).unwrap();
        assert_eq!(plan.case, CenterCase::TrivialCenter);
        let c = plan.classes.iter().find(|c| c.role == ClassRole::Complex).unwrap();
        assert_eq!((c.p, c.s, c.r), (Some(3), Some(1), Some(2)));
        assert_eq!(plan.classes[0].role, ClassRole::Identity);
        // every non-identity class points at the identity class
        assert!((1..plan.classes.len()).all(|i| plan.directions.contains(&[i, 0])));
    }

    #[test]
    fn rejects_non_power_graphs() {
        assert_eq!(reconstruct(&UGraph::cycle(5)), Err(Error::NotFiniteOrderComponent));
        assert_eq!(reconstruct(&UGraph::petersen()), Err(Error::NotFiniteOrderComponent));
        // a star with a pendant path: universal center, but no group
        let odd = UGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3)]);
        assert!(matches!(reconstruct(&odd), Err(Error::StructureError(_))));
    }
}
