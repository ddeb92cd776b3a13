//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on
//! any failure. Group-side expectations are computed here from the models,
//! independently of the graph-only code under test.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use powgraph_core::arith::{factorize, prime_power_parse};
use powgraph_core::corpus::{default_corpus, run_corpus, EntrySource, ManifestEntry};
use powgraph_core::iso::digraph_isomorphic;
use powgraph_core::reconstruct::{direction_predicate, BlockDescriptor, PredicateContext};
use powgraph_core::verify::oracle_digraph;
use powgraph_core::window::{almost_connected, Window};
use powgraph_core::{
    approx_classes, center, classify_center_case, classify_class, directed_power_graph, equiv_classes,
    power_graph, reconstruct, zpm_directed_power_graph, zpm_power_graph, Card, CenterCase, ClassKind, DiGraph,
    Element, Error, GroupModel, GroupSpec, UGraph,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type ClassVerdict = (ClassKind, Option<u64>, Option<u32>, Option<u32>);
type PredicateTable = Vec<((usize, usize), bool)>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Instance {
    id: String,
    g: GroupModel,
    phi: UGraph,
    oracle: DiGraph,
}

fn corpus_instances(entries: &[ManifestEntry]) -> Vec<Instance> {
    entries
        .iter()
        .map(|e| {
            let EntrySource::Group(spec) = &e.source else { unreachable!("default corpus holds groups") };
            let g = GroupModel::new(spec).expect("corpus group builds");
            let oracle = oracle_digraph(&g).expect("finite");
            Instance { id: e.id(), phi: zpm_power_graph(&g), oracle, g }
        })
        .collect()
}

fn criterion1(entries: &[ManifestEntry]) -> Outcome {
    let start = Instant::now();
    let reports = run_corpus(entries);
    let total = start.elapsed();
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| format!("{}: {:?}", r.id, r.outcome)).collect();
    let slowest = reports
        .iter()
        .max_by(|a, b| a.wall_ms.partial_cmp(&b.wall_ms).unwrap())
        .map(|r| (r.id.clone(), r.wall_ms.unwrap_or(0.0)))
        .unwrap();
    if !failed.is_empty() {
        return Err(format!("{} of {} failed, first {}", failed.len(), reports.len(), failed[0]));
    }
    if total > Duration::from_secs(60) {
        return Err(format!("corpus took {total:?}"));
    }
    if slowest.1 > 2000.0 {
        return Err(format!("{} took {:.0} ms", slowest.0, slowest.1));
    }
    Ok(format!(
        "{} groups isomorphic to the oracle in {:.2?}, slowest {} at {:.1} ms",
        reports.len(),
        total,
        slowest.0,
        slowest.1
    ))
}

/// Center case predicted from the group: cyclicity, the order's
/// factorization, and the number of elements of prime order.
fn predicted_case(g: &GroupModel) -> CenterCase {
    let n = g.len() as u64;
    if n == 1 {
        return CenterCase::TrivialCenter;
    }
    let cyclic = g.elements().iter().any(|x| g.order(x) == Card::Fin(n));
    let f = factorize(n);
    if cyclic {
        return match f.as_slice() {
            [_] => CenterCase::CyclicPrimePower,
            [(_, 1), (_, 1)] => CenterCase::CyclicPQ,
            _ => CenterCase::CyclicComposite,
        };
    }
    // a noncyclic p-group with a unique subgroup of order p
    if let [(p, _)] = f.as_slice() {
        let of_order_p = g.elements().iter().filter(|x| g.order(x) == Card::Fin(*p)).count() as u64;
        if of_order_p == p - 1 {
            return CenterCase::PGroupNoncyclic;
        }
    }
    CenterCase::TrivialCenter
}

fn check_case(inst: &Instance, phi: &UGraph, perm: &[usize]) -> Result<CenterCase, String> {
    let summary = classify_center_case(phi).map_err(|e| format!("{}: {e}", inst.id))?;
    let want = predicted_case(&inst.g);
    if summary.case != want {
        return Err(format!("{}: graph says {:?}, group says {want:?}", inst.id, summary.case));
    }
    let s = center(phi).unwrap();
    let (n, size) = (phi.len(), s.len());
    let rest: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
    let rest_connected = phi.induced(&rest).is_connected();
    let ok = match want {
        CenterCase::TrivialCenter => size == 1,
        CenterCase::CyclicPrimePower => size == n,
        CenterCase::CyclicPQ => {
            let [(p, 1), (q, 1)] = factorize(n as u64)[..] else { unreachable!() };
            size as u64 == (p - 1) * (q - 1) + 1 && 2 * size >= n && !rest_connected
        }
        CenterCase::CyclicComposite => rest_connected,
        CenterCase::PGroupNoncyclic => {
            // the center is <x> for a center element of maximal order
            let mut inv = vec![0; n];
            perm.iter().enumerate().for_each(|(i, &p)| inv[p] = i);
            let mut orig: Vec<usize> = s.iter().map(|&v| inv[v]).collect();
            orig.sort_unstable();
            let x = *orig.iter().max_by_key(|&&v| inst.g.order(inst.g.element(v))).unwrap();
            let mut sub = inst.g.cyclic_subgroup(x).members;
            sub.sort_unstable();
            2 * size < n && !rest_connected && sub == orig
        }
        CenterCase::PruferLike => false,
    };
    if !ok {
        return Err(format!("{}: {want:?} with |S| = {size}, |V| = {n} fails the group-side description", inst.id));
    }
    Ok(want)
}

fn criterion2(insts: &[Instance]) -> Outcome {
    let mut counts: HashMap<CenterCase, usize> = HashMap::new();
    for inst in insts {
        *counts.entry(check_case(inst, &inst.phi, &identity_perm(inst.phi.len()))?).or_default() += 1;
    }
    let mut c: Vec<_> = counts.into_iter().map(|(k, v)| format!("{k:?}={v}")).collect();
    c.sort();
    Ok(format!("{} groups, zero mismatches ({})", insts.len(), c.join(", ")))
}

/// `(kind, p, s, r)` of an ≡-class from the group side.
fn oracle_class(g: &GroupModel, class: &[usize], approx_of: &[usize]) -> Option<ClassVerdict> {
    let first = approx_of[class[0]];
    if class.iter().all(|&v| approx_of[v] == first) {
        return Some((ClassKind::Simple, None, None, None));
    }
    let order = |v: usize| g.order(g.element(v)).finite().unwrap();
    let y = *class.iter().max_by_key(|&&v| order(v)).unwrap();
    let (p, r) = prime_power_parse(order(y))?;
    let min = class.iter().map(|&v| order(v)).min().unwrap();
    let (q, s) = prime_power_parse(min)?;
    if q != p {
        return None;
    }
    let mut expected: Vec<usize> = g.cyclic_subgroup(y).members.into_iter().filter(|&v| order(v) >= min).collect();
    expected.sort_unstable();
    let mut got = class.to_vec();
    got.sort_unstable();
    (expected == got).then_some((ClassKind::Complex, Some(p), Some(s), Some(r)))
}

type ClassTable = Vec<(Vec<usize>, ClassKind, Option<u64>, Option<u32>, Option<u32>)>;

fn classify_all(inst: &Instance, phi: &UGraph, perm: &[usize]) -> Result<ClassTable, String> {
    let approx = approx_classes(&inst.g);
    let approx_of = approx.block_index();
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let mut table = Vec::new();
    for block in equiv_classes(phi).blocks {
        let original: Vec<usize> = block.iter().map(|&v| inv[v]).collect();
        if original == [0] {
            continue;
        }
        let info = classify_class(phi, &block).map_err(|e| format!("{}: {e}", inst.id))?;
        let want = oracle_class(&inst.g, &original, &approx_of)
            .ok_or_else(|| format!("{}: class at {} is neither simple nor complex", inst.id, original[0]))?;
        let got = (info.kind, info.p, info.s, info.r);
        if got != want {
            return Err(format!("{}: class at {} classified {got:?}, oracle {want:?}", inst.id, original[0]));
        }
        let mut sorted = original;
        sorted.sort_unstable();
        table.push((sorted, got.0, got.1, got.2, got.3));
    }
    table.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(table)
}

fn identity_perm(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn criterion3(insts: &[Instance]) -> Outcome {
    let (mut groups, mut classes, mut complex) = (0, 0, 0);
    for inst in insts.iter().filter(|i| center(&i.phi).map(|s| s.len() == 1).unwrap_or(false)) {
        let t = classify_all(inst, &inst.phi, &identity_perm(inst.phi.len()))?;
        groups += 1;
        classes += t.len();
        complex += t.iter().filter(|c| c.1 == ClassKind::Complex).count();
    }
    let d9 = GroupModel::new(&GroupSpec::Dihedral { n: 9 }).unwrap();
    let phi = power_graph(&d9);
    let rotations: Vec<usize> =
        (1..d9.len()).filter(|&v| matches!(d9.element(v), Element::Dihedral { flip: false, .. })).collect();
    let info = classify_class(&phi, &rotations).map_err(|e| e.to_string())?;
    if (info.p, info.s, info.r) != (Some(3), Some(1), Some(2)) {
        return Err(format!("dihedral(9) rotations gave {:?}", (info.p, info.s, info.r)));
    }
    Ok(format!("{groups} trivial-center groups, {classes} classes ({complex} complex), dihedral(9) -> (3,1,2)"))
}

/// Predicate verdicts for every adjacent pair of ≈-classes, keyed by the
/// original representatives.
fn predicate_table(inst: &Instance, phi: &UGraph, perm: &[usize]) -> Result<PredicateTable, String> {
    let approx = approx_classes(&inst.g);
    let n = phi.len();
    let mut singleton = FixedBitSet::with_capacity(n);
    for b in approx.blocks.iter().filter(|b| b.len() == 1) {
        singleton.insert(perm[b[0]]);
    }
    let mut universal = FixedBitSet::with_capacity(n);
    center(phi).map_err(|e| e.to_string())?.into_iter().for_each(|v| universal.insert(v));
    let ctx = PredicateContext { singleton, universal, identity: Some(perm[0]) };
    let mut out = Vec::new();
    for a in &approx.blocks {
        for b in &approx.blocks {
            let (ra, rb) = (perm[a[0]], perm[b[0]]);
            if a == b || !phi.has_edge(ra, rb) {
                continue;
            }
            let da = BlockDescriptor { size: a.len(), rep: ra };
            let db = BlockDescriptor { size: b.len(), rep: rb };
            let fwd = direction_predicate(phi, &ctx, da, db);
            let back = direction_predicate(phi, &ctx, db, da);
            let truth = inst.oracle.has_arc(a[0], b[0]);
            if fwd != truth || fwd == back {
                return Err(format!(
                    "{}: pair ({}, {}) predicate {fwd}/{back}, oracle {truth}",
                    inst.id,
                    inst.g.element(a[0]),
                    inst.g.element(b[0])
                ));
            }
            out.push(((a[0], b[0]), fwd));
        }
    }
    Ok(out)
}

fn criterion4(insts: &[Instance]) -> Outcome {
    let mut pairs = 0;
    for inst in insts {
        pairs += predicate_table(inst, &inst.phi, &identity_perm(inst.phi.len()))?.len();
    }
    Ok(format!("{pairs} ordered adjacent ≈-pairs over {} groups, zero exceptions", insts.len()))
}

fn criterion5(insts: &[Instance]) -> Outcome {
    for inst in insts {
        let (d1, d2) = (directed_power_graph(&inst.g), zpm_directed_power_graph(&inst.g));
        if d1 != d2 {
            return Err(format!("{}: directed variants differ", inst.id));
        }
        if power_graph(&inst.g) != zpm_power_graph(&inst.g) {
            return Err(format!("{}: undirected variants differ", inst.id));
        }
    }
    Ok(format!("{} groups, exact arc and edge equality", insts.len()))
}

fn int(g: &GroupModel, v: usize) -> i64 {
    match g.element(v) {
        Element::Int(x) => *x,
        other => panic!("not an integer: {other}"),
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a.abs(), b.abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    (a.abs() / x) * b.abs()
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let model = |s: &str| GroupModel::new(&s.parse().unwrap()).unwrap();

    // (a)
    let z200 = model("z_window(200)");
    let w = Window::new(&z200).map_err(|e| e.to_string())?;
    let mut a_count = 0;
    for x in (-40i64..=40).filter(|&x| x != 0) {
        let v = z200.index_of(&Element::Int(x)).unwrap();
        let r = w.lemma4(v, 5).map_err(|e| format!("(a) x={x}: {e}"))?;
        if !r.holds {
            return Err(format!("(a) check fails at x={x}: {r:?}"));
        }
        a_count += 1;
    }

    // (b)
    let z120 = model("z_window(120)");
    let w = Window::new(&z120).map_err(|e| e.to_string())?;
    let mut b_count = 0;
    for x in 1..z120.len() {
        for y in x + 1..z120.len() {
            let (ix, iy) = (int(&z120, x), int(&z120, y));
            if w.gr.has_edge(x, y) || lcm(ix, iy) > 24 {
                continue;
            }
            let common = w.complement_on(&w.common_o(x, y).map_err(|e| e.to_string())?);
            let r = almost_connected(&common.graph);
            let mut isolated: Vec<i64> = r.isolated.iter().map(|&i| int(&z120, common.vertices[i])).collect();
            isolated.sort_unstable();
            let l = lcm(ix, iy);
            let gen = z120.intersection_generator(z120.element(x), z120.element(y));
            if !r.verdict || isolated != [-l, l] || gen != Some(Element::Int(l)) {
                return Err(format!("(b) pair ({ix}, {iy}): verdict {}, isolated {isolated:?}", r.verdict));
            }
            b_count += 1;
        }
    }

    // (c)
    for (spec, want) in [("z_window(50)", true), ("q_subgroup_window({2:2,3:1},N=48)", true), ("amalgam(2,3,N=12)", false)] {
        let g = model(spec);
        let r = Window::new(&g).map_err(|e| e.to_string())?.locally_cyclic(200_000);
        if r.verdict != want || r.truncated {
            return Err(format!("(c) {spec}: verdict {} (truncated {})", r.verdict, r.truncated));
        }
    }

    // (d)
    let am = model("amalgam(2,3,N=24)");
    let w = Window::new(&am).map_err(|e| e.to_string())?;
    let (a, b) = (w.vertex("a^1").unwrap(), w.vertex("b^1").unwrap());
    let rec = w.recover_directions(a, b, 3, 5).map_err(|e| format!("(d) {e}"))?;
    let oracle = zpm_directed_power_graph(&am);
    let mut edges = 0;
    for &u in &rec.guarded {
        for &v in &rec.guarded {
            let inverse = am.inverse(am.element(u)) == *am.element(v);
            if u == v || inverse || !w.gr.has_edge(u, v) {
                continue;
            }
            if rec.digraph.has_arc(u, v) != oracle.has_arc(u, v) {
                return Err(format!("(d) {} -> {} disagrees with the oracle", am.element(u), am.element(v)));
            }
            edges += 1;
        }
    }
    if edges == 0 {
        return Err("(d) no guarded edges".into());
    }

    let took = start.elapsed();
    if took > Duration::from_secs(30) {
        return Err(format!("window suite took {took:?}"));
    }
    Ok(format!(
        "(a) {a_count} x values, (b) {b_count} pairs, (c) 3 windows, (d) {edges} guarded ordered pairs match, {took:.2?}"
    ))
}

fn criterion7(insts: &[Instance]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut runs = 0;
    for inst in insts {
        let n = inst.phi.len();
        let base_case = check_case(inst, &inst.phi, &identity_perm(inst.phi.len()))?;
        let trivial = base_case == CenterCase::TrivialCenter;
        let base_classes = if trivial { Some(classify_all(inst, &inst.phi, &identity_perm(n))?) } else { None };
        let base_pred = predicate_table(inst, &inst.phi, &identity_perm(n))?;
        for _ in 0..3 {
            let mut perm = identity_perm(n);
            perm.shuffle(&mut rng);
            let phi = inst.phi.relabel(&perm).strip_labels();
            let oracle = inst.oracle.relabel(&perm);
            let out = reconstruct(&phi).map_err(|e| format!("{}: relabeled reconstruction failed: {e}", inst.id))?;
            if !digraph_isomorphic(&out, &oracle).map_err(|e| e.to_string())?.is_isomorphic() {
                return Err(format!("{}: relabeled reconstruction is not isomorphic", inst.id));
            }
            if check_case(inst, &phi, &perm)? != base_case {
                return Err(format!("{}: center case changed under relabeling", inst.id));
            }
            if trivial && Some(classify_all(inst, &phi, &perm)?) != base_classes {
                return Err(format!("{}: class table changed under relabeling", inst.id));
            }
            let relabeled = Instance { id: inst.id.clone(), g: inst.g.clone(), phi: phi.clone(), oracle: inst.oracle.clone() };
            if predicate_table(&relabeled, &phi, &perm)? != base_pred {
                return Err(format!("{}: predicate table changed under relabeling", inst.id));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} relabeled runs, no verdict changed"))
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, g) in [("5-cycle", UGraph::cycle(5)), ("Petersen", UGraph::petersen())] {
        let mut perm = identity_perm(g.len());
        perm.shuffle(&mut rng);
        for input in [g.clone(), g.relabel(&perm)] {
            match reconstruct(&input) {
                Err(Error::StructureError(_)) | Err(Error::NotFiniteOrderComponent) => {}
                other => return Err(format!("{name}: {other:?}")),
            }
        }
    }
    Ok("5-cycle and Petersen rejected with NotFiniteOrderComponent".into())
}

fn main() -> ExitCode {
    let entries = default_corpus();
    let insts = corpus_instances(&entries);
    let criteria: Vec<Criterion> = vec![
        ("end-to-end reconstruction over the default corpus", Box::new(|| criterion1(&entries))),
        ("center case agrees with the group-side prediction", Box::new(|| criterion2(&insts))),
        ("class recognition agrees with the class oracle", Box::new(|| criterion3(&insts))),
        ("direction predicate matches oracle arcs", Box::new(|| criterion4(&insts))),
        ("power graph and Z±-power graph coincide on finite groups", Box::new(|| criterion5(&insts))),
        ("window suite", Box::new(criterion6)),
        ("verdicts stable under seeded relabelings", Box::new(|| criterion7(&insts))),
        ("non-power graphs are rejected", Box::new(criterion8)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
