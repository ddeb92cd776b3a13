//! Corpus manifests and the parallel harness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{read_graph, AnyGraph};
use crate::group::{GroupModel, GroupSpec};
use crate::verify::{cayley_table, verify_graph, verify_spec_as, VerifyReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntrySource {
    /// A spec object, or shorthand such as `"dihedral(5)"`.
    #[serde(deserialize_with = "spec_or_shorthand")]
    Group(GroupSpec),
    /// An inline undirected graph in the graph file format.
    Graph(serde_json::Value),
}

fn spec_or_shorthand<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<GroupSpec, D::Error> {
    use serde::de::Error as _;
    match serde_json::Value::deserialize(d)? {
        serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
        v => GroupSpec::deserialize(v).map_err(D::Error::custom),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub source: EntrySource,
}

impl ManifestEntry {
    pub fn group(spec: GroupSpec) -> ManifestEntry {
        ManifestEntry { name: None, source: EntrySource::Group(spec) }
    }

    pub fn named(name: &str, spec: GroupSpec) -> ManifestEntry {
        ManifestEntry { name: Some(name.to_string()), source: EntrySource::Group(spec) }
    }

    pub fn id(&self) -> String {
        match (&self.name, &self.source) {
            (Some(n), _) => n.clone(),
            (None, EntrySource::Group(s)) => s.name(),
            (None, EntrySource::Graph(_)) => "graph".to_string(),
        }
    }
}

/// A manifest is a JSON array of entries.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    Ok(serde_json::from_str(text)?)
}

pub fn manifest_to_json(entries: &[ManifestEntry]) -> String {
    let lines: Vec<String> = entries.iter().map(|e| serde_json::to_string(e).unwrap()).collect();
    format!("[\n  {}\n]\n", lines.join(",\n  "))
}

pub fn run_entry(entry: &ManifestEntry) -> VerifyReport {
    let id = entry.id();
    match &entry.source {
        EntrySource::Group(spec) => verify_spec_as(&id, spec),
        EntrySource::Graph(value) => match read_graph(&value.to_string()) {
            Ok(AnyGraph::Undirected(g)) => verify_graph(&id, &g, None),
            Ok(AnyGraph::Directed(_)) => {
                verify_error(&id, Error::Parse("corpus graphs must be undirected".into()))
            }
            Err(e) => verify_error(&id, e),
        },
    }
}

fn verify_error(id: &str, e: Error) -> VerifyReport {
    let mut r = verify_graph(id, &crate::graph::UGraph::unlabeled(0), None);
    r.outcome = crate::verify::Outcome::Error { error: e.to_string() };
    r
}

/// Worker count from `POWGRAPH_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("POWGRAPH_THREADS").ok()?.parse().ok().filter(|&n| n > 0)
}

/// Verifies every entry concurrently; reports come back in manifest order.
pub fn run_corpus(entries: &[ManifestEntry]) -> Vec<VerifyReport> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads_from_env() {
        pool = pool.num_threads(n);
    }
    match pool.build() {
        Ok(pool) => pool.install(|| entries.par_iter().map(run_entry).collect()),
        Err(_) => entries.iter().map(run_entry).collect(),
    }
}

/// Invariant-factor lists `d1 | d2 | ... | dk` with `k >= 2`, `d1 >= 2`
/// and product at most `max_order`.
pub fn noncyclic_abelian_invariants(max_order: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        let last = *prefix.last().unwrap_or(&1);
        let mut d = if prefix.is_empty() { 2 } else { last };
        while product * d <= max {
            if d % last == 0 {
                prefix.push(d);
                extend(prefix, product * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out.sort_by_key(|v| (v.iter().product::<u64>(), v.clone()));
    out
}

fn perm(degree: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for c in cycles {
        for (i, &x) in c.iter().enumerate() {
            p[x] = c[(i + 1) % c.len()];
        }
    }
    p
}

/// `Q8` acting on itself by left multiplication.
fn quaternion_regular() -> GroupSpec {
    let q8 = GroupModel::new(&GroupSpec::Dicyclic { k: 2 }).expect("Q8 builds");
    let t = cayley_table(&q8).expect("finite");
    let gens = q8
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, x)| x.to_string() == "a^1" || x.to_string() == "b")
        .map(|(g, _)| (0..8).map(|x| t[g][x]).collect())
        .collect();
    GroupSpec::Permutation { degree: 8, generators: gens }
}

/// Subgroups of small symmetric groups generated by random elements, as
/// Cayley tables under a random relabeling.
pub fn random_table_specs(count: usize, max_order: usize, seed: u64) -> Vec<GroupSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let degree = rng.gen_range(4..=6);
        let ngens = rng.gen_range(1..=2);
        let generators = (0..ngens)
            .map(|_| {
                let mut p: Vec<usize> = (0..degree).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let g = GroupModel::new(&GroupSpec::Permutation { degree, generators }).expect("valid generators");
        if g.len() < 2 || g.len() > max_order {
            continue;
        }
        let t = cayley_table(&g).expect("finite");
        let mut sigma: Vec<usize> = (0..g.len()).collect();
        sigma.shuffle(&mut rng);
        let mut table = vec![vec![0; g.len()]; g.len()];
        for i in 0..g.len() {
            for j in 0..g.len() {
                table[sigma[i]][sigma[j]] = sigma[t[i][j]];
            }
        }
        out.push(GroupSpec::Table { order: g.len(), table });
    }
    out
}

pub const RANDOM_TABLE_SEED: u64 = 0x9e37_79b9;

/// The acceptance corpus.
pub fn default_corpus() -> Vec<ManifestEntry> {
    let mut v: Vec<ManifestEntry> = Vec::new();
    v.extend((1..=100).map(|n| ManifestEntry::group(GroupSpec::Cyclic { n })));
    v.extend((2..=50).map(|n| ManifestEntry::group(GroupSpec::Dihedral { n })));
    v.extend((2..=25).map(|k| ManifestEntry::group(GroupSpec::Dicyclic { k })));
    v.extend(
        noncyclic_abelian_invariants(64)
            .into_iter()
            .map(|invariants| ManifestEntry::group(GroupSpec::Abelian { invariants })),
    );
    v.push(ManifestEntry::named("S3", GroupSpec::symmetric(3)));
    v.push(ManifestEntry::named("S4", GroupSpec::symmetric(4)));
    v.push(ManifestEntry::named("A4", GroupSpec::alternating(4)));
    v.push(ManifestEntry::named("A5", GroupSpec::alternating(5)));
    v.push(ManifestEntry::named(
        "D4",
        GroupSpec::Permutation { degree: 4, generators: vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[1, 3]])] },
    ));
    v.push(ManifestEntry::named("Q8", quaternion_regular()));
    for (i, spec) in random_table_specs(10, 64, RANDOM_TABLE_SEED).into_iter().enumerate() {
        let name = format!("random_table_{i}({})", spec.name());
        v.push(ManifestEntry::named(&name, spec));
    }
    v
}
