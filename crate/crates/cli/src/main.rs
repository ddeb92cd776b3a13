//! `powgraph`: build power graphs, analyze and reconstruct them, and run
//! the verification corpus and window experiments.

use std::fmt::{self, Write as _};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use powgraph_core::classes::classify_class;
use powgraph_core::corpus::{default_corpus, manifest_to_json, parse_manifest, run_corpus};
use powgraph_core::graph::{read_graph, to_dot, write_graph, AnyGraph};
use powgraph_core::window::{almost_connected, Window, DEFAULT_GUARD, DEFAULT_TAU};
use powgraph_core::{
    class_order_multiset, classify_center_case, classify_profile_class, equiv_classes, reconstruct_with_plan,
    verify_spec, zpm_directed_power_graph, zpm_power_graph, CenterCase, ClassKind, ClassProfile, EquivClassInfo,
    Error, GroupModel, GroupSpec, UGraph,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "powgraph", version, about = "Power graphs of groups and their directed reconstruction")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the Z±-power graph of a group.
    Gen {
        /// Spec file or shorthand such as `dihedral(5)`.
        spec: String,
        #[arg(long)]
        directed: bool,
        /// Also write DOT (next to the output file, or to stdout instead of JSON).
        #[arg(long)]
        dot: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the center case and the class table.
    Analyze {
        /// Graph file, or a spec whose graph is analyzed; a class profile with --profile.
        input: String,
        #[arg(long)]
        profile: bool,
    },
    /// Recover the directed power graph from an undirected one.
    Reconstruct {
        /// Graph file or spec.
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the orientation plan as JSON.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Reconstruct one group's graph and compare it with the brute-force digraph.
    Verify { spec: String },
    /// Verify every entry of a manifest, or of the default corpus.
    Corpus {
        manifest: Option<PathBuf>,
        /// Report file (JSON Lines); stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Include per-entry wall time.
        #[arg(long)]
        timings: bool,
        /// Print the default manifest and exit.
        #[arg(long, conflicts_with = "manifest")]
        emit_default: bool,
    },
    /// Run an experiment on a window model of an infinite group.
    Window {
        spec: String,
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: usize,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: u32,
        /// Which intersection `almost` inspects.
        #[arg(long, value_enum, default_value_t = SetKind::M)]
        set: SetKind,
        /// Cap on pairs examined by `locally-cyclic`.
        #[arg(long, default_value_t = 200_000)]
        pair_cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Lemma4,
    Almost,
    Prop5,
    LocallyCyclic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetKind {
    M,
    O,
}

enum Failure {
    /// Unreadable or malformed input; exit 2.
    Input(String),
    /// The input was fine but the check failed; exit 1.
    Check(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Check(m) => f.write_str(m),
        }
    }
}

type CliResult = Result<(), Failure>;

fn input(e: impl fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// Errors from analysis: parse and i/o problems are input errors, anything
/// else means the input was not what the command needed.
fn analysis(e: Error) -> Failure {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::InvalidSpec(_) | Error::TableNotGroup(_) => Failure::Input(e.to_string()),
        e => Failure::Check(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => write(p, text),
        None => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn load_spec(arg: &str) -> Result<GroupSpec, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read(path)?;
        let text = text.trim();
        return if text.starts_with('{') { GroupSpec::from_json(text) } else { text.parse() }.map_err(input);
    }
    arg.parse().map_err(input)
}

fn build(spec: &GroupSpec) -> Result<GroupModel, Failure> {
    GroupModel::new(spec).map_err(input)
}

/// An undirected graph from a graph file, or the power graph of a spec.
/// Labels are dropped either way.
fn load_graph(arg: &str) -> Result<UGraph, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read(path)?;
        if text.trim_start().starts_with('{') && text.contains("\"directed\"") {
            return match read_graph(&text).map_err(input)? {
                AnyGraph::Undirected(g) => Ok(g.strip_labels()),
                AnyGraph::Directed(_) => Err(input(format!("{arg}: expected an undirected graph"))),
            };
        }
    }
    let g = build(&load_spec(arg)?)?;
    if !g.is_finite() {
        return Err(input(format!("{arg}: graph analysis needs a finite group")));
    }
    Ok(zpm_power_graph(&g).strip_labels())
}

fn cmd_gen(spec: &str, directed: bool, dot: bool, output: Option<&Path>) -> CliResult {
    let g = build(&load_spec(spec)?)?;
    let graph: AnyGraph = if directed { zpm_directed_power_graph(&g).into() } else { zpm_power_graph(&g).into() };
    match (output, dot) {
        (Some(out), dot) => {
            write(out, &write_graph(&graph))?;
            if dot {
                write(&out.with_extension("dot"), &to_dot(&graph))?;
            }
            Ok(())
        }
        (None, true) => emit(None, &to_dot(&graph)),
        (None, false) => emit(None, &write_graph(&graph)),
    }
}

fn opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn kind_name(k: ClassKind) -> &'static str {
    match k {
        ClassKind::Simple => "simple",
        ClassKind::Complex => "complex",
        ClassKind::InfinitelyComplex => "infinitely-complex",
    }
}

fn row(cells: [&str; 8]) -> String {
    let [i, size, hat, kind, p, s, r, orders] = cells;
    format!("{i:>5}  {size:>6}  {hat:>6}  {kind:<18} {p:>3} {s:>3} {r:>3}  {orders}")
}

fn class_row(i: usize, info: &EquivClassInfo) -> String {
    let orders = class_order_multiset(info, None).map_or_else(|| "-".to_string(), |m| m.to_string());
    let (p, s, r) = (opt(info.p), opt(info.s), opt(info.r));
    row([&i.to_string(), &info.card.to_string(), &info.hat_size.to_string(), kind_name(info.kind), &p, &s, &r, &orders])
}

fn class_header() -> String {
    row(["class", "size", "hat", "kind", "p", "s", "r", "orders"])
}

fn cmd_analyze(arg: &str, profile: bool) -> CliResult {
    let mut out = String::new();
    if profile {
        let p = ClassProfile::from_json(&read(Path::new(arg))?).map_err(input)?;
        let summary = p.center_case().map_err(analysis)?;
        writeln!(out, "classes: {}", p.classes.len()).unwrap();
        writeln!(out, "vertices: {}", summary.vertices).unwrap();
        writeln!(out, "center: {:?} (|S| = {})", summary.case, summary.center_size).unwrap();
        writeln!(out, "{}", class_header()).unwrap();
        for i in 0..p.classes.len() {
            writeln!(out, "{}", class_row(i, &classify_profile_class(&p, i).map_err(analysis)?)).unwrap();
        }
        return emit(None, &out);
    }
    let gr = load_graph(arg)?;
    let summary = classify_center_case(&gr).map_err(analysis)?;
    let classes = equiv_classes(&gr).blocks;
    writeln!(out, "vertices: {}", gr.len()).unwrap();
    writeln!(out, "center: {:?} (|S| = {})", summary.case, summary.center_size).unwrap();
    writeln!(out, "equivalence classes: {}", classes.len()).unwrap();
    if summary.case != CenterCase::TrivialCenter {
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        let sizes: Vec<String> = sizes.iter().map(ToString::to_string).collect();
        writeln!(out, "class sizes: {}", sizes.join(" ")).unwrap();
        return emit(None, &out);
    }
    writeln!(out, "{}", class_header()).unwrap();
    for (i, c) in classes.iter().enumerate().filter(|(_, c)| c.len() > 1 || gr.degree(c[0]) + 1 != gr.len()) {
        writeln!(out, "{}", class_row(i, &classify_class(&gr, c).map_err(analysis)?)).unwrap();
    }
    emit(None, &out)
}

fn cmd_reconstruct(arg: &str, output: Option<&Path>, plan: Option<&Path>) -> CliResult {
    let gr = load_graph(arg)?;
    let (d, p) = reconstruct_with_plan(&gr).map_err(analysis)?;
    if let Some(path) = plan {
        write(path, &p.to_json())?;
    }
    emit(output, &write_graph(&d.into()))
}

fn cmd_verify(spec: &str) -> CliResult {
    let report = verify_spec(&load_spec(spec)?);
    emit(None, &(report.to_json_line(false) + "\n"))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{}: not verified", report.id)))
    }
}

fn cmd_corpus(manifest: Option<&Path>, output: Option<&Path>, timings: bool, emit_default: bool) -> CliResult {
    if emit_default {
        return emit(output, &manifest_to_json(&default_corpus()));
    }
    let entries = match manifest {
        Some(m) => parse_manifest(&read(m)?).map_err(input)?,
        None => default_corpus(),
    };
    let reports = run_corpus(&entries);
    let text: String = reports.iter().map(|r| r.to_json_line(timings) + "\n").collect();
    emit(output, &text)?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    eprintln!("{} entries, {} verified, {failed} failed", reports.len(), reports.len() - failed);
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} corpus entries failed")))
    }
}

struct WindowArgs<'a> {
    check: Check,
    x: Option<&'a str>,
    y: Option<&'a str>,
    tau: usize,
    guard: u32,
    set: SetKind,
    pair_cap: usize,
}

fn cmd_window(spec: &str, a: WindowArgs) -> CliResult {
    let g = build(&load_spec(spec)?)?;
    let w = Window::new(&g).map_err(input)?;
    let label = |v: usize| w.gr.label(v).to_string();
    let labels = |vs: &[usize]| -> Vec<String> { vs.iter().map(|&v| label(v)).collect() };
    let pairs = |ps: &[(usize, usize)]| -> Vec<String> { ps.iter().map(|&(u, v)| format!("{}, {}", label(u), label(v))).collect() };
    let arrows = |ps: &[(usize, usize)]| -> Vec<String> { ps.iter().map(|&(u, v)| format!("{} -> {}", label(u), label(v))).collect() };
    let vertex = |name: &str, v: Option<&str>| -> Result<usize, Failure> {
        let v = v.ok_or_else(|| input(format!("--check needs --{name}")))?;
        w.vertex(v).map_err(input)
    };

    let (verdict, report) = match a.check {
        Check::Lemma4 => {
            let x = vertex("x", a.x)?;
            let r = w.lemma4(x, a.guard).map_err(analysis)?;
            let report = json!({
                "check": "lemma4",
                "x": label(x),
                "guard": a.guard,
                "guarded_o": labels(&r.guarded_o),
                "i_size": r.i.len(),
                "cross_edges": pairs(&r.cross_edges),
                "guarded_components": r.guarded_components,
                "holds": r.holds,
            });
            (r.holds, report)
        }
        Check::Almost => {
            let (x, y) = (vertex("x", a.x)?, vertex("y", a.y)?);
            let (set, r) = match a.set {
                SetKind::M => ("M", w.m_intersection_report(x, y, a.guard).map_err(analysis)?),
                SetKind::O => {
                    let common = w.complement_on(&w.common_o(x, y).map_err(analysis)?);
                    let mut r = almost_connected(&common.graph);
                    r.isolated = r.isolated.iter().map(|&i| common.vertices[i]).collect();
                    r.bulk = r.bulk.iter().map(|&i| common.vertices[i]).collect();
                    ("O", r)
                }
            };
            let report = json!({
                "check": "almost",
                "set": set,
                "x": label(x),
                "y": label(y),
                "isolated": labels(&r.isolated),
                "bulk_size": r.bulk.len(),
                "guard_ok": r.guard,
                "almost_connected": r.verdict,
            });
            (r.verdict, report)
        }
        Check::Prop5 => {
            let (x, y) = match (a.x, a.y) {
                (None, None) => w.find_witness_pair(a.guard).ok_or_else(|| Failure::Check(Error::NotAlmostConnected.to_string()))?,
                _ => (vertex("x", a.x)?, vertex("y", a.y)?),
            };
            let rec = w.recover_directions(x, y, a.tau, a.guard).map_err(analysis)?;
            let bad = w.disagreements(&rec);
            let arcs: Vec<(usize, usize)> =
                rec.digraph.arcs().into_iter().filter(|&(u, v)| g.inverse(g.element(u)) != *g.element(v)).collect();
            let report = json!({
                "check": "prop5",
                "x": label(x),
                "y": label(y),
                "tau": a.tau,
                "guard": a.guard,
                "guarded_vertices": rec.guarded.len(),
                "decided": rec.decided,
                "arcs": arrows(&arcs),
                "disagreements": arrows(&bad),
                "all_oriented_correctly": bad.is_empty(),
            });
            (bad.is_empty(), report)
        }
        Check::LocallyCyclic => {
            let r = w.locally_cyclic(a.pair_cap);
            let head = |ps: &[(usize, usize)]| pairs(&ps[..ps.len().min(20)]);
            let report = json!({
                "check": "locally-cyclic",
                "pairs_checked": r.pairs_checked,
                "truncated": r.truncated,
                "no_common_predecessor": r.no_common_predecessor.len(),
                "no_common_predecessor_examples": head(&r.no_common_predecessor),
                "trivial_intersections": r.trivial_intersections.len(),
                "trivial_intersection_examples": head(&r.trivial_intersections),
                "locally_cyclic": r.verdict,
            });
            (r.verdict, report)
        }
    };
    print_json(&report);
    if verdict {
        Ok(())
    } else {
        Err(Failure::Check("check did not hold".into()))
    }
}

fn print_json(v: &Value) {
    let _ = emit(None, &(serde_json::to_string_pretty(v).expect("json values serialize") + "\n"));
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Cmd::Gen { spec, directed, dot, output } => cmd_gen(&spec, directed, dot, output.as_deref()),
        Cmd::Analyze { input, profile } => cmd_analyze(&input, profile),
        Cmd::Reconstruct { input, output, plan } => cmd_reconstruct(&input, output.as_deref(), plan.as_deref()),
        Cmd::Verify { spec } => cmd_verify(&spec),
        Cmd::Corpus { manifest, output, timings, emit_default } => {
            cmd_corpus(manifest.as_deref(), output.as_deref(), timings, emit_default)
        }
        Cmd::Window { spec, check, x, y, tau, guard, set, pair_cap } => cmd_window(
            &spec,
            WindowArgs { check, x: x.as_deref(), y: y.as_deref(), tau, guard, set, pair_cap },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(match f {
                Failure::Input(_) => 2,
                Failure::Check(_) => 1,
            })
        }
    }
}
