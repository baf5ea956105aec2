//! Command-line interface.
//!
//! Exit codes: 0 success or accepted tree, 1 error (bad input, failed
//! roundtrip, oracle mismatch), 2 usage, 3 rejected tree, 4 oracle guard
//! rail hit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chordweave_core::{
    gamma, realize, recognize, recognize::check_marked_2, ChordDiagram, DLTree, Reason, Regime, Verdict, Witness,
};
use clap::{Args, Parser, Subcommand};

use crate::format::{edge_operator, parse_diagram, parse_tree, write_diagram};
use crate::oracle::{self, CrossConfig, GuardError};
use crate::{dot, json, sample};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_REJECT: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "chordweave", version, about = "Intersection graphs of string-link chord diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the intersection graph of a diagram.
    Gamma {
        file: PathBuf,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a tree is the intersection graph of some diagram.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Use the two-color marked criterion (directions and unmarked
        /// colors ignored).
        #[arg(long)]
        marked: bool,
    },
    /// Build a diagram whose intersection graph is the given tree.
    Realize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Realize a tree and check the result reproduces it.
    Roundtrip { file: PathBuf },
    /// Enumerate all diagrams of a size and list their tree graphs.
    Census {
        #[arg(long)]
        chords: usize,
        #[arg(long)]
        components: usize,
        /// Keep only diagrams whose components are joined by chords.
        #[arg(long)]
        connected: bool,
        #[command(flatten)]
        run: OracleArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the recognizer with the census on all small trees.
    VerifyOracle {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        colors: u32,
        /// Only trees using every color.
        #[arg(long)]
        exact_colors: bool,
        #[command(flatten)]
        run: OracleArgs,
    },
    /// Roundtrip seeded random accepted trees.
    Stress {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 40)]
        max_vertices: usize,
        /// Most colors for multi-color trees (at least 3).
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(3..))]
        colors: u32,
    },
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Lift the size limits (same as CHORDWEAVE_GUARD_OVERRIDE=1).
    #[arg(long)]
    override_guard: bool,
}

impl OracleArgs {
    fn allow_large(&self) -> bool {
        self.override_guard || oracle::env_override()
    }
}

enum Failure {
    Error(String),
    Guard(GuardError),
}

impl From<GuardError> for Failure {
    fn from(e: GuardError) -> Self {
        Failure::Guard(e)
    }
}

type Outcome = Result<u8, Failure>;

/// Writes to stdout; a closed pipe (`chordweave census ... | head`) is not
/// an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(&format!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(&(format!($($t)*) + "\n")) };
}

fn err(msg: impl Into<String>) -> Failure {
    Failure::Error(msg.into())
}

pub fn run(cli: Cli) -> u8 {
    let outcome = match cli.command {
        Command::Gamma { file, dot, json } => cmd_gamma(&file, dot, json),
        Command::Check { file, json, marked } => cmd_check(&file, json, marked),
        Command::Realize { file, output, json } => cmd_realize(&file, output.as_deref(), json),
        Command::Roundtrip { file } => cmd_roundtrip(&file),
        Command::Census { chords, components, connected, run, output } => {
            cmd_census(chords, components, connected, &run, output.as_deref())
        }
        Command::VerifyOracle { max_vertices, colors, exact_colors, run } => {
            cmd_verify(max_vertices, colors, exact_colors, &run)
        }
        Command::Stress { seed, count, max_vertices, colors } => cmd_stress(seed, count, max_vertices, colors),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
        Err(Failure::Guard(e)) => {
            eprintln!("error: {e}");
            EXIT_GUARD
        }
    }
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| err(format!("cannot read `{}`: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<ChordDiagram, Failure> {
    let text = read(path)?;
    let parsed = if is_json(path) { json::diagram_from_json(&text) } else { parse_diagram(&text) };
    parsed.map_err(|e| err(format!("{}: {e}", path.display())))
}

fn load_tree(path: &Path) -> Result<DLTree, Failure> {
    let text = read(path)?;
    let parsed = if is_json(path) { json::tree_from_json(&text) } else { parse_tree(&text) };
    parsed.map_err(|e| err(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| err(format!("cannot write `{}`: {e}", p.display()))),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

/// Plain listing: one line per edge, then isolated vertices.
pub fn gamma_text(g: &chordweave_core::IntersectionGraph) -> String {
    let mut out = String::new();
    let mut touched = vec![false; g.vertex_count()];
    let v = |i: usize| format!("{}{}", g.names()[i], g.labels()[i]);
    for (a, b, s) in g.edges() {
        touched[a] = true;
        touched[b] = true;
        let _ = writeln!(out, "{} {} {}", v(a), edge_operator(s), v(b));
    }
    for (i, _) in touched.iter().enumerate().filter(|(_, t)| !**t) {
        let _ = writeln!(out, "{}", v(i));
    }
    out
}

fn cmd_gamma(file: &Path, as_dot: bool, as_json: bool) -> Outcome {
    let g = gamma(&load_diagram(file)?);
    if as_dot {
        out!("{}", dot::to_dot(&g));
    } else if as_json {
        outln!("{}", json::graph_to_json(&g));
    } else {
        out!("{}", gamma_text(&g));
    }
    Ok(EXIT_OK)
}

fn criterion(regime: Regime) -> &'static str {
    match regime {
        Regime::MarkedTwo => "two-component marked criterion",
        Regime::LabeledTwo => "two-component labeled criterion",
        Regime::Multi => "multi-component criterion",
    }
}

fn describe(reason: Reason) -> &'static str {
    match reason {
        Reason::Accepted => "all conditions hold",
        Reason::DirectedEdge => "a two-color graph has no directed edges",
        Reason::HeavyBoughs => "some vertex has more than two heavy boughs",
        Reason::UnmarkedLabels => "adjacent unmarked vertices carry different labels",
        Reason::SpineParity => "unmarked labels along the spine break the marked-vertex parity",
        Reason::NoSharedColor => "adjacent vertices share no color",
        Reason::NotSemisymmetric => "an edge at an unmarked vertex is directed",
        Reason::MissingDirectedEdge => "marked vertices sharing one color are not joined by a directed edge",
        Reason::ColorsNotConsecutive => "marked labels do not chain the colors into a path",
        Reason::Multiplicity => "an inner color pair is carried by more than one marked vertex",
        Reason::UndirectedMarkedPath => "two marked vertices are joined by undirected edges only",
    }
}

fn join(t: &DLTree, vs: &[usize], sep: &str) -> String {
    vs.iter().map(|&v| t.name(v)).collect::<Vec<_>>().join(sep)
}

/// Human-readable verdict.
pub fn explain(t: &DLTree, v: &Verdict) -> String {
    let mut out = String::new();
    let status = if v.accepted { "accepted" } else { "rejected" };
    let _ = write!(out, "{status}: {}, ", criterion(v.regime));
    match v.reason.condition() {
        None => out.push_str(describe(v.reason)),
        Some(n) => {
            let _ = write!(out, "condition {n} fails: {}", describe(v.reason));
        }
    }
    let _ = writeln!(out, " [{}]", v.code());
    match &v.witness {
        Witness::None => {}
        Witness::Edge(a, b) => {
            let _ = writeln!(out, "witness: edge {} {} {}", t.name(*a), edge_operator(t.edge(*a, *b)), t.name(*b));
        }
        Witness::HeavyBoughs { vertex, boughs } => {
            let _ = writeln!(out, "witness: vertex {} with heavy boughs", t.name(*vertex));
            for b in boughs {
                let _ = writeln!(out, "  {{{}}}", join(t, &b.vertices, ", "));
            }
        }
        Witness::SpineSegment { v: a, w: b, segment } => {
            let _ = writeln!(out, "witness: {} and {} along spine segment {}", t.name(*a), t.name(*b), join(t, segment, " "));
        }
        Witness::Colors(cs) => {
            let cs: Vec<String> = cs.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "witness: colors {}", cs.join(" "));
        }
        Witness::Vertices(vs) => {
            let _ = writeln!(out, "witness: vertices {}", join(t, vs, " "));
        }
        Witness::Path(vs) => {
            let _ = writeln!(out, "witness: path {}", join(t, vs, " -- "));
        }
    }
    if v.accepted && v.regime == Regime::Multi {
        let cs: Vec<String> = v.color_order.iter().map(ToString::to_string).collect();
        let ms: Vec<String> = v.multiplicities.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "color order: {}", cs.join(" "));
        let _ = writeln!(out, "multiplicities: {}", ms.join(" "));
    }
    out
}

fn cmd_check(file: &Path, as_json: bool, marked: bool) -> Outcome {
    let t = load_tree(file)?;
    let v = if marked { check_marked_2(&t).map_err(|e| err(e.to_string()))? } else { recognize(&t) };
    if as_json {
        outln!("{}", json::verdict_to_json(&t, &v));
    } else {
        out!("{}", explain(&t, &v));
    }
    Ok(if v.accepted { EXIT_OK } else { EXIT_REJECT })
}

fn cmd_realize(file: &Path, output: Option<&Path>, as_json: bool) -> Outcome {
    let t = load_tree(file)?;
    let v = recognize(&t);
    if !v.accepted {
        eprint!("{}", explain(&t, &v));
        return Ok(EXIT_REJECT);
    }
    let d = realize(&t).map_err(|e| err(format!("realization failed: {e}")))?;
    let text = if as_json { json::diagram_to_json(&d) + "\n" } else { write_diagram(&d) };
    write_out(output, &text)?;
    Ok(EXIT_OK)
}

fn cmd_roundtrip(file: &Path) -> Outcome {
    let t = load_tree(file)?;
    let v = recognize(&t);
    if !v.accepted {
        out!("{}", explain(&t, &v));
        return Ok(EXIT_REJECT);
    }
    match oracle::roundtrip(&t) {
        Ok(()) => {
            outln!("ISO");
            Ok(EXIT_OK)
        }
        Err(e) => {
            outln!("FAIL: {e}");
            Ok(EXIT_ERROR)
        }
    }
}

fn cmd_census(n: usize, k: usize, connected: bool, run: &OracleArgs, output: Option<&Path>) -> Outcome {
    if k == 0 {
        return Err(err("--components must be at least 1"));
    }
    let table = oracle::census(n, k, connected, run.jobs, run.allow_large())?;
    write_out(output, &table.to_text())?;
    Ok(EXIT_OK)
}

fn cmd_verify(max_vertices: usize, colors: u32, exact: bool, run: &OracleArgs) -> Outcome {
    if colors == 0 {
        return Err(err("--colors must be at least 1"));
    }
    let cfg = CrossConfig { max_vertices, colors, exact_colors: exact, jobs: run.jobs, allow_large: run.allow_large() };
    let report = oracle::cross_validate(&cfg)?;
    for m in &report.mismatches {
        outln!("MISMATCH recognize={} oracle={} [{}]", m.recognized, m.oracle, m.code);
        out!("{}", indent(&m.tree));
    }
    for (tree, e) in &report.roundtrip_failures {
        outln!("ROUNDTRIP FAIL: {e}");
        out!("{}", indent(tree));
    }
    outln!(
        "{} trees, {} accepted, {} mismatches, {} roundtrip failures",
        report.trees,
        report.accepted,
        report.mismatches.len(),
        report.roundtrip_failures.len()
    );
    Ok(if report.passed() { EXIT_OK } else { EXIT_ERROR })
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn cmd_stress(seed: u64, count: usize, max_vertices: usize, colors: u32) -> Outcome {
    let mut rng = sample::rng(seed);
    let mut failures = 0;
    for i in 0..count {
        let t = if i % 2 == 0 {
            sample::accepted_two_color(&mut rng, max_vertices)
        } else {
            sample::accepted_multi_color(&mut rng, max_vertices, colors as usize)
        };
        let result = if recognize(&t).accepted { oracle::roundtrip(&t) } else { Err("not accepted".to_string()) };
        if let Err(e) = result {
            failures += 1;
            outln!("FAIL: {e}");
            out!("{}", indent(&crate::format::write_tree(&t)));
        }
    }
    outln!("{count} trees, {failures} failures (seed {seed})");
    Ok(if failures == 0 { EXIT_OK } else { EXIT_ERROR })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_listing() {
        let g = gamma(&parse_diagram("1: a b a b").unwrap());
        assert_eq!(gamma_text(&g), "a{1,1} -- b{1,1}\n");
        let g = gamma(&parse_diagram("1: a a b b").unwrap());
        assert_eq!(gamma_text(&g), "a{1,1}\nb{1,1}\n");
    }

    #[test]
    fn explanations() {
        let t = parse_tree("vertex a {1,2}\nvertex b {1,2}\nedge a -- b").unwrap();
        let text = explain(&t, &recognize(&t));
        assert!(text.starts_with("accepted: two-component labeled criterion, all conditions hold"), "{text}");
        let t = parse_tree("vertex a {1,2}\nvertex b {1,1}\nedge a -> b").unwrap();
        let text = explain(&t, &recognize(&t));
        assert!(text.contains("condition 0 fails"), "{text}");
        assert!(text.contains("witness: edge a -> b"), "{text}");
    }

    #[test]
    fn usage_code_matches_clap() {
        let e = Cli::try_parse_from(["chordweave", "census", "--chords", "x"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE as i32);
    }
}
