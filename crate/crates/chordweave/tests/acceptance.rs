//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `cargo test --test acceptance`. Exits nonzero if any
//! criterion fails, except one whose failure is shown to hold for every
//! diagram (it is still printed as FAIL).

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use chordweave::format::{write_diagram, write_tree};
use chordweave::oracle::{self, cross_validate, enumerate_diagrams, labeled_trees, CrossConfig, Oracle};
use chordweave::sample;
use chordweave_core::igraph::pair_tallies;
use chordweave_core::realize::realize_multi;
use chordweave_core::recognize::check_marked_2;
use chordweave_core::{
    gamma, raw_edge_count, realize, recognize, ChordDiagram, Color, DLTree, EdgeState, LabelPair, Regime};

type Outcome = Result<String, String>;

fn cross(max_vertices: usize, colors: Color, exact_colors: bool, jobs: usize) -> Outcome {
    let cfg = CrossConfig { max_vertices, colors, exact_colors, jobs, allow_large: false };
    let r = cross_validate(&cfg).map_err(|e| e.to_string())?;
    let summary = format!(
        "{} trees, {} accepted, {} mismatches, {} roundtrip failures",
        r.trees,
        r.accepted,
        r.mismatches.len(),
        r.roundtrip_failures.len()
    );
    if let Some(m) = r.mismatches.first() {
        return Err(format!("{summary}; first mismatch [{}]:\n{}", m.code, m.tree));
    }
    if let Some((t, e)) = r.roundtrip_failures.first() {
        return Err(format!("{summary}; first roundtrip failure ({e}):\n{t}"));
    }
    Ok(summary)
}

/// Two colors, every tree up to five vertices, against all two-component
/// diagrams.
fn criterion_1() -> Outcome {
    cross(5, 2, false, 1)
}

/// Exactly three colors, up to five vertices, against connected
/// three-component diagrams.
fn criterion_2() -> Outcome {
    cross(5, 3, true, 4)
}

/// Seeded random accepted trees far past the oracle sizes.
fn criterion_3() -> Outcome {
    let mut rng = sample::rng(0x5eed_0003);
    let mut largest = 0;
    for i in 0..500 {
        let t = if i < 250 {
            sample::accepted_two_color(&mut rng, 40)
        } else {
            sample::accepted_multi_color(&mut rng, 40, 6)
        };
        largest = largest.max(t.len());
        if !recognize(&t).accepted {
            return Err(format!("generated tree rejected:\n{}", write_tree(&t)));
        }
        oracle::roundtrip(&t).map_err(|e| format!("{e}:\n{}", write_tree(&t)))?;
    }
    Ok(format!("500 trees roundtripped, largest {largest} vertices"))
}

/// Semisymmetry and raw tally counts on random diagrams.
fn criterion_4() -> Outcome {
    use rand::Rng;
    let mut rng = sample::rng(0x5eed_0004);
    for i in 0..10_000 {
        let n = rng.random_range(1..=12);
        let k = rng.random_range(1..=4);
        let d = sample::random_diagram(&mut rng, n, k);
        if !gamma(&d).is_semisymmetric() {
            return Err(format!("diagram {i} not semisymmetric: {:?}", d.sequences()));
        }
        let labels = d.labels();
        for v in 0..n {
            for w in v + 1..n {
                let (f, b) = pair_tallies(&d, v, w);
                if f + b != raw_edge_count(labels[v], labels[w]) {
                    return Err(format!("diagram {i}: chords {v},{w} tally {f}+{b}: {:?}", d.sequences()));
                }
            }
        }
    }
    Ok("10000 diagrams".to_string())
}

const UNMARKED: [LabelPair; 2] = [LabelPair::new(1, 1), LabelPair::new(2, 2)];
const ANY: [LabelPair; 3] = [LabelPair::new(1, 1), LabelPair::new(2, 2), LabelPair::new(1, 2)];

/// Center `c` with three branches `c - u_i - m_i`, `m_i` marked. With
/// `moved = Some(i)`, branch `i` becomes `c - m_i - u_i`.
fn star(labels: [LabelPair; 4], moved: Option<usize>) -> DLTree {
    let m = LabelPair::new(1, 2);
    let mut vertices = vec![("c".to_string(), labels[0])];
    let mut edges = Vec::new();
    for i in 0..3 {
        let u = vertices.len();
        vertices.push((format!("u{i}"), labels[i + 1]));
        vertices.push((format!("m{i}"), m));
        if moved == Some(i) {
            edges.push((0, u + 1, EdgeState::Undirected));
            edges.push((u + 1, u, EdgeState::Undirected));
        } else {
            edges.push((0, u, EdgeState::Undirected));
            edges.push((u, u + 1, EdgeState::Undirected));
        }
    }
    DLTree::new(vertices, &edges).unwrap()
}

/// Three heavy boughs: rejected under every label mix (center and middle
/// vertices each `{1,1}`, `{2,2}` or `{1,2}`) by the marked criterion, by
/// the recognizer and by the seven-chord census. Moving any one marked
/// vertex next to the center (middle vertices unmarked) makes the marked
/// criterion accept, and the recognizer still agrees with the census.
fn criterion_5() -> Outcome {
    let oracle = Oracle::new(4, true);
    let mut rejected = 0;
    for mix in 0..81 {
        let pick = |slot: u32| ANY[mix / 3usize.pow(slot) % 3];
        let t = star([pick(0), pick(1), pick(2), pick(3)], None);
        let marked = check_marked_2(&t).map_err(|e| e.to_string())?;
        let verdict = recognize(&t);
        let truth = oracle.accepts(&t).map_err(|e| e.to_string())?;
        if marked.accepted || verdict.accepted || truth {
            return Err(format!("star accepted:\n{}", write_tree(&t)));
        }
        rejected += 1;
    }
    let (mut moved_cases, mut realizable) = (0, 0);
    for center in ANY {
        for mix in 0..8 {
            let labels = [center, UNMARKED[mix & 1], UNMARKED[mix >> 1 & 1], UNMARKED[mix >> 2 & 1]];
            for branch in 0..3 {
                let t = star(labels, Some(branch));
                let marked = check_marked_2(&t).map_err(|e| e.to_string())?;
                if !marked.accepted {
                    return Err(format!("moved star rejected [{}]:\n{}", marked.code(), write_tree(&t)));
                }
                let verdict = recognize(&t);
                let truth = oracle.accepts(&t).map_err(|e| e.to_string())?;
                if verdict.accepted != truth {
                    return Err(format!("recognize {} but census {truth}:\n{}", verdict.accepted, write_tree(&t)));
                }
                moved_cases += 1;
                realizable += usize::from(truth);
            }
        }
    }
    if realizable == 0 {
        return Err("no labeling of a moved star is realizable".to_string());
    }
    Ok(format!("{rejected} stars rejected; {moved_cases} moved stars pass the marked criterion, {realizable} realizable"))
}

/// Path `m (U1) v X^j w (U2) m'`; the `U`s copy the label of their
/// neighbor so only the spine parity matters.
fn parity_path(j: usize, lv: u32, lw: u32, u1: bool, u2: bool) -> DLTree {
    let m = LabelPair::new(1, 2);
    let mut vertices = vec![("m".to_string(), m)];
    let mut push = |name: String, l: LabelPair| {
        vertices.push((name, l));
    };
    if u1 {
        push("u1".into(), LabelPair::new(lv, lv));
    }
    push("v".into(), LabelPair::new(lv, lv));
    for i in 0..j {
        push(format!("x{i}"), m);
    }
    push("w".into(), LabelPair::new(lw, lw));
    if u2 {
        push("u2".into(), LabelPair::new(lw, lw));
    }
    push("n".into(), m);
    let edges: Vec<_> = (1..vertices.len()).map(|i| (i - 1, i, EdgeState::Undirected)).collect();
    DLTree::new(vertices, &edges).unwrap()
}

fn criterion_6() -> Outcome {
    let oracle = Oracle::new(4, false);
    let (mut cases, mut checked) = (0, 0);
    for j in 1..=4 {
        for (lv, lw) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for (u1, u2) in [(false, false), (true, false), (false, true), (true, true)] {
                let t = parity_path(j, lv, lw, u1, u2);
                let expected = (lv == lw) ^ (j % 2 == 1);
                let verdict = recognize(&t);
                if verdict.accepted != expected {
                    return Err(format!("j={j} labels {lv},{lw}: got [{}]\n{}", verdict.code(), write_tree(&t)));
                }
                if t.len() <= 6 {
                    let truth = oracle.accepts(&t).map_err(|e| e.to_string())?;
                    if truth != expected {
                        return Err(format!("oracle disagrees at j={j} labels {lv},{lw}:\n{}", write_tree(&t)));
                    }
                    checked += 1;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} paths, {checked} confirmed by the census"))
}

/// Whether every light bough of `t` is a share of `d` and every heavy one
/// is not. Returns the first offending (vertex, bough root, heavy).
fn bough_share_violation(t: &DLTree, d: &ChordDiagram) -> Option<(usize, usize, bool)> {
    for x in 0..t.len() {
        for b in t.boughs(x) {
            let chords: Vec<usize> =
                b.vertices.iter().map(|&y| d.chord_index(t.name(y)).expect("chord per vertex")).collect();
            if b.heavy == d.is_share(&chords) {
                return Some((x, b.root, b.heavy));
            }
        }
    }
    None
}

/// For every tree graph of a two-component diagram with at most
/// `max_chords` chords and a marked chord: whether at least one of its
/// diagrams has light boughs exactly at its shares.
fn exact_share_realizations(max_chords: usize) -> HashMap<String, bool> {
    let mut out: HashMap<String, bool> = HashMap::new();
    for n in 1..=max_chords {
        for d in enumerate_diagrams(n, 2) {
            let Ok(t) = DLTree::from_graph(&gamma(&d)) else { continue };
            if t.marked_vertices().is_empty() {
                continue;
            }
            let good = bough_share_violation(&t, &d).is_none();
            *out.entry(t.canonical()).or_default() |= good;
        }
    }
    out
}

/// Light boughs are exactly the shares in the realized diagram.
///
/// Heavy boughs are never shares in any diagram, and a failure there is a
/// bug. The converse can fail for every diagram of a tree: in
/// `1: v1 v2 v0 v2 v1 / 2: v0` (v0 marked, crossing the unmarked v1 and
/// v2) the light bough {v0, v1} of v2 is split by v2's endpoints, and any
/// diagram with this graph nests v1 and v2 the same way. Such trees are
/// reported as unattainable once the census shows no diagram does better.
fn criterion_7() -> Result<String, Fail> {
    let (mut trees, mut light_failures) = (0, Vec::new());
    for v in 1..=5 {
        for t in labeled_trees(v, 2, false) {
            if t.marked_vertices().is_empty() || !recognize(&t).accepted {
                continue;
            }
            trees += 1;
            let d = realize(&t).map_err(|e| Fail::Bug(e.to_string()))?;
            match bough_share_violation(&t, &d) {
                None => {}
                Some((x, root, true)) => {
                    return Err(Fail::Bug(format!(
                        "heavy bough of {} rooted at {} is a share:\n{}{}",
                        t.name(x),
                        t.name(root),
                        write_tree(&t),
                        write_diagram(&d)
                    )))
                }
                Some((x, root, false)) => light_failures.push((t, d, x, root)),
            }
        }
    }
    if light_failures.is_empty() {
        return Ok(format!("{trees} trees"));
    }
    let census = exact_share_realizations(5);
    for (t, d, _, _) in &light_failures {
        let swapped = t.map_colors(|c| 3 - c);
        let better = [t, &swapped].iter().any(|u| census.get(&u.canonical()).copied().unwrap_or(false));
        if better {
            return Err(Fail::Bug(format!(
                "a diagram with light boughs exactly at shares exists, but realize gave\n{}for\n{}",
                write_diagram(d),
                write_tree(t)
            )));
        }
    }
    let (t, d, x, root) = &light_failures[0];
    Err(Fail::Unattainable(format!(
        "{} of {trees} trees have a light bough that is not a share, and the census shows no diagram \
         of any of them avoids this; e.g. the bough of {} rooted at {} in\n{}realized as\n{}",
        light_failures.len(),
        t.name(*x),
        t.name(*root),
        write_tree(t),
        write_diagram(d)
    )))
}

fn check_multi_output(t: &DLTree) -> Result<(), String> {
    let verdict = recognize(t);
    if !verdict.accepted || verdict.regime != Regime::Multi {
        return Err(format!("not an accepted multi-color tree [{}]", verdict.code()));
    }
    let d = realize_multi(t, &verdict).map_err(|e| e.to_string())?;
    let order = &verdict.color_order;
    let colors: BTreeSet<Color> = order.iter().copied().collect();
    if colors != t.colors() || colors.len() != order.len() {
        return Err(format!("color order {order:?} is not a permutation of the tree colors"));
    }
    let expected: BTreeSet<(Color, Color)> = order.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    let found: BTreeSet<(Color, Color)> = d.connection_graph().edges().collect();
    if found != expected {
        return Err(format!("connection graph {found:?}, expected path {order:?}"));
    }
    let pos = |c: Color| order.iter().position(|&x| x == c).unwrap();
    let mut counts = vec![0usize; order.len() - 1];
    for l in d.labels().into_iter().filter(|l| l.is_marked()) {
        let (a, b) = (pos(l.lo()), pos(l.hi()));
        if a.abs_diff(b) != 1 {
            return Err(format!("chord labeled {l} joins non-consecutive colors"));
        }
        counts[a.min(b)] += 1;
    }
    if counts != verdict.multiplicities {
        return Err(format!("multiplicities {counts:?}, verdict says {:?}", verdict.multiplicities));
    }
    Ok(())
}

/// Structure of multi-color realizations.
fn criterion_8() -> Outcome {
    let mut n = 0;
    for v in 2..=5 {
        for t in labeled_trees(v, 3, true) {
            if recognize(&t).accepted {
                check_multi_output(&t).map_err(|e| format!("{e}\n{}", write_tree(&t)))?;
                n += 1;
            }
        }
    }
    let mut rng = sample::rng(0x5eed_0008);
    for _ in 0..250 {
        let t = sample::accepted_multi_color(&mut rng, 40, 6);
        check_multi_output(&t).map_err(|e| format!("{e}\n{}", write_tree(&t)))?;
        n += 1;
    }
    Ok(format!("{n} realizations"))
}

type Criterion = (&'static str, fn() -> Result<String, Fail>);

enum Fail {
    Bug(String),
    /// Shown impossible for every diagram, not just for this construction.
    Unattainable(String),
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence, two colors, up to 5 vertices", || criterion_1().map_err(Fail::Bug)),
        ("oracle equivalence, three colors, up to 5 vertices", || criterion_2().map_err(Fail::Bug)),
        ("roundtrip of 500 random accepted trees", || criterion_3().map_err(Fail::Bug)),
        ("semisymmetry and tallies on 10000 random diagrams", || criterion_4().map_err(Fail::Bug)),
        ("three-heavy-bough stars", || criterion_5().map_err(Fail::Bug)),
        ("spine parity family", || criterion_6().map_err(Fail::Bug)),
        ("light boughs are shares", criterion_7),
        ("multi-color realization structure", || criterion_8().map_err(Fail::Bug)),
    ];
    let mut broken = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(Fail::Bug(detail)) => {
                broken += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1}s)\n{detail}", i + 1);
            }
            Err(Fail::Unattainable(detail)) => {
                println!("criterion {}: FAIL  {name}, unattainable for any diagram ({secs:.1}s)\n{detail}", i + 1);
            }
        }
    }
    // a criterion that no diagram can meet is reported above but does not
    // fail the run; anything else does
    if broken == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
