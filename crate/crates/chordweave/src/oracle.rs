//! Exhaustive ground truth at small sizes.
//!
//! Every diagram with `n` chords on `k` components is produced exactly once
//! up to chord renaming: a canonical word (chords numbered by first
//! occurrence) over `2n` slots, cut into `k` consecutive, possibly empty,
//! pieces. The census keeps the canonical forms of all intersection graphs
//! that are trees.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use chordweave_core::{
    gamma, realize, recognize, tree::tree_iso, ChordDiagram, Color, DLTree, EdgeState, LabelPair,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::{write_tree, FormatError};

pub const MAX_CHORDS: usize = 6;
pub const MAX_COMPONENTS: usize = 4;
pub const OVERRIDE_ENV: &str = "CHORDWEAVE_GUARD_OVERRIDE";

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error(
    "{chords} chords on {components} components is past the oracle limits \
     ({MAX_CHORDS} chords, {MAX_COMPONENTS} components); \
     pass --override-guard or set {OVERRIDE_ENV}=1"
)]
pub struct GuardError {
    pub chords: usize,
    pub components: usize,
}

pub fn env_override() -> bool {
    std::env::var(OVERRIDE_ENV).is_ok_and(|v| v == "1")
}

pub fn check_guard(chords: usize, components: usize, allow_large: bool) -> Result<(), GuardError> {
    if allow_large || (chords <= MAX_CHORDS && components <= MAX_COMPONENTS) {
        Ok(())
    } else {
        Err(GuardError { chords, components })
    }
}

/// Chord names used for enumerated diagrams: `a`..`z`, then `c26`, ...
pub fn chord_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("c{i}")
    }
}

/// All words over `0..n` where each symbol occurs twice and first
/// occurrences come in increasing order. There are `(2n-1)!!` of them.
pub fn pairings(n: usize) -> Vec<Vec<u8>> {
    fn grow(word: &mut Vec<u8>, count: &mut [u8], opened: usize, n: usize, out: &mut Vec<Vec<u8>>) {
        if word.len() == 2 * n {
            out.push(word.clone());
            return;
        }
        if opened < n {
            word.push(opened as u8);
            count[opened] = 1;
            grow(word, count, opened + 1, n, out);
            count[opened] = 0;
            word.pop();
        }
        for c in 0..opened {
            if count[c] == 1 {
                word.push(c as u8);
                count[c] = 2;
                grow(word, count, opened, n, out);
                count[c] = 1;
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::with_capacity(2 * n), &mut vec![0; n], 0, n, &mut out);
    out
}

/// Boundaries `0 = b0 <= b1 <= ... <= bk = len` splitting a word into `k`
/// components.
pub fn cuts(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn grow(cur: &mut Vec<usize>, len: usize, k: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            let mut c = cur.clone();
            c.push(len);
            out.push(c);
            return;
        }
        let from = *cur.last().unwrap();
        for b in from..=len {
            cur.push(b);
            grow(cur, len, k, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    grow(&mut vec![0], len, k, &mut out);
    out
}

/// Every diagram with `n` chords on `k` components, once each up to chord
/// renaming. Not guarded; the count grows like `(2n-1)!! * C(2n+k-1, k-1)`.
pub fn enumerate_diagrams(n: usize, k: usize) -> impl Iterator<Item = ChordDiagram> {
    let names: Vec<String> = (0..n).map(chord_name).collect();
    let cuts = cuts(2 * n, k);
    pairings(n).into_iter().flat_map(move |word| {
        let names = names.clone();
        cuts.clone().into_iter().map(move |c| {
            let comps = c.windows(2).map(|w| word[w[0]..w[1]].iter().map(|&x| x as usize).collect()).collect();
            ChordDiagram::from_indices(names.clone(), comps).expect("enumerated diagrams are valid")
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub chords: usize,
    pub components: usize,
    pub connected_only: bool,
    /// Diagrams enumerated.
    pub diagrams: u64,
    /// Of those, diagrams whose components are connected by chords.
    pub connected: u64,
    /// Diagrams kept (after the connectivity filter) whose graph is a tree.
    pub tree_diagrams: u64,
    /// Canonical forms of the tree graphs.
    pub entries: BTreeSet<String>,
}

#[derive(Serialize, Deserialize)]
struct CensusHeader {
    schema: u32,
    tool: String,
    chords: usize,
    components: usize,
    connected_only: bool,
    diagrams: u64,
    connected: u64,
    tree_diagrams: u64,
    entries: usize,
}

impl CensusTable {
    pub fn contains(&self, canonical: &str) -> bool {
        self.entries.contains(canonical)
    }

    /// One JSON header line, then the sorted entries, one per line.
    pub fn to_text(&self) -> String {
        let header = CensusHeader {
            schema: crate::json::SCHEMA,
            tool: concat!("chordweave ", env!("CARGO_PKG_VERSION")).to_string(),
            chords: self.chords,
            components: self.components,
            connected_only: self.connected_only,
            diagrams: self.diagrams,
            connected: self.connected,
            tree_diagrams: self.tree_diagrams,
            entries: self.entries.len(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for e in &self.entries {
            out.push_str(e);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, FormatError> {
        let mut lines = text.lines();
        let header: CensusHeader = serde_json::from_str(lines.next().unwrap_or(""))?;
        let entries: BTreeSet<String> = lines.filter(|l| !l.is_empty()).map(str::to_string).collect();
        if entries.len() != header.entries {
            return Err(FormatError::Invalid(format!(
                "census header announces {} entries, found {}",
                header.entries,
                entries.len()
            )));
        }
        Ok(CensusTable {
            chords: header.chords,
            components: header.components,
            connected_only: header.connected_only,
            diagrams: header.diagrams,
            connected: header.connected,
            tree_diagrams: header.tree_diagrams,
            entries,
        })
    }
}

#[derive(Default)]
struct Partial {
    diagrams: u64,
    connected: u64,
    tree_diagrams: u64,
    entries: HashSet<String>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn census_chunk(words: &[Vec<u8>], n: usize, k: usize, cuts: &[Vec<usize>], connected_only: bool) -> Partial {
    let names: Vec<String> = (0..n).map(chord_name).collect();
    let mut part = Partial::default();
    let mut comp_of = vec![0usize; 2 * n];
    let mut ends = vec![[usize::MAX; 2]; n];
    let mut parity = vec![0u64; n];
    let mut parent = vec![0usize; n.max(k)];
    for word in words {
        for cut in cuts {
            part.diagrams += 1;
            for c in 0..k {
                comp_of[cut[c]..cut[c + 1]].fill(c);
            }
            for e in ends.iter_mut() {
                *e = [usize::MAX; 2];
            }
            for (slot, &x) in word.iter().enumerate() {
                let e = &mut ends[x as usize];
                if e[0] == usize::MAX {
                    e[0] = comp_of[slot];
                } else {
                    e[1] = comp_of[slot];
                }
            }

            // components joined by chords
            for (i, p) in parent.iter_mut().enumerate().take(k) {
                *p = i;
            }
            let mut joined = 1;
            for e in &ends {
                let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
                if a != b {
                    parent[a] = b;
                    joined += 1;
                }
            }
            let connected = joined == k;
            if connected {
                part.connected += 1;
            } else if connected_only {
                continue;
            }

            parity.iter_mut().for_each(|p| *p = 0);
            for c in 0..k {
                let seq = &word[cut[c]..cut[c + 1]];
                for (j, &b) in seq.iter().enumerate() {
                    for &a in &seq[..j] {
                        if a != b {
                            parity[a as usize] ^= 1 << b;
                        }
                    }
                }
            }
            let mut edges = Vec::with_capacity(n);
            for a in 0..n {
                for b in a + 1..n {
                    let s = EdgeState::from_parities(parity[a] >> b & 1 == 1, parity[b] >> a & 1 == 1);
                    if s != EdgeState::None {
                        edges.push((a, b, s));
                    }
                }
            }
            if edges.len() + 1 != n {
                continue;
            }
            for (i, p) in parent.iter_mut().enumerate().take(n) {
                *p = i;
            }
            let mut acyclic = true;
            for &(a, b, _) in &edges {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    acyclic = false;
                    break;
                }
                parent[ra] = rb;
            }
            if !acyclic {
                continue;
            }
            part.tree_diagrams += 1;
            let vertices = names
                .iter()
                .zip(&ends)
                .map(|(nm, e)| (nm.clone(), LabelPair::new(e[0] as Color + 1, e[1] as Color + 1)))
                .collect();
            let t = DLTree::new(vertices, &edges).expect("acyclic with n-1 edges is a tree");
            part.entries.insert(t.canonical());
        }
    }
    part
}

/// Census of tree intersection graphs over all diagrams with `n` chords on
/// `k` components, optionally only connected ones, split over `jobs`
/// threads.
pub fn census(
    n: usize,
    k: usize,
    connected_only: bool,
    jobs: usize,
    allow_large: bool,
) -> Result<CensusTable, GuardError> {
    check_guard(n, k, allow_large)?;
    assert!(n <= 64, "parity rows are 64-bit");
    let words = pairings(n);
    let cuts = cuts(2 * n, k);
    let jobs = jobs.max(1);
    let chunk = words.len().div_ceil(jobs).max(1);
    let parts: Vec<Partial> = if jobs == 1 || k == 0 {
        vec![census_chunk(&words, n, k, &cuts, connected_only)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = words
                .chunks(chunk)
                .map(|ws| {
                    let cuts = &cuts;
                    s.spawn(move || census_chunk(ws, n, k, cuts, connected_only))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
        })
    };
    let mut table = CensusTable {
        chords: n,
        components: k,
        connected_only,
        diagrams: 0,
        connected: 0,
        tree_diagrams: 0,
        entries: BTreeSet::new(),
    };
    for p in parts {
        table.diagrams += p.diagrams;
        table.connected += p.connected;
        table.tree_diagrams += p.tree_diagrams;
        table.entries.extend(p.entries);
    }
    Ok(table)
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(p: &mut [Color]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Caches census tables and answers membership questions.
pub struct Oracle {
    jobs: usize,
    allow_large: bool,
    tables: Mutex<HashMap<(usize, usize, bool), Arc<CensusTable>>>,
}

impl Oracle {
    pub fn new(jobs: usize, allow_large: bool) -> Self {
        Oracle { jobs, allow_large, tables: Mutex::new(HashMap::new()) }
    }

    pub fn census(&self, n: usize, k: usize, connected_only: bool) -> Result<Arc<CensusTable>, GuardError> {
        let mut tables = self.tables.lock().expect("census cache poisoned");
        if let Some(t) = tables.get(&(n, k, connected_only)) {
            return Ok(Arc::clone(t));
        }
        let t = Arc::new(census(n, k, connected_only, self.jobs, self.allow_large)?);
        tables.insert((n, k, connected_only), Arc::clone(&t));
        Ok(t)
    }

    /// The table `t` is looked up in: all two-component diagrams for at
    /// most two colors, connected `c`-component diagrams for `c >= 3`.
    pub fn table_for(&self, t: &DLTree) -> Result<Arc<CensusTable>, GuardError> {
        let c = t.colors().len();
        if c <= 2 {
            self.census(t.len(), 2, false)
        } else {
            self.census(t.len(), c, true)
        }
    }

    /// Whether some diagram has intersection graph `t`, up to the color
    /// permutations the characterizations allow. Colors are compacted to
    /// `1..=c` first.
    pub fn accepts(&self, t: &DLTree) -> Result<bool, GuardError> {
        let colors: Vec<Color> = t.colors().into_iter().collect();
        let compact = t.map_colors(|x| colors.iter().position(|&y| y == x).unwrap() as Color + 1);
        let table = self.table_for(t)?;
        if colors.len() <= 2 {
            let swapped = compact.map_colors(|x| 3 - x);
            return Ok(table.contains(&compact.canonical()) || table.contains(&swapped.canonical()));
        }
        let mut perm: Vec<Color> = (1..=colors.len() as Color).collect();
        loop {
            let relabeled = compact.map_colors(|x| perm[x as usize - 1]);
            if table.contains(&relabeled.canonical()) {
                return Ok(true);
            }
            if !next_permutation(&mut perm) {
                return Ok(false);
            }
        }
    }
}

/// One-shot oracle query honoring the environment override.
pub fn oracle_recognize(t: &DLTree) -> Result<bool, GuardError> {
    Oracle::new(1, env_override()).accepts(t)
}

/// Unlabeled trees on `v` vertices, one per isomorphism class, as edge
/// lists.
pub fn tree_shapes(v: usize) -> Vec<Vec<(usize, usize)>> {
    if v == 0 {
        return Vec::new();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut parent = vec![0usize; v];
    loop {
        let edges: Vec<(usize, usize)> = (1..v).map(|i| (parent[i], i)).collect();
        let vertices = (0..v).map(|i| (format!("v{i}"), LabelPair::new(1, 1))).collect();
        let undirected: Vec<_> = edges.iter().map(|&(a, b)| (a, b, EdgeState::Undirected)).collect();
        let t = DLTree::new(vertices, &undirected).expect("parent arrays give trees");
        if seen.insert(t.canonical()) {
            out.push(edges);
        }
        // odometer over parent[i] in 0..i
        let mut i = v;
        loop {
            i -= 1;
            if i == 0 {
                return out;
            }
            if parent[i] + 1 < i {
                parent[i] += 1;
                break;
            }
            parent[i] = 0;
        }
    }
}

/// All labels `{i,j}` with `1 <= i <= j <= colors`.
pub fn labels(colors: Color) -> Vec<LabelPair> {
    (1..=colors).flat_map(|i| (i..=colors).map(move |j| LabelPair::new(i, j))).collect()
}

/// Every labeled directed tree on exactly `v` vertices with labels over
/// `1..=colors`, one per isomorphism class. With `exact`, only trees using
/// all `colors` colors.
pub fn labeled_trees(v: usize, colors: Color, exact: bool) -> Vec<DLTree> {
    let pool = labels(colors);
    let names: Vec<String> = (0..v).map(|i| format!("v{i}")).collect();
    let states = [EdgeState::Forward, EdgeState::Backward, EdgeState::Undirected];
    let mut out = Vec::new();
    for shape in tree_shapes(v) {
        let mut seen = HashSet::new();
        let mut digits = vec![0usize; v];
        loop {
            let chosen: Vec<LabelPair> = digits.iter().map(|&d| pool[d]).collect();
            let used: BTreeSet<Color> = chosen.iter().flat_map(|l| [l.lo(), l.hi()]).collect();
            if !exact || used.len() == colors as usize {
                let vertices: Vec<(String, LabelPair)> = names.iter().cloned().zip(chosen).collect();
                for code in 0..3usize.pow(shape.len() as u32) {
                    let mut c = code;
                    let edges: Vec<_> = shape
                        .iter()
                        .map(|&(a, b)| {
                            let s = states[c % 3];
                            c /= 3;
                            (a, b, s)
                        })
                        .collect();
                    let t = DLTree::new(vertices.clone(), &edges).expect("shapes are trees");
                    if seen.insert(t.canonical()) {
                        out.push(t);
                    }
                }
            }
            // odometer over label choices
            let mut i = 0;
            loop {
                if i == v {
                    break;
                }
                digits[i] += 1;
                if digits[i] < pool.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == v {
                break;
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CrossConfig {
    pub max_vertices: usize,
    pub colors: Color,
    /// Only trees using every color.
    pub exact_colors: bool,
    pub jobs: usize,
    pub allow_large: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// The tree in `.tree` format.
    pub tree: String,
    pub recognized: bool,
    pub oracle: bool,
    pub code: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossReport {
    pub trees: usize,
    pub accepted: usize,
    pub mismatches: Vec<Mismatch>,
    /// Accepted trees whose realization does not reproduce them, with the
    /// reason.
    pub roundtrip_failures: Vec<(String, String)>,
}

impl CrossReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.roundtrip_failures.is_empty()
    }

    fn merge(&mut self, other: CrossReport) {
        self.trees += other.trees;
        self.accepted += other.accepted;
        self.mismatches.extend(other.mismatches);
        self.roundtrip_failures.extend(other.roundtrip_failures);
    }
}

/// Checks that `realize(t)` has intersection graph isomorphic to `t`.
pub fn roundtrip(t: &DLTree) -> Result<(), String> {
    let d = realize(t).map_err(|e| e.to_string())?;
    let back = DLTree::from_graph(&gamma(&d)).map_err(|e| format!("output graph is not a tree: {e}"))?;
    if tree_iso(&back, t) {
        Ok(())
    } else {
        Err("output graph is not isomorphic to the input".to_string())
    }
}

fn check_trees(trees: &[DLTree], oracle: &Oracle) -> Result<CrossReport, GuardError> {
    let mut report = CrossReport::default();
    for t in trees {
        report.trees += 1;
        let verdict = recognize(t);
        let truth = oracle.accepts(t)?;
        if verdict.accepted != truth {
            report.mismatches.push(Mismatch {
                tree: write_tree(t),
                recognized: verdict.accepted,
                oracle: truth,
                code: verdict.code(),
            });
        }
        if verdict.accepted {
            report.accepted += 1;
            if let Err(e) = roundtrip(t) {
                report.roundtrip_failures.push((write_tree(t), e));
            }
        }
    }
    Ok(report)
}

/// Compares the recognizer with the census on every labeled directed tree
/// up to `max_vertices` vertices, and roundtrips every accepted one.
pub fn cross_validate(cfg: &CrossConfig) -> Result<CrossReport, GuardError> {
    check_guard(cfg.max_vertices, cfg.colors as usize, cfg.allow_large)?;
    let oracle = Oracle::new(cfg.jobs, cfg.allow_large);
    let jobs = cfg.jobs.max(1);
    let mut report = CrossReport::default();
    for v in 1..=cfg.max_vertices {
        let trees = labeled_trees(v, cfg.colors, cfg.exact_colors);
        // build the tables up front so workers only read
        let mut needed = BTreeSet::new();
        for t in &trees {
            needed.insert(t.colors().len().max(2));
        }
        for c in needed {
            oracle.census(v, c, c > 2)?;
        }
        let chunk = trees.len().div_ceil(jobs).max(1);
        let parts: Vec<Result<CrossReport, GuardError>> = std::thread::scope(|s| {
            let handles: Vec<_> = trees
                .chunks(chunk)
                .map(|ts| {
                    let oracle = &oracle;
                    s.spawn(move || check_trees(ts, oracle))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for p in parts {
            report.merge(p?);
        }
    }
    Ok(report)
}
