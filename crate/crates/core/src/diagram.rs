//! String-link chord diagrams.
//!
//! A diagram is fully determined by the order of chord endpoints along each
//! component, so it is stored as one sequence of chord indices per
//! component. Index `0` of a sequence is the bottom of the (upward oriented)
//! component.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::label::{Color, LabelPair};

/// One endpoint slot of a chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub component: Color,
    pub position: usize,
}

/// A contiguous closed run of slots `start..=end` on one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub component: Color,
    pub start: usize,
    pub end: usize,
}

impl Arc {
    pub fn contains(&self, e: Endpoint) -> bool {
        e.component == self.component && self.start <= e.position && e.position <= self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    NoComponents,
    InvalidName(String),
    DuplicateName(String),
    EndpointCount { chord: String, count: usize },
    UnknownChord(String),
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::NoComponents => f.write_str("a diagram needs at least one component"),
            DiagramError::InvalidName(n) => write!(f, "invalid chord name `{n}`"),
            DiagramError::DuplicateName(n) => write!(f, "duplicate chord name `{n}`"),
            DiagramError::EndpointCount { chord, count } => {
                write!(f, "chord `{chord}` has {count} endpoint(s), expected exactly 2")
            }
            DiagramError::UnknownChord(n) => write!(f, "unknown chord `{n}`"),
        }
    }
}

impl core::error::Error for DiagramError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    names: Vec<String>,
    components: Vec<Vec<usize>>,
    ends: Vec<[Endpoint; 2]>,
}

impl ChordDiagram {
    /// Builds a diagram from named endpoint sequences, one per component.
    /// Chord indices are assigned in order of first appearance.
    pub fn new<S: AsRef<str>>(components: &[Vec<S>]) -> Result<Self, DiagramError> {
        let mut names: Vec<String> = Vec::new();
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        let mut seqs = Vec::with_capacity(components.len());
        for comp in components {
            let mut seq = Vec::with_capacity(comp.len());
            for tok in comp {
                let tok = tok.as_ref();
                let next = names.len();
                let i = *index.entry(tok).or_insert_with(|| {
                    names.push(tok.to_string());
                    next
                });
                seq.push(i);
            }
            seqs.push(seq);
        }
        Self::from_indices(names, seqs)
    }

    /// Builds a diagram from chord indices into `names`.
    pub fn from_indices(names: Vec<String>, components: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        if components.is_empty() {
            return Err(DiagramError::NoComponents);
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !crate::is_valid_id(n) {
                return Err(DiagramError::InvalidName(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(DiagramError::DuplicateName(n.clone()));
            }
        }
        let mut counts = vec![0usize; names.len()];
        for &c in components.iter().flatten() {
            match counts.get_mut(c) {
                Some(k) => *k += 1,
                None => return Err(DiagramError::UnknownChord(c.to_string())),
            }
        }
        if let Some((i, &count)) = counts.iter().enumerate().find(|(_, &k)| k != 2) {
            return Err(DiagramError::EndpointCount { chord: names[i].clone(), count });
        }
        let ends = endpoints_of(&components, names.len());
        Ok(ChordDiagram { names, components, ends })
    }

    /// A diagram with `k` empty components.
    pub fn empty(k: usize) -> Result<Self, DiagramError> {
        Self::from_indices(Vec::new(), vec![Vec::new(); k])
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Number of chords (the degree of the diagram).
    pub fn degree(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, chord: usize) -> &str {
        &self.names[chord]
    }

    pub fn chord_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Endpoint sequence of component `color` (1-based).
    pub fn sequence(&self, color: Color) -> &[usize] {
        &self.components[color as usize - 1]
    }

    pub fn sequences(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Both endpoints of a chord, lower component (then lower position) first.
    pub fn endpoints(&self, chord: usize) -> [Endpoint; 2] {
        self.ends[chord]
    }

    pub fn label(&self, chord: usize) -> LabelPair {
        let [a, b] = self.ends[chord];
        LabelPair::new(a.component, b.component)
    }

    pub fn labels(&self) -> Vec<LabelPair> {
        (0..self.degree()).map(|c| self.label(c)).collect()
    }

    /// The unordered pair of components carrying the endpoints of `name`.
    pub fn chord_label(&self, name: &str) -> Result<LabelPair, DiagramError> {
        self.chord_index(name)
            .map(|c| self.label(c))
            .ok_or_else(|| DiagramError::UnknownChord(name.to_string()))
    }

    /// Graph on the colors with an edge `{i, j}`, `i != j`, whenever some
    /// chord joins components `i` and `j`.
    pub fn connection_graph(&self) -> ColorGraph {
        let mut g = ColorGraph::with_colors(1..=self.component_count() as Color);
        for c in 0..self.degree() {
            let l = self.label(c);
            if l.is_marked() {
                g.add_edge(l.lo(), l.hi());
            }
        }
        g
    }

    /// A diagram is connected when its components cannot be split into two
    /// nonempty groups with every chord inside one group.
    pub fn is_connected(&self) -> bool {
        self.connection_graph().is_connected()
    }

    /// Maximal runs of consecutive slots all occupied by chords of `set`.
    pub fn runs(&self, set: &[usize]) -> Vec<Arc> {
        let member: BTreeSet<usize> = set.iter().copied().collect();
        let mut runs = Vec::new();
        for (ci, seq) in self.components.iter().enumerate() {
            let mut start = None;
            for (pos, chord) in seq.iter().enumerate() {
                match (member.contains(chord), start) {
                    (true, None) => start = Some(pos),
                    (false, Some(s)) => {
                        runs.push(Arc { component: ci as Color + 1, start: s, end: pos - 1 });
                        start = None;
                    }
                    _ => {}
                }
            }
            if let Some(s) = start {
                runs.push(Arc { component: ci as Color + 1, start: s, end: seq.len() - 1 });
            }
        }
        runs
    }

    /// Whether the chords in `set` form a share: two arcs hold every
    /// endpoint of `set` and no endpoint of any other chord.
    ///
    /// Any arc free of foreign endpoints lies inside one maximal run of
    /// `set`-slots, so a share exists iff there are at most two such runs
    /// (a single run can always be split in two, since it holds at least
    /// both endpoints of one chord).
    pub fn is_share(&self, set: &[usize]) -> bool {
        !set.is_empty() && self.runs(set).len() <= 2
    }

    /// Encoding that is invariant under chord renaming; components keep
    /// their colors.
    pub fn canonical(&self) -> String {
        let mut relabel = vec![usize::MAX; self.degree()];
        let mut next = 0;
        let mut out = String::new();
        for (ci, seq) in self.components.iter().enumerate() {
            if ci > 0 {
                out.push('|');
            }
            for (pos, &c) in seq.iter().enumerate() {
                if relabel[c] == usize::MAX {
                    relabel[c] = next;
                    next += 1;
                }
                if pos > 0 {
                    out.push(' ');
                }
                push_usize(&mut out, relabel[c]);
            }
        }
        out
    }

    /// The same diagram with every component's orientation reversed.
    pub fn reversed(&self) -> ChordDiagram {
        let comps = self
            .components
            .iter()
            .map(|s| s.iter().rev().copied().collect())
            .collect();
        ChordDiagram::from_indices(self.names.clone(), comps).expect("reversal preserves validity")
    }
}

/// Canonical string of a diagram up to chord renaming.
pub fn canonical_diagram(d: &ChordDiagram) -> String {
    d.canonical()
}

fn endpoints_of(components: &[Vec<usize>], n: usize) -> Vec<[Endpoint; 2]> {
    let none = Endpoint { component: 0, position: 0 };
    let mut ends = vec![[none; 2]; n];
    let mut filled = vec![0u8; n];
    for (ci, seq) in components.iter().enumerate() {
        for (pos, &c) in seq.iter().enumerate() {
            ends[c][filled[c] as usize] = Endpoint { component: ci as Color + 1, position: pos };
            filled[c] += 1;
        }
    }
    ends
}

fn push_usize(out: &mut String, v: usize) {
    use core::fmt::Write;
    let _ = write!(out, "{v}");
}

/// Simple undirected graph on a set of colors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColorGraph {
    colors: BTreeSet<Color>,
    edges: BTreeSet<(Color, Color)>,
}

/// Why a color graph is not a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathFailure {
    /// A color with three or more neighbors.
    Branching(Color),
    /// Colors not reachable from the first color.
    Disconnected(Vec<Color>),
    /// Every color has degree two.
    Cycle,
    Empty,
}

impl ColorGraph {
    pub fn with_colors(colors: impl IntoIterator<Item = Color>) -> Self {
        ColorGraph { colors: colors.into_iter().collect(), edges: BTreeSet::new() }
    }

    pub fn add_edge(&mut self, a: Color, b: Color) {
        if a == b {
            return;
        }
        self.colors.insert(a);
        self.colors.insert(b);
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn n_colors(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        self.colors.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Color, Color)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: Color, b: Color) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, c: Color) -> Vec<Color> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == c { Some(b) } else if b == c { Some(a) } else { None })
            .collect()
    }

    pub fn degree(&self, c: Color) -> usize {
        self.neighbors(c).len()
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.colors.iter().next() else { return true };
        self.reachable(start).len() == self.colors.len()
    }

    fn reachable(&self, start: Color) -> BTreeSet<Color> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            if seen.insert(c) {
                stack.extend(self.neighbors(c));
            }
        }
        seen
    }

    /// The colors in path order if the graph is a path through all of them,
    /// starting from the smaller endpoint.
    pub fn path_order(&self) -> Result<Vec<Color>, PathFailure> {
        let Some(&first) = self.colors.iter().next() else { return Err(PathFailure::Empty) };
        if let Some(c) = self.colors.iter().copied().find(|&c| self.degree(c) > 2) {
            return Err(PathFailure::Branching(c));
        }
        let reach = self.reachable(first);
        if reach.len() != self.colors.len() {
            let missing = self.colors.iter().copied().filter(|c| !reach.contains(c)).collect();
            return Err(PathFailure::Disconnected(missing));
        }
        if self.colors.len() == 1 {
            return Ok(vec![first]);
        }
        let Some(start) = self.colors.iter().copied().find(|&c| self.degree(c) == 1) else {
            return Err(PathFailure::Cycle);
        };
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = self.neighbors(cur).into_iter().find(|&n| Some(n) != prev);
            match next {
                Some(n) => {
                    prev = Some(cur);
                    cur = n;
                    order.push(n);
                }
                None => break,
            }
        }
        Ok(order)
    }
}
