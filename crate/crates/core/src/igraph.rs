//! Intersection graph of a chord diagram.
//!
//! For chords `v` and `w`, every pair of endpoints `(e1, e2)` lying on a
//! common component contributes a directed edge from the lower endpoint's
//! chord to the upper one's. Edges in each direction are counted mod 2, so
//! the pair collapses to one of four [`EdgeState`]s.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::ChordDiagram;
use crate::label::{EdgeState, LabelPair};

/// Labeled directed graph with at most one [`EdgeState`] per vertex pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntersectionGraph {
    names: Vec<String>,
    labels: Vec<LabelPair>,
    // key (a, b) with a < b; state relative to a -> b; `None` never stored
    edges: BTreeMap<(usize, usize), EdgeState>,
}

impl IntersectionGraph {
    pub fn new(vertices: Vec<(String, LabelPair)>) -> Self {
        let (names, labels) = vertices.into_iter().unzip();
        IntersectionGraph { names, labels, edges: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labels(&self) -> &[LabelPair] {
        &self.labels
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sets the state of `a -> b`. Self-loops are ignored.
    pub fn set_edge(&mut self, a: usize, b: usize, state: EdgeState) {
        if a == b {
            return;
        }
        let (key, state) = if a < b { ((a, b), state) } else { ((b, a), state.reversed()) };
        if state == EdgeState::None {
            self.edges.remove(&key);
        } else {
            self.edges.insert(key, state);
        }
    }

    /// State of the pair as seen along `a -> b`.
    pub fn edge(&self, a: usize, b: usize) -> EdgeState {
        if a < b {
            self.edges.get(&(a, b)).copied().unwrap_or_default()
        } else {
            self.edges.get(&(b, a)).copied().unwrap_or_default().reversed()
        }
    }

    /// Non-`None` edges as `(a, b, state)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeState)> + '_ {
        self.edges.iter().map(|(&(a, b), &s)| (a, b, s))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Every vertex labeled `{i,i}` has only undirected (or no) edges.
    pub fn is_semisymmetric(&self) -> bool {
        self.edges().all(|(a, b, s)| {
            !s.is_directed() || (self.labels[a].is_marked() && self.labels[b].is_marked())
        })
    }
}

/// Parities of the directed tallies: entry `a * n + b` is set iff an odd
/// number of endpoint pairs has `a`'s endpoint below `b`'s on a shared
/// component.
pub fn tally_parities(sequences: &[Vec<usize>], chord_count: usize) -> Vec<bool> {
    let n = chord_count;
    let mut parity = vec![false; n * n];
    for seq in sequences {
        for (i, &a) in seq.iter().enumerate() {
            for &b in &seq[i + 1..] {
                if a != b {
                    parity[a * n + b] ^= true;
                }
            }
        }
    }
    parity
}

/// Intersection graph of `d`. Vertices reuse the chord names and indices.
pub fn gamma(d: &ChordDiagram) -> IntersectionGraph {
    let n = d.degree();
    let parity = tally_parities(d.sequences(), n);
    let mut g = IntersectionGraph {
        names: d.names().to_vec(),
        labels: d.labels(),
        edges: BTreeMap::new(),
    };
    for a in 0..n {
        for b in a + 1..n {
            let s = EdgeState::from_parities(parity[a * n + b], parity[b * n + a]);
            if s != EdgeState::None {
                g.edges.insert((a, b), s);
            }
        }
    }
    g
}

/// Raw directed tallies `(v -> w, w -> v)` between two chords, before
/// cancellation.
pub fn pair_tallies(d: &ChordDiagram, v: usize, w: usize) -> (u32, u32) {
    let mut fwd = 0;
    let mut bwd = 0;
    for ev in d.endpoints(v) {
        for ew in d.endpoints(w) {
            if ev.component == ew.component {
                if ev.position < ew.position {
                    fwd += 1;
                } else {
                    bwd += 1;
                }
            }
        }
    }
    (fwd, bwd)
}

/// Total number of directed edges, before cancellation, between chords
/// labeled `v` and `w`: occurrences of `v`'s two colors in `w`, summed.
pub fn raw_edge_count(v: LabelPair, w: LabelPair) -> u32 {
    w.count(v.lo()) + w.count(v.hi())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(comps: &[&str]) -> ChordDiagram {
        let v: Vec<Vec<&str>> = comps.iter().map(|s| s.split_whitespace().collect()).collect();
        ChordDiagram::new(&v).unwrap()
    }

    fn state(g: &IntersectionGraph, a: &str, b: &str) -> EdgeState {
        g.edge(g.index_of(a).unwrap(), g.index_of(b).unwrap())
    }

    #[test]
    fn single_chord() {
        let g = gamma(&d(&["a a"]));
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.labels()[0], LabelPair::new(1, 1));
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn one_component_pairs() {
        assert_eq!(state(&gamma(&d(&["a b a b"])), "a", "b"), EdgeState::Undirected);
        assert_eq!(state(&gamma(&d(&["a a b b"])), "a", "b"), EdgeState::None);
        assert_eq!(state(&gamma(&d(&["a b b a"])), "a", "b"), EdgeState::None);
    }

    #[test]
    fn marked_pairs() {
        assert_eq!(state(&gamma(&d(&["a b", "a b"])), "a", "b"), EdgeState::None);
        assert_eq!(state(&gamma(&d(&["a b", "b a"])), "a", "b"), EdgeState::Undirected);
    }

    #[test]
    fn three_components_give_a_directed_edge() {
        let g = gamma(&d(&["x", "x y", "y"]));
        assert_eq!(state(&g, "x", "y"), EdgeState::Forward);
        assert_eq!(state(&g, "y", "x"), EdgeState::Backward);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn raw_counts() {
        let l = LabelPair::new;
        assert_eq!(raw_edge_count(l(1, 1), l(2, 2)), 0);
        assert_eq!(raw_edge_count(l(1, 2), l(2, 3)), 1);
        assert_eq!(raw_edge_count(l(1, 1), l(1, 1)), 4);
        assert_eq!(raw_edge_count(l(1, 2), l(1, 2)), 2);
        assert_eq!(raw_edge_count(l(1, 1), l(1, 2)), 2);
    }

    #[test]
    fn semisymmetry() {
        assert!(IntersectionGraph::default().is_semisymmetric());
        let mut g = IntersectionGraph::new(vec![
            ("v".into(), LabelPair::new(1, 1)),
            ("w".into(), LabelPair::new(1, 2)),
        ]);
        g.set_edge(0, 1, EdgeState::Forward);
        assert!(!g.is_semisymmetric());
        g.set_edge(1, 0, EdgeState::Undirected);
        assert!(g.is_semisymmetric());
        assert!(gamma(&d(&["a b c a", "b c"])).is_semisymmetric());
    }
}
