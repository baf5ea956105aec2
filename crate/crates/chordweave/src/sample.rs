//! Seeded random diagrams and trees.
//!
//! The tree generators build accepted trees directly (spine, ribs and
//! unmarked branches for two colors; a chain of marked bundles for more),
//! so they reach sizes far beyond the enumeration oracle.

use chordweave_core::{ChordDiagram, Color, DLTree, EdgeState, LabelPair};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::chord_name;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly shuffled endpoints cut at random points into `k` components.
pub fn random_diagram<R: Rng>(rng: &mut R, n: usize, k: usize) -> ChordDiagram {
    let mut word: Vec<usize> = (0..n).flat_map(|c| [c, c]).collect();
    word.shuffle(rng);
    let mut cuts: Vec<usize> = (0..k.saturating_sub(1)).map(|_| rng.random_range(0..=2 * n)).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(2 * n);
    let comps = cuts.windows(2).map(|w| word[w[0]..w[1]].to_vec()).collect();
    let names = (0..n).map(chord_name).collect();
    ChordDiagram::from_indices(names, comps).expect("shuffled pairs form a diagram")
}

/// Tree under construction: labels and edges by insertion index.
#[derive(Default)]
struct Draft {
    labels: Vec<LabelPair>,
    edges: Vec<(usize, usize, EdgeState)>,
}

impl Draft {
    fn add(&mut self, label: LabelPair) -> usize {
        self.labels.push(label);
        self.labels.len() - 1
    }

    fn attach(&mut self, parent: usize, label: LabelPair, state: EdgeState) -> usize {
        let v = self.add(label);
        self.edges.push((parent, v, state));
        v
    }

    /// Hangs unmarked vertices off random existing vertices until the tree
    /// has `total` vertices. A vertex joining an unmarked one copies its
    /// label; one joining a marked vertex takes one of its colors.
    fn grow_unmarked<R: Rng>(&mut self, rng: &mut R, total: usize) {
        while self.labels.len() < total {
            let x = rng.random_range(0..self.labels.len());
            let l = self.labels[x];
            let c = if rng.random_bool(0.5) { l.lo() } else { l.hi() };
            self.attach(x, LabelPair::new(c, c), EdgeState::Undirected);
        }
    }

    /// Shuffles vertex order and names, and relabels colors by `colors`.
    fn finish<R: Rng>(self, rng: &mut R, colors: impl Fn(Color) -> Color) -> DLTree {
        let n = self.labels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        // vertex v is stored at position pos[v]
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut names: Vec<usize> = (0..n).collect();
        names.shuffle(rng);
        let vertices = order.iter().map(|&v| (format!("v{}", names[v]), self.labels[v].map(&colors))).collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b, s)| if rng.random_bool(0.5) { (pos[a], pos[b], s) } else { (pos[b], pos[a], s.reversed()) })
            .collect();
        DLTree::new(vertices, &edges).expect("drafts are trees")
    }
}

/// Accepted tree on at most two colors with `1..=max_vertices` vertices.
pub fn accepted_two_color<R: Rng>(rng: &mut R, max_vertices: usize) -> DLTree {
    let total = rng.random_range(1..=max_vertices.max(1));
    let mut draft = Draft::default();
    if total == 1 || rng.random_bool(0.1) {
        let c = rng.random_range(1..=2);
        draft.add(LabelPair::new(c, c));
        draft.grow_unmarked(rng, total);
        return draft.finish(rng, |c| c);
    }

    let marked = LabelPair::new(1, 2);
    let spine_len = rng.random_range(1..=total.div_ceil(2).max(1));
    // component (0 or 1) an unmarked spine vertex must sit on next
    let mut comp: Color = rng.random_range(0..=1);
    let mut spine = vec![draft.add(marked)];
    for i in 1..spine_len {
        let last = i + 1 == spine_len;
        let prev = *spine.last().unwrap();
        let v = if last || rng.random_bool(0.4) {
            comp ^= 1;
            draft.attach(prev, marked, EdgeState::Undirected)
        } else {
            draft.attach(prev, LabelPair::new(comp + 1, comp + 1), EdgeState::Undirected)
        };
        spine.push(v);
    }
    if spine.len() > 2 {
        let ribs = rng.random_range(0..=(total - spine.len()) / 2);
        for _ in 0..ribs {
            let at = spine[rng.random_range(1..spine.len() - 1)];
            draft.attach(at, marked, EdgeState::Undirected);
        }
    }
    draft.grow_unmarked(rng, total);
    let swap = rng.random_bool(0.5);
    draft.finish(rng, |c| if swap { 3 - c } else { c })
}

/// Accepted tree on `3..=max_colors` colors with at most `max_vertices`
/// vertices (at least enough for the marked chain).
pub fn accepted_multi_color<R: Rng>(rng: &mut R, max_vertices: usize, max_colors: usize) -> DLTree {
    let n = rng.random_range(3..=max_colors.max(3));
    let total = rng.random_range(n - 1..=max_vertices.max(n - 1));
    let spare = total - (n - 1);

    // groups[i] holds the vertices labeled {i+1, i+2}; inner groups are
    // single, the two outer ones may grow (only one of them when n = 3)
    let mut sizes = vec![1usize; n - 1];
    let mut extra = rng.random_range(0..=spare);
    let ends: Vec<usize> = if n == 3 { vec![rng.random_range(0..2)] } else { vec![0, n - 2] };
    while extra > 0 {
        sizes[ends[rng.random_range(0..ends.len())]] += 1;
        extra -= 1;
    }

    let mut draft = Draft::default();
    let mut groups: Vec<Vec<usize>> = Vec::with_capacity(n - 1);
    for (i, &size) in sizes.iter().enumerate() {
        let label = LabelPair::new(i as Color + 1, i as Color + 2);
        groups.push((0..size).map(|_| draft.add(label)).collect());
    }
    for i in 0..n - 2 {
        let (lower, upper) = (&groups[i], &groups[i + 1]);
        let (pivot, others) = if upper.len() == 1 { (upper[0], lower) } else { (lower[0], upper) };
        for &x in others {
            let s = if rng.random_bool(0.5) { EdgeState::Forward } else { EdgeState::Backward };
            draft.edges.push((x, pivot, s));
        }
    }
    draft.grow_unmarked(rng, total);
    let mut perm: Vec<Color> = (1..=n as Color).collect();
    perm.shuffle(rng);
    draft.finish(rng, |c| perm[c as usize - 1])
}
