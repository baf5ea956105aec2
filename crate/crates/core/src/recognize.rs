//! Deciding whether a labeled directed tree is an intersection graph.
//!
//! Trees on at most two colors are checked against the two-component
//! characterization: every edge undirected, no vertex with three heavy
//! boughs, adjacent unmarked vertices agreeing on their label, and along the
//! spine, two unmarked vertices share a label exactly when an even number of
//! marked vertices separates them.
//!
//! Trees on three or more colors are checked against the six conditions for
//! connected diagrams, after ordering the colors along the path formed by
//! the marked labels.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{ColorGraph, PathFailure};
use crate::label::{Color, EdgeState, LabelPair};
use crate::tree::{Bough, DLTree, Spine};

/// Which characterization produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Two colors, directions and the `{1,1}`/`{2,2}` distinction ignored.
    MarkedTwo,
    /// Two colors, full labels.
    LabeledTwo,
    /// Three or more colors.
    Multi,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::MarkedTwo => "marked-2",
            Regime::LabeledTwo => "labeled-2",
            Regime::Multi => "multi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    Accepted,
    /// Two colors: some edge is strictly directed.
    DirectedEdge,
    /// Two colors: a vertex with three or more heavy boughs.
    HeavyBoughs,
    /// Two colors: adjacent unmarked vertices with different labels.
    UnmarkedLabels,
    /// Two colors: label parity along the spine is violated.
    SpineParity,
    /// Adjacent labels with no color in common.
    NoSharedColor,
    /// A directed edge at an unmarked vertex.
    NotSemisymmetric,
    /// Two marked labels `{i,j}`, `{i,k}` without a directed edge between them.
    MissingDirectedEdge,
    /// Marked labels do not form a path through all colors.
    ColorsNotConsecutive,
    /// Some interior color pair carries more than one marked vertex.
    Multiplicity,
    /// Two marked vertices joined by a path of undirected edges.
    UndirectedMarkedPath,
}

impl Reason {
    pub fn slug(self) -> &'static str {
        match self {
            Reason::Accepted => "accept",
            Reason::DirectedEdge => "directed-edge",
            Reason::HeavyBoughs => "heavy-boughs",
            Reason::UnmarkedLabels => "unmarked-labels",
            Reason::SpineParity => "spine-parity",
            Reason::NoSharedColor => "no-shared-color",
            Reason::NotSemisymmetric => "not-semisymmetric",
            Reason::MissingDirectedEdge => "missing-directed-edge",
            Reason::ColorsNotConsecutive => "colors-not-consecutive",
            Reason::Multiplicity => "multiplicity",
            Reason::UndirectedMarkedPath => "undirected-marked-path",
        }
    }

    /// Condition number within its characterization.
    pub fn condition(self) -> Option<u8> {
        match self {
            Reason::Accepted => None,
            Reason::DirectedEdge => Some(0),
            Reason::HeavyBoughs | Reason::NoSharedColor => Some(1),
            Reason::UnmarkedLabels | Reason::NotSemisymmetric => Some(2),
            Reason::SpineParity | Reason::MissingDirectedEdge => Some(3),
            Reason::ColorsNotConsecutive => Some(4),
            Reason::Multiplicity => Some(5),
            Reason::UndirectedMarkedPath => Some(6),
        }
    }
}

/// Evidence for a verdict, in vertex indices of the checked tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    Edge(usize, usize),
    HeavyBoughs { vertex: usize, boughs: Vec<Bough> },
    SpineSegment { v: usize, w: usize, segment: Vec<usize> },
    Colors(Vec<Color>),
    Vertices(Vec<usize>),
    Path(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub regime: Regime,
    pub reason: Reason,
    pub witness: Witness,
    /// Two colors: the tree's colors in the order they are renumbered to
    /// `1, 2`. Three or more: the colors along the connection path.
    pub color_order: Vec<Color>,
    /// For accepted multi-color trees: number of vertices labeled
    /// `{color_order[i], color_order[i+1]}` for each `i`.
    pub multiplicities: Vec<usize>,
}

impl Verdict {
    fn accept(regime: Regime, color_order: Vec<Color>) -> Self {
        Verdict {
            accepted: true,
            regime,
            reason: Reason::Accepted,
            witness: Witness::None,
            color_order,
            multiplicities: Vec::new(),
        }
    }

    fn reject(regime: Regime, reason: Reason, witness: Witness, color_order: Vec<Color>) -> Self {
        Verdict { accepted: false, regime, reason, witness, color_order, multiplicities: Vec::new() }
    }

    /// Stable identifier such as `labeled-2/cond3-spine-parity`.
    pub fn code(&self) -> String {
        match self.reason.condition() {
            None => format!("{}/accept", self.regime.as_str()),
            Some(n) => format!("{}/cond{}-{}", self.regime.as_str(), n, self.reason.slug()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecognizeError {
    TooManyColors(usize),
    TooFewColors(usize),
}

impl fmt::Display for RecognizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecognizeError::TooManyColors(c) => write!(f, "{c} colors present, at most 2 allowed"),
            RecognizeError::TooFewColors(c) => write!(f, "{c} colors present, at least 3 required"),
        }
    }
}

impl core::error::Error for RecognizeError {}

/// Renumbers the (at most two) colors of `t` to `1, 2` in increasing order.
fn normalize_two(t: &DLTree) -> Result<(DLTree, Vec<Color>), RecognizeError> {
    let colors: Vec<Color> = t.colors().into_iter().collect();
    if colors.len() > 2 {
        return Err(RecognizeError::TooManyColors(colors.len()));
    }
    let map = |c: Color| colors.iter().position(|&x| x == c).map_or(c, |i| i as Color + 1);
    Ok((t.map_colors(map), colors))
}

/// Two colors, marked tree: accept iff no vertex has more than two heavy
/// boughs. Edge directions and the two unmarked labels are not consulted.
pub fn check_marked_2(t: &DLTree) -> Result<Verdict, RecognizeError> {
    let (_, order) = normalize_two(t)?;
    Ok(heavy_bough_check(t, Regime::MarkedTwo).unwrap_or_else(|| Verdict::accept(Regime::MarkedTwo, order)))
}

fn heavy_bough_check(t: &DLTree, regime: Regime) -> Option<Verdict> {
    for v in 0..t.len() {
        let heavy: Vec<Bough> = t.boughs(v).into_iter().filter(|b| b.heavy).collect();
        if heavy.len() > 2 {
            let witness = Witness::HeavyBoughs { vertex: v, boughs: heavy };
            return Some(Verdict::reject(regime, Reason::HeavyBoughs, witness, Vec::new()));
        }
    }
    None
}

/// Two colors, labeled tree.
pub fn check_labeled_2(t: &DLTree) -> Result<Verdict, RecognizeError> {
    let (tn, order) = normalize_two(t)?;
    let regime = Regime::LabeledTwo;
    let reject = |reason, witness| Ok(Verdict::reject(regime, reason, witness, order.clone()));

    // two-component graphs only ever have even raw counts
    if let Some((a, b, _)) = tn.edges().into_iter().find(|e| e.2.is_directed()) {
        return reject(Reason::DirectedEdge, Witness::Edge(a, b));
    }
    if let Some(mut v) = heavy_bough_check(&tn, regime) {
        v.color_order = order;
        return Ok(v);
    }
    for (a, b, _) in tn.edges() {
        if !tn.is_marked(a) && !tn.is_marked(b) && tn.label(a) != tn.label(b) {
            return reject(Reason::UnmarkedLabels, Witness::Edge(a, b));
        }
    }
    if let Some(w) = spine_parity_violation(&tn, &tn.spine()) {
        return reject(Reason::SpineParity, w);
    }
    Ok(Verdict::accept(regime, order))
}

/// First pair of unmarked spine vertices whose labels disagree with the
/// parity of the marked vertices strictly between them.
fn spine_parity_violation(t: &DLTree, spine: &Spine) -> Option<Witness> {
    // (reference vertex, its position, marked count seen since)
    let mut reference: Option<(usize, usize)> = None;
    let mut marked_since = 0usize;
    for (pos, &v) in spine.vertices.iter().enumerate() {
        if t.is_marked(v) {
            marked_since += 1;
            continue;
        }
        match reference {
            None => {
                reference = Some((v, pos));
                marked_since = 0;
            }
            Some((r, rpos)) => {
                let same = t.label(r) == t.label(v);
                if same != marked_since.is_multiple_of(2) {
                    let segment = spine.vertices[rpos..=pos].to_vec();
                    return Some(Witness::SpineSegment { v: r, w: v, segment });
                }
            }
        }
    }
    None
}

/// Orders the colors of `t` along the path formed by its marked labels,
/// smaller end first.
pub fn color_path(t: &DLTree) -> Result<Vec<Color>, PathFailure> {
    let mut g = ColorGraph::with_colors(t.colors());
    for l in t.labels() {
        g.add_edge(l.lo(), l.hi());
    }
    g.path_order()
}

/// Three or more colors.
pub fn check_multi(t: &DLTree) -> Result<Verdict, RecognizeError> {
    let colors = t.colors();
    if colors.len() < 3 {
        return Err(RecognizeError::TooFewColors(colors.len()));
    }
    let regime = Regime::Multi;
    let reject = |reason, witness| Ok(Verdict::reject(regime, reason, witness, Vec::new()));
    let edges = t.edges();

    // 1
    if let Some(&(a, b, _)) = edges.iter().find(|&&(a, b, _)| !t.label(a).shares_color(t.label(b))) {
        return reject(Reason::NoSharedColor, Witness::Edge(a, b));
    }
    // 2
    if let Some(&(a, b, _)) = edges
        .iter()
        .find(|&&(a, b, s)| s.is_directed() && (!t.is_marked(a) || !t.is_marked(b)))
    {
        return reject(Reason::NotSemisymmetric, Witness::Edge(a, b));
    }
    // 6 goes before 3: two marked vertices on an undirected path usually
    // also miss a directed edge to a third, and the path is the root cause
    if let Some(path) = undirected_marked_path(t) {
        return reject(Reason::UndirectedMarkedPath, Witness::Path(path));
    }
    // 3: marked labels sharing exactly one color have a raw count of one,
    // so the edge must exist and be strictly directed
    let marked = t.marked_vertices();
    for (i, &v) in marked.iter().enumerate() {
        for &w in &marked[i + 1..] {
            let (lv, lw) = (t.label(v), t.label(w));
            if lv != lw && lv.shares_color(lw) && !t.edge(v, w).is_directed() {
                return reject(Reason::MissingDirectedEdge, Witness::Edge(v, w));
            }
        }
    }
    // 4
    let order = match color_path(t) {
        Ok(order) => order,
        Err(failure) => {
            let witness = match failure {
                PathFailure::Branching(c) => Witness::Colors(vec![c]),
                PathFailure::Disconnected(cs) => Witness::Colors(cs),
                PathFailure::Cycle | PathFailure::Empty => Witness::Colors(colors.into_iter().collect()),
            };
            return reject(Reason::ColorsNotConsecutive, witness);
        }
    };
    // 5
    let mut by_label: BTreeMap<LabelPair, Vec<usize>> = BTreeMap::new();
    for &v in &marked {
        by_label.entry(t.label(v)).or_default().push(v);
    }
    let n = order.len();
    let mut multiplicities = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let group = by_label.get(&LabelPair::new(order[i], order[i + 1])).cloned().unwrap_or_default();
        let interior = i >= 1 && i + 2 < n;
        if group.is_empty() || (interior && group.len() != 1) {
            return reject(Reason::Multiplicity, Witness::Vertices(group));
        }
        multiplicities.push(group.len());
    }
    let mut v = Verdict::accept(regime, order);
    v.multiplicities = multiplicities;
    Ok(v)
}

fn undirected_marked_path(t: &DLTree) -> Option<Vec<usize>> {
    let mut seen = vec![false; t.len()];
    for start in t.marked_vertices() {
        if seen[start] {
            continue;
        }
        // flood along undirected edges only
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &(w, s) in t.neighbors(v) {
                if s == EdgeState::Undirected && !seen[w] {
                    seen[w] = true;
                    if t.is_marked(w) {
                        return Some(t.path(start, w));
                    }
                    stack.push(w);
                }
            }
        }
    }
    None
}

/// Dispatches on the number of colors.
pub fn recognize(t: &DLTree) -> Verdict {
    if t.colors().len() <= 2 {
        check_labeled_2(t).expect("at most two colors")
    } else {
        check_multi(t).expect("at least three colors")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::borrow::ToOwned;
    use alloc::string::ToString;

    const U: EdgeState = EdgeState::Undirected;
    const F: EdgeState = EdgeState::Forward;
    const B: EdgeState = EdgeState::Backward;

    fn tree(vs: &[(&str, (Color, Color))], es: &[(&str, &str, EdgeState)]) -> DLTree {
        let vertices = vs.iter().map(|&(n, (a, b))| (n.to_owned(), LabelPair::new(a, b))).collect();
        DLTree::from_named(vertices, es).unwrap()
    }

    fn path(labels: &[(Color, Color)]) -> DLTree {
        let names: Vec<String> = (0..labels.len()).map(|i| format!("p{i}")).collect();
        let vs = names.iter().cloned().zip(labels.iter().map(|&(a, b)| LabelPair::new(a, b))).collect();
        let es: Vec<_> = (1..labels.len()).map(|i| (i - 1, i, U)).collect();
        DLTree::new(vs, &es).unwrap()
    }

    fn three_heavy_star(center: (Color, Color)) -> DLTree {
        tree(
            &[
                ("c", center),
                ("u1", (1, 1)),
                ("u2", (1, 1)),
                ("u3", (2, 2)),
                ("m1", (1, 2)),
                ("m2", (1, 2)),
                ("m3", (1, 2)),
            ],
            &[
                ("c", "u1", U),
                ("c", "u2", U),
                ("c", "u3", U),
                ("u1", "m1", U),
                ("u2", "m2", U),
                ("u3", "m3", U),
            ],
        )
    }

    #[test]
    fn marked_paths_accept() {
        let t = path(&[(1, 2), (1, 1), (1, 2), (1, 2), (2, 2), (1, 2)]);
        assert!(check_marked_2(&t).unwrap().accepted);
    }

    #[test]
    fn three_heavy_boughs_reject() {
        let t = three_heavy_star((1, 2));
        let v = check_marked_2(&t).unwrap();
        assert!(!v.accepted);
        assert_eq!(v.reason, Reason::HeavyBoughs);
        match v.witness {
            Witness::HeavyBoughs { vertex, boughs } => {
                assert_eq!(t.name(vertex), "c");
                assert_eq!(boughs.len(), 3);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert_eq!(check_marked_2(&t.map_colors(|c| c + 4)).unwrap().reason, Reason::HeavyBoughs);
    }

    #[test]
    fn unmarked_trees_accept() {
        let t = tree(
            &[("a", (1, 1)), ("b", (1, 1)), ("c", (1, 1)), ("d", (1, 1))],
            &[("a", "b", U), ("a", "c", U), ("a", "d", U)],
        );
        assert!(check_marked_2(&t).unwrap().accepted);
        assert!(recognize(&t).accepted);
    }

    #[test]
    fn too_many_colors_is_an_error() {
        let t = tree(&[("x", (1, 2)), ("y", (2, 3))], &[("x", "y", F)]);
        assert_eq!(check_marked_2(&t), Err(RecognizeError::TooManyColors(3)));
        let t = tree(&[("x", (1, 2))], &[]);
        assert_eq!(check_multi(&t), Err(RecognizeError::TooFewColors(2)));
    }

    #[test]
    fn labeled_parity() {
        // m1 v x w m2, one marked vertex between v and w
        let good = path(&[(1, 2), (1, 1), (1, 2), (2, 2), (1, 2)]);
        let v = check_labeled_2(&good).unwrap();
        assert!(v.accepted, "{v:?}");
        assert_eq!(v.code(), "labeled-2/accept");
        let bad = path(&[(1, 2), (1, 1), (1, 2), (1, 1), (1, 2)]);
        let v = check_labeled_2(&bad).unwrap();
        assert_eq!(v.reason, Reason::SpineParity);
        assert_eq!(v.code(), "labeled-2/cond3-spine-parity");
        assert_eq!(v.witness, Witness::SpineSegment { v: 1, w: 3, segment: vec![1, 2, 3] });
    }

    #[test]
    fn labeled_adjacent_unmarked() {
        let t = tree(&[("u", (1, 1)), ("w", (2, 2))], &[("u", "w", U)]);
        let v = check_labeled_2(&t).unwrap();
        assert_eq!(v.reason, Reason::UnmarkedLabels);
        assert_eq!(v.witness, Witness::Edge(0, 1));
    }

    #[test]
    fn labeled_rejects_directed_edges() {
        let t = tree(&[("a", (1, 2)), ("b", (1, 2))], &[("a", "b", F)]);
        assert_eq!(check_labeled_2(&t).unwrap().reason, Reason::DirectedEdge);
        let t = tree(&[("a", (1, 2)), ("b", (1, 2))], &[("a", "b", U)]);
        assert!(check_labeled_2(&t).unwrap().accepted);
    }

    #[test]
    fn swapping_two_colors_preserves_acceptance() {
        let t = path(&[(1, 2), (1, 1), (1, 2), (2, 2), (1, 2)]);
        let swapped = t.map_colors(|c| 3 - c);
        assert!(recognize(&swapped).accepted);
        let t = path(&[(1, 2), (1, 1), (1, 2), (1, 1), (1, 2)]);
        assert!(!recognize(&t.map_colors(|c| 3 - c)).accepted);
    }

    #[test]
    fn color_paths() {
        let t = tree(
            &[("a", (1, 2)), ("b", (2, 3)), ("c", (3, 4))],
            &[("a", "b", F), ("b", "c", F)],
        );
        assert_eq!(color_path(&t).unwrap(), vec![1, 2, 3, 4]);
        let t = tree(&[("a", (1, 3)), ("b", (3, 2))], &[("a", "b", F)]);
        assert_eq!(color_path(&t).unwrap(), vec![1, 3, 2]);
        let t = tree(
            &[("a", (1, 2)), ("b", (1, 3)), ("c", (1, 4))],
            &[("a", "b", F), ("a", "c", F)],
        );
        assert_eq!(color_path(&t), Err(PathFailure::Branching(1)));
    }

    #[test]
    fn multi_accepts_single_directed_edge() {
        let t = tree(&[("x", (1, 2)), ("y", (2, 3))], &[("x", "y", F)]);
        let v = recognize(&t);
        assert!(v.accepted);
        assert_eq!(v.regime, Regime::Multi);
        assert_eq!(v.color_order, vec![1, 2, 3]);
        assert_eq!(v.multiplicities, vec![1, 1]);
        assert_eq!(v.code(), "multi/accept");
    }

    #[test]
    fn multi_missing_directed_edge() {
        // x2 hangs off z, sharing no color with it
        let t = tree(
            &[("x", (1, 2)), ("x2", (1, 2)), ("y", (2, 3)), ("z", (3, 4))],
            &[("x", "y", F), ("y", "z", F), ("z", "x2", B)],
        );
        assert_eq!(recognize(&t).reason, Reason::NoSharedColor);
        // x2 hangs off x by a directed edge, so x2 and y are not adjacent
        let t = tree(
            &[("x", (1, 2)), ("x2", (1, 2)), ("y", (2, 3))],
            &[("x", "y", F), ("x2", "x", F)],
        );
        let v = recognize(&t);
        assert_eq!(v.reason, Reason::MissingDirectedEdge);
        assert_eq!(v.witness, Witness::Edge(1, 2));
        // an undirected edge between marked vertices is itself an undirected path
        let t = tree(
            &[("x", (1, 2)), ("y", (2, 3)), ("z", (3, 4))],
            &[("x", "y", U), ("y", "z", F)],
        );
        assert_eq!(recognize(&t).reason, Reason::UndirectedMarkedPath);
    }

    #[test]
    fn multi_undirected_marked_path() {
        let t = tree(
            &[("v", (1, 2)), ("u", (2, 2)), ("w", (1, 2)), ("y", (2, 3))],
            &[("v", "u", U), ("u", "w", U), ("w", "y", F)],
        );
        let v = recognize(&t);
        assert_eq!(v.reason, Reason::UndirectedMarkedPath);
        assert_eq!(v.witness, Witness::Path(vec![0, 1, 2]));
        assert_eq!(v.code(), "multi/cond6-undirected-marked-path");
    }

    #[test]
    fn multi_condition_six() {
        // an unmarked leaf on a directed chain is fine
        let t = tree(
            &[("a", (1, 2)), ("b", (2, 3)), ("c", (3, 4)), ("u", (4, 4))],
            &[("a", "b", F), ("b", "c", B), ("c", "u", U)],
        );
        assert!(recognize(&t).accepted);
        assert_eq!(undirected_marked_path(&t), None);
        let t2 = tree(&[("a", (1, 2)), ("u", (2, 2)), ("b", (1, 2))], &[("a", "u", U), ("u", "b", U)]);
        assert_eq!(undirected_marked_path(&t2), Some(vec![0, 1, 2]));
    }

    #[test]
    fn multi_multiplicity() {
        // two {2,3} vertices with n = 4 would need a 4-cycle; a tree
        // violating only condition 5 does not exist, so condition 3 fires
        let t = tree(
            &[("a", (1, 2)), ("b1", (2, 3)), ("b2", (2, 3)), ("c", (3, 4))],
            &[("a", "b1", F), ("b1", "c", F), ("a", "b2", F)],
        );
        let v = recognize(&t);
        assert!(!v.accepted);
        assert_eq!(v.reason, Reason::MissingDirectedEdge);
    }

    #[test]
    fn relabeled_colors_are_searched() {
        let t = tree(&[("x", (3, 1)), ("y", (1, 2))], &[("x", "y", B)]);
        let v = recognize(&t);
        assert!(v.accepted);
        assert_eq!(v.color_order, vec![2, 1, 3]);
        assert_eq!(v.multiplicities, vec![1, 1]);
        assert_eq!(v.code().to_string(), "multi/accept");
    }
}
