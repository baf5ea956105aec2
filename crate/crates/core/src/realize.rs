//! Witness diagrams for accepted trees.
//!
//! Every public constructor recomputes the intersection graph of its output
//! and compares it with the graph it promised; a mismatch is reported as
//! [`RealizeError::Verification`] instead of returning a wrong diagram.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{ChordDiagram, DiagramError};
use crate::igraph::{gamma, IntersectionGraph};
use crate::label::{Color, EdgeState, LabelPair};
use crate::recognize::{recognize, Regime, Verdict};
use crate::tree::{DLTree, TreeError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizeError {
    /// The tree is not an intersection graph; carries the verdict code.
    Rejected(String),
    /// The verdict handed in does not fit the requested construction.
    WrongVerdict(String),
    Diagram(DiagramError),
    Tree(TreeError),
    NameClash(String),
    /// A vertex whose label does not fit the construction.
    BadLabel(String),
    ComponentCount { expected: usize, found: usize },
    NoEndpointOnComponent { chord: String, component: Color },
    NotInterior(String),
    /// Spine labels contradict the parity condition.
    ParityViolation(String),
    NoPlacement(String),
    /// The output's intersection graph differs from the target.
    Verification(String),
}

impl fmt::Display for RealizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizeError::Rejected(code) => write!(f, "tree is not realizable ({code})"),
            RealizeError::WrongVerdict(msg) => write!(f, "unusable verdict: {msg}"),
            RealizeError::Diagram(e) => write!(f, "{e}"),
            RealizeError::Tree(e) => write!(f, "{e}"),
            RealizeError::NameClash(n) => write!(f, "chord `{n}` already exists"),
            RealizeError::BadLabel(n) => write!(f, "vertex `{n}` has a label this construction cannot place"),
            RealizeError::ComponentCount { expected, found } => {
                write!(f, "expected a diagram with {expected} components, found {found}")
            }
            RealizeError::NoEndpointOnComponent { chord, component } => {
                write!(f, "chord `{chord}` has no endpoint on component {component}")
            }
            RealizeError::NotInterior(n) => write!(f, "`{n}` is not an interior spine vertex"),
            RealizeError::ParityViolation(n) => write!(f, "unmarked spine vertex `{n}` lands on the wrong component"),
            RealizeError::NoPlacement(n) => write!(f, "no placement for chord `{n}`"),
            RealizeError::Verification(msg) => write!(f, "internal check failed: {msg}"),
        }
    }
}

impl core::error::Error for RealizeError {}

impl From<DiagramError> for RealizeError {
    fn from(e: DiagramError) -> Self {
        RealizeError::Diagram(e)
    }
}

impl From<TreeError> for RealizeError {
    fn from(e: TreeError) -> Self {
        RealizeError::Tree(e)
    }
}

/// Mutable chord sequences; chord ids index `names`.
struct Layout {
    names: Vec<String>,
    seqs: Vec<Vec<usize>>,
}

impl Layout {
    fn new(names: Vec<String>, k: usize) -> Self {
        Layout { names, seqs: vec![Vec::new(); k] }
    }

    fn from_diagram(d: &ChordDiagram) -> Self {
        Layout { names: d.names().to_vec(), seqs: d.sequences().to_vec() }
    }

    fn add_chord(&mut self, name: &str) -> Result<usize, RealizeError> {
        if !crate::is_valid_id(name) {
            return Err(DiagramError::InvalidName(name.to_string()).into());
        }
        if self.names.iter().any(|n| n == name) {
            return Err(RealizeError::NameClash(name.to_string()));
        }
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }

    /// Inserts `word` around the first endpoint of `anchor` on `comp`:
    /// `word[0]` right below it, the rest right above it.
    fn insert_barbell(&mut self, comp: usize, anchor: usize, word: &[usize]) -> Result<(), RealizeError> {
        let seq = &mut self.seqs[comp];
        let pos = seq.iter().position(|&x| x == anchor).ok_or_else(|| RealizeError::NoEndpointOnComponent {
            chord: self.names[anchor].clone(),
            component: comp as Color + 1,
        })?;
        seq.splice(pos + 1..pos + 1, word[1..].iter().copied());
        seq.insert(pos, word[0]);
        Ok(())
    }

    fn finish(self) -> Result<ChordDiagram, RealizeError> {
        Ok(ChordDiagram::from_indices(self.names, self.seqs)?)
    }
}

/// Chord word for the unmarked component of `root` in `t`, not entering
/// vertices flagged in `blocked`: the root, its children, the root again,
/// then each child's block in reverse order. A block is the child's own
/// children, the child, and their blocks, again reversed. Children are
/// taken in name order.
fn unmarked_word(t: &DLTree, root: usize, blocked: &[bool]) -> Vec<usize> {
    let mut seen = blocked.to_vec();
    seen[root] = true;
    let mut word = vec![root];
    let mut stack = vec![root];
    while let Some(c) = stack.pop() {
        let mut children: Vec<usize> = t.neighbors(c).iter().map(|&(w, _)| w).filter(|&w| !seen[w]).collect();
        children.sort_by(|&a, &b| t.name(a).cmp(t.name(b)));
        for &w in &children {
            seen[w] = true;
        }
        word.extend_from_slice(&children);
        word.push(c);
        stack.extend_from_slice(&children);
    }
    word
}

/// Compares the intersection graph of `d` with `expected`, matching
/// vertices by name.
fn verify(d: &ChordDiagram, expected: &IntersectionGraph) -> Result<(), RealizeError> {
    let g = gamma(d);
    let fail = |msg: String| Err(RealizeError::Verification(msg));
    if g.vertex_count() != expected.vertex_count() {
        return fail(format!("{} chords for {} vertices", g.vertex_count(), expected.vertex_count()));
    }
    let index: BTreeMap<&str, usize> =
        expected.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut map = Vec::with_capacity(g.vertex_count());
    for (name, &label) in g.names().iter().zip(g.labels()) {
        let Some(&j) = index.get(name.as_str()) else {
            return fail(format!("unexpected chord `{name}`"));
        };
        if expected.labels()[j] != label {
            return fail(format!("chord `{name}` has label {label}, wanted {}", expected.labels()[j]));
        }
        map.push(j);
    }
    if g.edge_count() != expected.edge_count() {
        return fail(format!("{} edges, wanted {}", g.edge_count(), expected.edge_count()));
    }
    for (a, b, s) in g.edges() {
        let want = expected.edge(map[a], map[b]);
        if want != s {
            return fail(format!("edge `{}`-`{}` is {s}, wanted {want}", g.names()[a], g.names()[b]));
        }
    }
    Ok(())
}

/// Copy of `g` with extra isolated vertices appended.
fn extend_graph(g: &IntersectionGraph, extra: impl IntoIterator<Item = (String, LabelPair)>) -> IntersectionGraph {
    let mut vertices: Vec<(String, LabelPair)> = g.names().iter().cloned().zip(g.labels().iter().copied()).collect();
    vertices.extend(extra);
    let mut out = IntersectionGraph::new(vertices);
    for (a, b, s) in g.edges() {
        out.set_edge(a, b, s);
    }
    out
}

/// Single-color diagram realizing an all-unmarked tree. The tree's color
/// `c` fixes the component, so the output has `c` components with only the
/// last one used. `root`'s first endpoint is the lowest; everything else
/// follows it contiguously.
pub fn realize_unmarked(t: &DLTree, root: usize) -> Result<ChordDiagram, RealizeError> {
    let c = single_unmarked_color(t)?;
    let mut layout = Layout::new(t.names().to_vec(), c as usize);
    layout.seqs[c as usize - 1] = unmarked_word(t, root, &vec![false; t.len()]);
    let d = layout.finish()?;
    verify(&d, &t.to_graph())?;
    Ok(d)
}

fn single_unmarked_color(t: &DLTree) -> Result<Color, RealizeError> {
    let first = t.label(0);
    for v in 0..t.len() {
        if t.is_marked(v) || t.label(v) != first || first.lo() == 0 {
            return Err(RealizeError::BadLabel(t.name(v).to_string()));
        }
    }
    Ok(first.lo())
}

/// Grows a two-component diagram along a spine. The open chord's upper
/// endpoint is the topmost slot of its component; the next spine chord is
/// slotted just below it, which makes the two cross and leaves every
/// earlier chord with an even tally.
struct SpineBuilder {
    layout: Layout,
    // (chord, component holding its top endpoint)
    open: Option<(usize, usize)>,
}

impl SpineBuilder {
    fn new(names: Vec<String>) -> Self {
        SpineBuilder { layout: Layout::new(names, 2), open: None }
    }

    /// Component (0 or 1) the first spine chord should leave open, chosen
    /// so the first unmarked spine vertex lands on its own color.
    fn start_component(t: &DLTree, spine: &[usize]) -> usize {
        let mut marked = 0;
        for &v in spine.iter().skip(1) {
            if t.is_marked(v) {
                marked += 1;
            } else {
                return (t.label(v).lo() as usize - 1) ^ (marked % 2);
            }
        }
        0
    }

    fn push(&mut self, t: &DLTree, q: usize, start: usize) -> Result<(), RealizeError> {
        let seqs = &mut self.layout.seqs;
        match self.open {
            None => {
                if !t.is_marked(q) {
                    return Err(RealizeError::BadLabel(t.name(q).to_string()));
                }
                seqs[0].push(q);
                seqs[1].push(q);
                self.open = Some((q, start));
            }
            Some((_, c)) => {
                let len = seqs[c].len();
                seqs[c].insert(len - 1, q);
                if t.is_marked(q) {
                    seqs[1 - c].push(q);
                    self.open = Some((q, 1 - c));
                } else {
                    if t.label(q).lo() as usize != c + 1 {
                        return Err(RealizeError::ParityViolation(t.name(q).to_string()));
                    }
                    seqs[c].push(q);
                    self.open = Some((q, c));
                }
            }
        }
        Ok(())
    }

    /// Marked chord crossing only the open chord, parallel to earlier ribs.
    fn rib(&mut self, r: usize) {
        let (_, c) = self.open.expect("rib needs an open chord");
        let seqs = &mut self.layout.seqs;
        let len = seqs[c].len();
        seqs[c].insert(len - 1, r);
        seqs[1 - c].push(r);
    }
}

fn check_two_colors(t: &DLTree) -> Result<(), RealizeError> {
    if let Some(v) = (0..t.len()).find(|&v| !matches!(t.label(v).hi(), 1 | 2) || t.label(v).lo() == 0) {
        return Err(RealizeError::BadLabel(t.name(v).to_string()));
    }
    Ok(())
}

/// Two-component diagram whose intersection graph is the path `spine` of
/// `t` (labels in `{1,2}`). The ends of the path must be marked.
pub fn realize_spine(t: &DLTree, spine: &[usize]) -> Result<ChordDiagram, RealizeError> {
    check_two_colors(t)?;
    for w in spine.windows(2) {
        if !t.is_adjacent(w[0], w[1]) {
            return Err(RealizeError::Verification(format!(
                "`{}` and `{}` are not adjacent",
                t.name(w[0]),
                t.name(w[1])
            )));
        }
    }
    let mut b = SpineBuilder::new(t.names().to_vec());
    let start = SpineBuilder::start_component(t, spine);
    for &v in spine {
        b.push(t, v, start)?;
    }
    let (names, labels, seqs) = keep_chords(t, b.layout, spine);
    let d = ChordDiagram::from_indices(names.clone(), seqs)?;
    let mut expected = IntersectionGraph::new(names.into_iter().zip(labels).collect());
    for i in 1..spine.len() {
        expected.set_edge(i - 1, i, EdgeState::Undirected);
    }
    verify(&d, &expected)?;
    Ok(d)
}

/// Restricts a layout over all of `t`'s names to the chords in `keep`,
/// renumbered in that order.
fn keep_chords(t: &DLTree, layout: Layout, keep: &[usize]) -> (Vec<String>, Vec<LabelPair>, Vec<Vec<usize>>) {
    let mut new_id = vec![usize::MAX; t.len()];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    let names = keep.iter().map(|&v| t.name(v).to_string()).collect();
    let labels = keep.iter().map(|&v| t.label(v)).collect();
    let seqs = layout.seqs.iter().map(|s| s.iter().map(|&x| new_id[x]).collect()).collect();
    (names, labels, seqs)
}

/// Adds a marked chord `w` to a two-component diagram so that it crosses
/// `u` and nothing else. `u` must be an interior vertex of the spine of the
/// diagram's intersection graph, which must be a tree.
pub fn attach_rib(d: &ChordDiagram, u: usize, w: &str) -> Result<ChordDiagram, RealizeError> {
    if d.component_count() != 2 {
        return Err(RealizeError::ComponentCount { expected: 2, found: d.component_count() });
    }
    let g = gamma(d);
    let tree = DLTree::from_graph(&g)?;
    if !tree.spine().is_interior(u) {
        return Err(RealizeError::NotInterior(d.name(u).to_string()));
    }
    let mut layout = Layout::from_diagram(d);
    let id = layout.add_chord(w)?;
    let n = layout.names.len();

    let gaps = |seq: &[usize]| -> Vec<usize> {
        let mut near: Vec<usize> = Vec::new();
        for (s, &x) in seq.iter().enumerate() {
            if x == u {
                near.extend([s, s + 1]);
            }
        }
        let mut all = near.clone();
        all.extend((0..=seq.len()).filter(|g| !near.contains(g)));
        all.dedup();
        all
    };
    let gaps0 = gaps(&layout.seqs[0]);
    let gaps1 = gaps(&layout.seqs[1]);
    for &g0 in &gaps0 {
        for &g1 in &gaps1 {
            // parities of w -> x and x -> w
            let mut up = vec![false; n];
            let mut down = vec![false; n];
            for (seq, gap) in [(&layout.seqs[0], g0), (&layout.seqs[1], g1)] {
                for (s, &x) in seq.iter().enumerate() {
                    if s < gap {
                        down[x] ^= true;
                    } else {
                        up[x] ^= true;
                    }
                }
            }
            let ok = (0..n).filter(|&x| x != id).all(|x| {
                let s = EdgeState::from_parities(up[x], down[x]);
                s == if x == u { EdgeState::Undirected } else { EdgeState::None }
            });
            if ok {
                layout.seqs[0].insert(g0, id);
                layout.seqs[1].insert(g1, id);
                let out = layout.finish()?;
                let mut expected = extend_graph(&g, [(w.to_string(), LabelPair::new(1, 2))]);
                expected.set_edge(u, id, EdgeState::Undirected);
                verify(&out, &expected)?;
                return Ok(out);
            }
        }
    }
    Err(RealizeError::NoPlacement(w.to_string()))
}

/// Adds the all-unmarked tree `c` to `d` on component `comp`, with `v`
/// crossing chord `t` and nothing else of `d`.
pub fn attach_barbell(
    d: &ChordDiagram,
    t: usize,
    comp: Color,
    c: &DLTree,
    v: usize,
) -> Result<ChordDiagram, RealizeError> {
    if single_unmarked_color(c)? != comp {
        return Err(RealizeError::BadLabel(c.name(v).to_string()));
    }
    if comp == 0 || comp as usize > d.component_count() || !d.label(t).contains(comp) {
        return Err(RealizeError::NoEndpointOnComponent { chord: d.name(t).to_string(), component: comp });
    }
    let mut layout = Layout::from_diagram(d);
    let ids = c.names().iter().map(|n| layout.add_chord(n)).collect::<Result<Vec<_>, _>>()?;
    let word: Vec<usize> = unmarked_word(c, v, &vec![false; c.len()]).into_iter().map(|x| ids[x]).collect();
    layout.insert_barbell(comp as usize - 1, t, &word)?;
    let out = layout.finish()?;

    let mut expected = extend_graph(&gamma(d), c.vertices());
    for (a, b, s) in c.edges() {
        expected.set_edge(ids[a], ids[b], s);
    }
    expected.set_edge(t, ids[v], EdgeState::Undirected);
    verify(&out, &expected)?;
    Ok(out)
}

/// Two-color construction: spine, then ribs on interior spine vertices,
/// then one barbell per unmarked branch.
pub fn realize_2(t: &DLTree, verdict: &Verdict) -> Result<ChordDiagram, RealizeError> {
    if !verdict.accepted || verdict.regime == Regime::Multi {
        return Err(RealizeError::WrongVerdict(verdict.code()));
    }
    let order = &verdict.color_order;
    if order.is_empty() || order.len() > 2 || t.colors().iter().any(|c| !order.contains(c)) {
        return Err(RealizeError::WrongVerdict(format!("color order {order:?}")));
    }
    let tn = t.map_colors(|c| order.iter().position(|&x| x == c).unwrap() as Color + 1);
    let seqs = realize_2_normalized(&tn)?;

    let k = order.iter().copied().max().unwrap().max(2) as usize;
    let mut comps = vec![Vec::new(); k];
    for (i, seq) in seqs.into_iter().enumerate() {
        if let Some(&c) = order.get(i) {
            comps[c as usize - 1] = seq;
        } else if !seq.is_empty() {
            return Err(RealizeError::Verification("unused component holds chords".into()));
        }
    }
    let d = ChordDiagram::from_indices(t.names().to_vec(), comps)?;
    verify(&d, &t.to_graph())?;
    Ok(d)
}

fn realize_2_normalized(t: &DLTree) -> Result<Vec<Vec<usize>>, RealizeError> {
    let n = t.len();
    let spine = t.spine();
    let mut placed = vec![false; n];
    let mut b = SpineBuilder::new(t.names().to_vec());

    if spine.is_empty() {
        // every vertex unmarked, one color
        let root = (0..n).min_by(|&a, &b| t.name(a).cmp(t.name(b))).unwrap();
        let c = single_unmarked_color(t)? as usize;
        b.layout.seqs[c - 1] = unmarked_word(t, root, &placed);
        return Ok(b.layout.seqs);
    }

    let start = SpineBuilder::start_component(t, &spine.vertices);
    for &p in &spine.vertices {
        placed[p] = true;
    }
    for (i, &p) in spine.vertices.iter().enumerate() {
        b.push(t, p, start)?;
        if i == 0 || i + 1 == spine.len() {
            continue;
        }
        let mut ribs: Vec<usize> =
            t.neighbors(p).iter().map(|&(w, _)| w).filter(|&w| !placed[w] && t.is_marked(w)).collect();
        ribs.sort_by(|&a, &b| t.name(a).cmp(t.name(b)));
        for r in ribs {
            b.rib(r);
            placed[r] = true;
        }
    }
    if let Some(v) = (0..n).find(|&v| t.is_marked(v) && !placed[v]) {
        return Err(RealizeError::NotInterior(t.name(v).to_string()));
    }

    let mut layout = b.layout;
    let core: Vec<usize> = (0..n).filter(|&v| placed[v]).collect();
    for h in core {
        let mut roots: Vec<usize> = t.neighbors(h).iter().map(|&(w, _)| w).filter(|&w| !placed[w]).collect();
        roots.sort_by(|&a, &b| t.name(a).cmp(t.name(b)));
        for r in roots {
            let word = unmarked_word(t, r, &placed);
            for &x in &word {
                placed[x] = true;
            }
            layout.insert_barbell(t.label(r).lo() as usize - 1, h, &word)?;
        }
    }
    Ok(layout.seqs)
}

/// Construction for three or more colors: the marked chords form a chain of
/// parallel bundles between consecutive components, ordered by the edge
/// directions; unmarked branches are attached as barbells.
pub fn realize_multi(t: &DLTree, verdict: &Verdict) -> Result<ChordDiagram, RealizeError> {
    if !verdict.accepted || verdict.regime != Regime::Multi {
        return Err(RealizeError::WrongVerdict(verdict.code()));
    }
    let order = &verdict.color_order;
    let m = order.len();
    if m < 3 || t.colors().iter().any(|c| !order.contains(c)) {
        return Err(RealizeError::WrongVerdict(format!("color order {order:?}")));
    }
    let pos = |c: Color| order.iter().position(|&x| x == c).unwrap();
    let n = t.len();

    // groups[i]: vertices labeled {order[i], order[i+1]}, by name
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); m - 1];
    for v in t.marked_vertices() {
        let l = t.label(v);
        let (a, b) = (pos(l.lo()), pos(l.hi()));
        let (a, b) = (a.min(b), a.max(b));
        if b != a + 1 {
            return Err(RealizeError::BadLabel(t.name(v).to_string()));
        }
        groups[a].push(v);
    }
    for g in &mut groups {
        g.sort_by(|&a, &b| t.name(a).cmp(t.name(b)));
    }
    let singleton = |g: &[usize]| if g.len() == 1 { Some(g[0]) } else { None };

    // order each group where it meets a neighboring singleton: members
    // with an edge into it first, then it, then the rest
    let mut ordered: Vec<Option<Vec<usize>>> = vec![None; m - 1];
    let mut seqs: Vec<Vec<usize>> = vec![Vec::new(); m];
    for p in 1..m - 1 {
        let (lower, upper) = (&groups[p - 1], &groups[p]);
        let (pivot, others) = match (singleton(upper), singleton(lower)) {
            (Some(y), _) => (y, lower),
            (None, Some(y)) => (y, upper),
            (None, None) => {
                return Err(RealizeError::Verification(format!("no single chord between colors at position {p}")));
            }
        };
        let (below, above): (Vec<usize>, Vec<usize>) =
            others.iter().partition(|&&x| t.edge(x, pivot) == EdgeState::Forward);
        if let Some(&x) = others.iter().find(|&&x| !t.edge(x, pivot).is_directed()) {
            return Err(RealizeError::Verification(format!(
                "`{}` and `{}` lack a directed edge",
                t.name(x),
                t.name(pivot)
            )));
        }
        let mut seq = below.clone();
        seq.push(pivot);
        seq.extend(&above);
        seqs[p] = seq;
        let gi = if others == lower { p - 1 } else { p };
        let mut group_order = below;
        group_order.extend(above);
        ordered[gi] = Some(group_order);
        let pi = if others == lower { p } else { p - 1 };
        ordered[pi].get_or_insert_with(|| vec![pivot]);
    }
    // outermost components copy their group's order
    seqs[0] = ordered[0].clone().unwrap_or_else(|| groups[0].clone());
    seqs[m - 1] = ordered[m - 2].clone().unwrap_or_else(|| groups[m - 2].clone());

    let mut layout = Layout { names: t.names().to_vec(), seqs };
    let mut placed = vec![false; n];
    for v in t.marked_vertices() {
        placed[v] = true;
    }
    for h in t.marked_vertices() {
        let mut roots: Vec<usize> = t.neighbors(h).iter().map(|&(w, _)| w).filter(|&w| !placed[w]).collect();
        roots.sort_by(|&a, &b| t.name(a).cmp(t.name(b)));
        for r in roots {
            let word = unmarked_word(t, r, &placed);
            for &x in &word {
                placed[x] = true;
            }
            layout.insert_barbell(pos(t.label(r).lo()), h, &word)?;
        }
    }
    if let Some(v) = (0..n).find(|&v| !placed[v]) {
        return Err(RealizeError::Verification(format!("`{}` not reached from a marked vertex", t.name(v))));
    }

    let k = order.iter().copied().max().unwrap() as usize;
    let mut comps = vec![Vec::new(); k];
    for (i, seq) in layout.seqs.into_iter().enumerate() {
        comps[order[i] as usize - 1] = seq;
    }
    let d = ChordDiagram::from_indices(layout.names, comps)?;
    verify(&d, &t.to_graph())?;
    Ok(d)
}

/// Diagram whose intersection graph is `t`, with chord names equal to the
/// vertex names. Component `i` carries color `i`; the diagram has as many
/// components as the largest color (at least two).
pub fn realize(t: &DLTree) -> Result<ChordDiagram, RealizeError> {
    let verdict = recognize(t);
    if !verdict.accepted {
        return Err(RealizeError::Rejected(verdict.code()));
    }
    match verdict.regime {
        Regime::Multi => realize_multi(t, &verdict),
        _ => realize_2(t, &verdict),
    }
}
