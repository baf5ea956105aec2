//! Labeled directed trees: validation, boughs, spines and canonical forms.
//!
//! A directed graph counts as a tree when its underlying undirected graph is
//! one. Every edge carries a non-`None` [`EdgeState`].

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::igraph::IntersectionGraph;
use crate::label::{Color, EdgeState, LabelPair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeError {
    Empty,
    InvalidName(String),
    DuplicateVertex(String),
    UnknownVertex(String),
    SelfLoop(String),
    RepeatedEdge(String, String),
    NoneEdge(String, String),
    /// The edge that closes a cycle.
    Cycle(String, String),
    /// A vertex unreachable from the first vertex.
    Disconnected(String),
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::Empty => f.write_str("a tree needs at least one vertex"),
            TreeError::InvalidName(n) => write!(f, "invalid vertex name `{n}`"),
            TreeError::DuplicateVertex(n) => write!(f, "vertex `{n}` declared twice"),
            TreeError::UnknownVertex(n) => write!(f, "edge mentions unknown vertex `{n}`"),
            TreeError::SelfLoop(n) => write!(f, "self-loop at `{n}`"),
            TreeError::RepeatedEdge(a, b) => write!(f, "repeated edge between `{a}` and `{b}`"),
            TreeError::NoneEdge(a, b) => write!(f, "edge `{a}`-`{b}` has state none"),
            TreeError::Cycle(a, b) => write!(f, "edge `{a}`-`{b}` closes a cycle"),
            TreeError::Disconnected(n) => write!(f, "vertex `{n}` is not connected to the rest"),
        }
    }
}

impl core::error::Error for TreeError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DLTree {
    names: Vec<String>,
    labels: Vec<LabelPair>,
    // (neighbor, state of self -> neighbor), sorted by neighbor
    adj: Vec<Vec<(usize, EdgeState)>>,
}

/// A connected component of the tree with one vertex removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bough {
    /// The removed vertex.
    pub anchor: usize,
    /// The bough's unique vertex adjacent to the anchor.
    pub root: usize,
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    pub heavy: bool,
}

/// A maximal-length path whose end vertices are marked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Spine {
    pub vertices: Vec<usize>,
}

impl Spine {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.position(v).is_some()
    }

    /// On the spine but not one of its two ends.
    pub fn is_interior(&self, v: usize) -> bool {
        matches!(self.position(v), Some(i) if i > 0 && i + 1 < self.len())
    }
}

impl DLTree {
    /// Validates and builds a tree. `edges` are `(a, b, state of a -> b)`.
    pub fn new(
        vertices: Vec<(String, LabelPair)>,
        edges: &[(usize, usize, EdgeState)],
    ) -> Result<Self, TreeError> {
        if vertices.is_empty() {
            return Err(TreeError::Empty);
        }
        let (names, labels): (Vec<String>, Vec<LabelPair>) = vertices.into_iter().unzip();
        let mut seen = BTreeSet::new();
        for n in &names {
            if !crate::is_valid_id(n) {
                return Err(TreeError::InvalidName(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(TreeError::DuplicateVertex(n.clone()));
            }
        }
        let n = names.len();
        let mut adj: Vec<Vec<(usize, EdgeState)>> = vec![Vec::new(); n];
        let mut uf = UnionFind::new(n);
        for &(a, b, s) in edges {
            let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| i.to_string());
            if a >= n {
                return Err(TreeError::UnknownVertex(name(a)));
            }
            if b >= n {
                return Err(TreeError::UnknownVertex(name(b)));
            }
            if a == b {
                return Err(TreeError::SelfLoop(name(a)));
            }
            if s == EdgeState::None {
                return Err(TreeError::NoneEdge(name(a), name(b)));
            }
            if adj[a].iter().any(|&(x, _)| x == b) {
                return Err(TreeError::RepeatedEdge(name(a), name(b)));
            }
            if !uf.union(a, b) {
                return Err(TreeError::Cycle(name(a), name(b)));
            }
            adj[a].push((b, s));
            adj[b].push((a, s.reversed()));
        }
        if let Some(v) = (1..n).find(|&v| uf.find(v) != uf.find(0)) {
            return Err(TreeError::Disconnected(names[v].clone()));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(DLTree { names, labels, adj })
    }

    /// Same as [`DLTree::new`] with edges given by vertex name.
    pub fn from_named(
        vertices: Vec<(String, LabelPair)>,
        edges: &[(&str, &str, EdgeState)],
    ) -> Result<Self, TreeError> {
        let idx = |n: &str| {
            vertices
                .iter()
                .position(|(v, _)| v == n)
                .ok_or_else(|| TreeError::UnknownVertex(n.to_string()))
        };
        let mut indexed = Vec::with_capacity(edges.len());
        for &(a, b, s) in edges {
            indexed.push((idx(a)?, idx(b)?, s));
        }
        DLTree::new(vertices, &indexed)
    }

    /// The intersection graph as a tree, if it is one.
    pub fn from_graph(g: &IntersectionGraph) -> Result<Self, TreeError> {
        let vertices = g.names().iter().cloned().zip(g.labels().iter().copied()).collect();
        let edges: Vec<_> = g.edges().collect();
        DLTree::new(vertices, &edges)
    }

    pub fn to_graph(&self) -> IntersectionGraph {
        let mut g = IntersectionGraph::new(self.vertices());
        for (a, b, s) in self.edges() {
            g.set_edge(a, b, s);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn label(&self, v: usize) -> LabelPair {
        self.labels[v]
    }

    pub fn labels(&self) -> &[LabelPair] {
        &self.labels
    }

    pub fn vertices(&self) -> Vec<(String, LabelPair)> {
        self.names.iter().cloned().zip(self.labels.iter().copied()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.labels[v].is_marked()
    }

    pub fn marked_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_marked(v)).collect()
    }

    /// Distinct colors used by the labels.
    pub fn colors(&self) -> BTreeSet<Color> {
        self.labels.iter().flat_map(|l| [l.lo(), l.hi()]).collect()
    }

    /// Neighbors of `v` with the state of `v -> neighbor`.
    pub fn neighbors(&self, v: usize) -> &[(usize, EdgeState)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge(&self, a: usize, b: usize) -> EdgeState {
        self.adj[a]
            .binary_search_by_key(&b, |&(x, _)| x)
            .map(|i| self.adj[a][i].1)
            .unwrap_or(EdgeState::None)
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.edge(a, b) != EdgeState::None
    }

    /// Edges as `(a, b, state of a -> b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeState)> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for (a, list) in self.adj.iter().enumerate() {
            for &(b, s) in list {
                if a < b {
                    out.push((a, b, s));
                }
            }
        }
        out
    }

    /// Copy with every label passed through `f`.
    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> DLTree {
        DLTree {
            names: self.names.clone(),
            labels: self.labels.iter().map(|l| l.map(&f)).collect(),
            adj: self.adj.clone(),
        }
    }

    /// Copy with vertex names passed through `f`. Fails if the new names
    /// collide or are not valid identifiers.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<DLTree, TreeError> {
        let vertices = self.names.iter().map(|n| f(n)).zip(self.labels.iter().copied()).collect();
        DLTree::new(vertices, &self.edges())
    }

    /// BFS parents from `root` (`usize::MAX` at the root).
    fn parents(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// The unique path from `a` to `b`, both included.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let parent = self.parents(b);
        let mut path = vec![a];
        let mut v = a;
        while v != b {
            v = parent[v];
            path.push(v);
        }
        path
    }

    /// Vertices reachable from `start` without passing through a `blocked`
    /// vertex, sorted.
    pub fn reach_avoiding(&self, start: usize, blocked: &[bool]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &(w, _) in &self.adj[v] {
                if !seen[w] && !blocked[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The boughs of `v`: one per neighbor, classified light or heavy.
    ///
    /// A bough is light if it holds at most one marked vertex and that
    /// vertex, if present, is adjacent to `v`.
    pub fn boughs(&self, v: usize) -> Vec<Bough> {
        let mut blocked = vec![false; self.len()];
        blocked[v] = true;
        self.adj[v]
            .iter()
            .map(|&(root, _)| {
                let vertices = self.reach_avoiding(root, &blocked);
                let marked: Vec<usize> = vertices.iter().copied().filter(|&x| self.is_marked(x)).collect();
                let light = marked.is_empty() || (marked.len() == 1 && marked[0] == root);
                Bough { anchor: v, root, vertices, heavy: !light }
            })
            .collect()
    }

    /// Deterministic spine: among paths between two marked vertices, the
    /// longest, ties broken by the lexicographically smallest sequence of
    /// vertex names.
    pub fn spine(&self) -> Spine {
        let marked = self.marked_vertices();
        match marked.len() {
            0 => return Spine::default(),
            1 => return Spine { vertices: marked },
            _ => {}
        }
        let mut best: Option<Vec<usize>> = None;
        for &a in &marked {
            let dist = self.distances(a);
            let far = marked.iter().filter(|&&b| b != a).map(|&b| dist[b]).max().unwrap_or(0);
            for &b in marked.iter().filter(|&&b| b != a && dist[b] == far) {
                let cand = self.path(a, b);
                best = match best {
                    None => Some(cand),
                    Some(cur) => {
                        if cand.len() > cur.len()
                            || (cand.len() == cur.len() && self.name_seq_less(&cand, &cur))
                        {
                            Some(cand)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        Spine { vertices: best.unwrap_or_default() }
    }

    fn name_seq_less(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().map(|&v| &self.names[v]).lt(b.iter().map(|&v| &self.names[v]))
    }

    fn distances(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::from([root]);
        dist[root] = 0;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// One or two centers (vertices of minimum eccentricity).
    pub fn centers(&self) -> Vec<usize> {
        let n = self.len();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &(w, _) in &self.adj[v] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// Encoding of the tree rooted at `root`, children sorted.
    fn rooted_code(&self, root: usize) -> String {
        let n = self.len();
        let parent = self.parents(root);
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, _) in &self.adj[v] {
                if w != parent[v] {
                    queue.push_back(w);
                }
            }
        }
        let mut code: Vec<String> = vec![String::new(); n];
        for &v in order.iter().rev() {
            let mut children: Vec<String> = self.adj[v]
                .iter()
                .filter(|&&(w, _)| w != parent[v])
                .map(|&(w, s)| {
                    let tag = match s {
                        EdgeState::Forward => 'd',
                        EdgeState::Backward => 'a',
                        _ => 'u',
                    };
                    let mut c = String::with_capacity(code[w].len() + 1);
                    c.push(tag);
                    c.push_str(&code[w]);
                    c
                })
                .collect();
            children.sort_unstable();
            let l = self.labels[v];
            let mut s = alloc::format!("({},{}", l.lo(), l.hi());
            for c in children {
                s.push_str(&c);
            }
            s.push(')');
            code[v] = s;
        }
        core::mem::take(&mut code[root])
    }

    /// Encoding shared by exactly the trees isomorphic to this one (vertex
    /// bijections preserving labels and edge states, orientation included).
    pub fn canonical(&self) -> String {
        self.centers().into_iter().map(|c| self.rooted_code(c)).min().unwrap_or_default()
    }
}

pub fn canonical_tree(t: &DLTree) -> String {
    t.canonical()
}

pub fn tree_iso(a: &DLTree, b: &DLTree) -> bool {
    a.len() == b.len() && a.canonical() == b.canonical()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
