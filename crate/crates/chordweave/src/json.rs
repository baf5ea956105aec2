//! JSON mirrors of the text formats, and verdict serialization. Every
//! document written carries `"schema": 1`; reading accepts its absence.

use chordweave_core::{
    recognize::Witness, ChordDiagram, Color, DLTree, EdgeState, IntersectionGraph, LabelPair, Verdict,
};
use serde::{Deserialize, Serialize};

use crate::format::FormatError;

pub const SCHEMA: u32 = 1;

fn schema() -> u32 {
    SCHEMA
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DiagramDoc {
    #[serde(default = "schema")]
    pub schema: u32,
    pub components: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    pub label: [Color; 2],
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub a: String,
    pub b: String,
    pub state: String,
}

/// Graphs and trees share one shape.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    #[serde(default = "schema")]
    pub schema: u32,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
}

pub fn diagram_to_json(d: &ChordDiagram) -> String {
    let components = d
        .sequences()
        .iter()
        .map(|s| s.iter().map(|&c| d.name(c).to_string()).collect())
        .collect();
    to_string(&DiagramDoc { schema: SCHEMA, components })
}

pub fn diagram_from_json(text: &str) -> Result<ChordDiagram, FormatError> {
    let doc: DiagramDoc = serde_json::from_str(text)?;
    Ok(ChordDiagram::new(&doc.components)?)
}

fn vertex_docs(names: &[String], labels: &[LabelPair]) -> Vec<VertexDoc> {
    names
        .iter()
        .zip(labels)
        .map(|(n, l)| VertexDoc { id: n.clone(), label: [l.lo(), l.hi()] })
        .collect()
}

fn edge_doc(names: &[String], a: usize, b: usize, s: EdgeState) -> EdgeDoc {
    EdgeDoc { a: names[a].clone(), b: names[b].clone(), state: s.as_str().to_string() }
}

pub fn graph_doc(g: &IntersectionGraph) -> GraphDoc {
    GraphDoc {
        schema: SCHEMA,
        vertices: vertex_docs(g.names(), g.labels()),
        edges: g.edges().map(|(a, b, s)| edge_doc(g.names(), a, b, s)).collect(),
    }
}

pub fn graph_to_json(g: &IntersectionGraph) -> String {
    to_string(&graph_doc(g))
}

pub fn tree_to_json(t: &DLTree) -> String {
    let doc = GraphDoc {
        schema: SCHEMA,
        vertices: vertex_docs(t.names(), t.labels()),
        edges: t.edges().into_iter().map(|(a, b, s)| edge_doc(t.names(), a, b, s)).collect(),
    };
    to_string(&doc)
}

pub fn tree_from_json(text: &str) -> Result<DLTree, FormatError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let vertices: Vec<(String, LabelPair)> =
        doc.vertices.into_iter().map(|v| (v.id, LabelPair::new(v.label[0], v.label[1]))).collect();
    if let Some((n, _)) = vertices.iter().find(|(_, l)| l.lo() == 0) {
        return Err(FormatError::Invalid(format!("vertex `{n}` has color 0")));
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let state = match e.state.as_str() {
            "forward" => EdgeState::Forward,
            "backward" => EdgeState::Backward,
            "undirected" => EdgeState::Undirected,
            other => return Err(FormatError::Invalid(format!("unknown edge state `{other}`"))),
        };
        edges.push((e.a.as_str(), e.b.as_str(), state));
    }
    Ok(DLTree::from_named(vertices, &edges)?)
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessDoc {
    None,
    Edge { vertices: [String; 2] },
    HeavyBoughs { vertex: String, boughs: Vec<Vec<String>> },
    SpineSegment { v: String, w: String, segment: Vec<String> },
    Colors { colors: Vec<Color> },
    Vertices { vertices: Vec<String> },
    Path { vertices: Vec<String> },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub schema: u32,
    pub accepted: bool,
    pub regime: String,
    pub reason: String,
    pub condition: Option<u8>,
    pub witness: WitnessDoc,
    pub color_order: Vec<Color>,
    pub multiplicities: Vec<usize>,
}

pub fn witness_doc(t: &DLTree, w: &Witness) -> WitnessDoc {
    let names = |vs: &[usize]| vs.iter().map(|&v| t.name(v).to_string()).collect::<Vec<_>>();
    match w {
        Witness::None => WitnessDoc::None,
        Witness::Edge(a, b) => WitnessDoc::Edge { vertices: [t.name(*a).to_string(), t.name(*b).to_string()] },
        Witness::HeavyBoughs { vertex, boughs } => WitnessDoc::HeavyBoughs {
            vertex: t.name(*vertex).to_string(),
            boughs: boughs.iter().map(|b| names(&b.vertices)).collect(),
        },
        Witness::SpineSegment { v, w, segment } => WitnessDoc::SpineSegment {
            v: t.name(*v).to_string(),
            w: t.name(*w).to_string(),
            segment: names(segment),
        },
        Witness::Colors(cs) => WitnessDoc::Colors { colors: cs.clone() },
        Witness::Vertices(vs) => WitnessDoc::Vertices { vertices: names(vs) },
        Witness::Path(vs) => WitnessDoc::Path { vertices: names(vs) },
    }
}

pub fn verdict_doc(t: &DLTree, v: &Verdict) -> VerdictDoc {
    VerdictDoc {
        schema: SCHEMA,
        accepted: v.accepted,
        regime: v.regime.as_str().to_string(),
        reason: v.code(),
        condition: v.reason.condition(),
        witness: witness_doc(t, &v.witness),
        color_order: v.color_order.clone(),
        multiplicities: v.multiplicities.clone(),
    }
}

pub fn verdict_to_json(t: &DLTree, v: &Verdict) -> String {
    to_string(&verdict_doc(t, v))
}

fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}
