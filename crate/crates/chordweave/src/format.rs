//! Text formats.
//!
//! `.cd` diagrams:
//!
//! ```text
//! components: 2
//! 1: a b
//! 2: b a
//! ```
//!
//! Component lines may come in any order; each index `1..=k` appears once.
//! The header is optional, in which case `k` is the largest index given.
//!
//! `.tree` files list `vertex <id> {i,j}` lines and `edge <a> -> <b>`,
//! `edge <a> <- <b>` or `edge <a> -- <b>` lines. Both formats ignore blank
//! lines and `#` comments.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use chordweave_core::{ChordDiagram, Color, DLTree, DiagramError, EdgeState, LabelPair, TreeError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("{0}")]
    Invalid(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, column, message: message.into() }
}

/// Content lines with comments removed: (1-based line number, text).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        (!l.trim().is_empty()).then_some((i + 1, l))
    })
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn column_of(line: &str, part: &str) -> usize {
    // `part` is always a subslice of `line`
    part.as_ptr() as usize - line.as_ptr() as usize + 1
}

pub fn parse_diagram(text: &str) -> Result<ChordDiagram, FormatError> {
    let mut declared: Option<usize> = None;
    let mut comps: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (no, line) in content_lines(text) {
        let Some((head, rest)) = line.split_once(':') else {
            let col = column_of(line, line.trim_start());
            return Err(syntax(no, col, "expected `components: k` or `i: chords...`"));
        };
        let key = head.trim();
        let key_col = column_of(line, head.trim_start());
        if key == "components" {
            if declared.is_some() {
                return Err(syntax(no, key_col, "duplicate `components` header"));
            }
            let value = rest.trim();
            let k: usize = value
                .parse()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| syntax(no, column_of(line, rest.trim_start()), "component count must be a positive integer"))?;
            declared = Some(k);
            continue;
        }
        let index: usize = key
            .parse()
            .ok()
            .filter(|&i| i >= 1)
            .ok_or_else(|| syntax(no, key_col, format!("`{key}` is not a component index")))?;
        let mut chords = Vec::new();
        for (col, tok) in tokens(rest) {
            if !chordweave_core::is_valid_id(tok) {
                let col = column_of(line, rest) + col - 1;
                return Err(syntax(no, col, format!("invalid chord name `{tok}`")));
            }
            chords.push(tok.to_string());
        }
        if comps.insert(index, chords).is_some() {
            return Err(syntax(no, key_col, format!("component {index} given twice")));
        }
    }
    let k = match declared {
        Some(k) => k,
        None => comps.keys().next_back().copied().ok_or(DiagramError::NoComponents)?,
    };
    if let Some((&i, _)) = comps.iter().find(|(&i, _)| i > k) {
        return Err(FormatError::Invalid(format!("component {i} exceeds the declared count {k}")));
    }
    if let Some(missing) = (1..=k).find(|i| !comps.contains_key(i)) {
        return Err(FormatError::Invalid(format!("component {missing} is missing ({k} declared)")));
    }
    let seqs: Vec<Vec<String>> = comps.into_values().collect();
    Ok(ChordDiagram::new(&seqs)?)
}

pub fn write_diagram(d: &ChordDiagram) -> String {
    let mut out = format!("components: {}\n", d.component_count());
    for (i, seq) in d.sequences().iter().enumerate() {
        let _ = write!(out, "{}:", i + 1);
        for &c in seq {
            out.push(' ');
            out.push_str(d.name(c));
        }
        out.push('\n');
    }
    out
}

fn parse_label(s: &str) -> Option<LabelPair> {
    let inner = s.trim().strip_prefix('{')?.strip_suffix('}')?;
    let (a, b) = inner.split_once(',')?;
    let a: Color = a.trim().parse().ok()?;
    let b: Color = b.trim().parse().ok()?;
    (a >= 1 && b >= 1).then(|| LabelPair::new(a, b))
}

/// A name and the column it was read at.
type Located = (usize, String);

pub fn parse_tree(text: &str) -> Result<DLTree, FormatError> {
    let mut vertices: Vec<(String, LabelPair)> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    // edges wait until every vertex is known
    let mut pending: Vec<(usize, [Located; 2], EdgeState)> = Vec::new();
    for (no, line) in content_lines(text) {
        let toks = tokens(line);
        let (kcol, keyword) = toks[0];
        match keyword {
            "vertex" => {
                let Some(&(icol, id)) = toks.get(1) else {
                    return Err(syntax(no, kcol, "expected `vertex <id> {i,j}`"));
                };
                if !chordweave_core::is_valid_id(id) {
                    return Err(syntax(no, icol, format!("invalid vertex name `{id}`")));
                }
                let Some(&(lcol, _)) = toks.get(2) else {
                    return Err(syntax(no, icol + id.len(), "missing label"));
                };
                let label = parse_label(&line[lcol - 1..])
                    .ok_or_else(|| syntax(no, lcol, "label must look like {i,j} with positive colors"))?;
                if index.insert(id.to_string(), vertices.len()).is_some() {
                    return Err(syntax(no, icol, format!("vertex `{id}` declared twice")));
                }
                vertices.push((id.to_string(), label));
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(syntax(no, kcol, "expected `edge <a> (->|<-|--) <b>`"));
                }
                let state = match toks[2].1 {
                    "->" => EdgeState::Forward,
                    "<-" => EdgeState::Backward,
                    "--" => EdgeState::Undirected,
                    op => return Err(syntax(no, toks[2].0, format!("unknown edge operator `{op}`"))),
                };
                let ends = [(toks[1].0, toks[1].1.to_string()), (toks[3].0, toks[3].1.to_string())];
                pending.push((no, ends, state));
            }
            other => return Err(syntax(no, kcol, format!("unknown keyword `{other}`"))),
        }
    }
    let mut edges = Vec::with_capacity(pending.len());
    for (no, ends, state) in pending {
        let mut idx = [0; 2];
        for (slot, (col, name)) in ends.iter().enumerate() {
            idx[slot] = *index
                .get(name)
                .ok_or_else(|| syntax(no, *col, format!("edge mentions unknown vertex `{name}`")))?;
        }
        edges.push((idx[0], idx[1], state));
    }
    Ok(DLTree::new(vertices, &edges)?)
}

pub fn edge_operator(state: EdgeState) -> &'static str {
    match state {
        EdgeState::Forward => "->",
        EdgeState::Backward => "<-",
        _ => "--",
    }
}

pub fn write_tree(t: &DLTree) -> String {
    let mut out = String::new();
    for (name, label) in t.names().iter().zip(t.labels()) {
        let _ = writeln!(out, "vertex {name} {label}");
    }
    for (a, b, s) in t.edges() {
        let _ = writeln!(out, "edge {} {} {}", t.name(a), edge_operator(s), t.name(b));
    }
    out
}
