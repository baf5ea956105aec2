//! Intersection graphs of string-link chord diagrams.
//!
//! A string-link chord diagram has `k` oriented segments (components, or
//! colors `1..=k`) and `n` chords whose endpoints sit on them. Its
//! intersection graph has one vertex per chord, labeled by the unordered
//! pair of colors the chord touches, and a mod-2 count of directed edges
//! between chords whose endpoints share a component.
//!
//! This crate decides which labeled directed *trees* arise as such graphs
//! ([`recognize`]) and builds a witness diagram for every tree that does
//! ([`realize`]). It is `no_std` and only needs `alloc`; parsing, file
//! formats and the enumeration oracle live in the `chordweave` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod diagram;
pub mod igraph;
mod label;
pub mod realize;
pub mod recognize;
pub mod tree;

pub use diagram::{Arc, ChordDiagram, ColorGraph, DiagramError, Endpoint};
pub use igraph::{gamma, raw_edge_count, IntersectionGraph};
pub use label::{Color, EdgeState, LabelPair};
pub use realize::{realize, RealizeError};
pub use recognize::{recognize, Reason, Regime, Verdict, Witness};
pub use tree::{Bough, DLTree, Spine, TreeError};

/// True iff `name` is a legal chord or vertex identifier: nonempty, ASCII
/// alphanumerics and `_` only.
pub fn is_valid_id(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}
