//! File formats, the exhaustive enumeration oracle, random generators and
//! the command-line front end around `chordweave-core`.

pub mod cli;
pub mod dot;
pub mod format;
pub mod json;
pub mod oracle;
pub mod sample;

pub use chordweave_core as core;
