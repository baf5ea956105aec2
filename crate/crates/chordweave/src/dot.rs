use std::fmt::Write as _;

use chordweave_core::{EdgeState, IntersectionGraph};

/// Graphviz rendering. Undirected edges are drawn once with `dir=none`;
/// a backward edge is drawn from its head end so every arrow points the
/// way the tally does.
pub fn to_dot(g: &IntersectionGraph) -> String {
    if g.vertex_count() == 0 {
        return "digraph { }\n".to_string();
    }
    let mut out = String::from("digraph {\n");
    for (name, label) in g.names().iter().zip(g.labels()) {
        let _ = writeln!(out, "  \"{name}\" [label=\"{name}:{label}\"];");
    }
    for (a, b, s) in g.edges() {
        let (a, b) = (&g.names()[a], &g.names()[b]);
        let _ = match s {
            EdgeState::Forward => writeln!(out, "  \"{a}\" -> \"{b}\";"),
            EdgeState::Backward => writeln!(out, "  \"{b}\" -> \"{a}\";"),
            _ => writeln!(out, "  \"{a}\" -> \"{b}\" [dir=none];"),
        };
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_diagram;
    use chordweave_core::gamma;

    #[test]
    fn empty_graph() {
        assert_eq!(to_dot(&IntersectionGraph::default()), "digraph { }\n");
    }

    #[test]
    fn edges() {
        let g = gamma(&parse_diagram("1: a b a b").unwrap());
        assert_eq!(
            to_dot(&g),
            "digraph {\n  \"a\" [label=\"a:{1,1}\"];\n  \"b\" [label=\"b:{1,1}\"];\n  \"a\" -> \"b\" [dir=none];\n}\n"
        );
        let g = gamma(&parse_diagram("1: x\n2: y x\n3: y").unwrap());
        assert!(to_dot(&g).contains("  \"y\" -> \"x\";\n"));
    }
}
