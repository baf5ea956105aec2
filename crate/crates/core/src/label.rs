use core::fmt;

/// A component index. Colors are 1-based.
pub type Color = u32;

/// Unordered pair of colors carried by a chord (and by its vertex in the
/// intersection graph). Stored with `lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelPair {
    lo: Color,
    hi: Color,
}

impl LabelPair {
    pub const fn new(a: Color, b: Color) -> Self {
        if a <= b {
            LabelPair { lo: a, hi: b }
        } else {
            LabelPair { lo: b, hi: a }
        }
    }

    pub fn lo(self) -> Color {
        self.lo
    }

    pub fn hi(self) -> Color {
        self.hi
    }

    /// A vertex is marked when its chord joins two different components.
    pub fn is_marked(self) -> bool {
        self.lo != self.hi
    }

    pub fn contains(self, c: Color) -> bool {
        self.lo == c || self.hi == c
    }

    /// Occurrences of `c` in the pair, counted with multiplicity.
    pub fn count(self, c: Color) -> u32 {
        (self.lo == c) as u32 + (self.hi == c) as u32
    }

    pub fn shares_color(self, other: LabelPair) -> bool {
        other.contains(self.lo) || other.contains(self.hi)
    }

    pub fn map(self, mut f: impl FnMut(Color) -> Color) -> Self {
        LabelPair::new(f(self.lo), f(self.hi))
    }
}

impl fmt::Display for LabelPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// Summary of the directed edges between two vertices after mod-2
/// cancellation. `Forward`/`Backward` are relative to an ordered pair
/// `(a, b)`: `Forward` means a single surviving edge `a -> b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeState {
    #[default]
    None,
    Forward,
    Backward,
    Undirected,
}

impl EdgeState {
    /// Maps the parities of the `a -> b` and `b -> a` tallies to a state.
    pub fn from_parities(forward: bool, backward: bool) -> Self {
        match (forward, backward) {
            (false, false) => EdgeState::None,
            (true, false) => EdgeState::Forward,
            (false, true) => EdgeState::Backward,
            (true, true) => EdgeState::Undirected,
        }
    }

    /// The same edge seen from the other endpoint.
    pub fn reversed(self) -> Self {
        match self {
            EdgeState::Forward => EdgeState::Backward,
            EdgeState::Backward => EdgeState::Forward,
            s => s,
        }
    }

    pub fn is_directed(self) -> bool {
        matches!(self, EdgeState::Forward | EdgeState::Backward)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeState::None => "none",
            EdgeState::Forward => "forward",
            EdgeState::Backward => "backward",
            EdgeState::Undirected => "undirected",
        }
    }
}

impl fmt::Display for EdgeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_is_normalized() {
        assert_eq!(LabelPair::new(3, 1), LabelPair::new(1, 3));
        assert_eq!(LabelPair::new(3, 1).lo(), 1);
        assert!(LabelPair::new(1, 2).is_marked());
        assert!(!LabelPair::new(2, 2).is_marked());
        assert_eq!(LabelPair::new(2, 2).count(2), 2);
    }

    #[test]
    fn reversal_fixes_symmetric_states() {
        assert_eq!(EdgeState::Forward.reversed(), EdgeState::Backward);
        assert_eq!(EdgeState::Undirected.reversed(), EdgeState::Undirected);
        assert_eq!(EdgeState::None.reversed(), EdgeState::None);
    }
}
