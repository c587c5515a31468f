use core::fmt;

/// An entry of a Coxeter matrix: a positive integer or the symbol `∞`.
///
/// `∞` is its own variant so that divisibility and arithmetic never see it as
/// a number. With the derived ordering every finite value sorts before `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    Finite(u64),
    Infinity,
}

impl Entry {
    pub const fn finite(self) -> Option<u64> {
        match self {
            Entry::Finite(m) => Some(m),
            Entry::Infinity => None,
        }
    }

    pub const fn is_finite(self) -> bool {
        matches!(self, Entry::Finite(_))
    }

    /// Whether this entry divides the finite integer `m`. `∞` divides nothing.
    pub fn divides(self, m: u64) -> bool {
        match self {
            Entry::Finite(0) => false,
            Entry::Finite(k) => m % k == 0,
            Entry::Infinity => false,
        }
    }

    /// Whether this entry divides `other`, treating `∞` on either side as
    /// never dividing / never divided.
    pub fn divides_entry(self, other: Entry) -> bool {
        match other {
            Entry::Finite(m) => self.divides(m),
            Entry::Infinity => false,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Finite(m) => write!(f, "{m}"),
            Entry::Infinity => f.write_str("inf"),
        }
    }
}

impl From<u64> for Entry {
    fn from(m: u64) -> Self {
        Entry::Finite(m)
    }
}
