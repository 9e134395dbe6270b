use std::fmt;

/// A set of atom indices stored as a bitmask.
///
/// Atoms are numbered from 0; the library never needs more than 32 of them
/// (enumeration stops well before that, and lcm lattices at desk scale have
/// at most a dozen generators).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AtomSet(pub u32);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn singleton(i: usize) -> Self {
        AtomSet(1 << i)
    }

    /// The full set {0, 1, …, n-1}.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n == 32 {
            AtomSet(u32::MAX)
        } else {
            AtomSet((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut bits = 0u32;
        for i in iter {
            bits |= 1 << i;
        }
        AtomSet(bits)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn insert(self, i: usize) -> Self {
        AtomSet(self.0 | 1 << i)
    }

    #[must_use]
    pub fn remove(self, i: usize) -> Self {
        AtomSet(self.0 & !(1 << i))
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        AtomSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        AtomSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        AtomSet(self.0 & !other.0)
    }

    #[must_use]
    pub fn complement_in(self, n: usize) -> Self {
        Self::full(n).difference(self)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset_of(self, other: Self) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn is_disjoint_from(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Sort key giving the canonical element order: cardinality first, then
    /// the bitmask value.
    pub fn canonical_key(self) -> (usize, u32) {
        (self.len(), self.0)
    }

    /// All subsets, including the empty set and `self` itself.
    pub fn subsets(self) -> impl Iterator<Item = AtomSet> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some(cur.wrapping_sub(mask) & mask)
            };
            Some(AtomSet(cur))
        })
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for AtomSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}
