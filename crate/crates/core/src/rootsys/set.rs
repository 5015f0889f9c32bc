use fixedbitset::FixedBitSet;

use super::{Root, RootSystem};

/// A subset of the roots of one [`RootSystem`], by root index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSet {
    bits: FixedBitSet,
}

impl RootSet {
    pub fn empty(rs: &RootSystem) -> Self {
        RootSet { bits: FixedBitSet::with_capacity(rs.len()) }
    }

    pub fn full(rs: &RootSystem) -> Self {
        let mut s = Self::empty(rs);
        s.bits.insert_range(..);
        s
    }

    pub fn positive(rs: &RootSystem) -> Self {
        Self::from_indices(rs, rs.positive_indices())
    }

    pub fn negative(rs: &RootSystem) -> Self {
        Self::from_indices(rs, rs.num_positive()..rs.len())
    }

    pub fn from_indices(rs: &RootSystem, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(rs);
        for i in idx {
            s.bits.insert(i);
        }
        s
    }

    /// Looks every vector up in `rs`; `None` if one of them is not a root.
    pub fn from_roots<'a>(rs: &RootSystem, roots: impl IntoIterator<Item = &'a Root>) -> Option<Self> {
        let mut s = Self::empty(rs);
        for r in roots {
            s.bits.insert(rs.index_of(&r.0)?);
        }
        Some(s)
    }

    pub fn from_coords(rs: &RootSystem, roots: &[Vec<i64>]) -> Option<Self> {
        let mut s = Self::empty(rs);
        for r in roots {
            s.bits.insert(rs.index_of(r)?);
        }
        Some(s)
    }

    /// Bit `i` of `mask` selects root `i`.
    pub fn from_mask(rs: &RootSystem, mask: u64) -> Self {
        Self::from_indices(rs, (0..rs.len().min(64)).filter(|i| mask >> i & 1 == 1))
    }

    pub fn to_mask(&self) -> u64 {
        self.iter().filter(|&i| i < 64).fold(0, |m, i| m | 1 << i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &RootSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &RootSet) -> RootSet {
        RootSet { bits: &self.bits | &other.bits }
    }

    pub fn intersection(&self, other: &RootSet) -> RootSet {
        RootSet { bits: &self.bits & &other.bits }
    }

    pub fn difference(&self, other: &RootSet) -> RootSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        RootSet { bits }
    }

    pub fn complement(&self, rs: &RootSystem) -> RootSet {
        RootSet::full(rs).difference(self)
    }

    /// `-X`.
    pub fn negated(&self, rs: &RootSystem) -> RootSet {
        RootSet::from_indices(rs, self.iter().map(|i| rs.neg(i)))
    }

    pub fn roots<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = &'a Root> + 'a {
        self.iter().map(move |i| rs.root(i))
    }

    /// Sorted coordinate vectors, for display and golden tests.
    pub fn sorted_coords(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self.roots(rs).map(|r| r.0.clone()).collect();
        v.sort();
        v
    }
}
