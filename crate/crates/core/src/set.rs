//! Bitset over element indices of a finite frame.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Hard upper bound on the number of elements any structure may carry.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element indices packed into a single `u64`.
///
/// Serializes as a sorted array of indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(x: usize) -> Self {
        ElemSet(1u64 << x)
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u64 << x;
    }

    #[inline]
    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u64 << x);
    }

    #[inline]
    pub fn with(self, x: usize) -> Self {
        ElemSet(self.0 | 1u64 << x)
    }

    #[inline]
    pub fn without(self, x: usize) -> Self {
        ElemSet(self.0 & !(1u64 << x))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Iterates over every subset of `self` (including empty and `self`).
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElemSet;

    fn next(&mut self) -> Option<ElemSet> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            Some((cur.wrapping_sub(self.universe)) & self.universe)
        };
        Some(ElemSet(cur))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!(
                "element index {bad} exceeds the {MAX_ELEMENTS}-element limit"
            )));
        }
        Ok(v.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_cover_powerset() {
        let s: ElemSet = [1, 3, 4].into_iter().collect();
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset(s)));
        assert_eq!(all.first(), Some(&ElemSet::EMPTY));
        assert_eq!(all.last(), Some(&s));
    }

    #[test]
    fn full_handles_word_size() {
        assert_eq!(ElemSet::full(64).len(), 64);
        assert_eq!(ElemSet::full(0), ElemSet::EMPTY);
        assert_eq!(ElemSet::full(3).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn serializes_sorted() {
        let s: ElemSet = [5, 0, 2].into_iter().collect();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,2,5]");
        let back: ElemSet = serde_json::from_str("[2,5,0]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<ElemSet>("[64]").is_err());
    }
}
