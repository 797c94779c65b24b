//! Small fixed-universe bit sets used for vertex sets and edge sets.
//!
//! Sets are stored as little-endian words with trailing zero words trimmed, so
//! two sets with the same members always compare and hash equal regardless of
//! how they were built. Up to 128 ids live inline without allocation.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use smallvec::SmallVec;

const WORD: usize = 64;

/// Marker for sets of vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexTag {}

/// Marker for sets of edge ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeTag {}

/// A set of small non-negative ids, tagged with the kind of id it holds.
pub struct IdSet<T> {
    words: SmallVec<[u64; 2]>,
    _tag: PhantomData<T>,
}

pub type VertexSet = IdSet<VertexTag>;
pub type EdgeSet = IdSet<EdgeTag>;

impl<T> IdSet<T> {
    pub fn new() -> Self {
        IdSet {
            words: SmallVec::new(),
            _tag: PhantomData,
        }
    }

    /// All ids in `0..n`.
    pub fn full(n: usize) -> Self {
        let mut words: SmallVec<[u64; 2]> = SmallVec::from_elem(u64::MAX, n / WORD);
        if !n.is_multiple_of(WORD) {
            words.push((1u64 << (n % WORD)) - 1);
        }
        let mut s = IdSet {
            words,
            _tag: PhantomData,
        };
        s.trim();
        s
    }

    pub fn singleton(id: usize) -> Self {
        let mut s = Self::new();
        s.insert(id);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, id: usize) -> bool {
        let (w, b) = (id / WORD, id % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, id: usize) -> bool {
        let (w, b) = (id / WORD, id % WORD);
        if w >= self.words.len() {
            return false;
        }
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        had
    }

    pub fn contains(&self, id: usize) -> bool {
        let (w, b) = (id / WORD, id % WORD);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, o) in words.iter_mut().zip(short.words.iter()) {
            *w |= o;
        }
        IdSet {
            words,
            _tag: PhantomData,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = IdSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
            _tag: PhantomData,
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(other.words.iter()) {
            *w &= !o;
        }
        let mut s = IdSet {
            words,
            _tag: PhantomData,
        };
        s.trim();
        s
    }

    /// Complement relative to the universe `0..n`.
    pub fn complement(&self, n: usize) -> Self {
        Self::full(n).difference(self)
    }

    pub fn union_with(&mut self, other: &Self) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(other.words.iter()) {
            *w |= o;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        for (w, o) in self.words.iter_mut().zip(other.words.iter()) {
            *w &= !o;
        }
        self.trim();
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(other.words.iter())
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self.intersects(other)
    }

    /// The largest member plus one, or zero for the empty set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(w) => (self.words.len() - 1) * WORD + (WORD - w.leading_zeros() as usize),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + b);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a, T> IntoIterator for &'a IdSet<T> {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl<T> FromIterator<usize> for IdSet<T> {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for id in iter {
            s.insert(id);
        }
        s
    }
}

impl<T> Default for IdSet<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for IdSet<T> {
    fn clone(&self) -> Self {
        IdSet {
            words: self.words.clone(),
            _tag: PhantomData,
        }
    }
}

impl<T> PartialEq for IdSet<T> {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words
    }
}

impl<T> Eq for IdSet<T> {}

impl<T> Hash for IdSet<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

/// Lexicographic order on the sorted member lists, so `{0,1} < {0,2} < {1}`.
impl<T> Ord for IdSet<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl<T> PartialOrd for IdSet<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T> fmt::Debug for IdSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_complement() {
        let s = EdgeSet::full(70);
        assert_eq!(s.len(), 70);
        assert!(s.contains(69));
        assert!(!s.contains(70));
        let c = EdgeSet::from_iter([1, 65]).complement(70);
        assert_eq!(c.len(), 68);
        assert!(!c.contains(65));
        assert_eq!(EdgeSet::full(0), EdgeSet::new());
    }

    #[test]
    fn trailing_words_do_not_affect_equality() {
        let mut a = VertexSet::from_iter([3, 100]);
        a.remove(100);
        assert_eq!(a, VertexSet::singleton(3));
        assert_eq!(a.bound(), 4);
    }

    #[test]
    fn lexicographic_order() {
        let a = VertexSet::from_iter([0, 1]);
        let b = VertexSet::from_iter([0, 2]);
        let c = VertexSet::from_iter([1]);
        assert!(VertexSet::new() < a);
        assert!(a < b && b < c);
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(
            xs in proptest::collection::btree_set(0usize..150, 0..40),
            ys in proptest::collection::btree_set(0usize..150, 0..40),
        ) {
            let a: EdgeSet = xs.iter().copied().collect();
            let b: EdgeSet = ys.iter().copied().collect();
            prop_assert_eq!(a.union(&b).to_vec(), xs.union(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.intersection(&b).to_vec(), xs.intersection(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.difference(&b).to_vec(), xs.difference(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            prop_assert_eq!(a.intersects(&b), !xs.is_disjoint(&ys));
            prop_assert_eq!(a.len(), xs.len());
            let mut u = a.clone();
            u.union_with(&b);
            prop_assert_eq!(u, a.union(&b));
        }
    }
}
