//! Bitmask subsets of a poset carrier.
//!
//! A [`Subset`] remembers the identity of the poset it was drawn from. Mixing
//! subsets of different posets is a contract violation; it is caught by
//! `debug_assert!` in the binary set operations and in every poset method
//! that takes a subset.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{BitAnd, BitOr, Sub};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use smallvec::{smallvec, SmallVec};

use crate::ElementId;

const WORD: usize = 64;

type Words = SmallVec<[u64; 2]>;

/// Identity token shared by a poset and every subset drawn from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PosetId(u64);

impl PosetId {
    pub(crate) fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        PosetId(NEXT.fetch_add(1, AtomicOrdering::Relaxed))
    }
}

/// A subset of `{0, .., universe - 1}` stored as 64-bit blocks.
///
/// Equality, hashing and ordering look only at the members and the universe
/// size, never at the home poset. The total order sorts by cardinality first
/// and then lexicographically by the sorted member list, which is the
/// "signature order" used to lay out completions deterministically.
#[derive(Clone)]
pub struct Subset {
    home: PosetId,
    universe: usize,
    words: Words,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(WORD)
}

impl Subset {
    pub(crate) fn empty(home: PosetId, universe: usize) -> Self {
        Subset {
            home,
            universe,
            words: smallvec![0; word_count(universe)],
        }
    }

    pub(crate) fn full(home: PosetId, universe: usize) -> Self {
        let mut s = Self::empty(home, universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub(crate) fn from_mask(home: PosetId, universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= WORD);
        let mut s = Self::empty(home, universe);
        if universe > 0 {
            s.words[0] = mask;
        }
        s
    }

    pub fn home(&self) -> PosetId {
        self.home
    }

    /// Size of the carrier this subset lives in.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, x: ElementId) -> bool {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        self.words[x / WORD] & (1 << (x % WORD)) != 0
    }

    pub fn insert(&mut self, x: ElementId) {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        self.words[x / WORD] |= 1 << (x % WORD);
    }

    pub fn remove(&mut self, x: ElementId) {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        self.words[x / WORD] &= !(1 << (x % WORD));
    }

    pub fn with(mut self, x: ElementId) -> Self {
        self.insert(x);
        self
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Members<'_> {
        Members {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<ElementId> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.iter().collect()
    }

    /// The single-word mask, available when the universe fits in 64 bits.
    pub fn as_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn check_home(&self, other: &Subset) {
        debug_assert_eq!(self.home, other.home, "subsets drawn from different posets");
        debug_assert_eq!(self.universe, other.universe);
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.check_home(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Subset) -> bool {
        other.is_subset(self)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.check_home(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &Subset) {
        self.check_home(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        self.check_home(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Subset) {
        self.check_home(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> Subset {
        let mut s = Subset::full(self.home, self.universe);
        s.difference_with(self);
        s
    }
}

impl PartialEq for Subset {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.words == other.words
    }
}

impl Eq for Subset {}

impl Hash for Subset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.universe.hash(state);
        self.words.hash(state);
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for &Subset {
    type Output = Subset;
    fn bitor(self, rhs: &Subset) -> Subset {
        self.union(rhs)
    }
}

impl BitAnd for &Subset {
    type Output = Subset;
    fn bitand(self, rhs: &Subset) -> Subset {
        self.intersection(rhs)
    }
}

impl Sub for &Subset {
    type Output = Subset;
    fn sub(self, rhs: &Subset) -> Subset {
        self.difference(rhs)
    }
}

impl<'a> IntoIterator for &'a Subset {
    type Item = ElementId;
    type IntoIter = Members<'a>;
    fn into_iter(self) -> Members<'a> {
        self.iter()
    }
}

pub struct Members<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(universe: usize, xs: &[usize]) -> Subset {
        let home = PosetId(0);
        let mut s = Subset::empty(home, universe);
        for &x in xs {
            s.insert(x);
        }
        s
    }

    #[test]
    fn members_span_blocks() {
        let s = set(130, &[0, 63, 64, 127, 129]);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 127, 129]);
        assert_eq!(s.len(), 5);
        assert!(s.contains(64));
        assert!(!s.contains(65));
    }

    #[test]
    fn signature_order_is_cardinality_then_lex() {
        let mut v = [
            set(3, &[0, 1, 2]),
            set(3, &[1, 2]),
            set(3, &[0, 2]),
            set(3, &[0, 1]),
            set(3, &[2]),
        ];
        v.sort();
        let listed: Vec<_> = v.iter().map(Subset::to_vec).collect();
        assert_eq!(
            listed,
            vec![vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
    }

    #[test]
    fn set_algebra() {
        let a = set(70, &[1, 2, 66]);
        let b = set(70, &[2, 3, 66, 69]);
        assert_eq!((&a | &b).to_vec(), vec![1, 2, 3, 66, 69]);
        assert_eq!((&a & &b).to_vec(), vec![2, 66]);
        assert_eq!((&a - &b).to_vec(), vec![1]);
        assert!(set(70, &[2, 66]).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.complement().len(), 67);
        assert!(set(70, &[]).is_empty());
    }
}
