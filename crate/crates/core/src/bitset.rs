//! Fixed-capacity bit strings backed by an array of machine words.
//!
//! The word type is a parameter so the bit-parallel search can be run with
//! different word widths; results never depend on the choice. [`BitSet`] is
//! the `u64` instantiation used everywhere by default.

use std::fmt;

use num_traits::{PrimInt, Unsigned};

/// Unsigned machine word usable as bit-string storage.
pub trait Word: PrimInt + Unsigned + fmt::Debug + Send + Sync + 'static {
    const BITS: usize;
}

impl Word for u8 {
    const BITS: usize = 8;
}
impl Word for u16 {
    const BITS: usize = 16;
}
impl Word for u32 {
    const BITS: usize = 32;
}
impl Word for u64 {
    const BITS: usize = 64;
}
impl Word for u128 {
    const BITS: usize = 128;
}

/// A set of indices in `0..capacity`, one bit per index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSetOf<W: Word> {
    words: Vec<W>,
    capacity: usize,
}

impl<W: Word> BitSetOf<W> {
    /// Empty set able to hold indices `0..capacity`.
    pub fn new(capacity: usize) -> Self {
        Self {
            words: vec![W::zero(); capacity.div_ceil(W::BITS)],
            capacity,
        }
    }

    /// Set containing every index in `0..capacity`.
    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for w in s.words.iter_mut() {
            *w = !W::zero();
        }
        s.clear_tail();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(capacity: usize, indices: I) -> Self {
        let mut s = Self::new(capacity);
        for i in indices {
            s.insert(i);
        }
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.capacity % W::BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last = *last & ((W::one() << rem) - W::one());
            }
        }
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn words(&self) -> &[W] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.capacity, "bit index {i} out of range {}", self.capacity);
        let w = &mut self.words[i / W::BITS];
        *w = *w | (W::one() << (i % W::BITS));
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.capacity, "bit index {i} out of range {}", self.capacity);
        let w = &mut self.words[i / W::BITS];
        *w = *w & !(W::one() << (i % W::BITS));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.capacity && (self.words[i / W::BITS] >> (i % W::BITS)) & W::one() == W::one()
    }

    /// Population count.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| w.is_zero())
    }

    /// `self ← self ∩ other`.
    #[inline]
    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, &b) in self.words.iter_mut().zip(other.words.iter()) {
            *a = *a & b;
        }
    }

    /// `self ← self ∪ other`.
    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, &b) in self.words.iter_mut().zip(other.words.iter()) {
            *a = *a | b;
        }
    }

    /// `self ← self \ other`.
    pub fn difference_with(&mut self, other: &Self) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, &b) in self.words.iter_mut().zip(other.words.iter()) {
            *a = *a & !b;
        }
    }

    /// `self ∩ other`, allocating a new set.
    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// Overwrite with `a ∩ b` without reallocating.
    #[inline]
    pub fn assign_intersection(&mut self, a: &Self, b: &Self) {
        debug_assert_eq!(a.capacity, b.capacity);
        self.capacity = a.capacity;
        self.words.clear();
        self.words
            .extend(a.words.iter().zip(b.words.iter()).map(|(&x, &y)| x & y));
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.first_from_word(0)
    }

    /// Smallest member whose word index is at least `word`. Scans upward only.
    #[inline]
    fn first_from_word(&self, word: usize) -> Option<usize> {
        self.words[word.min(self.words.len())..]
            .iter()
            .position(|w| !w.is_zero())
            .map(|off| {
                let wi = word + off;
                wi * W::BITS + self.words[wi].trailing_zeros() as usize
            })
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_, W> {
        Iter {
            set: self,
            word: 0,
            current: self.words.first().copied().unwrap_or_else(W::zero),
        }
    }

    /// Pops the smallest member at or after word `hint`, returning it.
    ///
    /// Callers that repeatedly remove the minimum can pass the previous
    /// result's word index to skip the already-empty prefix.
    #[inline]
    pub(crate) fn pop_first_from(&mut self, hint_word: usize) -> Option<usize> {
        let v = self.first_from_word(hint_word)?;
        self.remove(v);
        Some(v)
    }
}

impl<W: Word> fmt::Debug for BitSetOf<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a, W: Word> {
    set: &'a BitSetOf<W>,
    word: usize,
    current: W,
}

impl<W: Word> Iterator for Iter<'_, W> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if !self.current.is_zero() {
                let tz = self.current.trailing_zeros() as usize;
                self.current = self.current & (self.current - W::one());
                return Some(self.word * W::BITS + tz);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.current = self.set.words[self.word];
        }
    }
}

impl<'a, W: Word> IntoIterator for &'a BitSetOf<W> {
    type Item = usize;
    type IntoIter = Iter<'a, W>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn full_respects_capacity() {
        let s = BitSetOf::<u8>::full(11);
        assert_eq!(s.len(), 11);
        assert_eq!(s.iter().collect::<Vec<_>>(), (0..11).collect::<Vec<_>>());
        assert!(!s.contains(11));
        assert!(BitSetOf::<u64>::full(0).is_empty());
    }

    #[test]
    fn pop_first_walks_in_order() {
        let mut s = BitSetOf::<u16>::from_indices(40, [3, 17, 39]);
        assert_eq!(s.pop_first_from(0), Some(3));
        assert_eq!(s.pop_first_from(0), Some(17));
        assert_eq!(s.pop_first_from(1), Some(39));
        assert_eq!(s.pop_first_from(2), None);
    }

    proptest! {
        #[test]
        fn ops_match_btreeset(
            a in proptest::collection::btree_set(0usize..150, 0..60),
            b in proptest::collection::btree_set(0usize..150, 0..60),
        ) {
            let sa = BitSetOf::<u32>::from_indices(150, a.iter().copied());
            let sb = BitSetOf::<u32>::from_indices(150, b.iter().copied());

            let inter: BTreeSet<_> = a.intersection(&b).copied().collect();
            prop_assert_eq!(sa.intersection(&sb).iter().collect::<BTreeSet<_>>(), inter.clone());
            let mut buf = BitSetOf::<u32>::new(0);
            buf.assign_intersection(&sa, &sb);
            prop_assert_eq!(buf.len(), inter.len());

            let mut u = sa.clone();
            u.union_with(&sb);
            prop_assert_eq!(u.iter().collect::<BTreeSet<_>>(), a.union(&b).copied().collect::<BTreeSet<_>>());

            let mut d = sa.clone();
            d.difference_with(&sb);
            prop_assert_eq!(d.iter().collect::<BTreeSet<_>>(), a.difference(&b).copied().collect::<BTreeSet<_>>());

            prop_assert_eq!(sa.len(), a.len());
            prop_assert_eq!(sa.first(), a.iter().next().copied());
        }
    }
}
