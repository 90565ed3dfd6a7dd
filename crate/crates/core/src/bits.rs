//! Fixed-universe bitsets.
//!
//! `SubsetBits` is the universal currency for subracks, conjugacy classes,
//! orbit blocks and partition blocks. The universe size is fixed at creation
//! and all set operations require equal universes.

use std::fmt;

/// A subset of `{0, .., len-1}` stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetBits {
    len: usize,
    words: Vec<u64>,
}

impl SubsetBits {
    pub fn empty(len: usize) -> Self {
        SubsetBits { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = Self::empty(len);
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Universe size (not the number of set bits).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        SubsetBits { len: self.len, words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        SubsetBits { len: self.len, words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        SubsetBits { len: self.len, words }
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::full(self.len);
        for (w, s) in out.words.iter_mut().zip(&self.words) {
            *w &= !s;
        }
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn intersects(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((wi << 6) | b)
                }
            })
        })
    }

    pub fn min_element(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Restrict to bits strictly below `i` (used by the lectic order).
    pub fn below(&self, i: usize) -> Self {
        let mut out = self.clone();
        for j in i..self.len {
            out.remove(j);
        }
        out
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for SubsetBits {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = SubsetBits::from_indices(100, [0, 63, 64, 99]);
        let b = SubsetBits::from_indices(100, [63, 64]);
        assert_eq!(a.count(), 4);
        assert!(b.is_subset(&a));
        assert!(b.is_proper_subset(&a));
        assert_eq!(a.intersection(&b), b);
        assert_eq!(a.union(&b), a);
        assert_eq!(a.difference(&b).to_indices(), vec![0, 99]);
        assert_eq!(a.complement().count(), 96);
        assert_eq!(a.below(64).to_indices(), vec![0, 63]);
    }

    #[test]
    fn iteration_order_is_ascending() {
        let a = SubsetBits::from_indices(70, [69, 3, 41, 0]);
        assert_eq!(a.to_indices(), vec![0, 3, 41, 69]);
        assert_eq!(a.min_element(), Some(0));
    }

    #[test]
    fn empty_and_full() {
        assert!(SubsetBits::empty(10).is_empty());
        assert!(SubsetBits::full(10).is_full());
        assert_eq!(SubsetBits::full(130).count(), 130);
        assert!(SubsetBits::empty(0).is_empty());
    }
}
