//! Fixed-width bit sets used for facet and ray incidence.
//!
//! Ordering treats the set as a binary number in which bit `k` has weight
//! `2^k`, so the comparison runs from the highest index down. With this
//! order, a set whose largest element is smaller than another set's largest
//! element always compares smaller, which the orbit-minimal face choice in
//! the lattice enumeration relies on.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = Self::new(len);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::new(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of addressable positions (not the number of members).
    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn last(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * WORD + (WORD - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Image of the set under `perm` (bit `k` moves to `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> BitSet {
        let mut out = BitSet::new(self.len);
        for k in self.iter() {
            out.insert(perm[k]);
        }
        out
    }

    /// Little-endian packed bytes: bit `k` is bit `k % 8` of byte `k / 8`.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        let mut out = Vec::with_capacity(nbytes);
        for w in &self.words {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out.truncate(nbytes);
        out
    }

    pub fn from_le_bytes(len: usize, bytes: &[u8]) -> Option<BitSet> {
        if bytes.len() != len.div_ceil(8) {
            return None;
        }
        let mut set = BitSet::new(len);
        for (wi, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            set.words[wi] = u64::from_le_bytes(buf);
        }
        let before = set.words.clone();
        set.trim();
        (before == set.words).then_some(set)
    }

    /// 0-1 string in index order, e.g. `"0110"`.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
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

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn order_is_numeric_from_the_top() {
        let a = BitSet::from_indices(10, [1, 2]);
        let b = BitSet::from_indices(10, [0, 3]);
        assert!(a < b);
        let c = BitSet::from_indices(10, [0]);
        let d = BitSet::from_indices(10, [1]);
        assert!(c < d);
        assert!(BitSet::new(10) < c);
    }

    #[test]
    fn full_set_and_last() {
        let s = BitSet::full(70);
        assert_eq!(s.count(), 70);
        assert_eq!(s.last(), Some(69));
        assert_eq!(BitSet::new(70).last(), None);
        assert_eq!(BitSet::from_indices(130, [3, 64, 129]).last(), Some(129));
    }

    #[test]
    fn rejects_padding_bits() {
        assert!(BitSet::from_le_bytes(3, &[0b1000]).is_none());
        assert!(BitSet::from_le_bytes(3, &[0b101]).is_some());
    }

    proptest! {
        #[test]
        fn bytes_round_trip(len in 1usize..200, seed in proptest::collection::vec(any::<usize>(), 0..40)) {
            let set = BitSet::from_indices(len, seed.into_iter().map(|s| s % len));
            let back = BitSet::from_le_bytes(len, &set.to_le_bytes()).unwrap();
            prop_assert_eq!(back, set);
        }

        #[test]
        fn order_matches_integer_value(a in 0u64..(1 << 20), b in 0u64..(1 << 20)) {
            let to_set = |v: u64| BitSet::from_indices(20, (0..20).filter(|k| v >> k & 1 == 1));
            prop_assert_eq!(to_set(a).cmp(&to_set(b)), a.cmp(&b));
        }
    }
}
