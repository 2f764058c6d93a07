//! Compact element sets over dense integer indices.
//!
//! Ground-set elements are identified by `usize` indices assigned at instance
//! load. Sets are stored as bit vectors with no trailing zero blocks, so
//! structural equality and hashing coincide with set equality.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const BLOCK_BITS: usize = 64;

/// A set of ground-set elements, backed by a growable bit vector.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ElemSet {
    blocks: Vec<u64>,
}

impl ElemSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut set = Self::new();
        for e in 0..n {
            set.insert(e);
        }
        set
    }

    /// Builds a set from the low `n` bits of `mask` (element `i` present iff
    /// bit `i` is set). Handy for exhaustive subset enumeration.
    pub fn from_mask(mask: u64) -> Self {
        let mut set = Self { blocks: vec![mask] };
        set.normalize();
        set
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        match self.blocks.get(e / BLOCK_BITS) {
            Some(block) => block & (1 << (e % BLOCK_BITS)) != 0,
            None => false,
        }
    }

    pub fn insert(&mut self, e: usize) -> bool {
        let idx = e / BLOCK_BITS;
        if idx >= self.blocks.len() {
            self.blocks.resize(idx + 1, 0);
        }
        let bit = 1u64 << (e % BLOCK_BITS);
        let present = self.blocks[idx] & bit != 0;
        self.blocks[idx] |= bit;
        !present
    }

    pub fn remove(&mut self, e: usize) -> bool {
        let idx = e / BLOCK_BITS;
        if idx >= self.blocks.len() {
            return false;
        }
        let bit = 1u64 << (e % BLOCK_BITS);
        let present = self.blocks[idx] & bit != 0;
        self.blocks[idx] &= !bit;
        self.normalize();
        present
    }

    pub fn with(&self, e: usize) -> Self {
        let mut out = self.clone();
        out.insert(e);
        out
    }

    pub fn without(&self, e: usize) -> Self {
        let mut out = self.clone();
        out.remove(e);
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut blocks = vec![0; self.blocks.len().max(other.blocks.len())];
        for (i, slot) in blocks.iter_mut().enumerate() {
            *slot = self.blocks.get(i).copied().unwrap_or(0) | other.blocks.get(i).copied().unwrap_or(0);
        }
        let mut out = Self { blocks };
        out.normalize();
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut blocks = vec![0; self.blocks.len().min(other.blocks.len())];
        for (i, slot) in blocks.iter_mut().enumerate() {
            *slot = self.blocks[i] & other.blocks[i];
        }
        let mut out = Self { blocks };
        out.normalize();
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        for (i, slot) in blocks.iter_mut().enumerate() {
            *slot &= !other.blocks.get(i).copied().unwrap_or(0);
        }
        let mut out = Self { blocks };
        out.normalize();
        out
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        let mut blocks = vec![0; self.blocks.len().max(other.blocks.len())];
        for (i, slot) in blocks.iter_mut().enumerate() {
            *slot = self.blocks.get(i).copied().unwrap_or(0) ^ other.blocks.get(i).copied().unwrap_or(0);
        }
        let mut out = Self { blocks };
        out.normalize();
        out
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.blocks.iter().enumerate().all(|(i, b)| b & !other.blocks.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Largest element, if any.
    pub fn last(&self) -> Option<usize> {
        for (i, block) in self.blocks.iter().enumerate().rev() {
            if *block != 0 {
                return Some(i * BLOCK_BITS + (BLOCK_BITS - 1 - block.leading_zeros() as usize));
            }
        }
        None
    }

    /// Elements in ascending index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter { set: self, block: 0, bits: self.blocks.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn normalize(&mut self) {
        while self.blocks.last() == Some(&0) {
            self.blocks.pop();
        }
    }
}

pub struct Iter<'a> {
    set: &'a ElemSet,
    block: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.bits == 0 {
            self.block += 1;
            if self.block >= self.set.blocks.len() {
                return None;
            }
            self.bits = self.set.blocks[self.block];
        }
        let tz = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(self.block * BLOCK_BITS + tz)
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = Self::new();
        for e in iter {
            set.insert(e);
        }
        set
    }
}

impl Extend<usize> for ElemSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for e in iter {
            self.insert(e);
        }
    }
}

impl<'a> IntoIterator for &'a ElemSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Sets compare as their ascending index sequences, so sorting a family of
/// sets yields the lexicographically-smallest sorted-sequence order used for
/// deterministic tie-breaking.
impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct SetVisitor;

        impl<'de> Visitor<'de> for SetVisitor {
            type Value = ElemSet;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a sequence of element indices")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<ElemSet, A::Error> {
                let mut set = ElemSet::new();
                while let Some(e) = seq.next_element::<usize>()? {
                    set.insert(e);
                }
                Ok(set)
            }
        }

        deserializer.deserialize_seq(SetVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = ElemSet::new();
        assert!(s.insert(3));
        assert!(s.insert(70));
        assert!(!s.insert(3));
        assert!(s.contains(3) && s.contains(70) && !s.contains(0));
        assert_eq!(s.len(), 2);
        assert!(s.remove(70));
        assert!(!s.remove(70));
        assert_eq!(s.to_vec(), vec![3]);
    }

    #[test]
    fn trailing_blocks_are_stripped() {
        let mut a = ElemSet::new();
        a.insert(100);
        a.remove(100);
        assert_eq!(a, ElemSet::new());
        let mut hasher_input = std::collections::HashSet::new();
        hasher_input.insert(a);
        assert!(hasher_input.contains(&ElemSet::new()));
    }

    #[test]
    fn set_algebra() {
        let a: ElemSet = [0, 2, 5].into_iter().collect();
        let b: ElemSet = [2, 3].into_iter().collect();
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 5]);
        assert_eq!(a.symmetric_difference(&b).to_vec(), vec![0, 3, 5]);
        assert!(a.intersection(&b).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }

    #[test]
    fn order_is_lexicographic_on_sorted_sequences() {
        let a: ElemSet = [0, 1].into_iter().collect();
        let b: ElemSet = [1].into_iter().collect();
        let c: ElemSet = [0].into_iter().collect();
        // [0] < [0, 1] < [1]
        assert!(c < a);
        assert!(a < b);
        assert!(ElemSet::new() < c);
    }

    #[test]
    fn mask_round_trip() {
        let s = ElemSet::from_mask(0b101_0010);
        assert_eq!(s.to_vec(), vec![1, 4, 6]);
        assert_eq!(s.last(), Some(6));
        assert_eq!(s.first(), Some(1));
    }

    #[test]
    fn serde_as_sorted_array() {
        let s: ElemSet = [5, 1, 3].into_iter().collect();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[1,3,5]");
        let back: ElemSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
