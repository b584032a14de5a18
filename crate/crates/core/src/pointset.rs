//! Subsets of a point universe of at most 64 elements, stored as one word.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const CAPACITY: usize = 64;

    pub const fn empty() -> PointSet {
        PointSet(0)
    }

    /// The universe `{0, .., n-1}`.
    pub const fn full(n: usize) -> PointSet {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub const fn singleton(p: usize) -> PointSet {
        PointSet(1u64 << p)
    }

    pub const fn from_bits(bits: u64) -> PointSet {
        PointSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn contains(self, p: usize) -> bool {
        p < 64 && self.0 >> p & 1 == 1
    }

    pub fn insert(&mut self, p: usize) {
        self.0 |= 1u64 << p;
    }

    pub fn remove(&mut self, p: usize) {
        self.0 &= !(1u64 << p);
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: PointSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> PointSet {
        let mut s = PointSet::empty();
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> PointSet {
        iter.into_iter().copied().collect()
    }
}

/// Ascending iterator over members.
#[derive(Clone)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for PointSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & rhs.0)
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 | rhs.0)
    }
}

impl BitXor for PointSet {
    type Output = PointSet;
    fn bitxor(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 ^ rhs.0)
    }
}

impl Sub for PointSet {
    type Output = PointSet;
    fn sub(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & !rhs.0)
    }
}

impl Not for PointSet {
    type Output = PointSet;
    fn not(self) -> PointSet {
        PointSet(!self.0)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<PointSet, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = ids.iter().find(|&&p| p >= PointSet::CAPACITY) {
            return Err(serde::de::Error::custom(format!(
                "point id {bad} out of range"
            )));
        }
        Ok(ids.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn basic_algebra() {
        let a: PointSet = [0usize, 3, 44].iter().collect();
        let b: PointSet = [3usize, 5].iter().collect();
        assert_eq!((a & b).to_vec(), vec![3]);
        assert_eq!((a | b).to_vec(), vec![0, 3, 5, 44]);
        assert_eq!((a - b).to_vec(), vec![0, 44]);
        assert_eq!((a ^ b).to_vec(), vec![0, 5, 44]);
        assert_eq!(a.len(), 3);
        assert!(PointSet::singleton(3).is_subset(a));
        assert_eq!(PointSet::full(45).len(), 45);
        assert_eq!(a.first(), Some(0));
        assert_eq!(PointSet::empty().first(), None);
    }

    proptest! {
        #[test]
        fn matches_btreeset(xs in prop::collection::vec(0usize..45, 0..20),
                            ys in prop::collection::vec(0usize..45, 0..20)) {
            let a: PointSet = xs.iter().collect();
            let b: PointSet = ys.iter().collect();
            let sa: BTreeSet<usize> = xs.iter().copied().collect();
            let sb: BTreeSet<usize> = ys.iter().copied().collect();
            prop_assert_eq!((a & b).to_vec(), sa.intersection(&sb).copied().collect::<Vec<_>>());
            prop_assert_eq!((a | b).to_vec(), sa.union(&sb).copied().collect::<Vec<_>>());
            prop_assert_eq!((a - b).to_vec(), sa.difference(&sb).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.is_subset(b), sa.is_subset(&sb));
            prop_assert_eq!(a.len(), sa.len());
            let json = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<PointSet>(&json).unwrap(), a);
        }
    }
}
