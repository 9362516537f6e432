//! Sets of factor positions in a direct product.

use crate::{Error, Result};

/// A set of factor indices, stored sorted and 0-based.
///
/// Displayed 1-based as `{1,3}`, matching how factors are numbered
/// everywhere user-facing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    members: Vec<usize>,
}

impl IndexSet {
    /// Builds an index set from 0-based positions, which must be distinct
    /// and less than `n`.
    pub fn new(mut members: Vec<usize>, n: usize) -> Result<IndexSet> {
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::input(format!(
                    "index {} repeated in index set",
                    pair[0] + 1
                )));
            }
        }
        if let Some(&last) = members.last() {
            if last >= n {
                return Err(Error::input(format!(
                    "index {} out of range for {n} factors",
                    last + 1
                )));
            }
        }
        Ok(IndexSet { members })
    }

    pub fn singleton(i: usize) -> IndexSet {
        IndexSet { members: vec![i] }
    }

    pub fn full(n: usize) -> IndexSet {
        IndexSet {
            members: (0..n).collect(),
        }
    }

    pub fn empty() -> IndexSet {
        IndexSet { members: vec![] }
    }

    /// Parses a 1-based comma list such as `1,3`.
    pub fn parse(text: &str, n: usize) -> Result<IndexSet> {
        let mut members = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let i: usize = part
                .parse()
                .map_err(|_| Error::input(format!("bad index {part:?}")))?;
            if i == 0 {
                return Err(Error::input("factor indices are 1-based"));
            }
            members.push(i - 1);
        }
        IndexSet::new(members, n)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_proper(&self, n: usize) -> bool {
        !self.members.is_empty() && self.members.len() < n
    }

    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet {
            members: (0..n).filter(|&i| !self.contains(i)).collect(),
        }
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut members = self.members.clone();
        members.extend(other.members.iter().copied());
        members.sort_unstable();
        members.dedup();
        IndexSet { members }
    }

    pub fn intersect(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&i| other.contains(i))
                .collect(),
        }
    }

    /// All ways to split this set into two nonempty halves, each given as
    /// the half containing the least member (so each unordered split appears
    /// once). Ordered deterministically: the remaining members are toggled
    /// like binary counter bits, least member first.
    pub fn bipartitions(&self) -> Vec<(IndexSet, IndexSet)> {
        let k = self.members.len();
        if k < 2 {
            return vec![];
        }
        let rest = &self.members[1..];
        let mut out = Vec::with_capacity((1usize << (k - 1)) - 1);
        // mask over `rest`: bit i set means rest[i] joins the first half.
        // The full mask would put everything on one side, so stop early.
        for mask in 0..(1usize << (k - 1)) - 1 {
            let mut left = vec![self.members[0]];
            let mut right = Vec::new();
            for (i, &m) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(m);
                } else {
                    right.push(m);
                }
            }
            out.push((IndexSet { members: left }, IndexSet { members: right }));
        }
        out
    }

    /// All nonempty subsets, ordered by size and then lexicographically.
    pub fn subsets_nonempty(&self) -> Vec<IndexSet> {
        let k = self.members.len();
        let mut out = Vec::new();
        for mask in 1usize..(1 << k) {
            let members: Vec<usize> = self
                .members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &m)| m)
                .collect();
            out.push(IndexSet { members });
        }
        out.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.members.cmp(&b.members))
        });
        out
    }

    /// Subsets of a fixed size, lexicographic.
    pub fn subsets_of_size(&self, size: usize) -> Vec<IndexSet> {
        self.subsets_nonempty()
            .into_iter()
            .filter(|s| s.len() == size)
            .collect()
    }
}

impl std::fmt::Display for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_are_one_based() {
        let s = IndexSet::parse("1,3", 3).unwrap();
        assert_eq!(s.members(), &[0, 2]);
        assert_eq!(s.to_string(), "{1,3}");
        assert!(IndexSet::parse("0", 3).is_err());
        assert!(IndexSet::parse("4", 3).is_err());
        assert!(IndexSet::parse("1,1", 3).is_err());
    }

    #[test]
    fn complement_and_properness() {
        let s = IndexSet::parse("2", 3).unwrap();
        assert_eq!(s.complement(3).to_string(), "{1,3}");
        assert!(s.is_proper(3));
        assert!(!IndexSet::full(3).is_proper(3));
        assert!(!IndexSet::empty().is_proper(3));
    }

    #[test]
    fn bipartition_count_and_first_split() {
        let s = IndexSet::full(4);
        let parts = s.bipartitions();
        assert_eq!(parts.len(), 7); // 2^(4-1) - 1
                                    // First split peels everything but the least member away.
        assert_eq!(parts[0].0.to_string(), "{1}");
        assert_eq!(parts[0].1.to_string(), "{2,3,4}");
        // Every split is a partition.
        for (m, n) in &parts {
            assert_eq!(m.union(n), s);
            assert!(m.intersect(n).is_empty());
        }
    }

    #[test]
    fn subsets_enumeration() {
        let s = IndexSet::full(3);
        assert_eq!(s.subsets_nonempty().len(), 7);
        assert_eq!(s.subsets_of_size(2).len(), 3);
    }
}
