//! The touch partition: transitive closure of coordinatewise agreement.

use std::collections::HashMap;

use super::Tuple;

/// Partition of a tuple list under the relation "equal at some coordinate",
/// closed transitively.
///
/// Blocks hold indices into the original (sorted) element list. Each block
/// is sorted ascending and blocks are ordered by their least member, so the
/// block containing index `0` (the identity) always comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TouchPartition {
    blocks: Vec<Vec<usize>>,
}

impl TouchPartition {
    /// Computes the partition by merging, for every coordinate, all elements
    /// sharing a value there.
    pub(crate) fn compute(elements: &[Tuple]) -> TouchPartition {
        let mut uf = UnionFind::new(elements.len());
        if let Some(first) = elements.first() {
            for coord in 0..first.len() {
                let mut seen: HashMap<u16, usize> = HashMap::new();
                for (ix, t) in elements.iter().enumerate() {
                    match seen.entry(t[coord]) {
                        std::collections::hash_map::Entry::Occupied(prev) => {
                            uf.union(*prev.get(), ix);
                        }
                        std::collections::hash_map::Entry::Vacant(slot) => {
                            slot.insert(ix);
                        }
                    }
                }
            }
        }
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for ix in 0..elements.len() {
            by_root.entry(uf.find(ix)).or_default().push(ix);
        }
        let mut blocks: Vec<Vec<usize>> = by_root.into_values().collect();
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        TouchPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn class_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing element index `ix`.
    pub fn block_of(&self, ix: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&ix).is_ok())
    }

    /// Materializes each block as a sorted tuple list.
    pub fn classes<'a>(&self, elements: &'a [Tuple]) -> Vec<Vec<&'a Tuple>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&ix| &elements[ix]).collect())
            .collect()
    }
}

/// Union-find with path compression and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}
