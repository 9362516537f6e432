//! Subgroups of a [`GroupTable`], stored as sorted element lists.

use std::sync::Arc;

use super::GroupTable;
use crate::{Error, Result};

/// A subgroup of a parent [`GroupTable`], as a sorted list of element ids.
///
/// Two subgroup values are equal exactly when their element lists are equal;
/// the parent pointer does not take part in equality. Every constructor
/// guarantees the list is sorted, contains the identity and is closed under
/// the parent's law.
#[derive(Debug, Clone)]
pub struct SubgroupSet {
    parent: Arc<GroupTable>,
    elements: Vec<u16>,
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for SubgroupSet {}

impl SubgroupSet {
    /// The subgroup generated by `gens`.
    pub fn closure(parent: &Arc<GroupTable>, gens: &[u16]) -> Result<SubgroupSet> {
        let order = parent.order();
        for &g in gens {
            if g as usize >= order {
                return Err(Error::input(format!(
                    "generator {g} out of range for {} (order {order})",
                    parent.label()
                )));
            }
        }
        let mut member = vec![false; order];
        member[0] = true;
        let mut elements: Vec<u16> = vec![0];
        let mut frontier: Vec<u16> = vec![0];
        // Saturate under right multiplication by generators; inverses come
        // for free in a finite group.
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = parent.mul(x, g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    elements.push(y);
                    frontier.push(y);
                }
            }
        }
        elements.sort_unstable();
        Ok(SubgroupSet {
            parent: Arc::clone(parent),
            elements,
        })
    }

    /// Wraps an element list that is already known to be a subgroup.
    ///
    /// The list is checked (cheaply, the orders here are tiny) so a bad call
    /// cannot produce an inconsistent value.
    pub fn from_elements(parent: &Arc<GroupTable>, mut elements: Vec<u16>) -> Result<SubgroupSet> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::input(
                "subgroup element list must contain the identity",
            ));
        }
        let member = membership(parent.order(), &elements);
        for &a in &elements {
            for &b in &elements {
                if !member[parent.mul(a, b) as usize] {
                    return Err(Error::input(format!(
                        "element list is not closed: {a}.{b} escapes"
                    )));
                }
            }
        }
        Ok(SubgroupSet {
            parent: Arc::clone(parent),
            elements,
        })
    }

    pub fn trivial(parent: &Arc<GroupTable>) -> SubgroupSet {
        SubgroupSet {
            parent: Arc::clone(parent),
            elements: vec![0],
        }
    }

    pub fn full(parent: &Arc<GroupTable>) -> SubgroupSet {
        SubgroupSet {
            parent: Arc::clone(parent),
            elements: (0..parent.order() as u16).collect(),
        }
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u16] {
        &self.elements
    }

    pub fn contains(&self, x: u16) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &SubgroupSet) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &SubgroupSet) -> SubgroupSet {
        let elements = self
            .elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        SubgroupSet {
            parent: Arc::clone(&self.parent),
            elements,
        }
    }

    /// The setwise product `{a.b}`, sorted and deduplicated.
    ///
    /// This is a plain element list; it is a subgroup only when one factor
    /// normalises the other.
    pub fn setwise_product(&self, other: &SubgroupSet) -> Vec<u16> {
        let mut seen = vec![false; self.parent.order()];
        let mut out = Vec::new();
        for &a in &self.elements {
            for &b in &other.elements {
                let ab = self.parent.mul(a, b);
                if !seen[ab as usize] {
                    seen[ab as usize] = true;
                    out.push(ab);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether `self` is normal in `within` (which must contain it).
    pub fn is_normal_in(&self, within: &SubgroupSet) -> Result<bool> {
        match self.normality_witness(within)? {
            None => Ok(true),
            Some(_) => Ok(false),
        }
    }

    /// Like [`is_normal_in`](Self::is_normal_in) but reports the violating
    /// pair `(element, conjugator)` if there is one.
    pub fn normality_witness(&self, within: &SubgroupSet) -> Result<Option<(u16, u16)>> {
        if !self.is_subset_of(within) {
            return Err(Error::input(
                "normality check: candidate normal subgroup is not contained in the group",
            ));
        }
        for &g in &within.elements {
            for &n in &self.elements {
                if !self.contains(self.parent.conj(n, g)) {
                    return Ok(Some((n, g)));
                }
            }
        }
        Ok(None)
    }

    /// Left cosets of `self` inside `within`, each sorted, ordered by their
    /// least element. The coset of the identity comes first.
    pub fn left_cosets_in(&self, within: &SubgroupSet) -> Result<Vec<Vec<u16>>> {
        if !self.is_subset_of(within) {
            return Err(Error::input(
                "coset computation: subgroup is not contained in the group",
            ));
        }
        let mut assigned = vec![false; self.parent.order()];
        let mut cosets = Vec::new();
        for &g in &within.elements {
            if assigned[g as usize] {
                continue;
            }
            let mut coset: Vec<u16> = self
                .elements
                .iter()
                .map(|&h| self.parent.mul(g, h))
                .collect();
            coset.sort_unstable();
            for &x in &coset {
                if !within.contains(x) {
                    return Err(Error::input(
                        "coset computation: group is not closed over the subgroup",
                    ));
                }
                assigned[x as usize] = true;
            }
            cosets.push(coset);
        }
        Ok(cosets)
    }

    /// Realizes this subgroup as a standalone table.
    ///
    /// Returns the table together with the embedding: entry `i` of the
    /// embedding is the parent id of the new table's element `i`. The
    /// identity stays at index 0 because the element list is sorted.
    pub fn as_table(&self, label: &str) -> Result<(Arc<GroupTable>, Vec<u16>)> {
        let k = self.elements.len();
        let pos =
            |x: u16| -> u16 { self.elements.binary_search(&x).expect("closed subgroup") as u16 };
        let mut mul = vec![0u16; k * k];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                mul[i * k + j] = pos(self.parent.mul(a, b));
            }
        }
        let perms = self.parent.perm(0).map(|_| {
            self.elements
                .iter()
                .map(|&x| self.parent.perm(x).expect("perm-backed parent").clone())
                .collect()
        });
        let table = GroupTable::from_parts(label.to_string(), k, mul, perms)?;
        Ok((table, self.elements.clone()))
    }
}

fn membership(order: usize, elements: &[u16]) -> Vec<bool> {
    let mut member = vec![false; order];
    for &x in elements {
        member[x as usize] = true;
    }
    member
}
