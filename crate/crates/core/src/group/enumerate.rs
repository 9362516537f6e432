//! Exhaustive subgroup enumeration for small tables.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{GroupTable, SubgroupSet};
use crate::{Error, Result};

/// Enumerates every subgroup of `group`, sorted by order and then by
/// element list.
///
/// Works by repeatedly extending known subgroups with one new element and
/// closing, which finds everything because any subgroup is reached from the
/// trivial one by adjoining its own elements. Extension candidates are
/// pruned to one representative per double coset, since `H` extended by any
/// element of `HgH` closes to the same subgroup.
///
/// `max_index`, when given, keeps only subgroups of index at most
/// `max_index` in the result (small quotients); the search itself still
/// visits everything below them.
pub fn enumerate_subgroups(
    group: &Arc<GroupTable>,
    bound: usize,
    max_index: Option<usize>,
) -> Result<Vec<SubgroupSet>> {
    let n = group.order();
    if n > bound {
        return Err(Error::Resource {
            what: "subgroup enumeration",
            order: n,
            bound,
        });
    }
    let mut known: BTreeSet<Vec<u16>> = BTreeSet::new();
    known.insert(vec![0]);
    let mut worklist: Vec<Vec<u16>> = vec![vec![0]];

    while let Some(h) = worklist.pop() {
        let mut in_h = vec![false; n];
        for &x in &h {
            in_h[x as usize] = true;
        }
        let mut covered = in_h.clone();
        for g in 0..n as u16 {
            if covered[g as usize] {
                continue;
            }
            // Mark the whole double coset HgH; each of its elements extends
            // H to the same closure.
            for &a in &h {
                let ag = group.mul(a, g);
                for &b in &h {
                    covered[group.mul(ag, b) as usize] = true;
                }
            }
            let extended = close_with(group, &h, g);
            if known.insert(extended.clone()) {
                worklist.push(extended);
            }
        }
    }

    let mut subgroups: Vec<Vec<u16>> = known.into_iter().collect();
    if let Some(max_index) = max_index {
        if max_index == 0 {
            return Err(Error::input("max_index must be at least 1"));
        }
        subgroups.retain(|h| h.len() * max_index >= n);
    }
    subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subgroups
        .into_iter()
        .map(|els| SubgroupSet::from_elements(group, els))
        .collect()
}

/// Closure of `h` (already a subgroup) together with one extra element.
fn close_with(group: &Arc<GroupTable>, h: &[u16], g: u16) -> Vec<u16> {
    let n = group.order();
    let mut member = vec![false; n];
    let mut elements: Vec<u16> = h.to_vec();
    for &x in h {
        member[x as usize] = true;
    }
    member[g as usize] = true;
    elements.push(g);
    // Products with all current members; a single pass queue suffices.
    let mut frontier: Vec<u16> = vec![g];
    while let Some(x) = frontier.pop() {
        for i in 0..elements.len() {
            let y = elements[i];
            for z in [group.mul(x, y), group.mul(y, x)] {
                if !member[z as usize] {
                    member[z as usize] = true;
                    elements.push(z);
                    frontier.push(z);
                }
            }
        }
    }
    elements.sort_unstable();
    elements
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUMERATION_BOUND;

    fn count(group: &Arc<GroupTable>) -> usize {
        enumerate_subgroups(group, DEFAULT_ENUMERATION_BOUND, None)
            .unwrap()
            .len()
    }

    #[test]
    fn subgroup_counts_of_small_groups() {
        assert_eq!(count(&GroupTable::cyclic(4).unwrap()), 3);
        assert_eq!(count(&GroupTable::cyclic(12).unwrap()), 6);
        assert_eq!(count(&GroupTable::symmetric(3).unwrap()), 6);
        assert_eq!(count(&GroupTable::symmetric(4).unwrap()), 30);
    }

    #[test]
    fn max_index_filters_to_large_subgroups() {
        let s3 = GroupTable::symmetric(3).unwrap();
        let top = enumerate_subgroups(&s3, DEFAULT_ENUMERATION_BOUND, Some(2)).unwrap();
        // Index <= 2: A3 and S3 itself.
        assert_eq!(top.len(), 2);
        assert!(top.iter().all(|h| h.order() >= 3));
    }

    #[test]
    fn bound_is_enforced() {
        let s4 = GroupTable::symmetric(4).unwrap();
        assert!(matches!(
            enumerate_subgroups(&s4, 10, None),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn results_are_sorted_and_unique() {
        let z12 = GroupTable::cyclic(12).unwrap();
        let subs = enumerate_subgroups(&z12, DEFAULT_ENUMERATION_BOUND, None).unwrap();
        let orders: Vec<usize> = subs.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 6, 12]);
    }
}
