//! Quotients of a subgroup by a normal subgroup, kept in terms of the
//! parent's element ids.

use std::sync::Arc;

use super::{GroupLaw, GroupTable, Homomorphism, SubgroupSet};
use crate::{Error, Result};

/// The quotient `G/N` for subgroups `N` normal in `G` of a common parent table.
///
/// Cosets are stored as sorted id lists, ordered by least element, so the
/// identity coset is always coset `0` and the whole object is deterministic
/// for a given `(G, N)` pair. The induced law is tabulated on coset indices.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    parent: Arc<GroupTable>,
    group: SubgroupSet,
    normal: SubgroupSet,
    cosets: Vec<Vec<u16>>,
    /// Parent id -> coset index; `u16::MAX` for elements outside `G`.
    coset_index: Vec<u16>,
    law: Vec<u16>,
    label: String,
}

impl QuotientGroup {
    /// Builds `group/normal`, verifying containment and normality.
    pub fn new(group: &SubgroupSet, normal: &SubgroupSet) -> Result<QuotientGroup> {
        if !Arc::ptr_eq(group.parent(), normal.parent()) {
            return Err(Error::input(
                "quotient: group and normal subgroup live in different parents",
            ));
        }
        if let Some((element, by)) = normal.normality_witness(group)? {
            return Err(Error::NotNormal {
                element: element as usize,
                by: by as usize,
            });
        }
        let parent = Arc::clone(group.parent());
        let cosets = normal.left_cosets_in(group)?;
        let mut coset_index = vec![u16::MAX; parent.order()];
        for (ci, coset) in cosets.iter().enumerate() {
            for &x in coset {
                coset_index[x as usize] = ci as u16;
            }
        }
        let k = cosets.len();
        let mut law = vec![0u16; k * k];
        for i in 0..k {
            for j in 0..k {
                let prod = parent.mul(cosets[i][0], cosets[j][0]);
                law[i * k + j] = coset_index[prod as usize];
            }
        }
        let label = format!("{}/{}", group_part(group), normal.order());
        Ok(QuotientGroup {
            parent,
            group: group.clone(),
            normal: normal.clone(),
            cosets,
            coset_index,
            law,
            label,
        })
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn group(&self) -> &SubgroupSet {
        &self.group
    }

    pub fn normal(&self) -> &SubgroupSet {
        &self.normal
    }

    /// Number of cosets.
    pub fn order(&self) -> usize {
        self.cosets.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cosets(&self) -> &[Vec<u16>] {
        &self.cosets
    }

    /// The coset containing parent element `x`.
    pub fn coset_of(&self, x: u16) -> Result<usize> {
        let ci = self.coset_index[x as usize];
        if ci == u16::MAX {
            return Err(Error::input(format!(
                "element {x} is outside the group being quotiented"
            )));
        }
        Ok(ci as usize)
    }

    /// Least element of coset `ci`, the canonical representative.
    pub fn rep(&self, ci: usize) -> u16 {
        self.cosets[ci][0]
    }

    pub fn compose_cosets(&self, i: usize, j: usize) -> usize {
        self.law[i * self.cosets.len() + j] as usize
    }

    /// Realizes the quotient as a standalone table on coset indices.
    pub fn as_table(&self) -> Result<Arc<GroupTable>> {
        GroupTable::from_parts(
            self.label.clone(),
            self.cosets.len(),
            self.law.clone(),
            None,
        )
    }

    /// The projection `parent -> G/N` as a homomorphism onto
    /// [`as_table`](Self::as_table). Only available when `G` is the whole
    /// parent, since a homomorphism needs a table as its domain.
    pub fn natural_map(&self) -> Result<Homomorphism> {
        if self.group.order() != self.parent.order() {
            return Err(Error::input(
                "natural map requires the quotient of the full parent group",
            ));
        }
        let codomain = self.as_table()?;
        let map = (0..self.parent.order())
            .map(|x| self.coset_index[x])
            .collect();
        Homomorphism::new(&self.parent, &codomain, map)
    }

    /// Printable name for a coset: its canonical representative in brackets.
    pub fn coset_name(&self, ci: usize) -> String {
        format!("[{}]", self.parent.element_name(self.rep(ci)))
    }
}

impl GroupLaw for QuotientGroup {
    fn order(&self) -> usize {
        self.cosets.len()
    }

    fn compose(&self, a: usize, b: usize) -> usize {
        self.compose_cosets(a, b)
    }
}

fn group_part(group: &SubgroupSet) -> String {
    if group.is_full() {
        group.parent().label().to_string()
    } else {
        format!("sub{}({})", group.order(), group.parent().label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_mod_even_is_z2() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let even = SubgroupSet::closure(&z4, &[2]).unwrap();
        let q = QuotientGroup::new(&SubgroupSet::full(&z4), &even).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.coset_of(3).unwrap(), 1);
        assert_eq!(q.compose_cosets(1, 1), 0);
        let t = q.as_table().unwrap();
        assert_eq!(t.order(), 2);
    }

    #[test]
    fn s3_mod_a3() {
        let s3 = GroupTable::symmetric(3).unwrap();
        let rot = s3.element_by_name("(1 2 3)").unwrap();
        let a3 = SubgroupSet::closure(&s3, &[rot]).unwrap();
        let q = QuotientGroup::new(&SubgroupSet::full(&s3), &a3).unwrap();
        assert_eq!(q.order(), 2);
        let nat = q.natural_map().unwrap();
        assert_eq!(nat.kernel().elements(), a3.elements());
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let s3 = GroupTable::symmetric(3).unwrap();
        let swap = s3.element_by_name("(1 2)").unwrap();
        let h = SubgroupSet::closure(&s3, &[swap]).unwrap();
        let err = QuotientGroup::new(&SubgroupSet::full(&s3), &h).unwrap_err();
        assert!(matches!(err, Error::NotNormal { .. }));
    }

    #[test]
    fn quotient_of_proper_subgroup() {
        // Quotient (0,2) cosets inside the even part of Z8.
        let z8 = GroupTable::cyclic(8).unwrap();
        let even = SubgroupSet::closure(&z8, &[2]).unwrap();
        let four = SubgroupSet::closure(&z8, &[4]).unwrap();
        let q = QuotientGroup::new(&even, &four).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.cosets(), &[vec![0, 4], vec![2, 6]]);
        assert!(q.coset_of(1).is_err());
    }
}
