//! Homomorphisms between group tables.

use std::sync::Arc;

use super::{GroupTable, SubgroupSet};
use crate::{Error, Result};

/// A verified homomorphism between two tables, stored as its full value map.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    domain: Arc<GroupTable>,
    codomain: Arc<GroupTable>,
    map: Vec<u16>,
}

impl Homomorphism {
    /// Wraps a value map after checking totality and the homomorphism law.
    pub fn new(
        domain: &Arc<GroupTable>,
        codomain: &Arc<GroupTable>,
        map: Vec<u16>,
    ) -> Result<Homomorphism> {
        if map.len() != domain.order() {
            return Err(Error::input(format!(
                "homomorphism map has {} entries, domain has order {}",
                map.len(),
                domain.order()
            )));
        }
        for &y in &map {
            if y as usize >= codomain.order() {
                return Err(Error::input(format!(
                    "homomorphism value {y} out of range for {} (order {})",
                    codomain.label(),
                    codomain.order()
                )));
            }
        }
        for x in 0..domain.order() as u16 {
            for y in 0..domain.order() as u16 {
                let got = map[domain.mul(x, y) as usize];
                let want = codomain.mul(map[x as usize], map[y as usize]);
                if got != want {
                    return Err(Error::NotHomomorphism {
                        x: x as usize,
                        y: y as usize,
                        got: got as usize,
                        want: want as usize,
                    });
                }
            }
        }
        Ok(Homomorphism {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            map,
        })
    }

    /// Completes generator images to a full homomorphism by closure.
    ///
    /// The graph `{(g, image)}` is saturated under componentwise products
    /// starting from `(identity, identity)`. If two pairs ever disagree on a
    /// domain element the images are inconsistent; if the closure misses part
    /// of the domain the generators do not generate it. Either way the call
    /// fails with a description of the problem.
    pub fn from_generator_images(
        domain: &Arc<GroupTable>,
        codomain: &Arc<GroupTable>,
        pairs: &[(u16, u16)],
    ) -> Result<Homomorphism> {
        for &(g, h) in pairs {
            if g as usize >= domain.order() {
                return Err(Error::input(format!(
                    "generator {g} out of range for {}",
                    domain.label()
                )));
            }
            if h as usize >= codomain.order() {
                return Err(Error::input(format!(
                    "image {h} out of range for {}",
                    codomain.label()
                )));
            }
        }
        const UNSET: u16 = u16::MAX;
        let mut image = vec![UNSET; domain.order()];
        image[0] = 0;
        let mut frontier: Vec<u16> = vec![0];
        let assign =
            |image: &mut Vec<u16>, frontier: &mut Vec<u16>, x: u16, y: u16| -> Result<()> {
                let slot = &mut image[x as usize];
                if *slot == UNSET {
                    *slot = y;
                    frontier.push(x);
                } else if *slot != y {
                    return Err(Error::input(format!(
                        "inconsistent generator images: element {x} would map to both {} and {y}",
                        *slot
                    )));
                }
                Ok(())
            };
        for &(g, h) in pairs {
            assign(&mut image, &mut frontier, g, h)?;
        }
        while let Some(x) = frontier.pop() {
            let fx = image[x as usize];
            for &(g, h) in pairs {
                let xg = domain.mul(x, g);
                let fxg = codomain.mul(fx, h);
                assign(&mut image, &mut frontier, xg, fxg)?;
            }
        }
        if image.contains(&UNSET) {
            let missing = image.iter().position(|&y| y == UNSET).unwrap();
            return Err(Error::input(format!(
                "generators do not generate the domain: element {missing} of {} is unreached",
                domain.label()
            )));
        }
        Homomorphism::new(domain, codomain, image)
    }

    pub fn identity(group: &Arc<GroupTable>) -> Homomorphism {
        Homomorphism {
            domain: Arc::clone(group),
            codomain: Arc::clone(group),
            map: (0..group.order() as u16).collect(),
        }
    }

    pub fn domain(&self) -> &Arc<GroupTable> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<GroupTable> {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, x: u16) -> u16 {
        self.map[x as usize]
    }

    pub fn map(&self) -> &[u16] {
        &self.map
    }

    pub fn kernel(&self) -> SubgroupSet {
        let elements: Vec<u16> = (0..self.domain.order() as u16)
            .filter(|&x| self.map[x as usize] == 0)
            .collect();
        SubgroupSet::from_elements(&self.domain, elements).expect("kernel is a subgroup")
    }

    pub fn image(&self) -> SubgroupSet {
        let mut elements: Vec<u16> = self.map.clone();
        elements.sort_unstable();
        elements.dedup();
        SubgroupSet::from_elements(&self.codomain, elements).expect("image is a subgroup")
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.codomain.order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// Image of a subgroup of the domain, as a subgroup of the codomain.
    pub fn image_of(&self, sub: &SubgroupSet) -> Result<SubgroupSet> {
        if !Arc::ptr_eq(sub.parent(), &self.domain) {
            return Err(Error::input(
                "image_of: subgroup lives in a different group",
            ));
        }
        let mut elements: Vec<u16> = sub.elements().iter().map(|&x| self.apply(x)).collect();
        elements.sort_unstable();
        elements.dedup();
        SubgroupSet::from_elements(&self.codomain, elements)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if !Arc::ptr_eq(&self.codomain, next.domain()) {
            return Err(Error::input("composition: codomain/domain mismatch"));
        }
        let map = self.map.iter().map(|&y| next.apply(y)).collect();
        Homomorphism::new(&self.domain, next.codomain(), map)
    }

    /// Restricts the codomain to the image, realized as its own table.
    ///
    /// Returns the surjective homomorphism together with the embedding of
    /// the new codomain back into the old one.
    pub fn corestrict_to_image(&self, label: &str) -> Result<(Homomorphism, Vec<u16>)> {
        let image = self.image();
        let (table, embed) = image.as_table(label)?;
        let map = self
            .map
            .iter()
            .map(|&y| embed.binary_search(&y).expect("image element") as u16)
            .collect();
        Ok((Homomorphism::new(&self.domain, &table, map)?, embed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_map_on_z4() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let parity = Homomorphism::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(parity.kernel().elements(), &[0, 2]);
        assert!(parity.is_surjective());
        assert!(!parity.is_injective());
    }

    #[test]
    fn law_violation_carries_witness() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let err = Homomorphism::new(&z4, &z2, vec![0, 1, 1, 0]).unwrap_err();
        assert!(matches!(err, Error::NotHomomorphism { .. }));
    }

    #[test]
    fn generator_completion() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let parity = Homomorphism::from_generator_images(&z4, &z2, &[(1, 1)]).unwrap();
        assert_eq!(parity.map(), &[0, 1, 0, 1]);

        // 1 -> 1 on Z4 -> Z4 doubling would need f(1)=2; inconsistent images fail.
        assert!(Homomorphism::from_generator_images(&z4, &z4, &[(1, 1), (2, 0)]).is_err());
        // Generators must generate: 2 alone only reaches the even part.
        assert!(Homomorphism::from_generator_images(&z4, &z2, &[(2, 0)]).is_err());
    }

    #[test]
    fn corestriction_to_image() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let doubling = Homomorphism::new(&z4, &z4, vec![0, 2, 0, 2]).unwrap();
        assert!(!doubling.is_surjective());
        let (onto, embed) = doubling.corestrict_to_image("im").unwrap();
        assert!(onto.is_surjective());
        assert_eq!(onto.codomain().order(), 2);
        assert_eq!(embed, vec![0, 2]);
    }

    #[test]
    fn composition() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let parity = Homomorphism::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let flip = Homomorphism::new(&z2, &z2, vec![0, 1]).unwrap();
        let composed = parity.then(&flip).unwrap();
        assert_eq!(composed.map(), parity.map());
    }
}
