//! Coset isomorphisms carried by a product subgroup.
//!
//! For a subgroup `U` of a direct product and a proper index set `lam`, the
//! two projection quotients
//!
//! ```text
//! proj_hat(U) / proj_hat(kernel at lam)    and    proj_lam(U) / proj_lam(kernel at hat)
//! ```
//!
//! are isomorphic through the map that sends the coset of an element's
//! hat-part to the coset of its lam-part. The map is read off `U` by
//! scanning, never searched for; a multi-valued record falsifies the
//! underlying theorem and is reported as an internal failure. The same scan
//! extends to the prolongation: the quotient of `U` by the product of the
//! two kernels maps bijectively onto both sides.
//!
//! Submodules carry the converse constructions (rebuilding `U` from coset
//! data) and the isomorphism systems of smashed and block-decomposed
//! subgroups.

mod converse;
mod system;

pub use converse::{GoursatData, SplitData};
pub use system::{
    block_system, block_union_member, matched_tuple_system, pullback, smashed_projection_member,
    smashed_system, IsoSystem, SystemMember,
};

use std::sync::Arc;

use crate::group::{check_iso, compose_maps, GroupTable, QuotientGroup, SubgroupSet};
use crate::product::{IndexSet, ProductSubgroup, Realized, Tuple};
use crate::{Error, Result};

/// A verified isomorphism between the two projection quotients of a
/// subgroup of a direct product, together with its prolongation.
#[derive(Debug, Clone)]
pub struct StructuralIso {
    lam_hat: IndexSet,
    lam: IndexSet,
    source: QuotientGroup,
    target: QuotientGroup,
    source_real: Realized,
    target_real: Realized,
    map: Vec<usize>,
    prolongation: Prolongation,
}

/// The middle quotient `U / (kernel at lam x kernel at hat)` with its two
/// coset bijections onto the endpoints of the structural isomorphism.
#[derive(Debug, Clone)]
pub struct Prolongation {
    quotient: QuotientGroup,
    whole_real: Realized,
    to_source: Vec<usize>,
    to_target: Vec<usize>,
}

impl Prolongation {
    pub fn quotient(&self) -> &QuotientGroup {
        &self.quotient
    }

    pub fn whole_realized(&self) -> &Realized {
        &self.whole_real
    }

    pub fn to_source(&self) -> &[usize] {
        &self.to_source
    }

    pub fn to_target(&self) -> &[usize] {
        &self.to_target
    }
}

impl StructuralIso {
    /// Index set whose projection gives the source side.
    pub fn lam_hat(&self) -> &IndexSet {
        &self.lam_hat
    }

    /// Index set whose projection gives the target side.
    pub fn lam(&self) -> &IndexSet {
        &self.lam
    }

    pub fn source(&self) -> &QuotientGroup {
        &self.source
    }

    pub fn target(&self) -> &QuotientGroup {
        &self.target
    }

    /// The realized source projection; its tuples name the quotient's
    /// underlying elements.
    pub fn source_realized(&self) -> &Realized {
        &self.source_real
    }

    pub fn target_realized(&self) -> &Realized {
        &self.target_real
    }

    /// The isomorphism as a coset index map.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, coset: usize) -> usize {
        self.map[coset]
    }

    pub fn prolongation(&self) -> &Prolongation {
        &self.prolongation
    }

    /// Re-runs the bijectivity and multiplicativity verification.
    pub fn verify(&self) -> crate::group::IsoCheck {
        check_iso(&self.map, &self.source, &self.target)
    }

    /// Source coset of a full-width element, through the realized
    /// projection.
    pub fn source_coset_of(&self, t: &Tuple) -> Result<usize> {
        let part: Tuple = self.lam_hat.members().iter().map(|&i| t[i]).collect();
        let id = self.source_real.id_of(&part)?;
        self.source.coset_of(id)
    }

    /// Target coset of a full-width element.
    pub fn target_coset_of(&self, t: &Tuple) -> Result<usize> {
        let part: Tuple = self.lam.members().iter().map(|&i| t[i]).collect();
        let id = self.target_real.id_of(&part)?;
        self.target.coset_of(id)
    }

    /// Whether a candidate coset map sends, for every element of `u`, the
    /// source coset to the target coset. The scanned map is the only one
    /// that can.
    pub fn map_is_structural(&self, u: &ProductSubgroup, candidate: &[usize]) -> Result<bool> {
        if candidate.len() != self.source.order() {
            return Ok(false);
        }
        for t in u.elements() {
            let s = self.source_coset_of(t)?;
            let g = self.target_coset_of(t)?;
            if candidate[s] != g {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Builds the structural isomorphism of `u` at the proper index set `lam`:
/// source over the complementary projection, target over `lam`, prolongation
/// in the middle. Everything is verified before it is returned.
pub fn split_iso(u: &ProductSubgroup, lam: &IndexSet) -> Result<StructuralIso> {
    let n = u.arity();
    if lam.is_empty() || !lam.is_proper(n) {
        return Err(Error::input(
            "structural isomorphism needs a nonempty proper index set",
        ));
    }
    let lam_hat = lam.complement(n);

    let source_real = u.project(&lam_hat)?.realize(&format!("proj{}", lam_hat))?;
    let target_real = u.project(lam)?.realize(&format!("proj{}", lam))?;

    let kernel_lam = u.projection_kernel(lam)?;
    let kernel_hat = u.projection_kernel(&lam_hat)?;

    let source = projected_quotient(u, &source_real, &lam_hat, &kernel_lam)?;
    let target = projected_quotient(u, &target_real, lam, &kernel_hat)?;

    // Scan U once, recording source coset -> target coset.
    let mut map: Vec<Option<usize>> = vec![None; source.order()];
    for t in u.elements() {
        let s = coset_of_part(&source, &source_real, &lam_hat, t)?;
        let g = coset_of_part(&target, &target_real, lam, t)?;
        match map[s] {
            None => map[s] = Some(g),
            Some(prev) if prev == g => {}
            Some(prev) => {
                return Err(Error::inconsistent(format!(
                    "coset correspondence is multi-valued: source coset {} maps to both {} and {}",
                    s, prev, g
                )))
            }
        }
    }
    let map: Vec<usize> = map
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::inconsistent("a source coset was never visited by the scan"))?;
    let verdict = check_iso(&map, &source, &target);
    if !verdict.is_iso() {
        return Err(Error::inconsistent(format!(
            "scanned coset map fails verification: {}",
            verdict
        )));
    }

    let prolongation = build_prolongation(
        u,
        &kernel_lam,
        &kernel_hat,
        &source,
        &source_real,
        &lam_hat,
        &target,
        &target_real,
        lam,
        &map,
    )?;

    Ok(StructuralIso {
        lam_hat,
        lam: lam.clone(),
        source,
        target,
        source_real,
        target_real,
        map,
        prolongation,
    })
}

/// The two-factor structural isomorphism, from the first-factor quotient to
/// the second-factor quotient.
pub fn two_factor_iso(u: &ProductSubgroup) -> Result<StructuralIso> {
    if u.arity() != 2 {
        return Err(Error::input(
            "the two-factor structural isomorphism needs exactly two factors",
        ));
    }
    split_iso(u, &IndexSet::singleton(1))
}

/// Quotient of a realized projection by the (faithful) projection of a
/// kernel subgroup. The kernel is trivial on the projected-away indices, so
/// projecting loses nothing; normality inside the projection is re-checked
/// by the quotient constructor.
fn projected_quotient(
    u: &ProductSubgroup,
    real: &Realized,
    positions: &IndexSet,
    kernel: &ProductSubgroup,
) -> Result<QuotientGroup> {
    let _ = u;
    let ids: Vec<u16> = kernel
        .elements()
        .iter()
        .map(|t| {
            let part: Tuple = positions.members().iter().map(|&i| t[i]).collect();
            real.id_of(&part)
        })
        .collect::<Result<_>>()?;
    let normal = SubgroupSet::from_elements(&real.table, ids)?;
    QuotientGroup::new(&SubgroupSet::full(&real.table), &normal)
}

fn coset_of_part(
    quotient: &QuotientGroup,
    real: &Realized,
    positions: &IndexSet,
    t: &Tuple,
) -> Result<usize> {
    let part: Tuple = positions.members().iter().map(|&i| t[i]).collect();
    let id = real.id_of(&part)?;
    quotient.coset_of(id)
}

#[allow(clippy::too_many_arguments)]
fn build_prolongation(
    u: &ProductSubgroup,
    kernel_lam: &ProductSubgroup,
    kernel_hat: &ProductSubgroup,
    source: &QuotientGroup,
    source_real: &Realized,
    lam_hat: &IndexSet,
    target: &QuotientGroup,
    target_real: &Realized,
    lam: &IndexSet,
    map: &[usize],
) -> Result<Prolongation> {
    let whole_real = u.realize("U")?;
    let product = kernel_lam.setwise_with(kernel_hat);
    let ids: Vec<u16> = product
        .iter()
        .map(|t| whole_real.id_of(t))
        .collect::<Result<_>>()?;
    let normal = SubgroupSet::from_elements(&whole_real.table, ids)?;
    let quotient = QuotientGroup::new(&SubgroupSet::full(&whole_real.table), &normal)?;

    let mut to_source: Vec<Option<usize>> = vec![None; quotient.order()];
    let mut to_target: Vec<Option<usize>> = vec![None; quotient.order()];
    for (id, t) in whole_real.tuples.iter().enumerate() {
        let c = quotient.coset_of(id as u16)?;
        let s = coset_of_part(source, source_real, lam_hat, t)?;
        let g = coset_of_part(target, target_real, lam, t)?;
        for (slot, value) in [(&mut to_source[c], s), (&mut to_target[c], g)] {
            match slot {
                None => *slot = Some(value),
                Some(prev) if *prev == value => {}
                Some(_) => {
                    return Err(Error::inconsistent(
                        "prolongation coset maps to two different projection cosets",
                    ))
                }
            }
        }
    }
    let to_source: Vec<usize> = to_source.into_iter().map(|o| o.unwrap()).collect();
    let to_target: Vec<usize> = to_target.into_iter().map(|o| o.unwrap()).collect();
    for (name, check) in [
        ("source", check_iso(&to_source, &quotient, source)),
        ("target", check_iso(&to_target, &quotient, target)),
    ] {
        if !check.is_iso() {
            return Err(Error::inconsistent(format!(
                "prolongation fails to match the {} quotient: {}",
                name, check
            )));
        }
    }
    if compose_maps(&to_source, map) != to_target {
        return Err(Error::inconsistent(
            "prolongation bijections do not commute with the coset isomorphism",
        ));
    }
    Ok(Prolongation {
        quotient,
        whole_real,
        to_source,
        to_target,
    })
}

/// Whether two group tables present the same group the same way.
pub(crate) fn same_table(a: &Arc<GroupTable>, b: &Arc<GroupTable>) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    if a.order() != b.order() {
        return false;
    }
    let n = a.order();
    (0..n).all(|x| (0..n).all(|y| a.mul(x as u16, y as u16) == b.mul(x as u16, y as u16)))
}

/// Checks that the structural isomorphism construction commutes with a pair
/// of homomorphisms applied factorwise: the isomorphism of the image
/// subgroup is exactly the one induced by pushing cosets forward.
pub fn naturality_holds(
    u: &ProductSubgroup,
    fa: &crate::group::Homomorphism,
    fb: &crate::group::Homomorphism,
) -> Result<bool> {
    use crate::product::ProductGroup;

    if u.arity() != 2 {
        return Err(Error::input("naturality is a two-factor check"));
    }
    if !same_table(fa.domain(), u.ambient().factor(0))
        || !same_table(fb.domain(), u.ambient().factor(1))
    {
        return Err(Error::input(
            "homomorphism domains must be the two product factors",
        ));
    }
    let image_ambient =
        ProductGroup::new(vec![Arc::clone(fa.codomain()), Arc::clone(fb.codomain())])?;
    let mut image: Vec<Tuple> = u
        .elements()
        .iter()
        .map(|t| vec![fa.apply(t[0]), fb.apply(t[1])])
        .collect();
    image.sort();
    image.dedup();
    let u_image = ProductSubgroup::from_closed(&image_ambient, image);

    let sigma = two_factor_iso(u)?;
    let sigma_image = two_factor_iso(&u_image)?;

    // Push each source coset forward; every member must land in a single
    // image coset, and the image isomorphism must match on it.
    let k = sigma.source().order();
    for c in 0..k {
        let pushed_source = pushed_coset(&sigma, &sigma_image, c, true, fa)?;
        let pushed_target = pushed_coset(&sigma, &sigma_image, sigma.apply(c), false, fb)?;
        let (Some(ps), Some(pt)) = (pushed_source, pushed_target) else {
            return Ok(false);
        };
        if sigma_image.apply(ps) != pt {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image coset of one endpoint coset under a factor homomorphism, or `None`
/// if the members scatter over several image cosets.
fn pushed_coset(
    sigma: &StructuralIso,
    sigma_image: &StructuralIso,
    coset: usize,
    source_side: bool,
    f: &crate::group::Homomorphism,
) -> Result<Option<usize>> {
    let (quotient, real, iq, ireal) = if source_side {
        (
            sigma.source(),
            sigma.source_realized(),
            sigma_image.source(),
            sigma_image.source_realized(),
        )
    } else {
        (
            sigma.target(),
            sigma.target_realized(),
            sigma_image.target(),
            sigma_image.target_realized(),
        )
    };
    let mut landed: Option<usize> = None;
    for &member in &quotient.cosets()[coset] {
        let value = f.apply(real.tuples[member as usize][0]);
        let id = ireal.id_of(&vec![value])?;
        let c = iq.coset_of(id)?;
        match landed {
            None => landed = Some(c),
            Some(prev) if prev == c => {}
            Some(_) => return Ok(None),
        }
    }
    Ok(landed)
}
