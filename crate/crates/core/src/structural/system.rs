//! Systems of quotient isomorphisms tied together by a common reference.
//!
//! When the core is the direct product of the singleton supports (and the
//! subgroup is subdirect), every factor quotient by its support is
//! isomorphic to the quotient of the whole subgroup by its core. The same
//! holds block by block for the cohesive decomposition, without any
//! smashedness assumption. Each member map is scanned off the subgroup's
//! tuples and verified; pairwise maps are composites through the reference,
//! which keeps the whole system compatible by construction.

use std::sync::Arc;

use crate::decomp::{cohesive_blocks, is_smashed};
use crate::group::{check_iso, compose_maps, invert_map, Homomorphism, QuotientGroup, SubgroupSet};
use crate::product::{IndexSet, ProductGroup, ProductSubgroup, Realized, Tuple};
use crate::{Error, Result};

use super::same_table;

/// One quotient of the system: the projection of the subgroup onto some
/// index set, modulo a normal subgroup supported there, with its verified
/// map onto the reference quotient.
#[derive(Debug, Clone)]
pub struct SystemMember {
    indices: IndexSet,
    real: Realized,
    quotient: QuotientGroup,
    to_reference: Vec<usize>,
}

impl SystemMember {
    pub fn indices(&self) -> &IndexSet {
        &self.indices
    }

    pub fn quotient(&self) -> &QuotientGroup {
        &self.quotient
    }

    pub fn realized(&self) -> &Realized {
        &self.real
    }

    /// Coset map onto the reference quotient.
    pub fn to_reference(&self) -> &[usize] {
        &self.to_reference
    }

    pub fn label(&self) -> String {
        self.quotient.label().to_string()
    }
}

/// A family of member quotients, all isomorphic to one reference quotient
/// of the subgroup by its core.
#[derive(Debug, Clone)]
pub struct IsoSystem {
    reference: QuotientGroup,
    whole_real: Realized,
    members: Vec<SystemMember>,
    warnings: Vec<String>,
}

impl IsoSystem {
    /// The common quotient: the whole subgroup modulo its core.
    pub fn reference(&self) -> &QuotientGroup {
        &self.reference
    }

    pub fn whole_realized(&self) -> &Realized {
        &self.whole_real
    }

    pub fn members(&self) -> &[SystemMember] {
        &self.members
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// The isomorphism from member `i`'s quotient to member `j`'s, routed
    /// through the reference.
    pub fn pairwise(&self, i: usize, j: usize) -> Vec<usize> {
        compose_maps(
            self.members[i].to_reference(),
            &invert_map(self.members[j].to_reference()),
        )
    }

    /// Re-verifies every member map and the triple compatibility
    /// `map(i,k) = map(j,k) . map(i,j)`.
    pub fn verify(&self) -> bool {
        for m in &self.members {
            if !check_iso(m.to_reference(), m.quotient(), &self.reference).is_iso() {
                return false;
            }
        }
        let k = self.members.len();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let direct = self.pairwise(i, l);
                    let routed = compose_maps(&self.pairwise(i, j), &self.pairwise(j, l));
                    if direct != routed {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Builds the member for one index set: realizes the projection, quotients
/// by the given supported normal subgroup, and scans the coset map onto the
/// reference. A multi-valued scan is an internal failure (the isomorphism
/// is a theorem under the callers' preconditions).
fn projection_member(
    u: &ProductSubgroup,
    indices: &IndexSet,
    normal_tuples: &[Tuple],
    reference: &QuotientGroup,
    whole_real: &Realized,
) -> Result<SystemMember> {
    let real = u.project(indices)?.realize(&format!("proj{}", indices))?;
    let ids: Vec<u16> = normal_tuples
        .iter()
        .map(|t| {
            let part: Tuple = indices.members().iter().map(|&i| t[i]).collect();
            real.id_of(&part)
        })
        .collect::<Result<_>>()?;
    let normal = SubgroupSet::from_elements(&real.table, ids)?;
    let quotient = QuotientGroup::new(&SubgroupSet::full(&real.table), &normal)?;

    let mut map: Vec<Option<usize>> = vec![None; quotient.order()];
    for (uid, t) in whole_real.tuples.iter().enumerate() {
        let part: Tuple = indices.members().iter().map(|&i| t[i]).collect();
        let c = quotient.coset_of(real.id_of(&part)?)?;
        let r = reference.coset_of(uid as u16)?;
        match map[c] {
            None => map[c] = Some(r),
            Some(prev) if prev == r => {}
            Some(_) => {
                return Err(Error::inconsistent(format!(
                    "projection quotient over {} maps onto the reference multi-valuedly",
                    indices
                )))
            }
        }
    }
    let to_reference: Vec<usize> = map
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::inconsistent("a projection coset was never visited"))?;
    let verdict = check_iso(&to_reference, &quotient, reference);
    if !verdict.is_iso() {
        return Err(Error::inconsistent(format!(
            "projection quotient over {} fails to match the reference: {}",
            indices, verdict
        )));
    }
    Ok(SystemMember {
        indices: indices.clone(),
        real,
        quotient,
        to_reference,
    })
}

/// The reference quotient `U / core` over the realized subgroup.
fn reference_quotient(u: &ProductSubgroup) -> Result<(Realized, QuotientGroup)> {
    let whole_real = u.realize("U")?;
    let core = u.core();
    let ids: Vec<u16> = core
        .elements()
        .iter()
        .map(|t| whole_real.id_of(t))
        .collect::<Result<_>>()?;
    let normal = SubgroupSet::from_elements(&whole_real.table, ids)?;
    let reference = QuotientGroup::new(&SubgroupSet::full(&whole_real.table), &normal)?;
    Ok((whole_real, reference))
}

fn require_subdirect(u: &ProductSubgroup) -> Result<()> {
    for i in 0..u.arity() {
        let hit = u.project(&IndexSet::singleton(i))?.order();
        let full = u.ambient().factor(i).order();
        if hit != full {
            return Err(Error::precondition(format!(
                "not a subdirect product: the projection onto factor {} has order {} of {}",
                i + 1,
                hit,
                full
            )));
        }
    }
    Ok(())
}

/// The system of factor quotients of a smashed subdirect product: every
/// `factor modulo its support` is isomorphic to `U modulo core`.
pub fn smashed_system(u: &ProductSubgroup) -> Result<IsoSystem> {
    require_subdirect(u)?;
    if !is_smashed(u) {
        return Err(Error::precondition(
            "the core is not the direct product of the singleton supports",
        ));
    }
    let (whole_real, reference) = reference_quotient(u)?;
    let mut members = Vec::with_capacity(u.arity());
    for i in 0..u.arity() {
        let indices = IndexSet::singleton(i);
        let l = u.support_subgroup(&indices)?;
        members.push(projection_member(
            u,
            &indices,
            l.elements(),
            &reference,
            &whole_real,
        )?);
    }
    Ok(IsoSystem {
        reference,
        whole_real,
        members,
        warnings: Vec::new(),
    })
}

/// Extends a smashed system with the quotient over an arbitrary index set:
/// the projection onto `lam` modulo the direct product of the singleton
/// supports inside it, again isomorphic to the reference.
pub fn smashed_projection_member(
    u: &ProductSubgroup,
    system: &IsoSystem,
    lam: &IndexSet,
) -> Result<SystemMember> {
    if lam.is_empty() {
        return Err(Error::input("projection member needs a nonempty index set"));
    }
    let normal = u.support_combination(lam)?;
    projection_member(u, lam, &normal, &system.reference, &system.whole_real)
}

/// The block system: one member per cohesive block, the block projection
/// modulo the block subgroup. Holds with no smashedness assumption; a
/// warning is recorded for every factor the subgroup does not project onto
/// fully, since the quotients are then taken over proper projections.
pub fn block_system(u: &ProductSubgroup) -> Result<IsoSystem> {
    let decomposition = cohesive_blocks(u);
    let (whole_real, reference) = reference_quotient(u)?;
    let mut warnings = Vec::new();
    let mut members = Vec::with_capacity(decomposition.blocks().len());
    for (indices, block_subgroup) in decomposition.blocks() {
        for &i in indices.members() {
            let hit = u.project(&IndexSet::singleton(i))?.order();
            let full = u.ambient().factor(i).order();
            if hit != full {
                warnings.push(format!(
                    "block {}: the projection onto factor {} has order {} of {}; its quotient is taken over the projection",
                    indices,
                    i + 1,
                    hit,
                    full
                ));
            }
        }
        members.push(projection_member(
            u,
            indices,
            block_subgroup.elements(),
            &reference,
            &whole_real,
        )?);
    }
    Ok(IsoSystem {
        reference,
        whole_real,
        members,
        warnings,
    })
}

/// Extends a block system with the quotient over a union of blocks: the
/// projection onto the combined indices modulo the direct product of the
/// chosen block subgroups.
pub fn block_union_member(
    u: &ProductSubgroup,
    system: &IsoSystem,
    blocks: &[usize],
) -> Result<SystemMember> {
    if blocks.is_empty() {
        return Err(Error::input("block union needs at least one block"));
    }
    let mut seen = vec![false; system.members.len()];
    let mut indices = IndexSet::empty();
    let mut normal: Vec<Tuple> = vec![u.ambient().identity()];
    for &b in blocks {
        if b >= system.members.len() {
            return Err(Error::input(format!("no block numbered {}", b + 1)));
        }
        if seen[b] {
            return Err(Error::input(format!("block {} repeated", b + 1)));
        }
        seen[b] = true;
        let member = &system.members[b];
        indices = indices.union(member.indices());
        let block_sub = u.support_subgroup(member.indices())?;
        let mut next = std::collections::BTreeSet::new();
        for x in &normal {
            for y in block_sub.elements() {
                next.insert(u.ambient().mul(x, y));
            }
        }
        normal = next.into_iter().collect();
    }
    projection_member(u, &indices, &normal, &system.reference, &system.whole_real)
}

/// The matched-tuple system of a subdirect product whose projection kernels
/// are all trivial: the factors are pairwise isomorphic and the subgroup is
/// exactly the graph of those isomorphisms.
pub fn matched_tuple_system(u: &ProductSubgroup) -> Result<IsoSystem> {
    require_subdirect(u)?;
    for i in 0..u.arity() {
        let kernel = u.projection_kernel(&IndexSet::singleton(i))?;
        if !kernel.is_trivial() {
            return Err(Error::precondition(format!(
                "the projection kernel at factor {} has order {}, not 1",
                i + 1,
                kernel.order()
            )));
        }
    }
    let (whole_real, reference) = reference_quotient(u)?;
    let mut members = Vec::with_capacity(u.arity());
    for i in 0..u.arity() {
        let indices = IndexSet::singleton(i);
        members.push(projection_member(
            u,
            &indices,
            &[u.ambient().identity()],
            &reference,
            &whole_real,
        )?);
    }
    let system = IsoSystem {
        reference,
        whole_real,
        members,
        warnings: Vec::new(),
    };
    // The subgroup must be exactly the tuples matched by the pairwise maps.
    for t in u.elements() {
        for j in 1..u.arity() {
            let map = system.pairwise(0, j);
            let expected = map[t[0] as usize];
            if expected != t[j] as usize {
                return Err(Error::inconsistent(
                    "an element of the subgroup escapes the matched-tuple correspondence",
                ));
            }
        }
    }
    if u.order() != u.ambient().factor(0).order() {
        return Err(Error::inconsistent(
            "matched-tuple subgroup has the wrong order for a graph",
        ));
    }
    Ok(system)
}

/// The pullback of a family of homomorphisms with one common codomain: all
/// tuples whose images agree. Non-surjective maps are allowed; each one is
/// reported in the warning list, since the agreement condition then only
/// ranges over its image.
pub fn pullback(taus: &[Homomorphism]) -> Result<(ProductSubgroup, Vec<String>)> {
    if taus.len() < 2 {
        return Err(Error::input("a pullback needs at least two homomorphisms"));
    }
    let reference = taus[0].codomain();
    for (i, tau) in taus.iter().enumerate().skip(1) {
        if !same_table(tau.codomain(), reference) {
            return Err(Error::input(format!(
                "map {} targets {}, but the first map targets {}",
                i + 1,
                tau.codomain().label(),
                reference.label()
            )));
        }
    }
    let mut warnings = Vec::new();
    for (i, tau) in taus.iter().enumerate() {
        if !tau.is_surjective() {
            warnings.push(format!(
                "map {} from {} is not surjective; the agreement condition only sees its image",
                i + 1,
                tau.domain().label()
            ));
        }
    }
    let factors: Vec<_> = taus.iter().map(|t| Arc::clone(t.domain())).collect();
    let ambient = ProductGroup::new(factors)?;

    // Bucket each domain by image value, then take one cartesian product
    // per common value.
    let r = reference.order();
    let fibers: Vec<Vec<Vec<u16>>> = taus
        .iter()
        .map(|tau| {
            let mut buckets: Vec<Vec<u16>> = vec![Vec::new(); r];
            for x in 0..tau.domain().order() as u16 {
                buckets[tau.apply(x) as usize].push(x);
            }
            buckets
        })
        .collect();
    let mut tuples: Vec<Tuple> = Vec::new();
    for v in 0..r {
        if fibers.iter().any(|f| f[v].is_empty()) {
            continue;
        }
        let mut partial: Vec<Tuple> = vec![Vec::new()];
        for f in &fibers {
            let mut next = Vec::with_capacity(partial.len() * f[v].len());
            for base in &partial {
                for &x in &f[v] {
                    let mut t = base.clone();
                    t.push(x);
                    next.push(t);
                }
            }
            partial = next;
        }
        tuples.extend(partial);
        if tuples.len() > crate::MAX_MATERIALIZED_ORDER {
            return Err(Error::Resource {
                what: "pullback subgroup",
                order: tuples.len(),
                bound: crate::MAX_MATERIALIZED_ORDER,
            });
        }
    }
    tuples.sort();
    let u = ProductSubgroup::from_closed(&ambient, tuples);
    debug_assert!(is_smashed(&u), "pullbacks are smashed");
    Ok((u, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    fn z2() -> Arc<GroupTable> {
        GroupTable::cyclic(2).unwrap()
    }

    fn z4() -> Arc<GroupTable> {
        GroupTable::cyclic(4).unwrap()
    }

    fn slant() -> ProductSubgroup {
        let p = ProductGroup::new(vec![z4(), z2()]).unwrap();
        ProductSubgroup::from_generators(&p, &[vec![1, 1]]).unwrap()
    }

    fn parity_cube() -> ProductSubgroup {
        let p = ProductGroup::new(vec![z2(), z2(), z2()]).unwrap();
        ProductSubgroup::from_generators(&p, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap()
    }

    #[test]
    fn slant_smashed_system() {
        let u = slant();
        let system = smashed_system(&u).unwrap();
        assert_eq!(system.reference().order(), 2);
        assert_eq!(system.members().len(), 2);
        // First member: Z4 over {0,2}; second: Z2 over nothing.
        assert_eq!(system.members()[0].quotient().order(), 2);
        assert_eq!(system.members()[0].quotient().normal().order(), 2);
        assert_eq!(system.members()[1].quotient().normal().order(), 1);
        assert!(system.verify());
    }

    #[test]
    fn smashed_system_rejects_parity_cube() {
        let w = parity_cube();
        let err = smashed_system(&w).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn smashed_member_over_larger_index_set() {
        let u = slant();
        let system = smashed_system(&u).unwrap();
        let member = smashed_projection_member(&u, &system, &IndexSet::full(2)).unwrap();
        // Projection onto everything is U; modulo L1 x L2 the quotient has
        // order 4 / 2 = 2, matching the reference.
        assert_eq!(member.quotient().order(), 2);
    }

    #[test]
    fn block_system_of_parity_cube_is_trivial_quotient() {
        let w = parity_cube();
        let system = block_system(&w).unwrap();
        assert_eq!(system.members().len(), 1);
        assert_eq!(system.reference().order(), 1);
        assert_eq!(system.members()[0].quotient().order(), 1);
        assert!(system.verify());
        assert!(system.warnings().is_empty());
    }

    #[test]
    fn block_system_on_smashed_subgroup_matches_smashed_system() {
        let u = slant();
        let blocks = block_system(&u).unwrap();
        let smashed = smashed_system(&u).unwrap();
        assert_eq!(blocks.members().len(), smashed.members().len());
        for (b, s) in blocks.members().iter().zip(smashed.members()) {
            assert_eq!(b.indices(), s.indices());
            assert_eq!(b.quotient().order(), s.quotient().order());
        }
    }

    #[test]
    fn block_union_member_collapses_to_reference() {
        let u = slant();
        let system = block_system(&u).unwrap();
        let member = block_union_member(&u, &system, &[0, 1]).unwrap();
        assert_eq!(member.quotient().order(), system.reference().order());
        assert!(block_union_member(&u, &system, &[0, 0]).is_err());
        assert!(block_union_member(&u, &system, &[5]).is_err());
    }

    #[test]
    fn diagonal_matched_tuples_are_identity() {
        let g = z4();
        let p = ProductGroup::new(vec![Arc::clone(&g), Arc::clone(&g)]).unwrap();
        let u = ProductSubgroup::from_generators(&p, &[vec![1, 1]]).unwrap();
        let system = matched_tuple_system(&u).unwrap();
        assert_eq!(system.pairwise(0, 1), vec![0, 1, 2, 3]);
        assert!(system.verify());
    }

    #[test]
    fn inverse_graph_matched_tuples_are_negation() {
        let g = z4();
        let p = ProductGroup::new(vec![Arc::clone(&g), Arc::clone(&g)]).unwrap();
        let u = ProductSubgroup::from_generators(&p, &[vec![1, 3]]).unwrap();
        let system = matched_tuple_system(&u).unwrap();
        assert_eq!(system.pairwise(0, 1), vec![0, 3, 2, 1]);
    }

    #[test]
    fn matched_tuples_reject_nontrivial_kernels() {
        let p = ProductGroup::new(vec![z2(), z2()]).unwrap();
        let u = ProductSubgroup::full(&p).unwrap();
        assert!(matches!(
            matched_tuple_system(&u),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn triple_diagonal_system_is_compatible() {
        let g = z2();
        let p = ProductGroup::new(vec![Arc::clone(&g), Arc::clone(&g), Arc::clone(&g)]).unwrap();
        let u = ProductSubgroup::from_generators(&p, &[vec![1, 1, 1]]).unwrap();
        let system = matched_tuple_system(&u).unwrap();
        assert_eq!(system.members().len(), 3);
        assert!(system.verify());
    }

    #[test]
    fn pullback_of_parity_and_identity_is_slant() {
        let parity = Homomorphism::new(&z4(), &z2(), vec![0, 1, 0, 1]).unwrap();
        let ident = Homomorphism::identity(&z2());
        let (u, warnings) = pullback(&[parity, ident]).unwrap();
        assert_eq!(u, slant());
        assert!(warnings.is_empty());
    }

    #[test]
    fn pullback_of_trivial_maps_is_full_product() {
        let one = GroupTable::cyclic(1).unwrap();
        let t1 = Homomorphism::new(&z4(), &one, vec![0; 4]).unwrap();
        let t2 = Homomorphism::new(&z2(), &one, vec![0; 2]).unwrap();
        let (u, _) = pullback(&[t1, t2]).unwrap();
        assert_eq!(u.order(), 8);
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let g = z4();
        let (u, warnings) =
            pullback(&[Homomorphism::identity(&g), Homomorphism::identity(&g)]).unwrap();
        assert_eq!(u.order(), 4);
        assert!(u.elements().iter().all(|t| t[0] == t[1]));
        assert!(warnings.is_empty());
    }

    #[test]
    fn pullback_warns_on_non_surjective_maps() {
        let embed = Homomorphism::new(&z2(), &z4(), vec![0, 2]).unwrap();
        let ident = Homomorphism::identity(&z4());
        let (u, warnings) = pullback(&[embed, ident]).unwrap();
        assert_eq!(warnings.len(), 1);
        // Agreement only over {0,2}: pairs (0,0), (1,2).
        assert_eq!(u.order(), 2);
    }

    #[test]
    fn pullback_rejects_mismatched_codomains() {
        let t1 = Homomorphism::identity(&z4());
        let t2 = Homomorphism::identity(&z2());
        assert!(pullback(&[t1, t2]).is_err());
    }
}
