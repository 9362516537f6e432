//! Subgroups of direct products presented by homomorphisms.
//!
//! A tuple of homomorphisms `f1, ..., fn` out of one source group `A`
//! induces the map `a -> (f1(a), ..., fn(a))` into the direct product of
//! the codomains; the image is a subgroup `U`, and every subgroup of a
//! finite direct product arises this way from its own coordinate
//! projections. [`HomPresentation`] carries the source, the maps and the
//! presented subgroup; the operations here translate between properties of
//! `U` downstairs (supports, projection kernels, splitting, smashedness)
//! and properties of the map kernels upstairs in `A`, and convert between
//! presentations and pullback data.

use std::sync::Arc;

use crate::decomp::{is_smashed, split_check};
use crate::group::{GroupTable, Homomorphism, QuotientGroup, SubgroupSet};
use crate::product::{IndexSet, ProductGroup, ProductSubgroup, Tuple};
use crate::structural::{
    pullback, same_table, smashed_system, split_iso, two_factor_iso, StructuralIso,
};
use crate::{Error, Result};

/// The kernels of a presentation's maps, closed under intersection.
///
/// For an index set `{i1, ..., is}` the lattice returns the intersection of
/// the kernels of the maps at those positions; this is the kernel of the
/// induced map followed by the projection onto those coordinates. The empty
/// index set gives the whole source group.
#[derive(Debug, Clone)]
pub struct KernelLattice {
    source: Arc<GroupTable>,
    singles: Vec<SubgroupSet>,
}

impl KernelLattice {
    fn new(source: &Arc<GroupTable>, maps: &[Homomorphism]) -> KernelLattice {
        KernelLattice {
            source: Arc::clone(source),
            singles: maps.iter().map(|f| f.kernel()).collect(),
        }
    }

    /// Number of maps in the presentation.
    pub fn arity(&self) -> usize {
        self.singles.len()
    }

    /// Kernel of the map at one position.
    ///
    /// Panics if `i` is out of range.
    pub fn single(&self, i: usize) -> &SubgroupSet {
        &self.singles[i]
    }

    /// Intersection of the kernels at the members of `lam`.
    ///
    /// The empty set yields the full source group. Panics if any member is
    /// out of range.
    pub fn kernel_of(&self, lam: &IndexSet) -> SubgroupSet {
        let mut k = SubgroupSet::full(&self.source);
        for &i in lam.members() {
            assert!(i < self.singles.len(), "kernel index {i} out of range");
            k = k.intersect(&self.singles[i]);
        }
        k
    }

    /// Intersection of all the kernels: the kernel of the induced map.
    pub fn joint_kernel(&self) -> SubgroupSet {
        self.kernel_of(&IndexSet::full(self.singles.len()))
    }
}

/// A subgroup of a direct product given by homomorphisms out of one group.
///
/// The stored maps all share the source as their domain and are all
/// surjective: a non-surjective input map is corestricted to its image on
/// construction (the substitution is recorded in the notes), so the
/// presented subgroup is always subdirect. The tuple images of the source
/// elements are kept, indexed by element id.
#[derive(Debug, Clone)]
pub struct HomPresentation {
    source: Arc<GroupTable>,
    maps: Vec<Homomorphism>,
    notes: Vec<String>,
    tuples: Vec<Tuple>,
    subgroup: ProductSubgroup,
    lattice: KernelLattice,
}

impl HomPresentation {
    /// The common domain of the maps.
    pub fn source(&self) -> &Arc<GroupTable> {
        &self.source
    }

    /// The maps, after any corestriction to their images.
    pub fn maps(&self) -> &[Homomorphism] {
        &self.maps
    }

    /// Number of maps.
    pub fn arity(&self) -> usize {
        self.maps.len()
    }

    /// Substitutions performed on construction, one line each.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// The presented subgroup, inside the product of the codomains.
    pub fn subgroup(&self) -> &ProductSubgroup {
        &self.subgroup
    }

    /// Image tuple of one source element under the induced map.
    ///
    /// Panics if `a` is out of range.
    pub fn image_tuple(&self, a: u16) -> &Tuple {
        &self.tuples[a as usize]
    }

    /// Image tuples of all source elements, indexed by element id.
    pub fn image_tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    /// The kernels of the maps and their intersections.
    pub fn lattice(&self) -> &KernelLattice {
        &self.lattice
    }

    /// Whether the induced map is injective.
    pub fn is_terse(&self) -> bool {
        self.lattice.joint_kernel().is_trivial()
    }

    /// Image of a subgroup of the source under the induced map, as a
    /// sorted tuple list.
    pub fn image_of_subgroup(&self, sub: &SubgroupSet) -> Result<Vec<Tuple>> {
        if !same_table(sub.parent(), &self.source) {
            return Err(Error::input(
                "subgroup lives in a different group than the presentation source",
            ));
        }
        let mut out: Vec<Tuple> = sub
            .elements()
            .iter()
            .map(|&a| self.tuples[a as usize].clone())
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// Builds the presentation of a subgroup by a tuple of homomorphisms.
///
/// Each map must have `source` as its domain. Non-surjective maps are
/// replaced by their corestriction onto the image, realized as its own
/// table, so the presented subgroup is subdirect; every substitution adds a
/// note to the result.
pub fn present(source: &Arc<GroupTable>, maps: Vec<Homomorphism>) -> Result<HomPresentation> {
    if maps.len() < 2 {
        return Err(Error::input(format!(
            "a presentation needs at least two maps, got {}",
            maps.len()
        )));
    }
    let mut notes = Vec::new();
    let mut fixed = Vec::with_capacity(maps.len());
    for (i, f) in maps.into_iter().enumerate() {
        if !same_table(f.domain(), source) {
            return Err(Error::input(format!(
                "map {} has domain {}, expected the presentation source {}",
                i + 1,
                f.domain().label(),
                source.label()
            )));
        }
        if f.is_surjective() {
            fixed.push(f);
        } else {
            let (g, _embed) = f.corestrict_to_image(&format!("im(f{})", i + 1))?;
            notes.push(format!(
                "map {} is not surjective; its codomain {} (order {}) is replaced by the image of order {}",
                i + 1,
                f.codomain().label(),
                f.codomain().order(),
                g.codomain().order(),
            ));
            fixed.push(g);
        }
    }
    let ambient = ProductGroup::new(fixed.iter().map(|f| Arc::clone(f.codomain())).collect())?;
    let tuples: Vec<Tuple> = (0..source.order() as u16)
        .map(|a| fixed.iter().map(|f| f.apply(a)).collect())
        .collect();
    let mut elements = tuples.clone();
    elements.sort_unstable();
    elements.dedup();
    let subgroup = ProductSubgroup::from_closed(&ambient, elements);
    let lattice = KernelLattice::new(source, &fixed);
    debug_assert_eq!(
        (0..source.order() as u16)
            .filter(|&a| ambient.is_identity(&tuples[a as usize]))
            .collect::<Vec<u16>>(),
        lattice.joint_kernel().elements(),
        "kernel of the induced map is the intersection of the map kernels"
    );
    Ok(HomPresentation {
        source: Arc::clone(source),
        maps: fixed,
        notes,
        tuples,
        subgroup,
        lattice,
    })
}

/// Quotients the source by the joint kernel, making the induced map
/// injective. The presented subgroup is unchanged.
pub fn tersify(p: &HomPresentation) -> Result<HomPresentation> {
    let joint = p.lattice.joint_kernel();
    let full = SubgroupSet::full(&p.source);
    let q = QuotientGroup::new(&full, &joint)?;
    let nat = q.natural_map()?;
    let reduced = nat.codomain();
    let mut maps = Vec::with_capacity(p.maps.len());
    for f in &p.maps {
        let map = (0..q.order()).map(|ci| f.apply(q.rep(ci))).collect();
        maps.push(Homomorphism::new(reduced, f.codomain(), map)?);
    }
    present(reduced, maps)
}

/// Outcome of checking a presentation's kernel identities.
///
/// One line per identity, with the description and whether it held. Every
/// line holds for every presentation; a failure means this library is
/// wrong, and the report exists so that harnesses can confirm the
/// identities on their own inputs rather than trust the claim.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    lines: Vec<(String, bool)>,
}

impl IdentityReport {
    /// The checked identities in order, each with its verdict.
    pub fn lines(&self) -> &[(String, bool)] {
        &self.lines
    }

    /// Whether every identity held.
    pub fn all_hold(&self) -> bool {
        self.lines.iter().all(|(_, ok)| *ok)
    }
}

/// Checks, for every nonempty proper index set, that the three kernel
/// identities of the presentation hold, and that the core of the presented
/// subgroup is the image of the product of all single-map kernels.
///
/// For an index set `L` with complement `M`, the identities are: the
/// kernel of the induced map followed by the projection onto `L` is the
/// joint kernel at `L`; the support at `L` is the image of the joint
/// kernel at `M`; the projection kernel at `L` is the image of the joint
/// kernel at `L`.
pub fn kernel_identity_report(p: &HomPresentation) -> Result<IdentityReport> {
    let n = p.arity();
    let order = p.source.order() as u16;
    let mut lines = Vec::new();
    for lam in IndexSet::full(n).subsets_nonempty() {
        if !lam.is_proper(n) {
            continue;
        }
        let comp = lam.complement(n);

        let upstairs: Vec<u16> = (0..order)
            .filter(|&a| lam.members().iter().all(|&i| p.tuples[a as usize][i] == 0))
            .collect();
        lines.push((
            format!("kernel of the composite onto {lam} equals the joint kernel at {lam}"),
            upstairs == p.lattice.kernel_of(&lam).elements(),
        ));

        let support = p.subgroup.support_subgroup(&lam)?;
        let pushed = p.image_of_subgroup(&p.lattice.kernel_of(&comp))?;
        lines.push((
            format!("support at {lam} equals the image of the joint kernel at {comp}"),
            support.elements() == pushed,
        ));

        let kernel = p.subgroup.projection_kernel(&lam)?;
        let pushed = p.image_of_subgroup(&p.lattice.kernel_of(&lam))?;
        lines.push((
            format!("projection kernel at {lam} equals the image of the joint kernel at {lam}"),
            kernel.elements() == pushed,
        ));
    }
    let product = product_of(&p.source, &p.lattice.singles)?;
    lines.push((
        "core equals the image of the product of all single-map kernels".to_string(),
        p.subgroup.core().elements() == p.image_of_subgroup(&product)?,
    ));
    Ok(IdentityReport { lines })
}

/// Iterated setwise product of normal subgroups of `source`.
fn product_of(source: &Arc<GroupTable>, parts: &[SubgroupSet]) -> Result<SubgroupSet> {
    let mut acc = SubgroupSet::trivial(source);
    for part in parts {
        acc = SubgroupSet::from_elements(source, acc.setwise_product(part))?;
    }
    Ok(acc)
}

/// The two sides of the support-versus-kernel split test at one
/// bipartition. They agree on every terse presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitCriterion {
    /// Whether the support at the index set factors over the two halves
    /// inside the presented subgroup.
    pub supports_split: bool,
    /// Whether the preimage of the support (the joint kernel at the
    /// complement of the index set, cut down to the product of all map
    /// kernels) is the internal direct product of the joint kernels at the
    /// complements of the halves, inside the source.
    pub kernels_split: bool,
}

impl SplitCriterion {
    /// Whether the two sides give the same verdict.
    pub fn agree(&self) -> bool {
        self.supports_split == self.kernels_split
    }
}

/// Tests a support split downstairs against the matching kernel split
/// upstairs, for a partition of `lam` into `m` and `nn`.
///
/// The upstairs side compares the product of the two complementary joint
/// kernels to the preimage of the support at `lam`. For proper `lam` that
/// preimage is just the joint kernel at the complement; when `lam` is the
/// whole index set the support is the core and its preimage is instead the
/// product of all map kernels, which the empty-set boundary convention
/// (the whole source) would overstate.
///
/// Requires a terse presentation; with a non-injective induced map the two
/// sides can genuinely differ, so the call is rejected instead.
pub fn split_criterion(
    p: &HomPresentation,
    lam: &IndexSet,
    m: &IndexSet,
    nn: &IndexSet,
) -> Result<SplitCriterion> {
    let arity = p.arity();
    if lam.members().iter().any(|&i| i >= arity) {
        return Err(Error::input(format!(
            "index set {lam} does not fit a presentation with {arity} maps"
        )));
    }
    if lam.len() < 2 {
        return Err(Error::input(format!(
            "index set {lam} has no nontrivial bipartition"
        )));
    }
    if m.is_empty() || nn.is_empty() || !m.intersect(nn).is_empty() || m.union(nn) != *lam {
        return Err(Error::input(format!("{m} and {nn} do not partition {lam}")));
    }
    if !p.is_terse() {
        return Err(Error::precondition(format!(
            "the presentation is not terse: the joint kernel has order {}",
            p.lattice.joint_kernel().order()
        )));
    }
    let supports_split = split_check(&p.subgroup, lam, m)?.splits();
    let core_preimage = product_of(&p.source, &p.lattice.singles)?;
    let k_lam = p
        .lattice
        .kernel_of(&lam.complement(arity))
        .intersect(&core_preimage);
    let k_m = p.lattice.kernel_of(&m.complement(arity));
    let k_n = p.lattice.kernel_of(&nn.complement(arity));
    let kernels_split =
        k_m.setwise_product(&k_n) == k_lam.elements() && k_m.intersect(&k_n).is_trivial();
    debug_assert_eq!(
        supports_split, kernels_split,
        "support split and kernel split agree on a terse presentation"
    );
    Ok(SplitCriterion {
        supports_split,
        kernels_split,
    })
}

/// Whether the subgroup of the source generated by all map kernels equals
/// the setwise product of the complementary joint kernels.
///
/// On a terse presentation this holds exactly when the presented subgroup
/// is smashed. Requires terseness.
pub fn smashed_kernel_criterion(p: &HomPresentation) -> Result<bool> {
    if !p.is_terse() {
        return Err(Error::precondition(format!(
            "the presentation is not terse: the joint kernel has order {}",
            p.lattice.joint_kernel().order()
        )));
    }
    let arity = p.arity();
    let generated = product_of(&p.source, &p.lattice.singles)?;
    let complements: Vec<SubgroupSet> = (0..arity)
        .map(|i| {
            p.lattice
                .kernel_of(&IndexSet::singleton(i).complement(arity))
        })
        .collect();
    let product = product_of(&p.source, &complements)?;
    let verdict = generated.elements() == product.elements();
    debug_assert_eq!(
        verdict,
        is_smashed(&p.subgroup),
        "kernel criterion agrees with smashedness of the presented subgroup"
    );
    Ok(verdict)
}

/// Epimorphisms `t_i` from the factor groups onto one reference group.
///
/// The pullback `{(g_1, ..., g_n) : t_1(g_1) = ... = t_n(g_n)}` of such
/// data is a smashed subdirect subgroup, and every smashed subgroup with a
/// terse presentation arises this way.
#[derive(Debug, Clone)]
pub struct PullbackData {
    reference: Arc<GroupTable>,
    maps: Vec<Homomorphism>,
}

impl PullbackData {
    /// The common codomain of the maps.
    pub fn reference(&self) -> &Arc<GroupTable> {
        &self.reference
    }

    /// The maps out of the factor groups, in coordinate order.
    pub fn maps(&self) -> &[Homomorphism] {
        &self.maps
    }
}

/// Converts a terse presentation of a smashed subgroup into pullback data.
///
/// The reference group is the presented subgroup over its core; each map
/// sends a factor element through the matching single-index quotient of
/// the quotient system. The pullback of the returned data is the presented
/// subgroup, elementwise.
pub fn to_pullback(p: &HomPresentation) -> Result<PullbackData> {
    if !p.is_terse() {
        return Err(Error::precondition(format!(
            "the presentation is not terse: the joint kernel has order {}",
            p.lattice.joint_kernel().order()
        )));
    }
    if !is_smashed(&p.subgroup) {
        return Err(Error::precondition(
            "the presented subgroup is not smashed, so no pullback over one reference group reproduces it",
        ));
    }
    let system = smashed_system(&p.subgroup)?;
    let reference = system.reference().as_table()?;
    let mut maps = Vec::with_capacity(p.arity());
    for (i, member) in system.members().iter().enumerate() {
        let g = p.maps[i].codomain();
        let mut map = Vec::with_capacity(g.order());
        for x in 0..g.order() as u16 {
            let id = member.realized().id_of(&vec![x])?;
            let coset = member.quotient().coset_of(id)?;
            map.push(member.to_reference()[coset] as u16);
        }
        maps.push(Homomorphism::new(g, &reference, map)?);
    }
    Ok(PullbackData { reference, maps })
}

/// Converts epimorphisms onto a common group into the presentation of
/// their pullback by its own coordinate projections.
///
/// The source is the pullback itself, realized as a table, so the induced
/// map is the identity and the presentation is terse. Non-surjective maps
/// are tolerated; the projections are then corestricted as usual and the
/// warnings carry over.
pub fn from_pullback(maps: &[Homomorphism]) -> Result<HomPresentation> {
    let (u, mut notes) = pullback(maps)?;
    let realized = u.realize("U")?;
    let mut projections = Vec::with_capacity(u.arity());
    for i in 0..u.arity() {
        let map: Vec<u16> = realized.tuples.iter().map(|t| t[i]).collect();
        projections.push(Homomorphism::new(
            &realized.table,
            u.ambient().factor(i),
            map,
        )?);
    }
    let mut p = present(&realized.table, projections)?;
    notes.append(&mut p.notes);
    p.notes = notes;
    Ok(p)
}

/// Presents the subgroup induced by two maps out of one group and returns
/// the structural isomorphism between the two factor quotients.
///
/// The isomorphism relates the image of the first map over the pushed
/// kernel of the second to the image of the second map over the pushed
/// kernel of the first; its prolongation adds the presented subgroup over
/// the product of its projection kernels as a third isomorphic quotient.
/// With the second map the identity, this is the first isomorphism
/// theorem: the image of the first map against the source over its kernel.
pub fn pair_quotients(
    f1: &Homomorphism,
    f2: &Homomorphism,
) -> Result<(HomPresentation, StructuralIso)> {
    if !same_table(f1.domain(), f2.domain()) {
        return Err(Error::input(format!(
            "the maps have different domains: {} and {}",
            f1.domain().label(),
            f2.domain().label()
        )));
    }
    let p = present(f1.domain(), vec![f1.clone(), f2.clone()])?;
    let iso = two_factor_iso(&p.subgroup)?;
    Ok((p, iso))
}

/// For a presentation by three maps, the structural isomorphism that
/// relates one factor quotient to the complementary projected quotient.
///
/// The target is the `i`th factor over the pushed joint kernel of the
/// other two maps; the source is the projection of the presented subgroup
/// onto the other two coordinates, over the projected image of the `i`th
/// kernel; the prolongation adds the third isomorphic quotient.
pub fn triple_split_quotients(p: &HomPresentation, i: usize) -> Result<StructuralIso> {
    if p.arity() != 3 {
        return Err(Error::input(format!(
            "expected a presentation by three maps, got {}",
            p.arity()
        )));
    }
    if i >= 3 {
        return Err(Error::input(format!("coordinate {i} out of range")));
    }
    split_iso(&p.subgroup, &IndexSet::singleton(i))
}

/// Presents a group on the quotients by the complements of an internal
/// direct product of normal subgroups.
///
/// Given normal subgroups `B_1, ..., B_n` of `G` whose product is direct,
/// the `i`th map is the natural quotient of `G` by the product of the
/// other factors. The result is always terse, subdirect and smashed, the
/// single-index supports have the orders of the factors, and the presented
/// subgroup over its core has the order of `G` over the product.
pub fn normal_factor_presentation(
    group: &Arc<GroupTable>,
    factors: &[SubgroupSet],
) -> Result<HomPresentation> {
    if factors.len() < 2 {
        return Err(Error::input(format!(
            "need at least two normal factors, got {}",
            factors.len()
        )));
    }
    let full = SubgroupSet::full(group);
    for (i, b) in factors.iter().enumerate() {
        if !same_table(b.parent(), group) {
            return Err(Error::input(format!(
                "factor {} lives in a different group",
                i + 1
            )));
        }
        if !b.is_normal_in(&full)? {
            return Err(Error::input(format!(
                "factor {} (order {}) is not normal in {}",
                i + 1,
                b.order(),
                group.label()
            )));
        }
    }
    let direct = product_of(group, factors)?;
    let expected: usize = factors.iter().map(|b| b.order()).product();
    if direct.order() != expected {
        return Err(Error::input(format!(
            "the factors overlap: their product has order {}, the factor orders multiply to {}",
            direct.order(),
            expected
        )));
    }
    let mut maps = Vec::with_capacity(factors.len());
    for i in 0..factors.len() {
        let others: Vec<SubgroupSet> = factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, b)| b.clone())
            .collect();
        let kernel = product_of(group, &others)?;
        maps.push(QuotientGroup::new(&full, &kernel)?.natural_map()?);
    }
    let p = present(group, maps)?;
    debug_assert!(
        p.is_terse(),
        "complement kernels of an internal direct product intersect trivially"
    );
    debug_assert!(p.subgroup.is_subdirect(), "quotient maps are surjective");
    debug_assert!(
        is_smashed(&p.subgroup),
        "a presentation on complement quotients is smashed"
    );
    #[cfg(debug_assertions)]
    for (i, b) in factors.iter().enumerate() {
        let li = p
            .subgroup
            .support_subgroup(&IndexSet::singleton(i))
            .expect("single-index support");
        debug_assert_eq!(
            li.order(),
            b.order(),
            "single-index support matches the factor"
        );
    }
    debug_assert_eq!(
        p.subgroup.order() * direct.order(),
        p.subgroup.core().order() * group.order(),
        "the presented subgroup over its core has the order of the group over the factor product"
    );
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::cohesive_blocks;

    fn z2() -> Arc<GroupTable> {
        GroupTable::cyclic(2).unwrap()
    }

    fn z4() -> Arc<GroupTable> {
        GroupTable::cyclic(4).unwrap()
    }

    /// Elementary abelian 2-group of the given rank, with basis vector
    /// `e_i` at element id `1 << (rank - 1 - i)`.
    fn elementary(rank: usize) -> Arc<GroupTable> {
        let factors = vec![z2(); rank];
        let (table, _) = ProductGroup::new(factors).unwrap().as_table().unwrap();
        table
    }

    fn parity(domain: &Arc<GroupTable>) -> Homomorphism {
        Homomorphism::new(domain, &z2(), vec![0, 1, 0, 1]).unwrap()
    }

    /// Z2^3 presented on the quotients by two of its axes.
    fn cube_pair() -> HomPresentation {
        let g = elementary(3);
        let b1 = SubgroupSet::from_elements(&g, vec![0, 4]).unwrap();
        let b2 = SubgroupSet::from_elements(&g, vec![0, 2]).unwrap();
        normal_factor_presentation(&g, &[b1, b2]).unwrap()
    }

    /// Z2^6 presented by five quotient maps whose kernels weld the first
    /// two coordinates together: the supports at {1} and {2} come from
    /// one-dimensional subgroups whose product misses part of the rank-3
    /// subgroup behind the support at {1,2}.
    fn welded_pair() -> HomPresentation {
        let a = elementary(6);
        let full = SubgroupSet::full(&a);
        let gens = |v: &[u16]| SubgroupSet::closure(&a, v).unwrap();
        let kernels = [
            gens(&[16, 4, 2, 1]),
            gens(&[32, 4, 2, 1]),
            gens(&[32, 16, 8, 2, 1]),
            gens(&[32, 16, 8, 4, 1]),
            gens(&[32, 16, 8, 4, 2]),
        ];
        let maps = kernels
            .iter()
            .map(|k| QuotientGroup::new(&full, k).unwrap().natural_map().unwrap())
            .collect();
        present(&a, maps).unwrap()
    }

    #[test]
    fn identity_pair_presents_the_diagonal() {
        let g = z4();
        let id = Homomorphism::identity(&g);
        let p = present(&g, vec![id.clone(), id]).unwrap();
        assert_eq!(
            p.subgroup().elements(),
            &[vec![0, 0], vec![1, 1], vec![2, 2], vec![3, 3]]
        );
        assert!(p.is_terse());
        assert!(p.notes().is_empty());
    }

    #[test]
    fn parity_and_identity_present_a_slanted_line() {
        let g = z4();
        let p = present(&g, vec![parity(&g), Homomorphism::identity(&g)]).unwrap();
        assert_eq!(
            p.subgroup().elements(),
            &[vec![0, 0], vec![0, 2], vec![1, 1], vec![1, 3]]
        );
        assert_eq!(p.image_tuple(3), &vec![1, 3]);
        assert!(p.is_terse());
    }

    #[test]
    fn non_surjective_map_is_corestricted_with_a_note() {
        let g = z4();
        let doubling = Homomorphism::new(&g, &g, vec![0, 2, 0, 2]).unwrap();
        let p = present(&g, vec![doubling, Homomorphism::identity(&g)]).unwrap();
        assert_eq!(p.notes().len(), 1);
        assert!(p.notes()[0].contains("map 1 is not surjective"));
        assert!(p.maps()[0].is_surjective());
        assert_eq!(p.subgroup().ambient().factor(0).order(), 2);
        assert_eq!(p.subgroup().order(), 4);
    }

    #[test]
    fn mismatched_domains_and_single_maps_are_rejected() {
        let g = z4();
        let h = elementary(2);
        let err = present(&g, vec![parity(&g), Homomorphism::identity(&h)]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        let err = present(&g, vec![Homomorphism::identity(&g)]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn tersify_collapses_a_repeated_parity() {
        let g = z4();
        let p = present(&g, vec![parity(&g), parity(&g)]).unwrap();
        assert!(!p.is_terse());
        let t = tersify(&p).unwrap();
        assert!(t.is_terse());
        assert_eq!(t.source().order(), 2);
        assert_eq!(t.subgroup(), p.subgroup());
    }

    #[test]
    fn tersify_of_trivial_maps_collapses_to_a_point() {
        let g = z4();
        let trivial = Homomorphism::new(&g, &z2(), vec![0, 0, 0, 0]).unwrap();
        let p = present(&g, vec![trivial.clone(), trivial]).unwrap();
        assert_eq!(p.notes().len(), 2);
        let t = tersify(&p).unwrap();
        assert_eq!(t.source().order(), 1);
        assert_eq!(t.subgroup().order(), 1);
        assert!(t.is_terse());
    }

    #[test]
    fn tersify_keeps_a_terse_presentation_as_is() {
        let p = cube_pair();
        let t = tersify(&p).unwrap();
        assert_eq!(t.source().order(), p.source().order());
        assert_eq!(t.subgroup(), p.subgroup());
    }

    #[test]
    fn lattice_boundary_and_intersection_law() {
        let p = welded_pair();
        let lattice = p.lattice();
        assert!(lattice.kernel_of(&IndexSet::empty()).is_full());
        let lam = IndexSet::new(vec![0, 2], 5).unwrap();
        let mu = IndexSet::new(vec![1, 2], 5).unwrap();
        assert_eq!(
            lattice.kernel_of(&lam.union(&mu)).elements(),
            lattice
                .kernel_of(&lam)
                .intersect(&lattice.kernel_of(&mu))
                .elements()
        );
    }

    #[test]
    fn kernel_identities_hold_on_a_two_map_presentation() {
        let g = z4();
        let p = present(&g, vec![parity(&g), Homomorphism::identity(&g)]).unwrap();
        let report = kernel_identity_report(&p).unwrap();
        assert_eq!(report.lines().len(), 7);
        assert!(report.all_hold());
    }

    #[test]
    fn kernel_identities_hold_on_the_welded_pair() {
        let p = welded_pair();
        let report = kernel_identity_report(&p).unwrap();
        assert_eq!(report.lines().len(), 91);
        assert!(report.all_hold());
    }

    #[test]
    fn welded_pair_support_is_the_pushed_kernel() {
        let p = welded_pair();
        let a = p.source().clone();
        let b12 = SubgroupSet::closure(&a, &[32, 16, 8]).unwrap();
        let lam = IndexSet::new(vec![0, 1], 5).unwrap();
        let support = p.subgroup().support_subgroup(&lam).unwrap();
        assert_eq!(support.order(), 8);
        assert_eq!(support.elements(), p.image_of_subgroup(&b12).unwrap());
    }

    #[test]
    fn welded_pair_is_terse_but_not_smashed() {
        let p = welded_pair();
        assert!(p.is_terse());
        assert_eq!(p.subgroup().order(), 64);
        assert_eq!(p.subgroup().ambient().order(), 128);
        assert!(!is_smashed(p.subgroup()));
        let blocks: Vec<Vec<usize>> = cohesive_blocks(p.subgroup())
            .index_partition()
            .iter()
            .map(|s| s.members().to_vec())
            .collect();
        assert_eq!(blocks, vec![vec![0, 1], vec![2], vec![3], vec![4]]);
    }

    #[test]
    fn split_criterion_on_the_cube_pair_passes_both_sides() {
        let p = cube_pair();
        let lam = IndexSet::full(2);
        let verdict =
            split_criterion(&p, &lam, &IndexSet::singleton(0), &IndexSet::singleton(1)).unwrap();
        assert!(verdict.supports_split);
        assert!(verdict.kernels_split);
        assert!(verdict.agree());
    }

    #[test]
    fn split_criterion_on_the_welded_pair_fails_both_sides() {
        let p = welded_pair();
        let lam = IndexSet::new(vec![0, 1], 5).unwrap();
        let verdict =
            split_criterion(&p, &lam, &IndexSet::singleton(0), &IndexSet::singleton(1)).unwrap();
        assert!(!verdict.supports_split);
        assert!(!verdict.kernels_split);
        assert!(verdict.agree());
    }

    #[test]
    fn split_criterion_rejects_bad_inputs() {
        let g = z4();
        let p = cube_pair();
        let err = split_criterion(
            &p,
            &IndexSet::singleton(0),
            &IndexSet::singleton(0),
            &IndexSet::empty(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Input(_)));

        let blurred = present(&g, vec![parity(&g), parity(&g)]).unwrap();
        let err = split_criterion(
            &blurred,
            &IndexSet::full(2),
            &IndexSet::singleton(0),
            &IndexSet::singleton(1),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn smashed_criterion_matches_smashedness() {
        let p = cube_pair();
        assert!(smashed_kernel_criterion(&p).unwrap());
        assert!(is_smashed(p.subgroup()));

        let w = welded_pair();
        assert!(!smashed_kernel_criterion(&w).unwrap());
        assert!(!is_smashed(w.subgroup()));

        let g = z4();
        let id = Homomorphism::identity(&g);
        let diag = present(&g, vec![id.clone(), id]).unwrap();
        assert!(smashed_kernel_criterion(&diag).unwrap());
    }

    #[test]
    fn pullback_round_trip_on_the_cube_pair() {
        let p = cube_pair();
        let data = to_pullback(&p).unwrap();
        assert_eq!(data.reference().order(), 2);
        let (u, _) = pullback(data.maps()).unwrap();
        assert_eq!(u.elements(), p.subgroup().elements());
        let back = from_pullback(data.maps()).unwrap();
        assert_eq!(back.subgroup().elements(), p.subgroup().elements());
        assert!(back.is_terse());
    }

    #[test]
    fn pullback_round_trip_on_the_diagonal() {
        let g = z4();
        let id = Homomorphism::identity(&g);
        let p = present(&g, vec![id.clone(), id]).unwrap();
        let data = to_pullback(&p).unwrap();
        assert_eq!(data.reference().order(), 4);
        let back = from_pullback(data.maps()).unwrap();
        assert_eq!(back.subgroup().elements(), p.subgroup().elements());
    }

    #[test]
    fn to_pullback_rejects_unsuitable_presentations() {
        let err = to_pullback(&welded_pair()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));

        let g = z4();
        let blurred = present(&g, vec![parity(&g), parity(&g)]).unwrap();
        let err = to_pullback(&blurred).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn from_pullback_presents_the_fibered_line_with_identity_map() {
        let g = z4();
        let taus = [parity(&g), Homomorphism::identity(&z2())];
        let p = from_pullback(&taus).unwrap();
        assert_eq!(
            p.subgroup().elements(),
            &[vec![0, 0], vec![1, 1], vec![2, 0], vec![3, 1]]
        );
        assert!(p.is_terse());
        assert_eq!(p.image_tuples(), p.subgroup().elements());
    }

    #[test]
    fn pair_quotients_of_parity_and_doubling() {
        let g = z4();
        let doubling = Homomorphism::new(&g, &g, vec![0, 2, 0, 2]).unwrap();
        let (p, iso) = pair_quotients(&parity(&g), &doubling).unwrap();
        assert_eq!(p.notes().len(), 1);
        assert_eq!(p.subgroup().order(), 2);
        assert_eq!(iso.source().order(), 2);
        assert_eq!(iso.target().order(), 2);
        assert_eq!(iso.prolongation().quotient().order(), 2);
        assert!(iso.verify().is_iso());
    }

    #[test]
    fn pair_quotients_with_identity_recover_the_first_isomorphism() {
        let g = z4();
        let (p, iso) = pair_quotients(&parity(&g), &Homomorphism::identity(&g)).unwrap();
        assert!(p.notes().is_empty());
        assert_eq!(iso.source().order(), 2);
        assert!(iso.source().normal().is_trivial());
        assert_eq!(iso.target().order(), 2);
        assert_eq!(iso.target().normal().order(), 2);
        assert!(iso.verify().is_iso());
    }

    #[test]
    fn triple_coordinate_killers_give_order_four_quotients() {
        let a = elementary(3);
        let full = SubgroupSet::full(&a);
        let maps: Vec<Homomorphism> = [4u16, 2, 1]
            .iter()
            .map(|&e| {
                let k = SubgroupSet::from_elements(&a, vec![0, e]).unwrap();
                QuotientGroup::new(&full, &k)
                    .unwrap()
                    .natural_map()
                    .unwrap()
            })
            .collect();
        let p = present(&a, maps).unwrap();
        assert!(p.is_terse());
        assert_eq!(p.subgroup().order(), 8);
        for i in 0..3 {
            let iso = triple_split_quotients(&p, i).unwrap();
            assert_eq!(iso.source().order(), 4);
            assert_eq!(iso.target().order(), 4);
            assert_eq!(iso.prolongation().quotient().order(), 4);
            assert!(iso.verify().is_iso());
        }
    }

    #[test]
    fn triple_split_rejects_other_arities() {
        let p = cube_pair();
        let err = triple_split_quotients(&p, 0).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn triple_split_tolerates_a_repeated_map() {
        let p = cube_pair();
        let f1 = p.maps()[0].clone();
        let f2 = p.maps()[1].clone();
        let q = present(p.source(), vec![f1, f2.clone(), f2]).unwrap();
        assert!(q.is_terse());
        for i in 0..3 {
            let iso = triple_split_quotients(&q, i).unwrap();
            assert_eq!(iso.source().order(), iso.target().order());
            assert!(iso.verify().is_iso());
        }
    }

    #[test]
    fn normal_factor_presentation_of_the_cube() {
        let p = cube_pair();
        assert_eq!(p.subgroup().order(), 8);
        assert_eq!(p.subgroup().ambient().order(), 16);
        assert_eq!(p.subgroup().core().order(), 4);
        assert!(p.is_terse());
        assert!(p.subgroup().is_subdirect());
        assert!(is_smashed(p.subgroup()));
        for i in 0..2 {
            let li = p
                .subgroup()
                .support_subgroup(&IndexSet::singleton(i))
                .unwrap();
            assert_eq!(li.order(), 2);
        }
    }

    #[test]
    fn normal_factors_filling_the_group_leave_a_trivial_reference() {
        let g = elementary(2);
        let b1 = SubgroupSet::from_elements(&g, vec![0, 2]).unwrap();
        let b2 = SubgroupSet::from_elements(&g, vec![0, 1]).unwrap();
        let p = normal_factor_presentation(&g, &[b1, b2]).unwrap();
        assert_eq!(p.subgroup().order(), 4);
        assert_eq!(p.subgroup().core().order(), 4);
    }

    #[test]
    fn normal_factor_presentation_on_a_mixed_group() {
        let s3 = GroupTable::symmetric(3).unwrap();
        let (g, _) = ProductGroup::new(vec![s3, z2()])
            .unwrap()
            .as_table()
            .unwrap();
        let rotations = SubgroupSet::from_elements(&g, vec![0, 6, 8]).unwrap();
        let flip = SubgroupSet::from_elements(&g, vec![0, 1]).unwrap();
        let p = normal_factor_presentation(&g, &[rotations, flip]).unwrap();
        assert_eq!(p.subgroup().order(), 12);
        assert_eq!(p.subgroup().core().order(), 6);
        assert!(is_smashed(p.subgroup()));
        let data = to_pullback(&p).unwrap();
        assert_eq!(data.reference().order(), 2);
        let back = from_pullback(data.maps()).unwrap();
        assert_eq!(back.subgroup().elements(), p.subgroup().elements());
    }

    #[test]
    fn normal_factor_presentation_rejects_a_non_normal_factor() {
        let s3 = GroupTable::symmetric(3).unwrap();
        let rotations = SubgroupSet::from_elements(&s3, vec![0, 3, 4]).unwrap();
        let swap = SubgroupSet::from_elements(&s3, vec![0, 1]).unwrap();
        let err = normal_factor_presentation(&s3, &[rotations, swap]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn normal_factor_presentation_rejects_overlapping_factors() {
        let g = elementary(3);
        let b = SubgroupSet::from_elements(&g, vec![0, 4]).unwrap();
        let err = normal_factor_presentation(&g, &[b.clone(), b]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }
}
