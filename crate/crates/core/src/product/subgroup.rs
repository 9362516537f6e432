//! Subgroups of a direct product, stored as explicit sorted tuple sets.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use super::{IndexSet, ProductGroup, TouchPartition, Tuple};
use crate::group::{GroupTable, SubgroupSet};
use crate::{Error, Result, MAX_MATERIALIZED_ORDER};

/// A subgroup `U` of a [`ProductGroup`], as a lexicographically sorted list
/// of tuples.
///
/// The identity tuple is always element `0` (it is the lex minimum). The
/// derived data that gets asked for repeatedly - the core and the touch
/// partition - is cached on first use; everything else is a linear scan and
/// is recomputed on demand.
///
/// Equality compares element lists only.
#[derive(Debug)]
pub struct ProductSubgroup {
    ambient: Arc<ProductGroup>,
    elements: Vec<Tuple>,
    core: OnceLock<Vec<Tuple>>,
    touch: OnceLock<TouchPartition>,
}

impl Clone for ProductSubgroup {
    fn clone(&self) -> Self {
        let copy = ProductSubgroup {
            ambient: Arc::clone(&self.ambient),
            elements: self.elements.clone(),
            core: OnceLock::new(),
            touch: OnceLock::new(),
        };
        if let Some(c) = self.core.get() {
            let _ = copy.core.set(c.clone());
        }
        if let Some(t) = self.touch.get() {
            let _ = copy.touch.set(t.clone());
        }
        copy
    }
}

impl PartialEq for ProductSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for ProductSubgroup {}

impl ProductSubgroup {
    /// Wraps an explicit tuple list, verifying it is a subgroup.
    pub fn new(ambient: &Arc<ProductGroup>, mut elements: Vec<Tuple>) -> Result<ProductSubgroup> {
        elements.sort();
        elements.dedup();
        for t in &elements {
            ambient.check_tuple(t)?;
        }
        if elements.first().map(|t| ambient.is_identity(t)) != Some(true) {
            return Err(Error::input("subgroup must contain the identity tuple"));
        }
        let set: BTreeSet<&Tuple> = elements.iter().collect();
        for a in &elements {
            for b in &elements {
                if !set.contains(&ambient.mul(a, b)) {
                    return Err(Error::input(format!(
                        "tuple list is not closed under the product law: {} . {} escapes",
                        ambient.tuple_name(a),
                        ambient.tuple_name(b)
                    )));
                }
            }
        }
        Ok(Self::from_closed(ambient, elements))
    }

    /// The subgroup generated by `gens`.
    pub fn from_generators(ambient: &Arc<ProductGroup>, gens: &[Tuple]) -> Result<ProductSubgroup> {
        for g in gens {
            ambient.check_tuple(g)?;
        }
        let mut seen: BTreeSet<Tuple> = BTreeSet::new();
        seen.insert(ambient.identity());
        let mut frontier: Vec<Tuple> = vec![ambient.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = ambient.mul(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_MATERIALIZED_ORDER {
                        return Err(Error::Resource {
                            what: "generated subgroup",
                            order: seen.len(),
                            bound: MAX_MATERIALIZED_ORDER,
                        });
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(Self::from_closed(ambient, seen.into_iter().collect()))
    }

    /// The whole product as a subgroup of itself.
    pub fn full(ambient: &Arc<ProductGroup>) -> Result<ProductSubgroup> {
        Ok(Self::from_closed(ambient, ambient.all_tuples()?))
    }

    /// Internal constructor for tuple lists already known to be closed
    /// (projections, kernels, pullbacks, ...). Verified in debug builds.
    pub(crate) fn from_closed(
        ambient: &Arc<ProductGroup>,
        elements: Vec<Tuple>,
    ) -> ProductSubgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]), "sorted, unique");
        debug_assert!(
            elements.first().map(|t| ambient.is_identity(t)) == Some(true),
            "identity present and first"
        );
        #[cfg(debug_assertions)]
        {
            let set: BTreeSet<&Tuple> = elements.iter().collect();
            for a in &elements {
                debug_assert!(set.contains(&ambient.inv(a)), "closed under inverses");
                for b in &elements {
                    debug_assert!(set.contains(&ambient.mul(a, b)), "closed under products");
                }
            }
        }
        ProductSubgroup {
            ambient: Arc::clone(ambient),
            elements,
            core: OnceLock::new(),
            touch: OnceLock::new(),
        }
    }

    pub fn ambient(&self) -> &Arc<ProductGroup> {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn arity(&self) -> usize {
        self.ambient.arity()
    }

    pub fn elements(&self) -> &[Tuple] {
        &self.elements
    }

    pub fn contains(&self, t: &Tuple) -> bool {
        self.elements.binary_search(t).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Position of a tuple in the sorted element list.
    pub fn index_of(&self, t: &Tuple) -> Result<usize> {
        self.elements.binary_search(t).map_err(|_| {
            Error::input(format!(
                "{} is not in the subgroup",
                self.ambient.tuple_name(t)
            ))
        })
    }

    // ----- projections and paddings -------------------------------------

    /// Image of `U` under the projection onto the factors in `lam`, as a
    /// subgroup of the corresponding sub-product.
    pub fn project(&self, lam: &IndexSet) -> Result<ProductSubgroup> {
        let sub = self.ambient.subproduct(lam)?;
        let mut image: BTreeSet<Tuple> = BTreeSet::new();
        for t in &self.elements {
            image.insert(lam.members().iter().map(|&i| t[i]).collect());
        }
        Ok(ProductSubgroup::from_closed(
            &sub,
            image.into_iter().collect(),
        ))
    }

    /// Pads tuples over the positions in `lam` back to full width, with the
    /// identity at all other coordinates.
    pub fn pad_tuple(ambient: &Arc<ProductGroup>, lam: &IndexSet, t: &Tuple) -> Tuple {
        let mut out = ambient.identity();
        for (k, &i) in lam.members().iter().enumerate() {
            out[i] = t[k];
        }
        out
    }

    /// The `lam`-truncation of a full-width tuple: keeps coordinates in
    /// `lam`, resets the rest to the identity.
    pub fn truncate_tuple(&self, t: &Tuple, lam: &IndexSet) -> Tuple {
        let mut out = self.ambient.identity();
        for &i in lam.members() {
            out[i] = t[i];
        }
        out
    }

    // ----- the coordinate families E, L, I -------------------------------

    /// The kernel of the `lam`-projection restricted to `U`: all elements of
    /// `U` whose coordinates in `lam` are the identity.
    ///
    /// With `lam` the full index set this is the trivial subgroup.
    pub fn projection_kernel(&self, lam: &IndexSet) -> Result<ProductSubgroup> {
        if lam.is_empty() {
            return Err(Error::input("projection kernel needs a nonempty index set"));
        }
        let elements: Vec<Tuple> = self
            .elements
            .iter()
            .filter(|t| lam.members().iter().all(|&i| t[i] == 0))
            .cloned()
            .collect();
        Ok(ProductSubgroup::from_closed(&self.ambient, elements))
    }

    /// The subgroup of `U` supported inside `lam`: elements whose
    /// coordinates outside `lam` are the identity.
    ///
    /// For proper `lam` this is exactly the projection kernel of the
    /// complement, and it automatically lies inside the core: an element
    /// with an identity coordinate touches the identity tuple. For the full
    /// index set the supported subgroup is taken to be the core itself.
    pub fn support_subgroup(&self, lam: &IndexSet) -> Result<ProductSubgroup> {
        let n = self.arity();
        if lam.is_empty() {
            return Err(Error::input("support subgroup needs a nonempty index set"));
        }
        if lam.len() == n {
            return Ok(self.core());
        }
        let out = self.projection_kernel(&lam.complement(n))?;
        debug_assert!(
            out.elements.iter().all(|t| self.core().contains(t)),
            "supported elements lie in the core"
        );
        Ok(out)
    }

    /// The subgroup generated by the single-index projection kernels for
    /// the indices in `lam`, computed as their setwise product in ascending
    /// index order (they are normal in `U`, so the product is already a
    /// subgroup).
    pub fn partial_core(&self, lam: &IndexSet) -> Result<ProductSubgroup> {
        if lam.is_empty() {
            return Err(Error::input("partial core needs a nonempty index set"));
        }
        let mut acc: Vec<Tuple> = vec![self.ambient.identity()];
        for &i in lam.members() {
            let e = self.projection_kernel(&IndexSet::singleton(i))?;
            acc = setwise_product(&self.ambient, &acc, e.elements());
        }
        #[cfg(debug_assertions)]
        {
            let generated = self.closure_within(&acc);
            debug_assert_eq!(acc, generated, "kernel product is already closed");
        }
        Ok(ProductSubgroup::from_closed(&self.ambient, acc))
    }

    /// The core of `U`: the subgroup generated by all single-index
    /// projection kernels. Cached after the first call.
    ///
    /// The core is also the touch class of the identity and is normal in
    /// `U`; both facts are asserted in debug builds.
    pub fn core(&self) -> ProductSubgroup {
        let elements = self.core.get_or_init(|| {
            let mut gens: Vec<Tuple> = Vec::new();
            for i in 0..self.arity() {
                let e = self
                    .projection_kernel(&IndexSet::singleton(i))
                    .expect("singleton index");
                gens.extend_from_slice(e.elements());
            }
            let core = self.closure_within(&gens);
            #[cfg(debug_assertions)]
            {
                let touch = self.touch_partition();
                let class0: Vec<Tuple> = touch.blocks()[0]
                    .iter()
                    .map(|&ix| self.elements[ix].clone())
                    .collect();
                debug_assert_eq!(core, class0, "core equals the identity's touch class");
                debug_assert!(self.normalizes(&core), "core is normal in the subgroup");
            }
            core
        });
        ProductSubgroup::from_closed(&self.ambient, elements.clone())
    }

    /// The setwise product of the single-index projection kernels in the
    /// given visiting order, without closing. Equality with the core for
    /// every ordering is a theorem the test suites check, so this
    /// deliberately does not sort or close anything.
    pub fn core_product_in_order(&self, order: &[usize]) -> Result<Vec<Tuple>> {
        let n = self.arity();
        let mut seen = vec![false; n];
        for &i in order {
            if i >= n {
                return Err(Error::input(format!("factor index {} out of range", i + 1)));
            }
            if seen[i] {
                return Err(Error::input(format!("factor index {} repeated", i + 1)));
            }
            seen[i] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::input("ordering must visit every factor index"));
        }
        let mut acc: Vec<Tuple> = vec![self.ambient.identity()];
        for &i in order {
            let e = self.projection_kernel(&IndexSet::singleton(i))?;
            acc = setwise_product(&self.ambient, &acc, e.elements());
        }
        Ok(acc)
    }

    /// Per-factor value sets of the singleton support subgroups: entry `i`
    /// lists the `i`-coordinates occurring in the subgroup supported at `i`.
    pub fn support_values(&self, i: usize) -> Result<Vec<u16>> {
        let l = self.support_subgroup(&IndexSet::singleton(i))?;
        let mut values: Vec<u16> = l.elements().iter().map(|t| t[i]).collect();
        values.sort_unstable();
        values.dedup();
        Ok(values)
    }

    /// The setwise product of the singleton support subgroups over `kappas`.
    ///
    /// Supports are disjoint, so the product is exactly the combination set:
    /// every choice of one coordinate value per index, identity elsewhere.
    pub fn support_combination(&self, kappas: &IndexSet) -> Result<Vec<Tuple>> {
        let mut combos: Vec<Tuple> = vec![self.ambient.identity()];
        for &k in kappas.members() {
            let values = self.support_values(k)?;
            let mut next = Vec::with_capacity(combos.len() * values.len());
            for base in &combos {
                for &v in &values {
                    let mut t = base.clone();
                    t[k] = v;
                    next.push(t);
                }
            }
            combos = next;
        }
        combos.sort();
        Ok(combos)
    }

    // ----- touch partition and variation spaces --------------------------

    /// The partition of `U` under the transitive closure of "agrees with
    /// another element at some coordinate". Cached after the first call.
    pub fn touch_partition(&self) -> &TouchPartition {
        self.touch
            .get_or_init(|| TouchPartition::compute(&self.elements))
    }

    /// All elements of `U` that agree with `a` on the `fixed` coordinates.
    ///
    /// This is the left coset `a . E_fixed` of the corresponding projection
    /// kernel, which is asserted in debug builds.
    pub fn variation_space(&self, a: &Tuple, fixed: &IndexSet) -> Result<Vec<Tuple>> {
        if !self.contains(a) {
            return Err(Error::input(format!(
                "{} is not in the subgroup",
                self.ambient.tuple_name(a)
            )));
        }
        if !fixed.is_proper(self.arity()) {
            return Err(Error::input(
                "variation space needs a nonempty proper set of fixed coordinates",
            ));
        }
        let out: Vec<Tuple> = self
            .elements
            .iter()
            .filter(|t| fixed.members().iter().all(|&i| t[i] == a[i]))
            .cloned()
            .collect();
        #[cfg(debug_assertions)]
        {
            let e = self.projection_kernel(fixed)?;
            let mut coset: Vec<Tuple> = e
                .elements()
                .iter()
                .map(|x| self.ambient.mul(a, x))
                .collect();
            coset.sort();
            debug_assert_eq!(out, coset, "variation space is a coset of the kernel");
        }
        Ok(out)
    }

    // ----- structure probes ----------------------------------------------

    /// Whether every projection onto a single factor is surjective.
    pub fn is_subdirect(&self) -> bool {
        (0..self.arity()).all(|i| {
            let hit = self.projection_image_size(i);
            hit == self.ambient.factor(i).order()
        })
    }

    /// Factors onto which `U` projects trivially (1-based reporting is the
    /// caller's business; these are 0-based).
    pub fn trivial_projections(&self) -> Vec<usize> {
        (0..self.arity())
            .filter(|&i| self.projection_image_size(i) == 1)
            .collect()
    }

    /// Factors whose singleton support subgroup is trivial.
    pub fn trivial_supports(&self) -> Vec<usize> {
        (0..self.arity())
            .filter(|&i| {
                self.support_values(i)
                    .map(|v| v.len() == 1)
                    .unwrap_or(false)
            })
            .collect()
    }

    fn projection_image_size(&self, i: usize) -> usize {
        let mut values: Vec<u16> = self.elements.iter().map(|t| t[i]).collect();
        values.sort_unstable();
        values.dedup();
        values.len()
    }

    /// Whether conjugation by every element of `self` keeps `inner` inside
    /// itself. `inner` must be a subset of `self`.
    pub fn normalizes(&self, inner: &[Tuple]) -> bool {
        let set: BTreeSet<&Tuple> = inner.iter().collect();
        self.elements.iter().all(|g| {
            let g_inv = self.ambient.inv(g);
            inner.iter().all(|x| {
                let conj = self.ambient.mul(&self.ambient.mul(&g_inv, x), g);
                set.contains(&conj)
            })
        })
    }

    /// Closure of a tuple list inside this subgroup's ambient.
    pub(crate) fn closure_within(&self, gens: &[Tuple]) -> Vec<Tuple> {
        let mut seen: BTreeSet<Tuple> = BTreeSet::new();
        seen.insert(self.ambient.identity());
        let mut frontier = vec![self.ambient.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.ambient.mul(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    // ----- realization ----------------------------------------------------

    /// Realizes `U` as a standalone [`GroupTable`] whose element `i` is the
    /// `i`-th tuple in sorted order. The identity keeps index `0`.
    pub fn realize(&self, label: &str) -> Result<Realized> {
        let k = self.elements.len();
        crate::group::check_order("realized subgroup", k)?;
        let mut mul = vec![0u16; k * k];
        for (a, ta) in self.elements.iter().enumerate() {
            for (b, tb) in self.elements.iter().enumerate() {
                let prod = self.ambient.mul(ta, tb);
                let id = self.elements.binary_search(&prod).expect("closed") as u16;
                mul[a * k + b] = id;
            }
        }
        let table = GroupTable::from_parts(label.to_string(), k, mul, None)?;
        Ok(Realized {
            table,
            tuples: self.elements.clone(),
        })
    }

    /// The setwise product of two tuple subgroups of the same ambient.
    pub fn setwise_with(&self, other: &ProductSubgroup) -> Vec<Tuple> {
        setwise_product(&self.ambient, &self.elements, &other.elements)
    }

    /// Intersection with another subgroup of the same ambient.
    pub fn intersect(&self, other: &ProductSubgroup) -> ProductSubgroup {
        let elements: Vec<Tuple> = self
            .elements
            .iter()
            .filter(|t| other.contains(t))
            .cloned()
            .collect();
        ProductSubgroup::from_closed(&self.ambient, elements)
    }

    pub fn is_subset_of(&self, other: &ProductSubgroup) -> bool {
        self.elements.iter().all(|t| other.contains(t))
    }
}

/// A subgroup realized as its own table, with the tuple behind each id.
#[derive(Debug, Clone)]
pub struct Realized {
    pub table: Arc<GroupTable>,
    pub tuples: Vec<Tuple>,
}

impl Realized {
    pub fn id_of(&self, t: &Tuple) -> Result<u16> {
        self.tuples
            .binary_search(t)
            .map(|i| i as u16)
            .map_err(|_| Error::input("tuple is not in the realized subgroup"))
    }

    /// Converts a tuple list into a [`SubgroupSet`] of the realized table.
    pub fn subgroup_from_tuples(&self, tuples: &[Tuple]) -> Result<SubgroupSet> {
        let ids: Vec<u16> = tuples
            .iter()
            .map(|t| self.id_of(t))
            .collect::<Result<_>>()?;
        SubgroupSet::from_elements(&self.table, ids)
    }
}

/// Setwise product `{a.b}` of two tuple lists, sorted and deduplicated.
fn setwise_product(ambient: &Arc<ProductGroup>, a: &[Tuple], b: &[Tuple]) -> Vec<Tuple> {
    let mut out: BTreeSet<Tuple> = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(ambient.mul(x, y));
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    fn z2() -> Arc<GroupTable> {
        GroupTable::cyclic(2).unwrap()
    }

    /// The even-weight subgroup of Z2^3: tuples (a,b,c) with a+b+c = 0.
    fn parity_cube() -> ProductSubgroup {
        let p = ProductGroup::new(vec![z2(), z2(), z2()]).unwrap();
        ProductSubgroup::from_generators(&p, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap()
    }

    /// The order-4 subgroup generated by (1,1) in Z4 x Z2.
    fn slant() -> ProductSubgroup {
        let z4 = GroupTable::cyclic(4).unwrap();
        let p = ProductGroup::new(vec![z4, z2()]).unwrap();
        ProductSubgroup::from_generators(&p, &[vec![1, 1]]).unwrap()
    }

    #[test]
    fn generation_and_membership() {
        let w = parity_cube();
        assert_eq!(w.order(), 4);
        assert!(w.contains(&vec![1, 0, 1]));
        assert!(!w.contains(&vec![1, 0, 0]));
        let u = slant();
        assert_eq!(u.order(), 4);
        assert_eq!(
            u.elements(),
            &[vec![0, 0], vec![1, 1], vec![2, 0], vec![3, 1]]
        );
    }

    #[test]
    fn projection_kernels_of_parity_cube() {
        let w = parity_cube();
        let e1 = w.projection_kernel(&IndexSet::singleton(0)).unwrap();
        assert_eq!(e1.elements(), &[vec![0, 0, 0], vec![0, 1, 1]]);
        let all = w.projection_kernel(&IndexSet::full(3)).unwrap();
        assert!(all.is_trivial());
    }

    #[test]
    fn support_subgroups_of_slant() {
        let u = slant();
        let l1 = u.support_subgroup(&IndexSet::singleton(0)).unwrap();
        assert_eq!(l1.elements(), &[vec![0, 0], vec![2, 0]]);
        let l2 = u.support_subgroup(&IndexSet::singleton(1)).unwrap();
        assert!(l2.is_trivial());
        // Full index set: the supported subgroup is the core.
        let lfull = u.support_subgroup(&IndexSet::full(2)).unwrap();
        assert_eq!(lfull, u.core());
    }

    #[test]
    fn core_of_slant_is_even_part() {
        let u = slant();
        let core = u.core();
        assert_eq!(core.elements(), &[vec![0, 0], vec![2, 0]]);
        // Both orderings of the setwise product give the same set.
        for order in [[0usize, 1], [1usize, 0]] {
            assert_eq!(u.core_product_in_order(&order).unwrap(), core.elements());
        }
    }

    #[test]
    fn touch_partition_matches_core_cosets() {
        let u = slant();
        let touch = u.touch_partition();
        assert_eq!(touch.blocks().len(), 2);
        assert_eq!(touch.blocks()[0], vec![0, 2]); // (0,0) and (2,0)
        assert_eq!(touch.blocks()[1], vec![1, 3]); // (1,1) and (3,1)
    }

    #[test]
    fn parity_cube_is_one_touch_class() {
        let w = parity_cube();
        assert_eq!(w.core(), w);
        assert_eq!(w.touch_partition().blocks().len(), 1);
    }

    #[test]
    fn variation_space_is_kernel_coset() {
        let w = parity_cube();
        let a = vec![0, 1, 1];
        let fixed = IndexSet::singleton(0);
        let vs = w.variation_space(&a, &fixed).unwrap();
        assert_eq!(vs, vec![vec![0, 0, 0], vec![0, 1, 1]]);
        assert!(w.variation_space(&vec![1, 0, 0], &fixed).is_err());
    }

    #[test]
    fn projection_and_padding() {
        let u = slant();
        let p1 = u.project(&IndexSet::singleton(0)).unwrap();
        assert_eq!(p1.order(), 4); // full Z4
        let p2 = u.project(&IndexSet::singleton(1)).unwrap();
        assert_eq!(p2.order(), 2);
        assert!(u.is_subdirect());
        let padded = ProductSubgroup::pad_tuple(u.ambient(), &IndexSet::singleton(1), &vec![1]);
        assert_eq!(padded, vec![0, 1]);
    }

    #[test]
    fn support_combination_of_slant_gives_core() {
        let u = slant();
        let combo = u.support_combination(&IndexSet::full(2)).unwrap();
        assert_eq!(combo, u.core().elements());
    }

    #[test]
    fn realize_round_trip() {
        let u = slant();
        let realized = u.realize("U").unwrap();
        assert_eq!(realized.table.order(), 4);
        for (i, t) in realized.tuples.iter().enumerate() {
            assert_eq!(realized.id_of(t).unwrap() as usize, i);
        }
        // The realized law mirrors the componentwise law.
        let a = realized.id_of(&vec![1, 1]).unwrap();
        let prod = realized.table.mul(a, a);
        assert_eq!(realized.tuples[prod as usize], vec![2, 0]);
    }

    #[test]
    fn rejects_non_subgroups() {
        let p = ProductGroup::new(vec![z2(), z2()]).unwrap();
        assert!(ProductSubgroup::new(&p, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).is_err());
        assert!(ProductSubgroup::new(&p, vec![vec![1, 1]]).is_err());
        assert!(ProductSubgroup::new(&p, vec![vec![0, 0], vec![0, 2]]).is_err());
    }
}
