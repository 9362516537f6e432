//! Rebuilding a product subgroup from its coset data.
//!
//! The two-factor data is the classical quadruple (a subgroup and a normal
//! subgroup on each side) plus a verified quotient isomorphism; the general
//! split form carries the two projection subgroups with their kernels. In
//! both directions the assembled tuple set is re-verified as a subgroup
//! from scratch, so corrupt data cannot slip through.

use std::sync::Arc;

use crate::group::{check_iso, GroupTable, QuotientGroup, SubgroupSet};
use crate::product::{IndexSet, ProductGroup, ProductSubgroup, Realized, Tuple};
use crate::{Error, Result};

use super::{split_iso, StructuralIso};

/// Two-factor coset data: quotients `I/K` in `A` and `J/L` in `B` with a
/// verified isomorphism between them. Assembling unions the matched coset
/// rectangles into a subgroup of `A x B`.
#[derive(Debug, Clone)]
pub struct GoursatData {
    a_quotient: QuotientGroup,
    b_quotient: QuotientGroup,
    sigma: Vec<usize>,
}

impl GoursatData {
    /// Packs and verifies the data: `k` normal in `i`, `l` normal in `j`
    /// (both enforced by the quotient constructor), `sigma` a bijective
    /// multiplicative coset map.
    pub fn new(
        i: &SubgroupSet,
        k: &SubgroupSet,
        j: &SubgroupSet,
        l: &SubgroupSet,
        sigma: Vec<usize>,
    ) -> Result<GoursatData> {
        let a_quotient = QuotientGroup::new(i, k)?;
        let b_quotient = QuotientGroup::new(j, l)?;
        let verdict = check_iso(&sigma, &a_quotient, &b_quotient);
        if !verdict.is_iso() {
            return Err(Error::input(format!(
                "coset map between {} and {} is not an isomorphism: {}",
                a_quotient.label(),
                b_quotient.label(),
                verdict
            )));
        }
        Ok(GoursatData {
            a_quotient,
            b_quotient,
            sigma,
        })
    }

    /// Reads the data off a two-factor subgroup: first-factor projection
    /// over the intersection with the first factor, matched by scanning.
    pub fn extract(u: &ProductSubgroup) -> Result<GoursatData> {
        if u.arity() != 2 {
            return Err(Error::input("two-factor data needs exactly two factors"));
        }
        let a = u.ambient().factor(0);
        let b = u.ambient().factor(1);
        let i = SubgroupSet::from_elements(a, column(u, 0))?;
        let j = SubgroupSet::from_elements(b, column(u, 1))?;
        let k = SubgroupSet::from_elements(
            a,
            column(&u.projection_kernel(&IndexSet::singleton(1))?, 0),
        )?;
        let l = SubgroupSet::from_elements(
            b,
            column(&u.projection_kernel(&IndexSet::singleton(0))?, 1),
        )?;
        let a_quotient = QuotientGroup::new(&i, &k)?;
        let b_quotient = QuotientGroup::new(&j, &l)?;
        let mut sigma: Vec<Option<usize>> = vec![None; a_quotient.order()];
        for t in u.elements() {
            let ca = a_quotient.coset_of(t[0])?;
            let cb = b_quotient.coset_of(t[1])?;
            match sigma[ca] {
                None => sigma[ca] = Some(cb),
                Some(prev) if prev == cb => {}
                Some(_) => {
                    return Err(Error::inconsistent(
                        "coset correspondence of a two-factor subgroup is multi-valued",
                    ))
                }
            }
        }
        let sigma: Vec<usize> = sigma
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::inconsistent("a first-factor coset was never visited"))?;
        GoursatData::new(
            a_quotient.group(),
            a_quotient.normal(),
            b_quotient.group(),
            b_quotient.normal(),
            sigma,
        )
    }

    /// The union of the matched coset rectangles, verified as a subgroup.
    pub fn assemble(&self) -> Result<ProductSubgroup> {
        let a = Arc::clone(self.a_quotient.parent());
        let b = Arc::clone(self.b_quotient.parent());
        let ambient = ProductGroup::new(vec![a, b])?;
        let mut tuples: Vec<Tuple> = Vec::new();
        for (ca, &cb) in self.sigma.iter().enumerate() {
            for &x in &self.a_quotient.cosets()[ca] {
                for &y in &self.b_quotient.cosets()[cb] {
                    tuples.push(vec![x, y]);
                }
            }
        }
        ProductSubgroup::new(&ambient, tuples)
    }

    pub fn a_quotient(&self) -> &QuotientGroup {
        &self.a_quotient
    }

    pub fn b_quotient(&self) -> &QuotientGroup {
        &self.b_quotient
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }
}

/// One coordinate of every element, deduplicated and sorted.
fn column(u: &ProductSubgroup, i: usize) -> Vec<u16> {
    let mut out: Vec<u16> = u.elements().iter().map(|t| t[i]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Split coset data at an arbitrary proper index set: the two projection
/// subgroups, their kernel quotients, and the coset isomorphism. Assembling
/// interleaves matched coset pairs back into full-width tuples.
#[derive(Debug, Clone)]
pub struct SplitData {
    ambient: Arc<ProductGroup>,
    lam_hat: IndexSet,
    lam: IndexSet,
    p_real: Realized,
    q_real: Realized,
    p_quotient: QuotientGroup,
    q_quotient: QuotientGroup,
    sigma: Vec<usize>,
}

impl SplitData {
    /// Packs standalone parts: `p` over the complement-side factors with
    /// its normal subgroup `e_in_p`, `q` over the `lam`-side factors with
    /// `e_in_q`, and the coset map between the quotients. `lam` fixes where
    /// the `q`-side coordinates sit inside an `n`-wide product.
    pub fn new(
        p: &ProductSubgroup,
        q: &ProductSubgroup,
        e_in_p: &ProductSubgroup,
        e_in_q: &ProductSubgroup,
        sigma: Vec<usize>,
        lam: &IndexSet,
        n: usize,
    ) -> Result<SplitData> {
        if lam.is_empty() || !lam.is_proper(n) {
            return Err(Error::input("split data needs a nonempty proper index set"));
        }
        let lam_hat = lam.complement(n);
        if p.arity() != lam_hat.len() || q.arity() != lam.len() {
            return Err(Error::input(
                "projection subgroups must match the index split widths",
            ));
        }
        if !e_in_p.is_subset_of(p) || !e_in_q.is_subset_of(q) {
            return Err(Error::input(
                "kernel subgroups must lie inside their projection subgroups",
            ));
        }
        let mut factors: Vec<Arc<GroupTable>> = Vec::with_capacity(n);
        factors.resize(n, Arc::clone(p.ambient().factor(0)));
        for (k, &pos) in lam_hat.members().iter().enumerate() {
            factors[pos] = Arc::clone(p.ambient().factor(k));
        }
        for (k, &pos) in lam.members().iter().enumerate() {
            factors[pos] = Arc::clone(q.ambient().factor(k));
        }
        let ambient = ProductGroup::new(factors)?;

        let p_real = p.realize(&format!("proj{}", lam_hat))?;
        let q_real = q.realize(&format!("proj{}", lam))?;
        let p_normal = subgroup_of_realized(&p_real, e_in_p)?;
        let q_normal = subgroup_of_realized(&q_real, e_in_q)?;
        let p_quotient = QuotientGroup::new(&SubgroupSet::full(&p_real.table), &p_normal)?;
        let q_quotient = QuotientGroup::new(&SubgroupSet::full(&q_real.table), &q_normal)?;
        let verdict = check_iso(&sigma, &p_quotient, &q_quotient);
        if !verdict.is_iso() {
            return Err(Error::input(format!(
                "coset map between the projection quotients is not an isomorphism: {}",
                verdict
            )));
        }
        Ok(SplitData {
            ambient,
            lam_hat,
            lam: lam.clone(),
            p_real,
            q_real,
            p_quotient,
            q_quotient,
            sigma,
        })
    }

    /// Reads the split data off an existing subgroup at `lam`, through the
    /// verified structural isomorphism.
    pub fn extract(u: &ProductSubgroup, lam: &IndexSet) -> Result<SplitData> {
        let iso: StructuralIso = split_iso(u, lam)?;
        Ok(SplitData {
            ambient: Arc::clone(u.ambient()),
            lam_hat: iso.lam_hat().clone(),
            lam: iso.lam().clone(),
            p_real: iso.source_realized().clone(),
            q_real: iso.target_realized().clone(),
            p_quotient: iso.source().clone(),
            q_quotient: iso.target().clone(),
            sigma: iso.map().to_vec(),
        })
    }

    /// Interleaves matched coset pairs into full tuples and verifies the
    /// result as a subgroup of the ambient product.
    pub fn assemble(&self) -> Result<ProductSubgroup> {
        let n = self.ambient.arity();
        let mut tuples: Vec<Tuple> = Vec::new();
        for (cp, &cq) in self.sigma.iter().enumerate() {
            for &x in &self.p_quotient.cosets()[cp] {
                for &y in &self.q_quotient.cosets()[cq] {
                    let hat_part = &self.p_real.tuples[x as usize];
                    let lam_part = &self.q_real.tuples[y as usize];
                    let mut t = vec![0u16; n];
                    for (k, &pos) in self.lam_hat.members().iter().enumerate() {
                        t[pos] = hat_part[k];
                    }
                    for (k, &pos) in self.lam.members().iter().enumerate() {
                        t[pos] = lam_part[k];
                    }
                    tuples.push(t);
                }
            }
        }
        ProductSubgroup::new(&self.ambient, tuples)
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn p_quotient(&self) -> &QuotientGroup {
        &self.p_quotient
    }

    pub fn q_quotient(&self) -> &QuotientGroup {
        &self.q_quotient
    }
}

fn subgroup_of_realized(real: &Realized, sub: &ProductSubgroup) -> Result<SubgroupSet> {
    let ids: Vec<u16> = sub
        .elements()
        .iter()
        .map(|t| real.id_of(t))
        .collect::<Result<_>>()?;
    SubgroupSet::from_elements(&real.table, ids)
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
    fn two_factor_round_trip_on_slant() {
        let u = slant();
        let data = GoursatData::extract(&u).unwrap();
        assert_eq!(data.a_quotient().order(), 2);
        assert_eq!(data.a_quotient().normal().elements(), &[0, 2]);
        assert_eq!(data.b_quotient().normal().order(), 1);
        let rebuilt = data.assemble().unwrap();
        assert_eq!(rebuilt, u);
    }

    #[test]
    fn goursat_data_from_scratch_builds_slant() {
        let a = z4();
        let b = z2();
        let i = SubgroupSet::full(&a);
        let k = SubgroupSet::from_elements(&a, vec![0, 2]).unwrap();
        let j = SubgroupSet::full(&b);
        let l = SubgroupSet::trivial(&b);
        let data = GoursatData::new(&i, &k, &j, &l, vec![0, 1]).unwrap();
        let u = data.assemble().unwrap();
        assert_eq!(u, slant());
    }

    #[test]
    fn identity_sigma_on_full_quotients_builds_diagonal() {
        let g = z4();
        let i = SubgroupSet::full(&g);
        let k = SubgroupSet::trivial(&g);
        let data = GoursatData::new(&i, &k, &i, &k, vec![0, 1, 2, 3]).unwrap();
        let u = data.assemble().unwrap();
        assert_eq!(u.order(), 4);
        assert!(u.elements().iter().all(|t| t[0] == t[1]));
    }

    #[test]
    fn trivial_quotients_build_full_product() {
        let a = z4();
        let b = z2();
        let data = GoursatData::new(
            &SubgroupSet::full(&a),
            &SubgroupSet::full(&a),
            &SubgroupSet::full(&b),
            &SubgroupSet::full(&b),
            vec![0],
        )
        .unwrap();
        assert_eq!(data.assemble().unwrap().order(), 8);
    }

    #[test]
    fn rejects_non_isomorphic_sigma() {
        let a = z4();
        let b = z2();
        // Z4/1 has order 4, Z2/1 order 2: no bijection exists.
        let bad = GoursatData::new(
            &SubgroupSet::full(&a),
            &SubgroupSet::trivial(&a),
            &SubgroupSet::full(&b),
            &SubgroupSet::trivial(&b),
            vec![0, 1, 0, 1],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn split_round_trip_on_parity_cube() {
        let w = parity_cube();
        for lam in IndexSet::full(3).subsets_nonempty() {
            if !lam.is_proper(3) {
                continue;
            }
            let data = SplitData::extract(&w, &lam).unwrap();
            assert_eq!(data.assemble().unwrap(), w);
        }
    }

    #[test]
    fn split_data_from_scratch_matches_goursat() {
        // slant, split at the second coordinate, built by hand.
        let u = slant();
        let p = u.project(&IndexSet::singleton(0)).unwrap();
        let q = u.project(&IndexSet::singleton(1)).unwrap();
        let e_p = ProductSubgroup::new(p.ambient(), vec![vec![0], vec![2]]).unwrap();
        let e_q = ProductSubgroup::new(q.ambient(), vec![vec![0]]).unwrap();
        let data =
            SplitData::new(&p, &q, &e_p, &e_q, vec![0, 1], &IndexSet::singleton(1), 2).unwrap();
        assert_eq!(data.assemble().unwrap(), u);
    }

    #[test]
    fn trivial_split_quotients_build_direct_product() {
        // P = Q = Z2 as one-factor products, kernels everything.
        let p1 = ProductGroup::new(vec![z2()]).unwrap();
        let full = ProductSubgroup::full(&p1).unwrap();
        let data = SplitData::new(
            &full,
            &full,
            &full,
            &full,
            vec![0],
            &IndexSet::singleton(1),
            2,
        )
        .unwrap();
        let u = data.assemble().unwrap();
        assert_eq!(u.order(), 4);
    }
}
