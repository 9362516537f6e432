//! Direct products of group tables and their subgroups.
//!
//! A [`ProductGroup`] is just the ordered list of factor tables; its
//! elements are tuples of factor element ids, handled as sorted sets rather
//! than through one big table. Only [`ProductGroup::as_table`] materialises
//! the whole product, and it refuses to beyond a size bound.

mod index_set;
mod subgroup;
mod touch;

pub use index_set::IndexSet;
pub use subgroup::{ProductSubgroup, Realized};
pub use touch::TouchPartition;

use std::sync::Arc;

use crate::group::GroupTable;
use crate::{Error, Result, MAX_MATERIALIZED_ORDER};

/// An element of a direct product: one id per factor.
pub type Tuple = Vec<u16>;

/// A direct product `A1 x ... x An` of group tables.
#[derive(Debug)]
pub struct ProductGroup {
    factors: Vec<Arc<GroupTable>>,
    label: String,
}

impl ProductGroup {
    pub fn new(factors: Vec<Arc<GroupTable>>) -> Result<Arc<ProductGroup>> {
        if factors.is_empty() {
            return Err(Error::input("a product needs at least one factor"));
        }
        let label = factors
            .iter()
            .map(|f| f.label().to_string())
            .collect::<Vec<_>>()
            .join("x");
        Ok(Arc::new(ProductGroup { factors, label }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &Arc<GroupTable> {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Arc<GroupTable>] {
        &self.factors
    }

    /// Total order of the product (saturating; anything near the cap is far
    /// beyond what may be materialised anyway).
    pub fn order(&self) -> usize {
        self.factors
            .iter()
            .fold(1usize, |acc, f| acc.saturating_mul(f.order()))
    }

    pub fn identity(&self) -> Tuple {
        vec![0; self.factors.len()]
    }

    pub fn mul(&self, a: &Tuple, b: &Tuple) -> Tuple {
        debug_assert_eq!(a.len(), self.factors.len());
        debug_assert_eq!(b.len(), self.factors.len());
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.mul(a[i], b[i]))
            .collect()
    }

    pub fn inv(&self, a: &Tuple) -> Tuple {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.inv(a[i]))
            .collect()
    }

    pub fn is_identity(&self, a: &Tuple) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Checks every coordinate of `a` against its factor's order.
    pub fn check_tuple(&self, a: &Tuple) -> Result<()> {
        if a.len() != self.factors.len() {
            return Err(Error::input(format!(
                "tuple has {} coordinates, product {} has {}",
                a.len(),
                self.label,
                self.factors.len()
            )));
        }
        for (i, (&x, f)) in a.iter().zip(&self.factors).enumerate() {
            if x as usize >= f.order() {
                return Err(Error::input(format!(
                    "coordinate {} of tuple is {x}, out of range for {} (order {})",
                    i + 1,
                    f.label(),
                    f.order()
                )));
            }
        }
        Ok(())
    }

    /// The sub-product over the factors in `lam`, in ascending index order.
    pub fn subproduct(&self, lam: &IndexSet) -> Result<Arc<ProductGroup>> {
        if lam.is_empty() {
            return Err(Error::input("subproduct over an empty index set"));
        }
        ProductGroup::new(
            lam.members()
                .iter()
                .map(|&i| Arc::clone(&self.factors[i]))
                .collect(),
        )
    }

    /// Every tuple of the product, lexicographically sorted, provided the
    /// order stays within [`MAX_MATERIALIZED_ORDER`].
    pub fn all_tuples(&self) -> Result<Vec<Tuple>> {
        let order = self.order();
        if order > MAX_MATERIALIZED_ORDER {
            return Err(Error::Resource {
                what: "product materialisation",
                order,
                bound: MAX_MATERIALIZED_ORDER,
            });
        }
        let mut out = Vec::with_capacity(order);
        let mut current = self.identity();
        loop {
            out.push(current.clone());
            // Odometer step, last coordinate fastest; yields lex order.
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                current[i] += 1;
                if (current[i] as usize) < self.factors[i].order() {
                    break;
                }
                current[i] = 0;
            }
        }
    }

    /// Materialises the product as a single table, with the tuple list in
    /// table-id order (lexicographic, identity first).
    pub fn as_table(&self) -> Result<(Arc<GroupTable>, Vec<Tuple>)> {
        let order = self.order();
        crate::group::check_order("materialised product", order)?;
        let tuples = self.all_tuples()?;
        let id_of = |t: &Tuple| -> u16 {
            // Mixed radix, first coordinate most significant.
            let mut id = 0usize;
            for (i, f) in self.factors.iter().enumerate() {
                id = id * f.order() + t[i] as usize;
            }
            id as u16
        };
        let mut mul = vec![0u16; order * order];
        for (a, ta) in tuples.iter().enumerate() {
            for (b, tb) in tuples.iter().enumerate() {
                mul[a * order + b] = id_of(&self.mul(ta, tb));
            }
        }
        let table = GroupTable::from_parts(self.label.clone(), order, mul, None)?;
        Ok((table, tuples))
    }

    /// Printable name for a tuple, e.g. `[(1 2), 1]`.
    pub fn tuple_name(&self, t: &Tuple) -> String {
        let parts: Vec<String> = t
            .iter()
            .enumerate()
            .map(|(i, &x)| self.factors[i].element_name(x))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_order_and_law() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let p = ProductGroup::new(vec![z4, z2]).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.label(), "Z4xZ2");
        assert_eq!(p.mul(&vec![3, 1], &vec![2, 1]), vec![1, 0]);
        assert_eq!(p.inv(&vec![1, 1]), vec![3, 1]);
    }

    #[test]
    fn all_tuples_is_lexicographic() {
        let z2 = GroupTable::cyclic(2).unwrap();
        let p = ProductGroup::new(vec![Arc::clone(&z2), z2]).unwrap();
        assert_eq!(
            p.all_tuples().unwrap(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn as_table_matches_componentwise_law() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let p = ProductGroup::new(vec![z4, z2]).unwrap();
        let (t, tuples) = p.as_table().unwrap();
        assert_eq!(t.order(), 8);
        for a in 0..8u16 {
            for b in 0..8u16 {
                let prod = p.mul(&tuples[a as usize], &tuples[b as usize]);
                assert_eq!(tuples[t.mul(a, b) as usize], prod);
            }
        }
    }

    #[test]
    fn subproduct_picks_factors() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let z3 = GroupTable::cyclic(3).unwrap();
        let p = ProductGroup::new(vec![z4, z2, z3]).unwrap();
        let lam = IndexSet::parse("1,3", 3).unwrap();
        let sub = p.subproduct(&lam).unwrap();
        assert_eq!(sub.label(), "Z4xZ3");
    }
}
