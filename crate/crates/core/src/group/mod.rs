//! Finite groups as explicit multiplication tables, with subgroups,
//! quotients and homomorphisms built on top.
//!
//! Elements are plain indices (`u16`) into the table, and index `0` is
//! always the identity. Tables are immutable and shared behind [`Arc`], so
//! subgroups and quotients can point back at their parent cheaply.

mod enumerate;
mod hom;
mod iso;
mod quotient;
mod subgroup;

pub use enumerate::enumerate_subgroups;
pub use hom::Homomorphism;
pub use iso::{check_iso, compose_maps, invert_map, IsoCheck};
pub use quotient::QuotientGroup;
pub use subgroup::SubgroupSet;

use std::sync::Arc;

use crate::perm::Perm;
use crate::{Error, Result, MAX_GROUP_ORDER};

/// Anything that exposes a finite group law on `0..order()`.
///
/// Index `0` must be the identity. This is the interface
/// [`check_iso`] works against, so tables and quotients can be compared
/// without converting one into the other.
pub trait GroupLaw {
    fn order(&self) -> usize;
    fn compose(&self, a: usize, b: usize) -> usize;
}

/// A finite group stored as its full multiplication table.
///
/// The identity is element `0`. For groups built from permutations the
/// one-line forms are kept alongside the table so elements can be printed in
/// cycle notation; products and inverses always go through the table itself.
///
/// Multiplication is written left-to-right: for permutation groups,
/// `mul(a, b)` is "apply `a`, then `b`".
#[derive(Debug)]
pub struct GroupTable {
    label: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    perms: Option<Vec<Perm>>,
}

impl GroupTable {
    /// The cyclic group of order `n`, written additively; element `k` is the
    /// residue `k`.
    pub fn cyclic(n: usize) -> Result<Arc<GroupTable>> {
        if n == 0 {
            return Err(Error::input("cyclic group order must be at least 1"));
        }
        check_order("group", n)?;
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u16;
            }
        }
        GroupTable::from_parts(format!("Z{n}"), n, mul, None)
    }

    /// The symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Result<Arc<GroupTable>> {
        if degree == 0 {
            return Err(Error::input("symmetric group degree must be at least 1"));
        }
        let mut order = 1usize;
        for k in 2..=degree {
            order = order.saturating_mul(k);
        }
        check_order("group", order)?;
        let mut all: Vec<Perm> = permutations_of(degree);
        all.sort();
        GroupTable::from_perm_list(format!("S{degree}"), all)
    }

    /// The subgroup of `Sym(degree)` generated by `gens`, as its own table.
    ///
    /// Elements are sorted lexicographically by one-line image, which puts
    /// the identity first.
    pub fn from_permutations(label: &str, degree: usize, gens: &[Perm]) -> Result<Arc<GroupTable>> {
        if degree == 0 {
            return Err(Error::input("permutation degree must be at least 1"));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator {} has degree {}, expected {degree}",
                    g.cycle_string(),
                    g.degree()
                )));
            }
        }
        let mut elements: Vec<Perm> = vec![Perm::identity(degree)];
        let mut seen: std::collections::BTreeSet<Perm> = elements.iter().cloned().collect();
        let mut frontier = elements.clone();
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    check_order("group", seen.len())?;
                    elements.push(q.clone());
                    frontier.push(q);
                }
            }
        }
        elements.sort();
        GroupTable::from_perm_list(label.to_string(), elements)
    }

    /// Builds a group from explicit table rows (`rows[a][b]` is `a.b`).
    ///
    /// The rows are checked to form a group. If the identity is not element
    /// `0`, elements are relabelled by swapping it into slot `0`.
    pub fn from_rows(label: &str, rows: &[Vec<u16>]) -> Result<Arc<GroupTable>> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::input("empty multiplication table"));
        }
        check_order("group", n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input(format!(
                    "table row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &e in row {
                if e as usize >= n {
                    return Err(Error::input(format!(
                        "table entry {e} out of range for order {n}"
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| {
                (0..n).all(|j| rows[e][j] as usize == j) && (0..n).all(|i| rows[i][e] as usize == i)
            })
            .ok_or_else(|| Error::input("table has no identity element"))?;

        // Relabel so the identity sits at index 0 (swap 0 <-> identity).
        let relabel = |x: usize| -> usize {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = relabel(rows[relabel(a)][relabel(b)] as usize) as u16;
            }
        }
        GroupTable::from_parts(label.to_string(), n, mul, None)
    }

    fn from_perm_list(label: String, elements: Vec<Perm>) -> Result<Arc<GroupTable>> {
        let n = elements.len();
        let index: std::collections::BTreeMap<&Perm, u16> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i as u16))
            .collect();
        let mut mul = vec![0u16; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                let prod = pa.then(pb);
                let id = *index.get(&prod).ok_or_else(|| {
                    Error::input("permutation list is not closed under composition")
                })?;
                mul[a * n + b] = id;
            }
        }
        GroupTable::from_parts(label, n, mul, Some(elements))
    }

    /// Final constructor: checks the group axioms, computes inverses.
    ///
    /// Expects the identity at index 0. Associativity is checked
    /// exhaustively, which is affordable at the orders this crate allows.
    pub(crate) fn from_parts(
        label: String,
        order: usize,
        mul: Vec<u16>,
        perms: Option<Vec<Perm>>,
    ) -> Result<Arc<GroupTable>> {
        debug_assert_eq!(mul.len(), order * order);
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::input(format!(
                    "element 0 is not an identity in table for {label}"
                )));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul[a * order + b] as usize;
                for c in 0..order {
                    let bc = mul[b * order + c] as usize;
                    if mul[ab * order + c] != mul[a * order + bc] {
                        return Err(Error::input(format!(
                            "table for {label} is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inv = vec![u16::MAX; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| mul[a * order + b] == 0 && mul[b * order + a] == 0)
                .ok_or_else(|| Error::input(format!("element {a} of {label} has no inverse")))?;
            inv[a] = b as u16;
        }
        Ok(Arc::new(GroupTable {
            label,
            order,
            mul,
            inv,
            perms,
        }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// `b^-1 . a . b`.
    #[inline]
    pub fn conj(&self, a: u16, b: u16) -> u16 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// The permutation behind element `id`, for groups built from permutations.
    pub fn perm(&self, id: u16) -> Option<&Perm> {
        self.perms.as_ref().map(|ps| &ps[id as usize])
    }

    pub fn has_perms(&self) -> bool {
        self.perms.is_some()
    }

    /// Printable name for an element: cycle notation when available,
    /// otherwise the index itself.
    pub fn element_name(&self, id: u16) -> String {
        match self.perm(id) {
            Some(p) => p.cycle_string(),
            None => id.to_string(),
        }
    }

    /// Looks up an element by printable name (cycle notation or index).
    pub fn element_by_name(&self, name: &str) -> Result<u16> {
        let name = name.trim();
        if let Some(ps) = &self.perms {
            let degree = ps[0].degree();
            let target = Perm::parse_cycles(degree, name)?;
            return ps
                .iter()
                .position(|p| *p == target)
                .map(|i| i as u16)
                .ok_or_else(|| {
                    Error::input(format!(
                        "permutation {name} is not an element of {}",
                        self.label
                    ))
                });
        }
        let id: usize = name.parse().map_err(|_| {
            Error::input(format!("bad element literal {name:?} for {}", self.label))
        })?;
        if id >= self.order {
            return Err(Error::input(format!(
                "element {id} out of range for {} (order {})",
                self.label, self.order
            )));
        }
        Ok(id as u16)
    }

    /// Order of a single element.
    pub fn element_order(&self, a: u16) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

impl GroupLaw for GroupTable {
    fn order(&self) -> usize {
        self.order
    }

    fn compose(&self, a: usize, b: usize) -> usize {
        self.mul(a as u16, b as u16) as usize
    }
}

impl GroupLaw for Arc<GroupTable> {
    fn order(&self) -> usize {
        self.as_ref().order
    }

    fn compose(&self, a: usize, b: usize) -> usize {
        self.as_ref().compose(a, b)
    }
}

pub(crate) fn check_order(what: &'static str, order: usize) -> Result<()> {
    if order > MAX_GROUP_ORDER {
        return Err(Error::Resource {
            what,
            order,
            bound: MAX_GROUP_ORDER,
        });
    }
    Ok(())
}

fn permutations_of(degree: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut images: Vec<u16> = (0..degree as u16).collect();
    fn rec(images: &mut Vec<u16>, k: usize, out: &mut Vec<Perm>) {
        if k == images.len() {
            out.push(Perm::from_images(images.clone()).expect("valid by construction"));
            return;
        }
        for i in k..images.len() {
            images.swap(k, i);
            rec(images, k + 1, out);
            images.swap(k, i);
        }
    }
    rec(&mut images, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_law() {
        let z4 = GroupTable::cyclic(4).unwrap();
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.mul(3, 2), 1);
        assert_eq!(z4.inv(1), 3);
        assert_eq!(z4.element_order(1), 4);
        assert_eq!(z4.element_order(2), 2);
    }

    #[test]
    fn symmetric_group_has_identity_first() {
        let s3 = GroupTable::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.element_name(0), "()");
        // Lexicographic one-line order: (), (2 3), (1 2), (1 2 3), (1 3 2), (1 3).
        assert_eq!(s3.element_name(1), "(2 3)");
        assert_eq!(s3.element_name(5), "(1 3)");
    }

    #[test]
    fn closure_of_transposition_and_three_cycle_is_s3() {
        let gens = [
            Perm::parse_cycles(3, "(1 2)").unwrap(),
            Perm::parse_cycles(3, "(1 2 3)").unwrap(),
        ];
        let g = GroupTable::from_permutations("G", 3, &gens).unwrap();
        assert_eq!(g.order(), 6);
        let s3 = GroupTable::symmetric(3).unwrap();
        for a in 0..6u16 {
            for b in 0..6u16 {
                assert_eq!(g.mul(a, b), s3.mul(a, b));
            }
        }
    }

    #[test]
    fn table_rows_with_shifted_identity_are_relabelled() {
        // Z2 written with the identity in slot 1.
        let rows = vec![vec![1, 0], vec![0, 1]];
        let g = GroupTable::from_rows("flip", &rows).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn bad_tables_are_rejected() {
        assert!(GroupTable::from_rows("bad", &[vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::from_rows("bad", &[vec![1, 0], vec![1, 0]]).is_err());
        assert!(GroupTable::cyclic(0).is_err());
        assert!(GroupTable::cyclic(257).is_err());
        assert!(GroupTable::symmetric(6).is_err());
    }

    #[test]
    fn element_lookup_round_trip() {
        let s3 = GroupTable::symmetric(3).unwrap();
        for id in 0..s3.order() as u16 {
            assert_eq!(s3.element_by_name(&s3.element_name(id)).unwrap(), id);
        }
        let z6 = GroupTable::cyclic(6).unwrap();
        assert_eq!(z6.element_by_name("5").unwrap(), 5);
        assert!(z6.element_by_name("6").is_err());
    }
}
