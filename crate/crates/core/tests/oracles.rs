//! Cross-checks against brute-force oracles computed inside this file.
//!
//! Every oracle here is independent of the library: subgroup enumeration
//! walks all subsets of the Cayley table, and the touch partition is rebuilt
//! with a plain union-find over coordinate agreement. Expected counts are
//! frozen literals.

use std::collections::HashMap;
use std::sync::Arc;

use subdirect::{enumerate_subgroups, GroupTable, ProductGroup, ProductSubgroup, Tuple};

fn z(n: usize) -> Arc<GroupTable> {
    GroupTable::cyclic(n).unwrap()
}

fn s3() -> Arc<GroupTable> {
    GroupTable::symmetric(3).unwrap()
}

/// All subgroups of `g` by subset scan: a subset is a subgroup exactly when
/// it contains the identity and is closed under multiplication (finiteness
/// gives inverses). Only usable for tiny orders; the mask is a u32.
fn brute_subgroups(g: &Arc<GroupTable>) -> Vec<Vec<u16>> {
    let n = g.order();
    assert!(n <= 16, "subset scan is exponential in the order");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let members: Vec<u16> = (0..n as u16).filter(|&x| mask >> x & 1 == 1).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1));
        if closed {
            out.push(members);
        }
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

fn enumerated(g: &Arc<GroupTable>) -> Vec<Vec<u16>> {
    let mut out: Vec<Vec<u16>> = enumerate_subgroups(g, 256, None)
        .unwrap()
        .into_iter()
        .map(|s| s.elements().to_vec())
        .collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

#[test]
fn enumeration_matches_the_subset_scan() {
    for (g, count) in [
        (z(4), 3),
        (z(6), 4),
        (z(8), 4),
        (s3(), 6),
        (z(12), 6),
        (GroupTable::cyclic(2).unwrap(), 2),
    ] {
        let brute = brute_subgroups(&g);
        assert_eq!(brute.len(), count, "subgroup count of {}", g.label());
        assert_eq!(enumerated(&g), brute, "subgroups of {}", g.label());
    }
}

#[test]
fn enumeration_matches_the_subset_scan_on_products() {
    let shapes: Vec<(Arc<ProductGroup>, usize)> = vec![
        (ProductGroup::new(vec![z(2), z(2)]).unwrap(), 5),
        (ProductGroup::new(vec![z(2), z(2), z(2)]).unwrap(), 16),
        (ProductGroup::new(vec![z(4), z(2)]).unwrap(), 8),
    ];
    for (p, count) in shapes {
        let (table, _) = p.as_table().unwrap();
        let brute = brute_subgroups(&table);
        assert_eq!(brute.len(), count, "subgroup count of {}", p.label());
        assert_eq!(enumerated(&table), brute, "subgroups of {}", p.label());
    }
}

/// Plain union-find with path halving; the oracle structure.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// The touch partition rebuilt from scratch: elements of `u` are joined
/// whenever they agree in at least one coordinate, then classes are read
/// off as sorted element lists, sorted by least member.
fn touch_partition_oracle(u: &ProductSubgroup) -> Vec<Vec<Tuple>> {
    let elems = u.elements();
    let mut uf = UnionFind::new(elems.len());
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let agree = (0..u.arity()).any(|k| elems[i][k] == elems[j][k]);
            if agree {
                uf.union(i, j);
            }
        }
    }
    collect_classes(elems, (0..elems.len()).map(|i| uf.find(i)).collect())
}

/// The coset partition of the core, also from scratch: elements are grouped
/// by which left coset of the core they inhabit.
fn core_coset_oracle(u: &ProductSubgroup) -> Vec<Vec<Tuple>> {
    let core = u.core();
    let elems = u.elements();
    let mut class_of: HashMap<Tuple, usize> = HashMap::new();
    let mut keys = vec![usize::MAX; elems.len()];
    for (i, x) in elems.iter().enumerate() {
        // The coset key of x is its coset's least element x * c.
        let least = core
            .elements()
            .iter()
            .map(|c| u.ambient().mul(x, c))
            .min()
            .unwrap();
        let next = class_of.len();
        keys[i] = *class_of.entry(least).or_insert(next);
    }
    collect_classes(elems, keys)
}

fn collect_classes(elems: &[Tuple], keys: Vec<usize>) -> Vec<Vec<Tuple>> {
    let mut by_key: HashMap<usize, Vec<Tuple>> = HashMap::new();
    for (i, k) in keys.into_iter().enumerate() {
        by_key.entry(k).or_default().push(elems[i].clone());
    }
    let mut classes: Vec<Vec<Tuple>> = by_key.into_values().collect();
    for class in &mut classes {
        class.sort();
    }
    classes.sort();
    classes
}

fn library_partition(u: &ProductSubgroup) -> Vec<Vec<Tuple>> {
    let mut classes: Vec<Vec<Tuple>> = u
        .touch_partition()
        .classes(u.elements())
        .into_iter()
        .map(|class| class.into_iter().cloned().collect())
        .collect();
    for class in &mut classes {
        class.sort();
    }
    classes.sort();
    classes
}

/// Every subgroup of each small product: the touch partition, the union-find
/// oracle, and the coset partition of the core are one and the same thing.
#[test]
fn touch_classes_are_core_cosets() {
    let shapes: Vec<Arc<ProductGroup>> = vec![
        ProductGroup::new(vec![z(2), z(2)]).unwrap(),
        ProductGroup::new(vec![z(2), z(2), z(2)]).unwrap(),
        ProductGroup::new(vec![z(4), z(2)]).unwrap(),
        ProductGroup::new(vec![s3(), z(2)]).unwrap(),
    ];
    let mut seen = 0;
    for p in shapes {
        for u in all_product_subgroups(&p) {
            let oracle = touch_partition_oracle(&u);
            assert_eq!(
                library_partition(&u),
                oracle,
                "touch classes in {}",
                p.label()
            );
            assert_eq!(
                core_coset_oracle(&u),
                oracle,
                "core cosets in {}",
                p.label()
            );
            seen += 1;
        }
    }
    assert!(
        seen > 30,
        "the corpus actually covered subgroups, saw {seen}"
    );
}

/// The core multiplied out coordinate kernel by coordinate kernel, in every
/// index order, lands on the same element set.
#[test]
fn kernel_products_commute() {
    let p = ProductGroup::new(vec![z(4), z(2), z(2)]).unwrap();
    for u in all_product_subgroups(&p) {
        let core = u.core();
        for order in [
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ] {
            let product = u.core_product_in_order(&order).unwrap();
            assert_eq!(product, core.elements(), "order {order:?} in {}", p.label());
        }
    }
}

/// All subgroups of a materialized product, lifted back to tuple form.
fn all_product_subgroups(p: &Arc<ProductGroup>) -> Vec<ProductSubgroup> {
    let (table, tuples) = p.as_table().unwrap();
    enumerate_subgroups(&table, 256, None)
        .unwrap()
        .into_iter()
        .map(|s| {
            let members: Vec<Tuple> = s
                .elements()
                .iter()
                .map(|&id| tuples[id as usize].clone())
                .collect();
            ProductSubgroup::new(p, members).unwrap()
        })
        .collect()
}
