//! Verification that a map between two group laws is an isomorphism.

use super::GroupLaw;

/// Outcome of an isomorphism check; failures carry a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoCheck {
    Iso,
    /// The two sides have different orders.
    SizeMismatch {
        source: usize,
        target: usize,
    },
    /// The map is not defined on all of the source.
    WrongLength {
        expected: usize,
        got: usize,
    },
    /// A value is outside the target's range.
    ValueRange {
        at: usize,
        value: usize,
    },
    /// Two source elements share an image.
    Collision {
        a: usize,
        b: usize,
    },
    /// `f(x.y) != f(x).f(y)`.
    LawFailure {
        x: usize,
        y: usize,
    },
}

impl IsoCheck {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoCheck::Iso)
    }
}

impl std::fmt::Display for IsoCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsoCheck::Iso => write!(f, "isomorphism"),
            IsoCheck::SizeMismatch { source, target } => {
                write!(f, "orders differ: {source} vs {target}")
            }
            IsoCheck::WrongLength { expected, got } => {
                write!(f, "map has {got} entries, expected {expected}")
            }
            IsoCheck::ValueRange { at, value } => {
                write!(f, "value {value} at {at} is out of range")
            }
            IsoCheck::Collision { a, b } => write!(f, "elements {a} and {b} share an image"),
            IsoCheck::LawFailure { x, y } => write!(f, "law fails at ({x}, {y})"),
        }
    }
}

/// Checks that `map` is an isomorphism from `source` onto `target`.
///
/// On equal finite orders injectivity already gives bijectivity, so the
/// checks are: equal orders, totality, in-range values, no collisions, and
/// the multiplication law on every pair.
pub fn check_iso(map: &[usize], source: &impl GroupLaw, target: &impl GroupLaw) -> IsoCheck {
    let n = source.order();
    if n != target.order() {
        return IsoCheck::SizeMismatch {
            source: n,
            target: target.order(),
        };
    }
    if map.len() != n {
        return IsoCheck::WrongLength {
            expected: n,
            got: map.len(),
        };
    }
    let mut preimage = vec![usize::MAX; n];
    for (x, &y) in map.iter().enumerate() {
        if y >= n {
            return IsoCheck::ValueRange { at: x, value: y };
        }
        if preimage[y] != usize::MAX {
            return IsoCheck::Collision {
                a: preimage[y],
                b: x,
            };
        }
        preimage[y] = x;
    }
    for x in 0..n {
        for y in 0..n {
            if map[source.compose(x, y)] != target.compose(map[x], map[y]) {
                return IsoCheck::LawFailure { x, y };
            }
        }
    }
    IsoCheck::Iso
}

/// `first` followed by `second`, as coset/element index maps.
pub fn compose_maps(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&y| second[y]).collect()
}

/// Inverse of a bijective index map.
pub fn invert_map(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![usize::MAX; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;

    #[test]
    fn z4_is_not_klein() {
        let z4 = GroupTable::cyclic(4).unwrap();
        let rows = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let klein = GroupTable::from_rows("V4", &rows).unwrap();
        // No bijection works; spot-check them all.
        let perms = [
            [0usize, 1, 2, 3],
            [0, 1, 3, 2],
            [0, 2, 1, 3],
            [0, 2, 3, 1],
            [0, 3, 1, 2],
            [0, 3, 2, 1],
        ];
        for p in perms {
            assert!(!check_iso(&p, z4.as_ref(), klein.as_ref()).is_iso());
        }
    }

    #[test]
    fn identity_map_is_iso() {
        let s3 = GroupTable::symmetric(3).unwrap();
        let id: Vec<usize> = (0..6).collect();
        assert!(check_iso(&id, s3.as_ref(), s3.as_ref()).is_iso());
    }

    #[test]
    fn collisions_and_sizes_are_reported() {
        let z2 = GroupTable::cyclic(2).unwrap();
        let z4 = GroupTable::cyclic(4).unwrap();
        assert_eq!(
            check_iso(&[0, 1], z2.as_ref(), z4.as_ref()),
            IsoCheck::SizeMismatch {
                source: 2,
                target: 4
            }
        );
        assert_eq!(
            check_iso(&[0, 0], z2.as_ref(), z2.as_ref()),
            IsoCheck::Collision { a: 0, b: 1 }
        );
    }

    #[test]
    fn map_algebra() {
        let f = [2usize, 0, 1];
        let g = invert_map(&f);
        assert_eq!(compose_maps(&f, &g), vec![0, 1, 2]);
    }
}
