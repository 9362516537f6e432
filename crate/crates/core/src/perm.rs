//! Permutations on `{0, ..., degree-1}` in one-line form.
//!
//! Cycle notation at the text boundary is 1-based, matching the usual
//! convention, so `(1 2)` swaps the first two points. Internally everything
//! is 0-based.

use crate::{Error, Result};

/// A permutation stored as its one-line image vector.
///
/// `Ord` is derived, so sorting permutations sorts them lexicographically by
/// image vector; the identity is the minimum among permutations of equal
/// degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image vector, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            let img = img as usize;
            if img >= degree || seen[img] {
                return Err(Error::input(format!(
                    "not a permutation of {degree} points: image list {images:?}"
                )));
            }
            seen[img] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    /// `self` followed by `other`: `(self.then(other)).apply(x) == other.apply(self.apply(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.degree()];
        for (x, &img) in self.images.iter().enumerate() {
            images[img as usize] = x as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &img)| x as u16 == img)
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4)`; `()` is the identity.
    ///
    /// Points may be separated by spaces or commas. Every point must lie in
    /// `1..=degree` and no point may repeat across the whole expression.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
        let text = text.trim();
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut used = vec![false; degree];
        let bad = |msg: &str| Error::input(format!("bad cycle expression {text:?}: {msg}"));

        let mut rest = text;
        if rest.is_empty() {
            return Err(bad("empty expression (write () for the identity)"));
        }
        while !rest.is_empty() {
            let Some(open) = rest.strip_prefix('(') else {
                return Err(bad("expected '('"));
            };
            let Some(close) = open.find(')') else {
                return Err(bad("missing ')'"));
            };
            let body = &open[..close];
            rest = open[close + 1..].trim_start();

            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| bad(&format!("bad point {s:?}")))
                })
                .collect::<Result<_>>()?;
            for &p in &points {
                if p == 0 || p > degree {
                    return Err(bad(&format!("point {p} out of range 1..={degree}")));
                }
                if used[p - 1] {
                    return Err(bad(&format!("point {p} repeated")));
                }
                used[p - 1] = true;
            }
            for (i, &p) in points.iter().enumerate() {
                let q = points[(i + 1) % points.len()];
                images[p - 1] = (q - 1) as u16;
            }
        }
        Perm::from_images(images)
    }

    /// Renders 1-based cycle notation; the identity renders as `()`.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(x + 1).to_string());
                first = false;
                x = self.images[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let p = Perm::parse_cycles(4, "(1 2)(3 4)").unwrap();
        assert_eq!(p.cycle_string(), "(1 2)(3 4)");
        let q = Perm::parse_cycles(3, "(1 2 3)").unwrap();
        assert_eq!(q.apply(0), 1);
        assert_eq!(q.apply(2), 0);
        assert_eq!(Perm::parse_cycles(3, "()").unwrap(), Perm::identity(3));
    }

    #[test]
    fn composition_is_left_to_right() {
        let swap = Perm::parse_cycles(3, "(1 2)").unwrap();
        let rot = Perm::parse_cycles(3, "(1 2 3)").unwrap();
        // x=1: swap sends 1->2, then rot sends 2->3.
        assert_eq!(swap.then(&rot).apply(0), 2);
        assert_eq!(swap.then(&swap), Perm::identity(3));
        assert_eq!(rot.then(&rot.inverse()), Perm::identity(3));
    }

    #[test]
    fn rejects_malformed_cycles() {
        assert!(Perm::parse_cycles(3, "(1 4)").is_err());
        assert!(Perm::parse_cycles(3, "(1 1)").is_err());
        assert!(Perm::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Perm::parse_cycles(3, "1 2").is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }
}
