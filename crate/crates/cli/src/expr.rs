//! Product expressions like `Z2^3` or `S3xS3`, used by the `enumerate` and
//! `verify --enumerate` commands to name an ambient product without a file.
//!
//! Grammar: `term (x term)*` where `term` is `Z<n>` or `S<n>` optionally
//! followed by `^<k>`. Whitespace around tokens is allowed. A lone term with
//! no repetition is rejected because a product needs at least two factors.

use std::collections::HashMap;
use std::sync::Arc;

use subdirect::{Error, GroupTable, ProductGroup};

type Result<T> = std::result::Result<T, Error>;

pub fn parse_product(text: &str) -> Result<Arc<ProductGroup>> {
    let mut factors: Vec<Arc<GroupTable>> = Vec::new();
    // Repeated atoms share one table so identical factors are pointer-equal.
    let mut cache: HashMap<String, Arc<GroupTable>> = HashMap::new();
    for term in text.split('x') {
        let term = term.trim();
        let (atom, count) = match term.split_once('^') {
            Some((base, exp)) => {
                let count: usize = exp.trim().parse().map_err(|_| {
                    Error::Input(format!("bad exponent {} in product expression", exp.trim()))
                })?;
                if count == 0 {
                    return Err(Error::Input("exponent must be at least 1".to_string()));
                }
                (base.trim(), count)
            }
            None => (term, 1),
        };
        let table = match cache.get(atom) {
            Some(t) => t.clone(),
            None => {
                let t = parse_atom(atom)?;
                cache.insert(atom.to_string(), t.clone());
                t
            }
        };
        factors.extend(std::iter::repeat_with(|| table.clone()).take(count));
    }
    if factors.len() < 2 {
        return Err(Error::Input(format!(
            "product expression {text} has {} factor(s); a product needs at least two",
            factors.len()
        )));
    }
    ProductGroup::new(factors)
}

fn parse_atom(atom: &str) -> Result<Arc<GroupTable>> {
    let bad = || {
        Error::Input(format!(
            "bad factor {atom} in product expression (expected Z<n> or S<n>)"
        ))
    };
    let (family, digits) = atom.split_at(atom.len().min(1));
    let n: usize = digits.parse().map_err(|_| bad())?;
    match family {
        "Z" => GroupTable::cyclic(n),
        "S" => GroupTable::symmetric(n),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_powers_and_mixed_products() {
        let p = parse_product("Z2^3").unwrap();
        assert_eq!(p.factors().len(), 3);
        assert_eq!(p.order(), 8);

        let q = parse_product("S3 x Z4").unwrap();
        assert_eq!(q.order(), 24);
        assert_eq!(q.factor(0).label(), "S3");

        let r = parse_product("Z2 x Z2^2").unwrap();
        assert_eq!(r.factors().len(), 3);
    }

    #[test]
    fn repeated_atoms_share_a_table() {
        let p = parse_product("S3xS3").unwrap();
        assert!(Arc::ptr_eq(p.factor(0), p.factor(1)));
    }

    #[test]
    fn rejects_single_factors_and_junk() {
        assert!(parse_product("Z4").is_err());
        assert!(parse_product("Q8 x Z2").is_err());
        assert!(parse_product("Z2^0").is_err());
        assert!(parse_product("Zx x Z2").is_err());
    }
}
