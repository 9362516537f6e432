//! Resolution of a parsed [`Document`] into live algebra objects.
//!
//! Declarations are resolved strictly in file order, so every reference must
//! point at an earlier line. A product used where a single group is expected
//! (as a homomorphism domain or codomain, or a presentation source) is
//! materialised into one table; the table is cached per name so repeated
//! uses share the same allocation and element ids. Element literals inside
//! a materialised product are the decimal ids of its table, mixed-radix with
//! the first coordinate most significant.

use std::collections::HashMap;
use std::sync::Arc;

use subdirect::group::QuotientGroup;
use subdirect::present::{present, HomPresentation};
use subdirect::structural::{pullback, GoursatData};
use subdirect::{Error, GroupTable, Homomorphism, ProductGroup, ProductSubgroup, SubgroupSet};

use crate::doc::{Decl, Document, GroupKind};

type Result<T> = std::result::Result<T, Error>;

/// A named declaration together with its resolved value and canonical text.
pub struct ResolvedItem {
    pub name: String,
    pub text: String,
    pub item: Item,
}

pub enum Item {
    Group(Arc<GroupTable>),
    Product(Arc<ProductGroup>),
    Subgroup(ProductSubgroup),
    Hom(Homomorphism),
    Present(HomPresentation),
    Goursat(GoursatData),
    Pullback(Vec<Homomorphism>),
}

impl Item {
    pub fn kind_word(&self) -> &'static str {
        match self {
            Item::Group(_) => "group",
            Item::Product(_) => "product",
            Item::Subgroup(_) => "subgroup",
            Item::Hom(_) => "hom",
            Item::Present(_) => "present",
            Item::Goursat(_) => "goursat",
            Item::Pullback(_) => "pullback",
        }
    }
}

/// All declarations of a document, resolved.
pub struct Env {
    items: Vec<ResolvedItem>,
    index: HashMap<String, usize>,
    /// Products materialised as single tables, keyed by product name.
    tables: HashMap<String, Arc<GroupTable>>,
}

impl Env {
    pub fn build(doc: &Document) -> Result<Env> {
        let mut env = Env {
            items: Vec::new(),
            index: HashMap::new(),
            tables: HashMap::new(),
        };
        for decl in doc.decls() {
            let item = env.resolve_decl(decl).map_err(|e| {
                Error::Input(format!("in {} {}: {e}", decl.kind_word(), decl.name()))
            })?;
            env.index.insert(decl.name().to_string(), env.items.len());
            env.items.push(ResolvedItem {
                name: decl.name().to_string(),
                text: decl.to_string(),
                item,
            });
        }
        Ok(env)
    }

    pub fn items(&self) -> &[ResolvedItem] {
        &self.items
    }

    pub fn get(&self, name: &str) -> Result<&ResolvedItem> {
        self.index
            .get(name)
            .map(|&i| &self.items[i])
            .ok_or_else(|| {
                Error::Input(format!(
                    "unknown name {name} (every reference must point at an earlier declaration)"
                ))
            })
    }

    /// The item named `name` as a subgroup of a product. Subgroups resolve
    /// to themselves; a presentation yields its image; goursat and pullback
    /// declarations are constructed. With no name, there must be exactly one
    /// declaration that can serve as a subject.
    ///
    /// Returns the item, the subgroup and any construction warnings.
    pub fn subject(
        &self,
        name: Option<&str>,
    ) -> Result<(&ResolvedItem, ProductSubgroup, Vec<String>)> {
        let item = self.pick(name, "subject", |it| {
            matches!(
                it.item,
                Item::Subgroup(_) | Item::Present(_) | Item::Goursat(_) | Item::Pullback(_)
            )
        })?;
        let (u, warnings) = match &item.item {
            Item::Subgroup(u) => (u.clone(), Vec::new()),
            Item::Present(p) => (p.subgroup().clone(), p.notes().to_vec()),
            Item::Goursat(data) => (data.assemble()?, Vec::new()),
            Item::Pullback(maps) => pullback(maps)?,
            _ => unreachable!("picker admits only subjects"),
        };
        Ok((item, u, warnings))
    }

    /// The goursat or pullback declaration named `name`, or the only one.
    pub fn construction(&self, name: Option<&str>) -> Result<&ResolvedItem> {
        self.pick(name, "construction", |it| {
            matches!(it.item, Item::Goursat(_) | Item::Pullback(_))
        })
    }

    /// The presentation named `name`, or the only one.
    pub fn presentation(&self, name: Option<&str>) -> Result<(&ResolvedItem, &HomPresentation)> {
        let item = self.pick(name, "presentation", |it| {
            matches!(it.item, Item::Present(_))
        })?;
        match &item.item {
            Item::Present(p) => Ok((item, p)),
            _ => unreachable!("picker admits only presentations"),
        }
    }

    fn pick(
        &self,
        name: Option<&str>,
        what: &str,
        admits: impl Fn(&ResolvedItem) -> bool,
    ) -> Result<&ResolvedItem> {
        match name {
            Some(n) => {
                let item = self.get(n)?;
                if !admits(item) {
                    return Err(Error::Input(format!(
                        "{n} is a {}, which cannot serve as a {what}",
                        item.item.kind_word()
                    )));
                }
                Ok(item)
            }
            None => {
                let mut candidates = self.items.iter().filter(|it| admits(it));
                match (candidates.next(), candidates.next()) {
                    (Some(only), None) => Ok(only),
                    (None, _) => Err(Error::Input(format!(
                        "the document declares no {what}; name one explicitly"
                    ))),
                    (Some(a), Some(b)) => Err(Error::Input(format!(
                        "several declarations can serve as the {what} (for example {} and {}); name one",
                        a.name, b.name
                    ))),
                }
            }
        }
    }

    /// A name required to denote one group table: either a declared group,
    /// or a declared product materialised (and cached) as a single table.
    fn group_view(&mut self, name: &str) -> Result<Arc<GroupTable>> {
        if let Some(t) = self.tables.get(name) {
            return Ok(t.clone());
        }
        let item = self.get(name)?;
        match &item.item {
            Item::Group(t) => Ok(t.clone()),
            Item::Product(p) => {
                let (table, _) = p.as_table()?;
                self.tables.insert(name.to_string(), table.clone());
                Ok(table)
            }
            other => Err(Error::Input(format!(
                "{name} is a {}, expected a group or product",
                other.kind_word()
            ))),
        }
    }

    fn product_of(&self, name: &str) -> Result<&Arc<ProductGroup>> {
        match &self.get(name)?.item {
            Item::Product(p) => Ok(p),
            other => Err(Error::Input(format!(
                "{name} is a {}, expected a product",
                other.kind_word()
            ))),
        }
    }

    fn hom_named(&self, name: &str) -> Result<&Homomorphism> {
        match &self.get(name)?.item {
            Item::Hom(h) => Ok(h),
            other => Err(Error::Input(format!(
                "{name} is a {}, expected a hom",
                other.kind_word()
            ))),
        }
    }

    fn resolve_decl(&mut self, decl: &Decl) -> Result<Item> {
        match decl {
            Decl::Group { kind, name } => Ok(Item::Group(match kind {
                GroupKind::Cyclic { order } => GroupTable::cyclic(*order)?,
                GroupKind::Perm { degree, gens } => {
                    let mut perms = Vec::new();
                    for g in gens {
                        perms.push(subdirect::perm::Perm::parse_cycles(*degree, g)?);
                    }
                    GroupTable::from_permutations(name, *degree, &perms)?
                }
                GroupKind::Table { rows } => GroupTable::from_rows(name, rows)?,
            })),
            Decl::Product { factors, .. } => {
                let mut tables = Vec::new();
                for f in factors {
                    match &self.get(f)?.item {
                        Item::Group(t) => tables.push(t.clone()),
                        other => {
                            return Err(Error::Input(format!(
                                "factor {f} is a {}, expected a group",
                                other.kind_word()
                            )))
                        }
                    }
                }
                Ok(Item::Product(ProductGroup::new(tables)?))
            }
            Decl::Subgroup { product, gens, .. } => {
                let ambient = self.product_of(product)?.clone();
                let n = ambient.factors().len();
                let mut tuples = Vec::new();
                for lits in gens {
                    if lits.len() != n {
                        return Err(Error::Input(format!(
                            "generator tuple has {} entries, the product has {n} factors",
                            lits.len()
                        )));
                    }
                    let mut t = Vec::with_capacity(n);
                    for (i, lit) in lits.iter().enumerate() {
                        t.push(ambient.factor(i).element_by_name(lit)?);
                    }
                    tuples.push(t);
                }
                Ok(Item::Subgroup(ProductSubgroup::from_generators(
                    &ambient, &tuples,
                )?))
            }
            Decl::Hom {
                domain,
                codomain,
                pairs,
                ..
            } => {
                let dom = self.group_view(domain)?;
                let cod = self.group_view(codomain)?;
                let mut images = Vec::new();
                for (g, h) in pairs {
                    images.push((dom.element_by_name(g)?, cod.element_by_name(h)?));
                }
                Ok(Item::Hom(Homomorphism::from_generator_images(
                    &dom, &cod, &images,
                )?))
            }
            Decl::Present { source, maps, .. } => {
                let src = self.group_view(source)?;
                let mut homs = Vec::new();
                for m in maps {
                    homs.push(self.hom_named(m)?.clone());
                }
                Ok(Item::Present(present(&src, homs)?))
            }
            Decl::Goursat {
                product,
                i,
                k,
                j,
                l,
                sigma,
                ..
            } => {
                let ambient = self.product_of(product)?.clone();
                if ambient.factors().len() != 2 {
                    return Err(Error::Input(format!(
                        "goursat data needs a two-factor product, {product} has {}",
                        ambient.factors().len()
                    )));
                }
                let set = |factor: usize, lits: &[String]| -> Result<SubgroupSet> {
                    let table = ambient.factor(factor);
                    let mut ids = Vec::new();
                    for lit in lits {
                        ids.push(table.element_by_name(lit)?);
                    }
                    SubgroupSet::from_elements(table, ids)
                };
                let i_set = set(0, i)?;
                let k_set = set(0, k)?;
                let j_set = set(1, j)?;
                let l_set = set(1, l)?;
                let q_a = QuotientGroup::new(&i_set, &k_set)?;
                let q_b = QuotientGroup::new(&j_set, &l_set)?;
                let mut table: Vec<Option<usize>> = vec![None; q_a.order()];
                for (a_lit, b_lit) in sigma {
                    let ca = q_a.coset_of(ambient.factor(0).element_by_name(a_lit)?)?;
                    let cb = q_b.coset_of(ambient.factor(1).element_by_name(b_lit)?)?;
                    match table[ca] {
                        None => table[ca] = Some(cb),
                        Some(prev) if prev == cb => {}
                        Some(prev) => {
                            return Err(Error::Input(format!(
                                "sigma maps coset {} to both {} and {}",
                                q_a.coset_name(ca),
                                q_b.coset_name(prev),
                                q_b.coset_name(cb)
                            )))
                        }
                    }
                }
                let mut sigma_vec = Vec::with_capacity(table.len());
                for (ca, slot) in table.into_iter().enumerate() {
                    sigma_vec.push(slot.ok_or_else(|| {
                        Error::Input(format!("sigma does not cover coset {}", q_a.coset_name(ca)))
                    })?);
                }
                Ok(Item::Goursat(GoursatData::new(
                    &i_set, &k_set, &j_set, &l_set, sigma_vec,
                )?))
            }
            Decl::Pullback { maps, .. } => {
                let mut homs = Vec::new();
                for m in maps {
                    homs.push(self.hom_named(m)?.clone());
                }
                Ok(Item::Pullback(homs))
            }
        }
    }
}
