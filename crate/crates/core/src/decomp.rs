//! Direct decompositions of the core.
//!
//! Two block notions live here, both obtained by recursively splitting an
//! index set until no bipartition splits its subgroup:
//!
//! * connected blocks split the kernel-product family: a set splits when
//!   the partial cores of the two halves form an internal direct product;
//! * cohesive blocks split the support family: a set splits when every
//!   supported element factors over the two halves coordinatewise.
//!
//! Alongside the block computations sit the smashedness predicates (the
//! core is the direct product of the single-index supports, outright or in
//! the size-`s` weakened sense) and the projection splitting test.

use crate::product::{IndexSet, ProductSubgroup, Tuple};
use crate::{Error, Result};

/// Which block notion a [`Decomposition`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionKind {
    Connected,
    Cohesive,
}

impl DecompositionKind {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionKind::Connected => "connected",
            DecompositionKind::Cohesive => "cohesive",
        }
    }
}

/// Exploration order for the bipartition search. Block subgroups do not
/// depend on it; exposing it lets the tests check exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitOrder {
    Forward,
    Reversed,
}

/// A direct decomposition of the core into block subgroups, one per index
/// block. Blocks are ordered by their least index.
#[derive(Debug, Clone)]
pub struct Decomposition {
    kind: DecompositionKind,
    blocks: Vec<(IndexSet, ProductSubgroup)>,
    complete: bool,
}

impl Decomposition {
    pub fn kind(&self) -> DecompositionKind {
        self.kind
    }

    pub fn blocks(&self) -> &[(IndexSet, ProductSubgroup)] {
        &self.blocks
    }

    pub fn index_partition(&self) -> Vec<&IndexSet> {
        self.blocks.iter().map(|(ix, _)| ix).collect()
    }

    /// Whether the block subgroups multiply out to the core as an internal
    /// direct product. This is a theorem for both kinds, but the flag is
    /// computed, not assumed.
    pub fn is_complete(&self) -> bool {
        self.complete
    }
}

/// Result of testing one bipartition of a cohesive split: either the
/// supported subgroup factors over the two halves, or some element is a
/// counterexample (its truncation to the first half escapes the subgroup).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitCheck {
    Splits,
    Obstructed { witness: Tuple },
}

impl SplitCheck {
    pub fn splits(&self) -> bool {
        matches!(self, SplitCheck::Splits)
    }
}

/// Tests whether the subgroup supported in `lam` factors as the direct
/// product of the subgroups supported in `m` and in `lam` minus `m`.
///
/// Uses the coordinatewise criterion: the split happens exactly when, for
/// every supported element, resetting the coordinates outside `m` to the
/// identity stays inside the subgroup. On failure the first escaping
/// element (in lex order) is returned as the witness.
pub fn split_check(u: &ProductSubgroup, lam: &IndexSet, m: &IndexSet) -> Result<SplitCheck> {
    if m.is_empty() || m.intersect(lam) != *m || m.len() == lam.len() {
        return Err(Error::input(
            "split half must be a nonempty proper subset of the index set",
        ));
    }
    let supported = u.support_subgroup(lam)?;
    for x in supported.elements() {
        let trunc = u.truncate_tuple(x, m);
        if !u.contains(&trunc) {
            return Ok(SplitCheck::Obstructed { witness: x.clone() });
        }
    }
    #[cfg(debug_assertions)]
    {
        let n = m.complement(u.arity()).intersect(lam);
        let lm = u.support_subgroup(m)?;
        let ln = u.support_subgroup(&n)?;
        debug_assert_eq!(
            lm.setwise_with(&ln),
            supported.elements(),
            "split criterion agrees with the setwise product"
        );
        debug_assert!(lm.intersect(&ln).is_trivial());
    }
    Ok(SplitCheck::Splits)
}

/// Whether the partial core over `lam` admits no bipartition into an
/// internal direct product of smaller partial cores.
///
/// The setwise product of the two partial cores is always the whole partial
/// core, so a bipartition splits exactly when the halves intersect
/// trivially and their orders multiply up.
pub fn is_connected(u: &ProductSubgroup, lam: &IndexSet) -> Result<bool> {
    if lam.is_empty() {
        return Err(Error::input("connectivity needs a nonempty index set"));
    }
    let whole = u.partial_core(lam)?;
    for (m, n) in lam.bipartitions() {
        if connected_splits(u, &whole, &m, &n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn connected_splits(
    u: &ProductSubgroup,
    whole: &ProductSubgroup,
    m: &IndexSet,
    n: &IndexSet,
) -> Result<bool> {
    let im = u.partial_core(m)?;
    let in_ = u.partial_core(n)?;
    if im.order() * in_.order() != whole.order() {
        return Ok(false);
    }
    if !im.intersect(&in_).is_trivial() {
        return Ok(false);
    }
    debug_assert_eq!(
        im.setwise_with(&in_),
        whole.elements(),
        "kernel products over the two halves multiply to the whole"
    );
    Ok(true)
}

/// Whether the subgroup supported in `lam` admits no direct splitting over
/// a bipartition of `lam`.
pub fn is_cohesive(u: &ProductSubgroup, lam: &IndexSet) -> Result<bool> {
    if lam.is_empty() {
        return Err(Error::input("cohesion needs a nonempty index set"));
    }
    for (m, _) in lam.bipartitions() {
        if split_check(u, lam, &m)?.splits() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a set that is cohesive, one obstruction per bipartition: an element
/// of the supported subgroup whose truncation to the first half escapes.
/// Returns `None` when some bipartition splits (the set is not cohesive).
pub fn cohesion_witnesses(
    u: &ProductSubgroup,
    lam: &IndexSet,
) -> Result<Option<Vec<(IndexSet, IndexSet, Tuple)>>> {
    let mut out = Vec::new();
    for (m, n) in lam.bipartitions() {
        match split_check(u, lam, &m)? {
            SplitCheck::Splits => return Ok(None),
            SplitCheck::Obstructed { witness } => out.push((m, n, witness)),
        }
    }
    Ok(Some(out))
}

/// The finest expression of the core as a direct product of partial cores:
/// splits the full index set recursively until no bipartition of any block
/// gives an internal direct product.
pub fn connected_components(u: &ProductSubgroup) -> Decomposition {
    decompose(u, DecompositionKind::Connected, SplitOrder::Forward)
}

/// The decomposition of the core into its cohesive blocks: splits the full
/// index set recursively until no supported subgroup factors.
pub fn cohesive_blocks(u: &ProductSubgroup) -> Decomposition {
    decompose(u, DecompositionKind::Cohesive, SplitOrder::Forward)
}

/// Runs the recursive splitting for either kind, trying bipartitions in the
/// requested order and always descending into the first one that splits.
pub fn decompose(u: &ProductSubgroup, kind: DecompositionKind, order: SplitOrder) -> Decomposition {
    let n = u.arity();
    let mut finished: Vec<IndexSet> = Vec::new();
    let mut work: Vec<IndexSet> = vec![IndexSet::full(n)];
    while let Some(lam) = work.pop() {
        match first_split(u, kind, &lam, order) {
            Some((m, n2)) => {
                work.push(m);
                work.push(n2);
            }
            None => finished.push(lam),
        }
    }
    finished.sort_by_key(|ix| ix.members()[0]);
    let blocks: Vec<(IndexSet, ProductSubgroup)> = finished
        .into_iter()
        .map(|ix| {
            let sub = match kind {
                DecompositionKind::Connected => u.partial_core(&ix),
                DecompositionKind::Cohesive => u.support_subgroup(&ix),
            }
            .expect("block index sets are nonempty");
            (ix, sub)
        })
        .collect();
    let complete = check_complete(u, &blocks);
    debug_assert!(complete, "block product reconstructs the core");
    #[cfg(debug_assertions)]
    for (i, (_, a)) in blocks.iter().enumerate() {
        for (_, b) in &blocks[i + 1..] {
            debug_assert!(a.intersect(b).is_trivial(), "blocks intersect trivially");
        }
    }
    Decomposition {
        kind,
        blocks,
        complete,
    }
}

fn first_split(
    u: &ProductSubgroup,
    kind: DecompositionKind,
    lam: &IndexSet,
    order: SplitOrder,
) -> Option<(IndexSet, IndexSet)> {
    let mut parts = lam.bipartitions();
    if order == SplitOrder::Reversed {
        parts.reverse();
    }
    for (m, n) in parts {
        let splits = match kind {
            DecompositionKind::Connected => {
                let whole = u.partial_core(lam).expect("nonempty");
                connected_splits(u, &whole, &m, &n).expect("valid halves")
            }
            DecompositionKind::Cohesive => split_check(u, lam, &m).expect("valid halves").splits(),
        };
        if splits {
            return Some((m, n));
        }
    }
    None
}

fn check_complete(u: &ProductSubgroup, blocks: &[(IndexSet, ProductSubgroup)]) -> bool {
    let core = u.core();
    let expected: usize = blocks.iter().map(|(_, b)| b.order()).product();
    if expected != core.order() {
        return false;
    }
    let mut acc: Vec<Tuple> = vec![u.ambient().identity()];
    for (_, b) in blocks {
        let mut next = std::collections::BTreeSet::new();
        for x in &acc {
            for y in b.elements() {
                next.insert(u.ambient().mul(x, y));
            }
        }
        acc = next.into_iter().collect();
    }
    acc == core.elements()
}

/// Whether the core is the internal direct product of the single-index
/// supported subgroups.
pub fn is_smashed(u: &ProductSubgroup) -> bool {
    let combo = u
        .support_combination(&IndexSet::full(u.arity()))
        .expect("full index set");
    combo == u.core().elements()
}

/// Whether every size-`s` projection kernel already lies inside the direct
/// product of the supports away from it.
pub fn is_s_weakly_smashed(u: &ProductSubgroup, s: usize) -> Result<bool> {
    let n = u.arity();
    if s == 0 || s >= n {
        return Err(Error::input(format!(
            "weak smashedness size must satisfy 1 <= s <= {}, got {}",
            n.saturating_sub(1),
            s
        )));
    }
    let full = IndexSet::full(n);
    for set in full.subsets_of_size(s) {
        let kernel = u.projection_kernel(&set)?;
        let combo = u.support_combination(&set.complement(n))?;
        let inside = kernel
            .elements()
            .iter()
            .all(|t| combo.binary_search(t).is_ok());
        if !inside {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The size range where the weak smashedness notion is intended to live is
/// `n > s + 2`; outside it the predicate is still well defined, so callers
/// get a warning text instead of an error.
pub fn weak_smash_range_warning(n: usize, s: usize) -> Option<String> {
    if n > s + 2 {
        None
    } else {
        Some(format!(
            "weak smashedness of size {} is degenerate for {} factors (intended for n > s + 2)",
            s, n
        ))
    }
}

/// If the projection of `U` onto the factors in `m`, padded back with
/// identities, lands inside `U`, then `U` is the internal direct product of
/// its subgroups supported in `m` and in the complement; returns that pair,
/// fully verified. Otherwise returns `None`.
pub fn projection_split(
    u: &ProductSubgroup,
    m: &IndexSet,
) -> Result<Option<(ProductSubgroup, ProductSubgroup)>> {
    let n = u.arity();
    if m.is_empty() || !m.is_proper(n) {
        return Err(Error::input(
            "projection splitting needs a nonempty proper index set",
        ));
    }
    let padded: Vec<Tuple> = u
        .elements()
        .iter()
        .map(|t| u.truncate_tuple(t, m))
        .collect();
    if !padded.iter().all(|t| u.contains(t)) {
        return Ok(None);
    }
    let lm = u.support_subgroup(m)?;
    let lhat = u.support_subgroup(&m.complement(n))?;
    let mut projection: Vec<Tuple> = padded;
    projection.sort();
    projection.dedup();
    if projection != lm.elements() {
        return Err(Error::inconsistent(
            "padded projection is contained in the subgroup but is not its supported part",
        ));
    }
    if lm.order() * lhat.order() != u.order() || lm.setwise_with(&lhat) != u.elements() {
        return Err(Error::inconsistent(
            "supported parts fail to reconstruct the subgroup despite the projection landing inside",
        ));
    }
    Ok(Some((lm, lhat)))
}
