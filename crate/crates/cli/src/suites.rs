//! Property suites for `verify`: each suite checks one invariant over a
//! collection of subgroups or presentations and reports failures with
//! witnesses.
//!
//! Subgroup suites:
//!
//! * `core-cosets` - the touch partition equals the partition of the
//!   subgroup into cosets of its core.
//! * `core-order-product` - the ordered setwise product of the projection
//!   kernels equals the core for every ordering of the indices.
//! * `split-roundtrip` - for every proper index set, the structural
//!   isomorphism verifies and extracted split data reassembles the subgroup.
//! * `family-lattice` - projection kernels intersect along unions and their
//!   products stay inside the kernel at the intersection.
//! * `block-intersect` - cohesive blocks intersect trivially and multiply
//!   back to the core.
//! * `smash-weak` - smashed coincides with 1-weakly smashed.
//! * `smashed-system` - the per-factor quotient system of a smashed
//!   subdirect subgroup verifies.
//! * `block-system` - the per-block quotient system verifies.
//!
//! Presentation suites:
//!
//! * `kernel-identities` - the kernel lattice identities relating projection
//!   kernels, supports and the core to kernels in the source group.
//! * `kernel-split` - support splitting matches kernel splitting for every
//!   partition of every index set (terse presentations).
//! * `kernel-smash` - the kernel criterion for smashedness matches the
//!   direct check (terse presentations).
//! * `present-roundtrip` - tersifying preserves the image; pullback form
//!   round trips on smashed images.
//!
//! Suites skip subjects whose preconditions do not hold (non-terse
//! presentations, subgroups too large to realise) and count them
//! separately; a skip is never a failure.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use subdirect::present::{
    from_pullback, kernel_identity_report, present, smashed_kernel_criterion, split_criterion,
    tersify, to_pullback, HomPresentation,
};
use subdirect::structural::{block_system, smashed_system, split_iso, SplitData};
use subdirect::{decomp, Error, Homomorphism, IndexSet, ProductSubgroup, Tuple};

type Result<T> = std::result::Result<T, Error>;

pub const SUBGROUP_SUITES: [&str; 8] = [
    "core-cosets",
    "core-order-product",
    "split-roundtrip",
    "family-lattice",
    "block-intersect",
    "smash-weak",
    "smashed-system",
    "block-system",
];

pub const PRESENTATION_SUITES: [&str; 4] = [
    "kernel-identities",
    "kernel-split",
    "kernel-smash",
    "present-roundtrip",
];

/// Witnesses kept per suite; failures beyond this are only counted.
const WITNESS_CAP: usize = 5;

/// Expands a `--suite` selection: names are validated, `all` expands to
/// every suite, duplicates collapse, and the result follows the canonical
/// suite order regardless of how the selection was written. An empty
/// selection means every suite.
pub fn expand_selection(selection: &[String]) -> Result<Vec<&'static str>> {
    let canonical: Vec<&'static str> = SUBGROUP_SUITES
        .into_iter()
        .chain(PRESENTATION_SUITES)
        .collect();
    let mut wanted = vec![selection.is_empty(); canonical.len()];
    for name in selection {
        if name == "all" {
            wanted.iter_mut().for_each(|w| *w = true);
            continue;
        }
        match canonical.iter().position(|c| c == name) {
            Some(i) => wanted[i] = true,
            None => {
                return Err(Error::Input(format!(
                    "unknown suite {name} (available: all, {})",
                    canonical.join(", ")
                )))
            }
        }
    }
    Ok(canonical
        .into_iter()
        .zip(wanted)
        .filter(|(_, w)| *w)
        .map(|(name, _)| name)
        .collect())
}

pub struct SuiteOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub skipped: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
}

enum Verdict {
    Pass,
    Skip,
    Fail(String),
}

impl Verdict {
    fn require(ok: bool, witness: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(witness())
        }
    }
}

/// Skips on resource limits, fails on anything else unexpected.
fn verdict_of(result: Result<Verdict>) -> Verdict {
    match result {
        Ok(v) => v,
        Err(Error::Resource { .. }) => Verdict::Skip,
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

pub fn run_suite(
    name: &'static str,
    subgroups: &[(String, ProductSubgroup)],
    presentations: &[(String, HomPresentation)],
    seed: u64,
) -> SuiteOutcome {
    let on_subgroups =
        |check: fn(&ProductSubgroup, u64) -> Result<Verdict>| -> Vec<(String, Verdict)> {
            subgroups
                .par_iter()
                .map(|(label, u)| {
                    (
                        format!("{label} (order {})", u.order()),
                        verdict_of(check(u, seed)),
                    )
                })
                .collect()
        };
    let on_presentations =
        |check: fn(&HomPresentation) -> Result<Verdict>| -> Vec<(String, Verdict)> {
            presentations
                .par_iter()
                .map(|(label, p)| {
                    (
                        format!("{label} (image order {})", p.subgroup().order()),
                        verdict_of(check(p)),
                    )
                })
                .collect()
        };

    let verdicts = match name {
        "core-cosets" => on_subgroups(|u, _| core_cosets(u)),
        "core-order-product" => on_subgroups(core_order_product),
        "split-roundtrip" => on_subgroups(|u, _| split_roundtrip(u)),
        "family-lattice" => on_subgroups(|u, _| family_lattice(u)),
        "block-intersect" => on_subgroups(|u, _| block_intersect(u)),
        "smash-weak" => on_subgroups(|u, _| smash_weak(u)),
        "smashed-system" => on_subgroups(|u, _| smashed_system_suite(u)),
        "block-system" => on_subgroups(|u, _| block_system_suite(u)),
        "kernel-identities" => on_presentations(kernel_identities),
        "kernel-split" => on_presentations(kernel_split),
        "kernel-smash" => on_presentations(kernel_smash),
        "present-roundtrip" => on_presentations(present_roundtrip),
        other => unreachable!("suite {other} passed selection"),
    };

    let mut outcome = SuiteOutcome {
        name,
        checked: 0,
        skipped: 0,
        failed: 0,
        witnesses: Vec::new(),
    };
    for (label, verdict) in verdicts {
        match verdict {
            Verdict::Pass => outcome.checked += 1,
            Verdict::Skip => outcome.skipped += 1,
            Verdict::Fail(msg) => {
                outcome.checked += 1;
                outcome.failed += 1;
                if outcome.witnesses.len() < WITNESS_CAP {
                    outcome.witnesses.push(format!("{label}: {msg}"));
                }
            }
        }
    }
    outcome
}

/// The presentation of a subgroup by its own coordinate projections, used
/// to give the presentation suites subjects in enumeration mode.
pub fn projection_presentation(u: &ProductSubgroup) -> Result<HomPresentation> {
    let realized = u.realize("U")?;
    let n = u.arity();
    let mut maps = Vec::with_capacity(n);
    for i in 0..n {
        let images: Vec<u16> = realized.tuples.iter().map(|t| t[i]).collect();
        maps.push(Homomorphism::new(
            &realized.table,
            u.ambient().factor(i),
            images,
        )?);
    }
    present(&realized.table, maps)
}

/// Class labels normalised by first occurrence, so two partitions compare
/// as plain vectors.
fn normalise(labels: &[usize]) -> Vec<usize> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = seen.len();
            *seen.entry(l).or_insert(next)
        })
        .collect()
}

fn core_cosets(u: &ProductSubgroup) -> Result<Verdict> {
    let elements = u.elements();
    let ambient = u.ambient();
    let core = u.core();

    let touch_labels: Vec<usize> = {
        let classes = u.touch_partition().classes(elements);
        let mut of: BTreeMap<&Tuple, usize> = BTreeMap::new();
        for (class_id, class) in classes.iter().enumerate() {
            for &t in class {
                of.insert(t, class_id);
            }
        }
        elements.iter().map(|t| of[t]).collect()
    };

    let coset_labels: Vec<usize> = {
        let mut min_of: BTreeMap<Tuple, usize> = BTreeMap::new();
        let mins: Vec<Tuple> = elements
            .iter()
            .map(|e| {
                core.elements()
                    .iter()
                    .map(|i| ambient.mul(e, i))
                    .min()
                    .expect("the core contains the identity")
            })
            .collect();
        mins.iter()
            .map(|m| {
                let next = min_of.len();
                *min_of.entry(m.clone()).or_insert(next)
            })
            .collect()
    };

    Ok(Verdict::require(
        normalise(&touch_labels) == normalise(&coset_labels),
        || "touch partition differs from the core coset partition".to_string(),
    ))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

fn core_order_product(u: &ProductSubgroup, seed: u64) -> Result<Verdict> {
    let n = u.arity();
    let core = u.core().elements().to_vec();
    let orders: Vec<Vec<usize>> = if n <= 3 {
        permutations(n)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..20)
            .map(|_| {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                order
            })
            .collect()
    };
    for order in orders {
        if u.core_product_in_order(&order)? != core {
            return Ok(Verdict::Fail(format!(
                "kernel product in order {order:?} differs from the core"
            )));
        }
    }
    Ok(Verdict::Pass)
}

fn split_roundtrip(u: &ProductSubgroup) -> Result<Verdict> {
    let n = u.arity();
    let mut attempted = 0usize;
    for lam in IndexSet::full(n).subsets_nonempty() {
        if !lam.is_proper(n) {
            continue;
        }
        let iso = match split_iso(u, &lam) {
            Ok(iso) => iso,
            Err(Error::Resource { .. }) => continue,
            Err(e) => return Err(e),
        };
        attempted += 1;
        if !iso.verify().is_iso() {
            return Ok(Verdict::Fail(format!(
                "map at {lam} fails the isomorphism check"
            )));
        }
        let data = SplitData::extract(u, &lam)?;
        if data.assemble()?.elements() != u.elements() {
            return Ok(Verdict::Fail(format!(
                "reassembly at {lam} changes the subgroup"
            )));
        }
    }
    if attempted == 0 {
        return Ok(Verdict::Skip);
    }
    Ok(Verdict::Pass)
}

fn family_lattice(u: &ProductSubgroup) -> Result<Verdict> {
    let n = u.arity();
    let sets = IndexSet::full(n).subsets_nonempty();
    let kernels: Vec<ProductSubgroup> = sets
        .iter()
        .map(|s| u.projection_kernel(s))
        .collect::<Result<Vec<_>>>()?;
    for (m, em) in sets.iter().zip(&kernels) {
        for (nn, en) in sets.iter().zip(&kernels) {
            let union = m.union(nn);
            let wanted = &kernels[sets
                .iter()
                .position(|s| *s == union)
                .expect("closed under union")];
            if em.intersect(en).elements() != wanted.elements() {
                return Ok(Verdict::Fail(format!(
                    "kernel({m}) meet kernel({nn}) is not kernel({union})"
                )));
            }
            let meet = m.intersect(nn);
            if !meet.is_empty() {
                let product = em.setwise_with(en);
                let bound = &kernels[sets
                    .iter()
                    .position(|s| *s == meet)
                    .expect("closed under meet")];
                if !product
                    .iter()
                    .all(|t| bound.elements().binary_search(t).is_ok())
                {
                    return Ok(Verdict::Fail(format!(
                        "kernel({m}) * kernel({nn}) leaves kernel({meet})"
                    )));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

fn block_intersect(u: &ProductSubgroup) -> Result<Verdict> {
    let decomposition = decomp::cohesive_blocks(u);
    let blocks = decomposition.blocks();
    for (i, (ix_i, sub_i)) in blocks.iter().enumerate() {
        for (ix_j, sub_j) in blocks.iter().skip(i + 1) {
            if sub_i.intersect(sub_j).order() != 1 {
                return Ok(Verdict::Fail(format!(
                    "blocks {ix_i} and {ix_j} share a nontrivial element"
                )));
            }
        }
    }
    let mut product: Option<ProductSubgroup> = None;
    for (_, sub) in blocks {
        product = Some(match product {
            None => sub.clone(),
            Some(acc) => ProductSubgroup::new(u.ambient(), acc.setwise_with(sub))?,
        });
    }
    let product = product.expect("a decomposition has at least one block");
    Ok(Verdict::require(
        product.elements() == u.core().elements(),
        || "cohesive blocks do not multiply back to the core".to_string(),
    ))
}

fn smash_weak(u: &ProductSubgroup) -> Result<Verdict> {
    let direct = decomp::is_smashed(u);
    let weak = decomp::is_s_weakly_smashed(u, 1)?;
    Ok(Verdict::require(direct == weak, || {
        format!("smashed = {direct} but 1-weakly smashed = {weak}")
    }))
}

fn smashed_system_suite(u: &ProductSubgroup) -> Result<Verdict> {
    if !u.is_subdirect() || !decomp::is_smashed(u) {
        return Ok(Verdict::Skip);
    }
    let sys = smashed_system(u)?;
    if !sys.verify() {
        return Ok(Verdict::Fail("system fails verification".to_string()));
    }
    let expected = u.order() / u.core().order();
    Ok(Verdict::require(
        sys.reference().order() == expected,
        || {
            format!(
                "reference quotient has order {}, expected {expected}",
                sys.reference().order()
            )
        },
    ))
}

fn block_system_suite(u: &ProductSubgroup) -> Result<Verdict> {
    let sys = block_system(u)?;
    Ok(Verdict::require(sys.verify(), || {
        "system fails verification".to_string()
    }))
}

fn kernel_identities(p: &HomPresentation) -> Result<Verdict> {
    let report = kernel_identity_report(p)?;
    match report.lines().iter().find(|(_, holds)| !holds) {
        Some((line, _)) => Ok(Verdict::Fail(format!("identity fails: {line}"))),
        None => Ok(Verdict::Pass),
    }
}

fn kernel_split(p: &HomPresentation) -> Result<Verdict> {
    if !p.is_terse() {
        return Ok(Verdict::Skip);
    }
    let n = p.arity();
    for lam in IndexSet::full(n).subsets_nonempty() {
        if lam.len() < 2 {
            continue;
        }
        for (m, nn) in lam.bipartitions() {
            let criterion = split_criterion(p, &lam, &m, &nn)?;
            if !criterion.agree() {
                return Ok(Verdict::Fail(format!(
                    "support and kernel splitting disagree at {lam} = {m} | {nn}"
                )));
            }
        }
    }
    Ok(Verdict::Pass)
}

fn kernel_smash(p: &HomPresentation) -> Result<Verdict> {
    if !p.is_terse() {
        return Ok(Verdict::Skip);
    }
    let by_kernels = smashed_kernel_criterion(p)?;
    let direct = decomp::is_smashed(p.subgroup());
    Ok(Verdict::require(by_kernels == direct, || {
        format!("kernel criterion says {by_kernels}, direct check says {direct}")
    }))
}

fn present_roundtrip(p: &HomPresentation) -> Result<Verdict> {
    let terse = tersify(p)?;
    if !terse.is_terse() {
        return Ok(Verdict::Fail(
            "tersified presentation is not terse".to_string(),
        ));
    }
    if terse.subgroup().elements() != p.subgroup().elements() {
        return Ok(Verdict::Fail("tersifying changed the image".to_string()));
    }
    if !decomp::is_smashed(terse.subgroup()) {
        return Ok(Verdict::Pass);
    }
    let data = to_pullback(&terse)?;
    let back = from_pullback(data.maps())?;
    Ok(Verdict::require(
        back.subgroup().elements() == p.subgroup().elements(),
        || "pullback form does not reproduce the image".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use subdirect::{GroupTable, ProductGroup};

    fn diagonal_s3() -> ProductSubgroup {
        let s3 = GroupTable::symmetric(3).unwrap();
        let p = ProductGroup::new(vec![s3.clone(), s3]).unwrap();
        let gens: Vec<Tuple> = vec![vec![1, 1], vec![3, 3]];
        ProductSubgroup::from_generators(&p, &gens).unwrap()
    }

    fn even_weight_cube() -> ProductSubgroup {
        let z2 = GroupTable::cyclic(2).unwrap();
        let p = ProductGroup::new(vec![z2.clone(), z2.clone(), z2]).unwrap();
        ProductSubgroup::from_generators(&p, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap()
    }

    fn subjects() -> Vec<(String, ProductSubgroup)> {
        vec![
            ("diagonal".to_string(), diagonal_s3()),
            ("even-weight".to_string(), even_weight_cube()),
        ]
    }

    fn presentations() -> Vec<(String, HomPresentation)> {
        subjects()
            .into_iter()
            .map(|(label, u)| (label, projection_presentation(&u).unwrap()))
            .collect()
    }

    #[test]
    fn every_suite_passes_on_the_sample_subjects() {
        let subs = subjects();
        let pres = presentations();
        for name in SUBGROUP_SUITES.into_iter().chain(PRESENTATION_SUITES) {
            let outcome = run_suite(name, &subs, &pres, 7);
            assert_eq!(outcome.failed, 0, "{name}: {:?}", outcome.witnesses);
            assert!(
                outcome.checked + outcome.skipped > 0,
                "{name} examined nothing"
            );
        }
    }

    #[test]
    fn selection_expands_and_validates() {
        let all = expand_selection(&["all".to_string()]).unwrap();
        assert_eq!(all.len(), 12);

        let picked =
            expand_selection(&["kernel-smash".to_string(), "core-cosets".to_string()]).unwrap();
        assert_eq!(
            picked,
            vec!["core-cosets", "kernel-smash"],
            "canonical order"
        );

        assert_eq!(expand_selection(&[]).unwrap().len(), 12, "empty means all");
        assert!(expand_selection(&["prop4".to_string()]).is_err());
    }

    #[test]
    fn permutations_cover_small_arities() {
        assert_eq!(permutations(3).len(), 6);
        let mut all = permutations(3);
        all.dedup();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn projection_presentation_is_terse_and_faithful() {
        let u = even_weight_cube();
        let p = projection_presentation(&u).unwrap();
        assert!(p.is_terse());
        assert_eq!(p.subgroup().order(), u.order());
    }
}
