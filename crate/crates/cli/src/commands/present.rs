//! `present`: report on a presentation by homomorphisms: the maps and
//! their kernels, terseness, the kernel-lattice identities, smashedness by
//! both routes, and the pullback round trip when it applies.

use subdirect::present::{
    from_pullback, kernel_identity_report, smashed_kernel_criterion, tersify, to_pullback,
};
use subdirect::{decomp, Error};

use crate::doc::{Decl, Document};
use crate::report::{
    self, DecompReport, FactorEcho, HomRow, IdentityRow, ImageEcho, PresentReport,
};
use crate::resolve::Env;
use crate::Output;

type Result<T> = std::result::Result<T, Error>;

pub fn run(doc: &Document, env: &Env, name: Option<&str>, json: bool) -> Result<Output> {
    let (item, p) = env.presentation(name)?;
    let map_names: Vec<String> = match doc.decl(&item.name) {
        Some(Decl::Present { maps, .. }) => maps.clone(),
        _ => (1..=p.arity()).map(|i| format!("f{i}")).collect(),
    };

    let maps = p
        .maps()
        .iter()
        .zip(&map_names)
        .map(|(f, name)| HomRow {
            name: name.clone(),
            domain: f.domain().label().to_string(),
            codomain: f.codomain().label().to_string(),
            kernel_order: f.kernel().elements().len(),
        })
        .collect();

    let identity_report = kernel_identity_report(p)?;
    let identities: Vec<IdentityRow> = identity_report
        .lines()
        .iter()
        .map(|(line, holds)| IdentityRow {
            identity: line.clone(),
            holds: *holds,
        })
        .collect();

    let terse = p.is_terse();
    let smashed = decomp::is_smashed(p.subgroup());
    let (kernel_smashed, kernel_note) = if terse {
        (Some(smashed_kernel_criterion(p)?), None)
    } else {
        (
            None,
            Some("skipped: needs a terse presentation".to_string()),
        )
    };

    let (pullback_round_trip, pullback_note) = if smashed {
        let terse_p = if terse { p.clone() } else { tersify(p)? };
        let back = from_pullback(to_pullback(&terse_p)?.maps())?;
        (
            Some(back.subgroup().elements() == p.subgroup().elements()),
            None,
        )
    } else {
        (None, Some("skipped: the image is not smashed".to_string()))
    };

    let rep = PresentReport {
        schema: report::SCHEMA,
        command: "present".to_string(),
        name: item.name.clone(),
        declaration: item.text.clone(),
        source: FactorEcho {
            label: p.source().label().to_string(),
            order: p.source().order(),
        },
        maps,
        notes: p.notes().to_vec(),
        terse,
        joint_kernel_order: p.lattice().joint_kernel().elements().len(),
        image: ImageEcho::new(p.subgroup()),
        identities_hold: identities.iter().all(|r| r.holds),
        identities,
        smashed,
        kernel_smashed,
        kernel_note,
        cohesive: DecompReport::of(&decomp::cohesive_blocks(p.subgroup())),
        pullback_round_trip,
        pullback_note,
    };
    let stdout = if json {
        report::to_json(&rep)
    } else {
        report::present_text(&rep)
    };
    Ok(Output {
        stdout,
        failed: false,
    })
}
