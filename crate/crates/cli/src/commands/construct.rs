//! `construct`: build a goursat or pullback declaration, list the result,
//! check the construction round trip, and re-analyze the subgroup.

use subdirect::present::{from_pullback, tersify, to_pullback};
use subdirect::structural::{pullback, GoursatData};
use subdirect::{decomp, Error, ProductSubgroup};

use crate::report::{self, ConstructReport, SubjectEcho};
use crate::resolve::{Env, Item};
use crate::suites::projection_presentation;
use crate::Output;

type Result<T> = std::result::Result<T, Error>;

/// Extracts construction data back out of the built subgroup and rebuilds.
/// Two-factor subgroups round trip through their quotient data; wider
/// pullbacks go through the presentation route, which needs a smashed image.
fn round_trip(u: &ProductSubgroup) -> Result<(Option<bool>, Option<String>)> {
    if u.arity() == 2 {
        let again = GoursatData::extract(u)?.assemble()?;
        return Ok((Some(again.elements() == u.elements()), None));
    }
    if !u.is_subdirect() || !decomp::is_smashed(u) {
        return Ok((
            None,
            Some("skipped: needs two factors or a smashed subdirect result".to_string()),
        ));
    }
    let terse = tersify(&projection_presentation(u)?)?;
    let back = from_pullback(to_pullback(&terse)?.maps())?;
    Ok((Some(back.subgroup().elements() == u.elements()), None))
}

pub fn run(env: &Env, name: Option<&str>, json: bool) -> Result<Output> {
    let item = env.construction(name)?;
    let (kind, u, warnings) = match &item.item {
        Item::Goursat(data) => ("goursat", data.assemble()?, Vec::new()),
        Item::Pullback(maps) => {
            let (u, warnings) = pullback(maps)?;
            ("pullback", u, warnings)
        }
        _ => unreachable!("construction picker"),
    };
    let (elements, elements_note) = ConstructReport::element_listing(&u);
    let (round_trip, round_trip_note) = round_trip(&u)?;
    let body = report::analysis_body(&u, warnings, None, false)?;
    let rep = ConstructReport {
        schema: report::SCHEMA,
        command: "construct".to_string(),
        kind: kind.to_string(),
        subject: SubjectEcho::new(&item.name, &item.text, &u),
        elements,
        elements_note,
        round_trip,
        round_trip_note,
        body,
    };
    let stdout = if json {
        report::to_json(&rep)
    } else {
        report::construct_text(&rep)
    };
    Ok(Output {
        stdout,
        failed: false,
    })
}
