//! `verify`: run property suites over every subgroup of a document or of an
//! enumerated product expression.
//!
//! Subjects come in two kinds. Subgroup subjects are the declared subgroups
//! plus constructed goursat/pullback results and presentation images; in
//! enumeration mode, every subgroup of the named product. Presentation
//! subjects are the declared presentations plus, for each subgroup subject
//! small enough to realise, its presentation by coordinate projections.
//! Suites run independently per subject, so distribution across worker
//! threads cannot change the report.

use subdirect::present::HomPresentation;
use subdirect::structural::pullback;
use subdirect::{Error, ProductSubgroup};

use crate::report::{self, SuiteRow, VerifyReport};
use crate::resolve::{Env, Item};
use crate::suites::{self, projection_presentation};
use crate::{expr, Output};

type Result<T> = std::result::Result<T, Error>;

/// Fixed seed for the suites that sample index orderings.
const SEED: u64 = 7;

struct Scope {
    label: String,
    bound: Option<usize>,
    subjects: Vec<(String, ProductSubgroup)>,
    presentations: Vec<(String, HomPresentation)>,
    notes: Vec<String>,
}

fn file_scope(env: &Env, label: String) -> Result<Scope> {
    let mut scope = Scope {
        label,
        bound: None,
        subjects: Vec::new(),
        presentations: Vec::new(),
        notes: Vec::new(),
    };
    for item in env.items() {
        match &item.item {
            Item::Subgroup(u) => scope.subjects.push((item.name.clone(), u.clone())),
            Item::Present(p) => {
                scope
                    .subjects
                    .push((item.name.clone(), p.subgroup().clone()));
                scope.presentations.push((item.name.clone(), p.clone()));
            }
            Item::Goursat(data) => scope.subjects.push((item.name.clone(), data.assemble()?)),
            Item::Pullback(maps) => {
                let (u, warnings) = pullback(maps)?;
                scope
                    .notes
                    .extend(warnings.into_iter().map(|w| format!("{}: {w}", item.name)));
                scope.subjects.push((item.name.clone(), u));
            }
            Item::Group(_) | Item::Product(_) | Item::Hom(_) => {}
        }
    }
    if scope.subjects.is_empty() {
        return Err(Error::Input(
            "the document declares nothing to verify".to_string(),
        ));
    }
    Ok(scope)
}

fn enumerate_scope(text: &str, bound: usize) -> Result<Scope> {
    let product = expr::parse_product(text)?;
    let (table, tuples) = product.as_table()?;
    let subs = subdirect::enumerate_subgroups(&table, bound, None)?;
    let mut subjects = Vec::with_capacity(subs.len());
    for (idx, sub) in subs.iter().enumerate() {
        let members: Vec<_> = sub
            .elements()
            .iter()
            .map(|&id| tuples[id as usize].clone())
            .collect();
        subjects.push((format!("#{idx}"), ProductSubgroup::new(&product, members)?));
    }
    Ok(Scope {
        label: format!("enumerate {text}"),
        bound: Some(bound),
        subjects,
        presentations: Vec::new(),
        notes: Vec::new(),
    })
}

pub fn run(
    env: Option<&Env>,
    file_label: Option<String>,
    enumerate: Option<&str>,
    selection: &[String],
    bound: usize,
    json: bool,
) -> Result<Output> {
    let selected = suites::expand_selection(selection)?;
    let mut scope = match (env, enumerate) {
        (Some(env), None) => file_scope(env, file_label.unwrap_or_else(|| "file".to_string()))?,
        (None, Some(text)) => enumerate_scope(text, bound)?,
        _ => {
            return Err(Error::Input(
                "verify needs exactly one of an input file or --enumerate EXPR".to_string(),
            ))
        }
    };

    // Derived presentation subjects; subgroups too large to realise are
    // noted and left out rather than failed.
    for (label, u) in &scope.subjects {
        match projection_presentation(u) {
            Ok(p) => scope.presentations.push((format!("{label}:projections"), p)),
            Err(Error::Resource { what, order, bound: limit }) => scope.notes.push(format!(
                "{label}: projection presentation skipped ({what} of order {order} exceeds the bound of {limit})"
            )),
            Err(e) => return Err(e),
        }
    }

    let mut rows = Vec::with_capacity(selected.len());
    let mut ok = true;
    for name in selected {
        let outcome = suites::run_suite(name, &scope.subjects, &scope.presentations, SEED);
        ok &= outcome.failed == 0;
        rows.push(SuiteRow {
            suite: outcome.name.to_string(),
            checked: outcome.checked,
            skipped: outcome.skipped,
            failed: outcome.failed,
            witnesses: outcome.witnesses,
        });
    }

    let rep = VerifyReport {
        schema: report::SCHEMA,
        command: "verify".to_string(),
        scope: scope.label,
        bound: scope.bound,
        subjects: scope.subjects.len(),
        presentations: scope.presentations.len(),
        notes: scope.notes,
        suites: rows,
        ok,
    };
    let stdout = if json {
        report::to_json(&rep)
    } else {
        report::verify_text(&rep)
    };
    Ok(Output {
        stdout,
        failed: !ok,
    })
}
