//! `analyze`: the full structural report on one subgroup of a product.

use subdirect::{Error, IndexSet};

use crate::report::{self, AnalyzeReport, SubjectEcho};
use crate::resolve::Env;
use crate::Output;

type Result<T> = std::result::Result<T, Error>;

/// Accepts `1,2` or `{1,2}`, one-based.
pub fn parse_index_set(text: &str, n: usize) -> Result<IndexSet> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(text);
    IndexSet::parse(inner, n)
}

pub fn run(
    env: &Env,
    name: Option<&str>,
    split: Option<&str>,
    system: bool,
    json: bool,
) -> Result<Output> {
    let (item, u, warnings) = env.subject(name)?;
    let split_set = split
        .map(|text| parse_index_set(text, u.arity()))
        .transpose()?;
    let body = report::analysis_body(&u, warnings, split_set.as_ref(), system)?;
    let rep = AnalyzeReport {
        schema: report::SCHEMA,
        command: "analyze".to_string(),
        subject: SubjectEcho::new(&item.name, &item.text, &u),
        body,
    };
    let stdout = if json {
        report::to_json(&rep)
    } else {
        report::analyze_text(&rep)
    };
    Ok(Output {
        stdout,
        failed: false,
    })
}
