//! `enumerate`: list every subgroup of a product expression with a one-line
//! structural summary each.

use rayon::prelude::*;
use subdirect::{decomp, Error, ProductSubgroup};

use crate::report::{self, EnumerateReport, SubgroupRow};
use crate::{expr, Output};

type Result<T> = std::result::Result<T, Error>;

pub fn run(text: &str, bound: usize, json: bool) -> Result<Output> {
    let product = expr::parse_product(text)?;
    let (table, tuples) = product.as_table()?;
    let subs = subdirect::enumerate_subgroups(&table, bound, None)?;

    let subjects = subs
        .iter()
        .map(|sub| {
            let members: Vec<_> = sub
                .elements()
                .iter()
                .map(|&id| tuples[id as usize].clone())
                .collect();
            ProductSubgroup::new(&product, members)
        })
        .collect::<Result<Vec<_>>>()?;

    let rows: Vec<SubgroupRow> = subjects
        .par_iter()
        .enumerate()
        .map(|(index, u)| SubgroupRow {
            index,
            order: u.order(),
            subdirect: u.is_subdirect(),
            core_order: u.core().order(),
            touch_classes: u.touch_partition().class_count(),
            cohesive_blocks: decomp::cohesive_blocks(u)
                .index_partition()
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            smashed: decomp::is_smashed(u),
        })
        .collect();

    let rep = EnumerateReport {
        schema: report::SCHEMA,
        command: "enumerate".to_string(),
        product: text.trim().to_string(),
        product_order: product.order(),
        arity: product.factors().len(),
        bound,
        count: rows.len(),
        subgroups: rows,
    };
    let stdout = if json {
        report::to_json(&rep)
    } else {
        report::enumerate_text(&rep)
    };
    Ok(Output {
        stdout,
        failed: false,
    })
}
