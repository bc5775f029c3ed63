//! Run reports and the K-smallness verification table.

use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::ksmall::{build_embedding, table_instances, verify_ksmall, EmbeddingFamily, KSmallReport};

/// Output of one command. `wall_time` is kept out of the serialized form so
/// that reruns with the same seed are byte-identical.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Value,
    pub outputs: Value,
    pub exact: bool,
    pub seed: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Restriction of the verification table to one family and/or size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableFilter {
    pub family: Option<EmbeddingFamily>,
    pub size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section7Table {
    pub rows: Vec<KSmallReport>,
    pub all_positive: bool,
}

/// Instances selected by `filter`. A family and size given together name a
/// single instance, which need not be one of the table rows.
pub fn table_selection(filter: TableFilter) -> Vec<(EmbeddingFamily, usize)> {
    match filter {
        TableFilter {
            family: Some(f),
            size: Some(k),
        } => vec![(f, k)],
        _ => table_instances()
            .into_iter()
            .filter(|(f, k)| filter.family.is_none_or(|g| g == *f) && filter.size.is_none_or(|s| s == *k))
            .collect(),
    }
}

/// Certify every selected instance; rows keep the table order.
pub fn reproduce_section7(filter: TableFilter) -> Result<Section7Table> {
    let rows = table_selection(filter)
        .into_iter()
        .map(|(f, k)| {
            let e = build_embedding(f, k)?;
            Ok(KSmallReport::new(&e, &verify_ksmall(&e)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let all_positive = rows.iter().all(|r| r.verdict == "positive");
    Ok(Section7Table { rows, all_positive })
}

impl Section7Table {
    /// Fixed-width text rendering.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{:<28} {:>12} {:>11} {:>14} {:<16} {:>4}  {}\n",
            "instance", "kappa2_lower", "kappa_lower", "kappa2_lattice", "witness", "lps", "verdict"
        );
        for r in &self.rows {
            out += &format!(
                "{:<28} {:>12} {:>11} {:>14} {:<16} {:>4}  {}\n",
                r.label,
                r.kappa2_lower,
                r.kappa_lower,
                r.kappa2_lattice,
                format!("{:?}", r.witness),
                r.lp_count,
                r.verdict
            );
        }
        out
    }
}
