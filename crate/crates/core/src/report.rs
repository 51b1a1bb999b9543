//! Run records and JSON/CSV output. Vertex ids in output are 1-based.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::BoundReport;
use crate::error::{Error, Result};
use crate::graph::KSection;

/// One benchmark or CLI run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub max_degree: usize,
    pub diam: Option<usize>,
    /// Exact rationals are written as `p/q`.
    pub rel_diam: Option<String>,
    pub r: Option<String>,
    pub t: Option<usize>,
    pub width: usize,
    pub bound_tree: Option<f64>,
    pub bound_tree_improved: Option<f64>,
    pub bound_td: Option<f64>,
    pub within_bounds: bool,
    pub oracle_width: Option<usize>,
    pub baseline_width: Option<usize>,
    pub wall_ms: f64,
}

const HEADER: [&str; 17] = [
    "instance",
    "family",
    "n",
    "k",
    "max_degree",
    "diam",
    "rel_diam",
    "r",
    "t",
    "width",
    "bound_tree",
    "bound_tree_improved",
    "bound_td",
    "within_bounds",
    "oracle_width",
    "baseline_width",
    "wall_ms",
];

impl RunRecord {
    pub fn from_report(instance: &str, family: &str, report: &BoundReport, wall_ms: f64) -> Self {
        RunRecord {
            instance: instance.to_string(),
            family: family.to_string(),
            n: report.n,
            k: report.k,
            max_degree: report.max_degree,
            diam: report.diam,
            rel_diam: None,
            r: report.r.clone(),
            t: report.t,
            width: report.achieved,
            bound_tree: report.bound_tree,
            bound_tree_improved: report.bound_tree_improved,
            bound_td: report.bound_td,
            within_bounds: report.within_bounds,
            oracle_width: None,
            baseline_width: None,
            wall_ms,
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

/// Writes the header and one row per record. The header is written even when
/// there are no records.
pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER).map_err(csv_err)?;
    for r in records {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Internal(format!("csv: {e}")))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().collect::<std::result::Result<_, _>>().map_err(csv_err)
}

/// Pretty JSON with object keys sorted.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&value).expect("json")
}

/// `{ parts, width, bounds, trace }` with 1-based vertex ids.
pub fn ksection_json(section: &KSection, report: &BoundReport, trace: &[String]) -> Value {
    let parts: Vec<Vec<usize>> = section.parts.iter().map(|p| p.iter().map(|&v| v + 1).collect()).collect();
    json!({
        "parts": parts,
        "width": section.width,
        "bounds": serde_json::to_value(report).expect("serializable"),
        "trace": trace,
    })
}
