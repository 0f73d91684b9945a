//! Text, JSON and CSV rendering of verification reports and triangles.
//!
//! Unbounded integers are written as decimal strings in JSON. Output depends
//! only on the reports, never on how they were computed.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::comb::Triangle;
use crate::verify::VerificationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format {other:?} (expected text, json or csv)"
            )),
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    k: i64,
    n: i64,
    reference: String,
    routes: BTreeMap<&'a str, String>,
    all_match: bool,
}

/// Renders reports; `route_names` fixes the CSV columns and is ignored by
/// the other formats.
pub fn emit_report(
    reports: &[VerificationReport],
    route_names: &[String],
    format: Format,
) -> String {
    match format {
        Format::Json => emit_json(reports),
        Format::Csv => emit_csv(reports, route_names),
        Format::Text => emit_text(reports),
    }
}

fn emit_json(reports: &[VerificationReport]) -> String {
    let rows: Vec<_> = reports
        .iter()
        .map(|r| JsonReport {
            k: r.instance.k(),
            n: r.instance.n(),
            reference: r.reference.to_string(),
            routes: r
                .route_values
                .iter()
                .map(|(name, v)| (name.as_str(), v.to_string()))
                .collect(),
            all_match: r.all_match,
        })
        .collect();
    let mut out = serde_json::to_string(&rows).expect("report rows always serialize");
    out.push('\n');
    out
}

fn emit_csv(reports: &[VerificationReport], route_names: &[String]) -> String {
    let mut out = String::from("k,n,reference");
    for name in route_names {
        out.push(',');
        out.push_str(name);
    }
    out.push_str(",all_match\n");
    for r in reports {
        let _ = write!(out, "{},{},{}", r.instance.k(), r.instance.n(), r.reference);
        for name in route_names {
            out.push(',');
            match r.route_values.get(name).and_then(|v| v.value()) {
                Some(v) => out.push_str(&v.to_string()),
                None => out.push_str("error"),
            }
        }
        let _ = writeln!(out, ",{}", r.all_match);
    }
    out
}

fn emit_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = write!(
            out,
            "k={} n={} reference={} lhs={}",
            r.instance.k(),
            r.instance.n(),
            r.reference,
            r.lhs_direct
        );
        for (name, v) in &r.route_values {
            let _ = write!(out, " {name}={v}");
        }
        out.push_str(if r.all_match { " ok\n" } else { " MISMATCH\n" });
    }
    let failed = reports.iter().filter(|r| !r.all_match).count();
    let _ = writeln!(out, "{} instances, {} mismatches", reports.len(), failed);
    out
}

/// One row per line; text separates entries by spaces, CSV emits `n,k,value`.
pub fn emit_triangle(t: &Triangle, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv | Format::Json => {
            out.push_str("n,k,value\n");
            for (n, row) in t.rows().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    let _ = writeln!(out, "{n},{k},{v}");
                }
            }
        }
        Format::Text => {
            for row in t.rows() {
                let line: Vec<_> = row.iter().map(ToString::to_string).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
        }
    }
    out
}
