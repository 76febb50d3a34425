//! CSV and JSON renderings of verification reports.
//!
//! CSV has one line per ladder index `k` of each evaluated point, followed by
//! a `k = all` line carrying the point-level checks. Skipped points get a
//! single line whose `pass` column is `skipped` and whose note holds the
//! reason code. Floats are written with 17 significant digits.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{fmt17, Precision};
use crate::verify::{summarize, Outcome, PointReport, SweepSummary, VerifyOptions};

pub const CSV_HEADER: [&str; 12] = [
    "theorem",
    "nu",
    "alpha",
    "mu",
    "k",
    "lower_generic",
    "lower_paper",
    "upper_paper",
    "upper_generic",
    "zero",
    "pass",
    "note",
];

fn opt(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_csv<W: Write>(out: W, reports: &[PointReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for r in reports {
        let head = [
            r.theorem.to_string(),
            r.nu.clone().unwrap_or_default(),
            r.alpha.clone().unwrap_or_default(),
            r.mu.clone().unwrap_or_default(),
        ];
        let zero = opt(r.zero().map(|z| z.value));
        match &r.outcome {
            Outcome::Skipped { code, reason } => {
                let mut rec = head.to_vec();
                rec.extend([
                    "".into(),
                    "".into(),
                    "".into(),
                    "".into(),
                    "".into(),
                    "".into(),
                ]);
                rec.extend(["skipped".into(), format!("{code}: {reason}")]);
                w.write_record(&rec).map_err(csv_error)?;
            }
            Outcome::Evaluated { lines, checks, .. } => {
                for l in lines {
                    let mut rec = head.to_vec();
                    rec.extend([
                        l.k.to_string(),
                        fmt17(l.lower_generic),
                        opt(l.lower_paper),
                        opt(l.upper_paper),
                        fmt17(l.upper_generic),
                        zero.clone(),
                        l.pass.to_string(),
                        String::new(),
                    ]);
                    w.write_record(&rec).map_err(csv_error)?;
                }
                let failed: Vec<String> = checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect();
                let note = if failed.is_empty() {
                    let names: Vec<&str> = checks.iter().map(|c| c.name).collect();
                    format!("checked {}", names.join(" "))
                } else {
                    failed.join("; ")
                };
                let mut rec = head.to_vec();
                rec.extend([
                    "all".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    zero,
                    r.pass().to_string(),
                    note,
                ]);
                w.write_record(&rec).map_err(csv_error)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonRow<'a> {
    #[serde(flatten)]
    report: &'a PointReport,
    pass: bool,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    precision: &'static str,
    depth: usize,
    tol: f64,
    geometry: bool,
    rows: Vec<JsonRow<'a>>,
    summary: SweepSummary,
}

pub fn write_json<W: Write>(
    mut out: W,
    reports: &[PointReport],
    opts: &VerifyOptions,
) -> Result<()> {
    let report = JsonReport {
        precision: match opts.precision {
            Precision::Rational => "rational",
            Precision::Float => "float",
        },
        depth: opts.depth,
        tol: opts.tol,
        geometry: opts.geometry,
        rows: reports
            .iter()
            .map(|r| JsonRow {
                report: r,
                pass: r.pass(),
            })
            .collect(),
        summary: summarize(reports),
    };
    serde_json::to_writer_pretty(&mut out, &report).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}
