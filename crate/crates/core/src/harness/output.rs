//! Report and sweep serialization.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::suite::SuiteResult;
use super::sweep::SweepTable;
use crate::error::{JetError, Result};
use crate::jetcore::{CheckStatus, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = JetError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(JetError::config("format", format!("unknown format `{other}`; expected json or csv"))),
        }
    }
}

/// The document written by `verify --format json` and read back by `report`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub overall_pass: bool,
    pub seed: u64,
    pub samples: usize,
    /// TOML text of the run configuration.
    pub config: String,
    pub reports: Vec<VerificationReport>,
}

impl From<&SuiteResult> for ReportDocument {
    fn from(r: &SuiteResult) -> Self {
        ReportDocument {
            overall_pass: r.overall_pass,
            seed: r.config_echo.sampling.seed,
            samples: r.config_echo.sampling.samples,
            config: r.config_echo.to_toml(),
            reports: r.reports.clone(),
        }
    }
}

fn csv_error(e: csv::Error) -> JetError {
    JetError::Construction(format!("csv: {e}"))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| JetError::Construction(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| JetError::Construction(e.to_string()))
}

pub fn suite_json(r: &SuiteResult) -> String {
    let mut s = serde_json::to_string_pretty(&ReportDocument::from(r)).expect("report serializes");
    s.push('\n');
    s
}

pub fn suite_csv(r: &SuiteResult) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for rep in &r.reports {
        w.serialize(rep).map_err(csv_error)?;
    }
    finish_csv(w)
}

pub fn render_suite(r: &SuiteResult, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(suite_json(r)),
        Format::Csv => suite_csv(r),
    }
}

pub fn sweep_json(t: &SweepTable) -> String {
    let mut s = serde_json::to_string_pretty(t).expect("sweep serializes");
    s.push('\n');
    s
}

/// Header `t,y1,y2,y3,y4,<field columns>`; floats in shortest round-trip form.
pub fn sweep_csv(t: &SweepTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = ["t", "y1", "y2", "y3", "y4"].map(String::from).to_vec();
    header.extend(t.columns.iter().cloned());
    w.write_record(&header).map_err(csv_error)?;
    for row in &t.rows {
        let rec = std::iter::once(row.t)
            .chain(row.y)
            .chain(row.values.iter().copied())
            .map(|v| v.to_string());
        w.write_record(rec).map_err(csv_error)?;
    }
    finish_csv(w)
}

pub fn render_sweep(t: &SweepTable, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(sweep_json(t)),
        Format::Csv => sweep_csv(t),
    }
}

/// Parses a JSON report document produced by `verify`.
pub fn parse_report(text: &str) -> Result<ReportDocument> {
    let doc: ReportDocument =
        serde_json::from_str(text).map_err(|e| JetError::config("report", e.to_string()))?;
    let recomputed = doc.reports.iter().all(|r| r.pass);
    if recomputed != doc.overall_pass {
        return Err(JetError::config(
            "report.overall_pass",
            "does not agree with the individual check results",
        ));
    }
    Ok(doc)
}

/// Human-readable summary of a report document.
pub fn summarize(doc: &ReportDocument) -> String {
    let count = |s: CheckStatus| doc.reports.iter().filter(|r| r.status == s).count();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} checks (seed {}, {} samples): {} passed, {} failed, {} skipped",
        doc.reports.len(),
        doc.seed,
        doc.samples,
        count(CheckStatus::Pass),
        count(CheckStatus::Fail),
        count(CheckStatus::Skipped),
    );
    for r in doc.reports.iter().filter(|r| r.status == CheckStatus::Fail) {
        let _ = writeln!(
            out,
            "  FAIL {:<45} abs {:.3e} (tol {:.1e})  rel {:.3e} (tol {:.1e})",
            r.check_name, r.max_abs_err, r.abs_tol, r.max_rel_err, r.rel_tol
        );
    }
    let _ = writeln!(out, "overall: {}", if doc.overall_pass { "PASS" } else { "FAIL" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::RunConfig;
    use crate::harness::suite::run_verify;
    use crate::harness::sweep::{parse_grid, sweep, SweepField};
    use crate::jetcore::TimeMetric;

    fn result() -> SuiteResult {
        let mut cfg = RunConfig::berwald_moor(TimeMetric::constant(1.0).unwrap());
        cfg.sampling.samples = 5;
        run_verify(&cfg).unwrap()
    }

    #[test]
    fn json_round_trips_through_parse_report() {
        let r = result();
        let text = suite_json(&r);
        let doc = parse_report(&text).unwrap();
        assert_eq!(doc, ReportDocument::from(&r));
        assert_eq!(doc.samples, 5);
        let summary = summarize(&doc);
        assert!(summary.contains("overall: FAIL"), "{summary}");
        assert!(summary.contains("FAIL ricci.vertical_table"));
    }

    #[test]
    fn non_finite_errors_survive_json() {
        let mut r = result();
        r.reports[0].max_abs_err = f64::INFINITY;
        r.reports[0].pass = false;
        r.overall_pass = false;
        let doc = parse_report(&suite_json(&r)).unwrap();
        assert_eq!(doc.reports[0].max_abs_err, f64::INFINITY);
    }

    #[test]
    fn inconsistent_report_is_rejected() {
        let mut doc = ReportDocument::from(&result());
        doc.overall_pass = !doc.overall_pass;
        let text = serde_json::to_string(&doc).unwrap();
        assert!(matches!(parse_report(&text), Err(JetError::Config { .. })));
        assert!(parse_report("{").is_err());
    }

    #[test]
    fn csv_has_one_row_per_check() {
        let r = result();
        let text = suite_csv(&r).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("check_name,samples,max_abs_err,max_rel_err,pass,seed"));
        assert_eq!(lines.count(), r.reports.len());
    }

    #[test]
    fn sweep_csv_round_trips_floats() {
        let cfg = RunConfig::berwald_moor(TimeMetric::exponential(1.0, 0.3).unwrap());
        let t = sweep(&cfg, SweepField::Sc, &parse_grid("t=0:1:3;s=0.7,1.9").unwrap()).unwrap();
        let text = sweep_csv(&t).unwrap();
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["t", "y1", "y2", "y3", "y4", "Sc"]);
        for (rec, row) in rdr.records().zip(&t.rows) {
            let rec = rec.unwrap();
            assert_eq!(rec[0].parse::<f64>().unwrap(), row.t);
            assert_eq!(rec[5].parse::<f64>().unwrap(), row.values[0]);
        }
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
