//! Check records and their on-disk form.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::config::Suite;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    pub anchor: String,
    pub value: String,
    pub tolerance: String,
    pub status: Status,
}

pub fn fmt_value(v: f64) -> String {
    format!("{v:.9e}")
}

/// Two-column numeric output for external plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub name: String,
    pub columns: [String; 2],
    pub rows: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub records: Vec<CheckRecord>,
    pub spectra: Vec<Spectrum>,
}

impl SuiteReport {
    pub fn new(suite: Suite) -> Self {
        Self { suite, records: Vec::new(), spectra: Vec::new() }
    }

    fn push(&mut self, check: impl Into<String>, anchor: &str, value: String, tolerance: String, status: Status) {
        let check = check.into();
        debug_assert!(self.records.iter().all(|r| r.check != check), "duplicate check {check}");
        self.records.push(CheckRecord { check, anchor: anchor.into(), value, tolerance, status });
    }

    /// Passes when `value ≤ tol`; NaN fails.
    pub fn at_most(&mut self, check: impl Into<String>, anchor: &str, value: f64, tol: f64) {
        let status = if value <= tol { Status::Pass } else { Status::Fail };
        self.push(check, anchor, fmt_value(value), format!("<= {}", fmt_value(tol)), status);
    }

    pub fn at_least(&mut self, check: impl Into<String>, anchor: &str, value: f64, tol: f64) {
        let status = if value > tol { Status::Pass } else { Status::Fail };
        self.push(check, anchor, fmt_value(value), format!("> {}", fmt_value(tol)), status);
    }

    pub fn condition(&mut self, check: impl Into<String>, anchor: &str, value: f64, requirement: &str, ok: bool) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(check, anchor, fmt_value(value), requirement.into(), status);
    }

    pub fn info(&mut self, check: impl Into<String>, anchor: &str, value: impl Into<String>) {
        self.push(check, anchor, value.into(), "-".into(), Status::Info);
    }

    /// A check that could not be evaluated counts as a failure.
    pub fn error(&mut self, check: impl Into<String>, anchor: &str, err: &Error) {
        self.push(check, anchor, format!("error: {err}"), "-".into(), Status::Fail);
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub scenario: String,
    pub seed: u64,
    pub grid: String,
    pub suites: Vec<SuiteReport>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures() == 0)
    }

    pub fn failures(&self) -> usize {
        self.suites.iter().map(SuiteReport::failures).sum()
    }
}

pub fn suite_csv(report: &SuiteReport) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv encoding: {e}"));
    w.write_record(["check", "anchor", "value", "tolerance", "status"]).map_err(io)?;
    for r in &report.records {
        w.write_record([&r.check, &r.anchor, &r.value, &r.tolerance, r.status.as_str()]).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv encoding: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// All suites in one table, with a leading suite column.
pub fn report_csv(report: &ScenarioReport) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv encoding: {e}"));
    w.write_record(["suite", "check", "anchor", "value", "tolerance", "status"]).map_err(io)?;
    for s in &report.suites {
        for r in &s.records {
            w.write_record([s.suite.name(), &r.check, &r.anchor, &r.value, &r.tolerance, r.status.as_str()])
                .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv encoding: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn spectrum_text(s: &Spectrum) -> String {
    let mut out = format!("# {} {}\n", s.columns[0], s.columns[1]);
    for (a, b) in &s.rows {
        let _ = writeln!(out, "{} {}", fmt_value(*a), fmt_value(*b));
    }
    out
}

pub fn summary_text(report: &ScenarioReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", report.scenario);
    let _ = writeln!(out, "xdlab {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "seed: {}", report.seed);
    let _ = writeln!(out, "grid: {}", report.grid);
    for s in &report.suites {
        let count = |st: Status| s.records.iter().filter(|r| r.status == st).count();
        let _ = writeln!(
            out,
            "\n[{}] {} pass, {} fail, {} info",
            s.suite.name(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Info)
        );
        for r in &s.records {
            let _ = writeln!(out, "  {:4}  {}: {} (tol {})", r.status.as_str(), r.check, r.value, r.tolerance);
        }
    }
    let verdict =
        if report.passed() { "PASS".to_string() } else { format!("FAIL ({} failing checks)", report.failures()) };
    let _ = writeln!(out, "\noverall: {verdict}");
    out
}

fn write_file(path: PathBuf, contents: &str) -> Result<PathBuf> {
    std::fs::write(&path, contents).map_err(|e| Error::Io { path: path.clone(), source: e })?;
    Ok(path)
}

/// Writes `<suite>.csv` per suite, the spectra, and `summary.txt`.
pub fn emit_outputs(report: &ScenarioReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.to_path_buf(), source: e })?;
    let mut written = Vec::new();
    for s in &report.suites {
        written.push(write_file(dir.join(format!("{}.csv", s.suite.name())), &suite_csv(s)?)?);
        for sp in &s.spectra {
            written.push(write_file(dir.join(format!("{}.txt", sp.name)), &spectrum_text(sp))?);
        }
    }
    written.push(write_file(dir.join("summary.txt"), &summary_text(report))?);
    Ok(written)
}
