//! Report rows and their CSV/JSON serialisation.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use threeballs_core::{FrequencyProfile, InequalityReport, RadiiTriple};

use crate::config::NamedField;
use crate::CliError;

/// One line of the summary: a single inequality for a single field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub check: String,
    pub field: String,
    pub n: usize,
    pub lambda: f64,
    pub alpha: f64,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub r3: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// Serialised as a string when infinite.
    #[serde(serialize_with = "ser_real")]
    pub margin: f64,
    pub slack: f64,
    pub pass: bool,
    pub informational: bool,
    pub constants: std::collections::BTreeMap<String, f64>,
}

fn ser_real<S: serde::Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&v.to_string())
    }
}

pub const CSV_COLUMNS: [&str; 15] = [
    "check",
    "field",
    "n",
    "lambda",
    "alpha",
    "r1",
    "r2",
    "r3",
    "lhs",
    "rhs",
    "margin",
    "slack",
    "pass",
    "informational",
    "constants",
];

impl ReportRow {
    pub fn from_report(
        rep: &InequalityReport,
        field: &NamedField,
        alpha: f64,
        radii: Option<RadiiTriple<f64>>,
    ) -> Self {
        ReportRow {
            check: rep.label.clone(),
            field: field.name.clone(),
            n: field.n(),
            lambda: field.lambda(),
            alpha,
            r1: radii.map(|r| r.r1),
            r2: radii.map(|r| r.r2),
            r3: radii.map(|r| r.r3),
            lhs: rep.lhs,
            rhs: rep.rhs,
            margin: rep.margin,
            slack: rep.slack,
            pass: rep.pass,
            informational: rep.informational,
            constants: rep.constants.clone(),
        }
    }

    /// Whether this row makes the run fail.
    pub fn fails(&self) -> bool {
        !self.pass && !self.informational
    }

    fn csv_record(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_default();
        let constants = self
            .constants
            .iter()
            .map(|(k, v)| format!("{k}={}", fmt_num(*v)))
            .collect::<Vec<_>>()
            .join(";");
        vec![
            self.check.clone(),
            self.field.clone(),
            self.n.to_string(),
            fmt_num(self.lambda),
            fmt_num(self.alpha),
            opt(self.r1),
            opt(self.r2),
            opt(self.r3),
            fmt_num(self.lhs),
            fmt_num(self.rhs),
            fmt_num(self.margin),
            fmt_num(self.slack),
            self.pass.to_string(),
            self.informational.to_string(),
            constants,
        ]
    }
}

/// Shortest round-trip text of `x`, in exponent form when very small or large.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e16).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("cannot write {}: {e}", path.display()))
}

pub fn write_csv(path: &Path, rows: &[ReportRow]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err(path, e))?;
    w.write_record(CSV_COLUMNS).map_err(|e| io_err(path, e))?;
    for row in rows {
        w.write_record(row.csv_record())
            .map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut file = std::fs::File::create(path).map_err(|e| io_err(path, e))?;
    serde_json::to_writer_pretty(&mut file, value).map_err(|e| io_err(path, e))?;
    writeln!(file).map_err(|e| io_err(path, e))
}

/// Profile CSV with columns `r, H, I, N, G, err_H, err_I`.
pub fn write_profile_csv(path: &Path, profile: &FrequencyProfile<f64>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err(path, e))?;
    w.write_record(threeballs_core::frequency::ProfileRow::<f64>::CSV_HEADER)
        .map_err(|e| io_err(path, e))?;
    for row in &profile.rows {
        w.write_record(row.csv_values().iter().map(|&v| fmt_num(v)))
            .map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

/// A one-line human summary of a row.
pub fn describe(row: &ReportRow) -> String {
    let status = match (row.pass, row.informational) {
        (true, false) => "PASS",
        (false, false) => "FAIL",
        (true, true) => "info",
        (false, true) => "INFO-FAIL",
    };
    let radii = match (row.r1, row.r2, row.r3) {
        (Some(a), Some(b), Some(c)) => format!(" radii=({a}, {b}, {c})"),
        _ => String::new(),
    };
    format!(
        "{status:9} {:32} {:28}{radii} margin={:.6e}",
        row.check, row.field, row.margin
    )
}
