//! Report records and their JSON/CSV serialization.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

/// Which residual the tolerance applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Abs,
    Rel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub suite: String,
    /// Property checked.
    pub check: String,
    /// Case parameters, `key=value` pairs separated by `;`.
    pub case: String,
    pub computed: f64,
    pub reference: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub mode: Mode,
    pub pass: bool,
    pub wall_ms: f64,
}

impl ReportRecord {
    /// Builds a record; `pass` is derived from the residual selected by `mode`.
    pub fn new(suite: &str, check: &str, case: String, computed: f64, reference: f64, tolerance: f64, mode: Mode) -> Self {
        let abs_residual = (computed - reference).abs();
        let rel_residual = abs_residual / reference.abs().max(f64::MIN_POSITIVE);
        let r = match mode {
            Mode::Abs => abs_residual,
            Mode::Rel => rel_residual,
        };
        ReportRecord {
            suite: suite.to_string(),
            check: check.to_string(),
            case,
            computed,
            reference,
            abs_residual,
            rel_residual,
            tolerance,
            mode,
            pass: r <= tolerance,
            wall_ms: 0.0,
        }
    }

    /// Record for a residual that should vanish.
    pub fn residual(suite: &str, check: &str, case: String, residual: f64, tolerance: f64) -> Self {
        Self::new(suite, check, case, residual, 0.0, tolerance, Mode::Abs)
    }

    /// Record for a boolean property; the residual is 0 or 1.
    pub fn flag(suite: &str, check: &str, case: String, ok: bool) -> Self {
        Self::new(suite, check, case, if ok { 0.0 } else { 1.0 }, 0.0, 0.0, Mode::Abs)
    }

    pub fn with_wall_ms(mut self, ms: f64) -> Self {
        self.wall_ms = ms;
        self
    }

    /// The residual compared against the tolerance.
    pub fn residual_value(&self) -> f64 {
        match self.mode {
            Mode::Abs => self.abs_residual,
            Mode::Rel => self.rel_residual,
        }
    }
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn to_json(records: &[ReportRecord]) -> Result<String, CliError> {
    serde_json::to_string_pretty(records).map_err(|e| CliError::Report(e.to_string()))
}

pub fn to_csv(records: &[ReportRecord]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(|e| CliError::Report(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Report(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Report(e.to_string()))
}

pub fn from_csv(text: &str) -> Result<Vec<ReportRecord>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().map(|x| x.map_err(|e| CliError::Report(e.to_string()))).collect()
}

pub fn from_json(text: &str) -> Result<Vec<ReportRecord>, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Report(e.to_string()))
}

/// Writes the records; an empty record list is an error.
pub fn report(records: &[ReportRecord], format: Format, path: &Path) -> Result<(), CliError> {
    if records.is_empty() {
        return Err(CliError::Report("no records to write".into()));
    }
    let text = match format {
        Format::Json => to_json(records)?,
        Format::Csv => to_csv(records)?,
    };
    std::fs::write(path, text).map_err(|e| CliError::Report(format!("{}: {e}", path.display())))
}

/// The same records with wall times zeroed, for reproducibility checks.
pub fn without_timing(records: &[ReportRecord]) -> Vec<ReportRecord> {
    records.iter().cloned().map(|r| r.with_wall_ms(0.0)).collect()
}
