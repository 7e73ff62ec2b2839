use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::degree_engine::KSReport;

use super::{ExperimentError, ExperimentKind};

/// Column order of every CSV this crate writes.
pub const CSV_HEADER: [&str; 8] = ["map_id", "point", "delta", "alpha", "alpha_err", "hhat", "status", "verdict"];

/// One flat CSV line. Empty cells are written for absent values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub map_id: String,
    pub point: String,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    pub alpha_err: Option<f64>,
    pub hhat: Option<f64>,
    pub status: String,
    pub verdict: String,
}

impl ReportRow {
    pub fn from_ks(map_id: &str, point: &str, r: &KSReport) -> Self {
        ReportRow {
            map_id: map_id.to_string(),
            point: point.to_string(),
            delta: Some(r.delta),
            alpha: Some(r.alpha_estimate.value),
            alpha_err: Some(r.alpha_estimate.error_bar),
            hhat: r.canonical_height.map(|c| c.value),
            status: r.orbit_status.to_string(),
            verdict: r.verdict.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub kind: ExperimentKind,
    pub rows: Vec<ReportRow>,
    /// Full structured results.
    pub details: Value,
    /// Rows whose verdict is `inconsistent`.
    pub inconsistent: usize,
    /// Failed property checks (invariance suite only).
    pub failed_checks: usize,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> Result<String, ExperimentError> {
        let mut w =
            csv::WriterBuilder::new().has_headers(false).terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
        w.write_record(CSV_HEADER)?;
        for row in &self.rows {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| ExperimentError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self) -> String {
        let doc = serde_json::json!({
            "experiment": self.kind,
            "rows": self.rows,
            "details": self.details,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    /// Write `<prefix>.csv` and `<prefix>.json`, returning both paths.
    pub fn write_files(&self, prefix: &Path) -> Result<(PathBuf, PathBuf), ExperimentError> {
        let csv_path = prefix.with_extension("csv");
        let json_path = prefix.with_extension("json");
        if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(&csv_path, self.to_csv()?)?;
        std::fs::write(&json_path, self.to_json())?;
        Ok((csv_path, json_path))
    }
}
