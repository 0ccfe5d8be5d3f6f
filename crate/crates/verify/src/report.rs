//! Report records and their JSON and text renderings.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::VerifyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// JSON has no NaN or infinity; non-finite errors are written as `null`.
mod finite_or_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    #[serde(with = "finite_or_null")]
    pub max_error: f64,
    pub tolerance: f64,
    pub points: usize,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Env {
    pub seed: u64,
    /// SHA-256 of the resolved suite configuration.
    pub config_hash: String,
    pub timestamp: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub env: Env,
}

impl Report {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn status_of(&self, id: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.id == id).map(|c| c.status)
    }

    /// Fixed-width table. Numbers use the shortest round-trip notation, the
    /// same values the JSON carries.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "suite {}  seed {}  config {}  at {}",
            self.suite, self.env.seed, self.env.config_hash, self.env.timestamp
        );
        let _ = writeln!(
            s,
            "{:<28} {:<12} {:>24} {:>12} {:>8}  notes",
            "id", "status", "max_error", "tolerance", "points"
        );
        for c in &self.checks {
            let err = if c.max_error.is_finite() {
                format!("{:e}", c.max_error)
            } else {
                "null".into()
            };
            let _ = writeln!(
                s,
                "{:<28} {:<12} {:>24} {:>12e} {:>8}  {}",
                c.id,
                c.status.as_str(),
                err,
                c.tolerance,
                c.points,
                c.notes
            );
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(VerifyError::ConfigInvalid(format!("unknown format {other:?}"))),
        }
    }
}

/// One report renders as a JSON object, several as an array.
pub fn render(reports: &[Report], format: Format) -> Result<String, VerifyError> {
    Ok(match format {
        Format::Json if reports.len() == 1 => serde_json::to_string_pretty(&reports[0])? + "\n",
        Format::Json => serde_json::to_string_pretty(reports)? + "\n",
        Format::Text => reports.iter().map(Report::to_text).collect::<Vec<_>>().join("\n"),
    })
}

/// Writes to `path`, or stdout without one.
pub fn emit_report(reports: &[Report], format: Format, path: Option<&Path>) -> Result<(), VerifyError> {
    let out = render(reports, format)?;
    match path {
        Some(p) => std::fs::write(p, out)?,
        None => print!("{out}"),
    }
    Ok(())
}
