//! Suite definitions and the runner.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use symdomain::hwv::Signature;
use symdomain::jts::{DomainConfig, DomainDescriptor};

use crate::checks::{max_of, CheckInput, Measurement};
use crate::error::VerifyError;
use crate::registry::{lookup, parse_domain_label, suite_checks, SampleKind, MODULE_SUITES};
use crate::report::{CheckRecord, Env, Report, Status};

/// Run-wide settings; `None` leaves the per-check default.
#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub domain: Option<DomainConfig>,
    pub alpha: Option<f64>,
    pub signature: Option<Signature>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            domain: None,
            alpha: None,
            signature: None,
            seed: 42,
            samples: None,
            tol: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub check_id: String,
    pub paper_ref: String,
    pub tolerance: f64,
    pub sample_count: usize,
    pub seed: u64,
    pub domains: Vec<DomainConfig>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub signature: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub id: String,
    pub seed: u64,
    pub checks: Vec<CheckSpec>,
}

impl SuiteSpec {
    pub fn empty(id: &str, seed: u64) -> Self {
        SuiteSpec {
            id: id.into(),
            seed,
            checks: Vec::new(),
        }
    }

    pub fn config_hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("suite specs serialize");
        Sha256::digest(json).iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn domain_of(cfg: &DomainConfig) -> Result<DomainDescriptor, VerifyError> {
    DomainDescriptor::from_config(cfg).map_err(|e| VerifyError::ConfigInvalid(e.to_string()))
}

/// Resolves a suite against the registry. An explicit domain replaces the
/// per-check defaults and drops checks that do not support it.
pub fn build_suite(id: &str, opts: &Options) -> Result<SuiteSpec, VerifyError> {
    let ids = suite_checks(id).ok_or_else(|| VerifyError::UnknownSuite(id.into()))?;
    let explicit = opts.domain.as_ref().map(domain_of).transpose()?;
    let mut spec = SuiteSpec::empty(id, opts.seed);
    for cid in ids {
        let def = lookup(cid).ok_or_else(|| VerifyError::UnknownCheck(cid.into()))?;
        let domains = match &explicit {
            Some(d) if (def.supports)(d) => vec![d.config()],
            Some(_) => continue,
            None => def
                .domains
                .iter()
                .map(|l| parse_domain_label(l).expect("registry labels parse").config())
                .collect(),
        };
        let sample_count = match (def.kind, opts.samples) {
            (SampleKind::MonteCarlo, Some(n)) => n,
            _ => def.samples,
        };
        spec.checks.push(CheckSpec {
            check_id: def.id.into(),
            paper_ref: def.paper_ref.into(),
            tolerance: opts.tol.unwrap_or(def.tolerance),
            sample_count,
            seed: opts.seed,
            domains,
            alpha: opts.alpha,
            signature: opts.signature.as_ref().map(|s| s.parts().to_vec()),
        });
    }
    Ok(spec)
}

/// `all` expands to one spec per module suite.
pub fn build_suites(id: &str, opts: &Options) -> Result<Vec<SuiteSpec>, VerifyError> {
    if id == "all" {
        MODULE_SUITES.iter().map(|s| build_suite(s, opts)).collect()
    } else {
        Ok(vec![build_suite(id, opts)?])
    }
}

/// Pass needs `max_error < tolerance`; a verdict from the check can only
/// downgrade that.
fn status_of(m: &Measurement, tol: f64) -> Status {
    if !(m.max_error < tol) {
        Status::Fail
    } else {
        m.status.unwrap_or(Status::Pass)
    }
}

fn worse(a: Status, b: Status) -> Status {
    match (a, b) {
        (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
        (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
        _ => Status::Pass,
    }
}

fn run_check(spec: &CheckSpec) -> Result<CheckRecord, VerifyError> {
    let def = lookup(&spec.check_id).ok_or_else(|| VerifyError::UnknownCheck(spec.check_id.clone()))?;
    if !(spec.tolerance >= 0.0) {
        return Err(VerifyError::ConfigInvalid(format!(
            "tolerance {} for {}",
            spec.tolerance, spec.check_id
        )));
    }
    let signature = spec
        .signature
        .clone()
        .map(Signature::new)
        .transpose()
        .map_err(|e| VerifyError::ConfigInvalid(e.to_string()))?;
    let mut status = Status::Pass;
    let mut max_error: f64 = 0.0;
    let mut points = 0;
    let mut notes = Vec::new();
    for cfg in &spec.domains {
        let dom = domain_of(cfg)?;
        if !(def.supports)(&dom) {
            return Err(VerifyError::ConfigInvalid(format!(
                "{} does not run on {}",
                def.id,
                dom.label()
            )));
        }
        if let Some(s) = &signature {
            s.padded(&dom).map_err(|e| VerifyError::ConfigInvalid(e.to_string()))?;
        }
        let input = CheckInput {
            dom: dom.clone(),
            seed: spec.seed,
            samples: spec.sample_count,
            alpha: spec.alpha,
            signature: signature.clone(),
        };
        match (def.run)(&input) {
            Ok(m) => {
                status = worse(status, status_of(&m, spec.tolerance));
                max_error = max_of([max_error, m.max_error]);
                points += m.points;
                let detail = if m.notes.is_empty() { String::new() } else { format!(": {}", m.notes.join("; ")) };
                notes.push(format!("{}{detail}", dom.label()));
            }
            Err(e) => {
                status = Status::Fail;
                max_error = f64::NAN;
                notes.push(format!("{}: error: {e}", dom.label()));
            }
        }
    }
    Ok(CheckRecord {
        id: spec.check_id.clone(),
        paper_ref: spec.paper_ref.clone(),
        status,
        max_error,
        tolerance: spec.tolerance,
        points,
        notes: notes.join(" | "),
    })
}

/// Runs every check in order. Only the timestamp differs between reruns.
pub fn run_suite(spec: &SuiteSpec) -> Result<Report, VerifyError> {
    let checks = spec.checks.iter().map(run_check).collect::<Result<Vec<_>, _>>()?;
    Ok(Report {
        suite: spec.id.clone(),
        checks,
        env: Env {
            seed: spec.seed,
            config_hash: spec.config_hash(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        },
    })
}
