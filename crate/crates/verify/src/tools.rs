//! The `integrate` and `table` subcommands.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use symdomain::hwv::{compose_with_q, Signature};
use symdomain::jts::{DomainConfig, DomainDescriptor};
use symdomain::quadrature::{
    integrability_probe, weighted_norm, IntegralEstimate, ProbeConfig, ProbeReport, RadialConfig,
    SamplerConfig, SamplingMethod,
};

pub use crate::checks::quadrature::disk_q_norm_exact;
use crate::checks::quadrature::q_power;
use crate::error::VerifyError;

fn lib_err(e: symdomain::Error) -> VerifyError {
    VerifyError::ConfigInvalid(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrateRequest {
    pub domain: DomainConfig,
    pub alpha: f64,
    pub signature: Vec<usize>,
    pub seed: u64,
    pub samples: usize,
    pub method: SamplingMethod,
    pub probe: bool,
}

impl Default for IntegrateRequest {
    fn default() -> Self {
        IntegrateRequest {
            domain: DomainDescriptor::disk().config(),
            alpha: 4.0,
            signature: vec![1],
            seed: 42,
            samples: 1_000_000,
            method: SamplingMethod::RejectionBox,
            probe: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrateResult {
    pub request: IntegrateRequest,
    /// `‖Δ̄_m(q)‖²_{μ_α}`.
    pub estimate: Option<IntegralEstimate>,
    /// Beta-integral value on the disk.
    pub exact: Option<f64>,
    pub probe: Option<ProbeReport>,
    pub notes: Vec<String>,
}

/// Estimates `∫ |Δ̄_m(q)|² h^α dm`, optionally with the boundary probe.
/// Below the threshold the estimate is skipped and only the probe runs.
pub fn integrate(req: &IntegrateRequest) -> Result<IntegrateResult, VerifyError> {
    let dom = DomainDescriptor::from_config(&req.domain).map_err(lib_err)?;
    let sig = Signature::new(req.signature.clone()).map_err(lib_err)?;
    sig.padded(&dom).map_err(lib_err)?;
    let cfg = SamplerConfig {
        seed: req.seed,
        samples: req.samples,
        method: req.method,
        boundary_margin: if req.method == SamplingMethod::RadialStratified { 0.0 } else { 1e-6 },
        ..SamplerConfig::default()
    };
    let mut notes = Vec::new();
    let integrable = req.alpha - 2.0 * sig.m1() as f64 > -1.0;
    let estimate = if integrable {
        let f = |z: &_| compose_with_q(&sig, z, &dom);
        Some(weighted_norm(f, req.alpha, &dom, &cfg, &RadialConfig::default()).map_err(lib_err)?)
    } else {
        notes.push("α − 2m₁ ≤ −1: the integral diverges, no estimate".into());
        None
    };
    let exact = (dom.is_disk() && integrable).then(|| disk_q_norm_exact(req.alpha, sig.m1()));
    let probe = if req.probe || !integrable {
        let pc = ProbeConfig {
            sampler: SamplerConfig {
                method: SamplingMethod::RejectionBox,
                ..cfg.clone()
            },
            ..ProbeConfig::default()
        };
        Some(integrability_probe(&sig, req.alpha, &dom, &pc).map_err(lib_err)?)
    } else {
        None
    };
    Ok(IntegrateResult {
        request: req.clone(),
        estimate,
        exact,
        probe,
        notes,
    })
}

impl IntegrateResult {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let r = &self.request;
        let _ = writeln!(
            s,
            "domain {}  alpha {}  signature {:?}  method {:?}",
            DomainDescriptor::from_config(&r.domain).map_or_else(|_| r.domain.kind.clone(), |d| d.label()),
            r.alpha,
            r.signature,
            r.method
        );
        if let Some(e) = &self.estimate {
            let _ = writeln!(s, "estimate {:e} ± {:e} ({} samples)", e.value, e.stderr, e.samples_used);
        }
        if let Some(x) = self.exact {
            let _ = writeln!(s, "exact    {x:e}");
        }
        if let Some(p) = &self.probe {
            let _ = writeln!(
                s,
                "probe    {:?}, fitted rate {:.4}, predicted {}",
                p.verdict, p.fitted_rate, p.predicted_rate
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "note     {n}");
        }
        s
    }
}

/// One row of the disk norm table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: usize,
    pub exponent: f64,
    pub exact: Option<f64>,
    pub radial: Option<f64>,
    pub mc: Option<IntegralEstimate>,
    pub verdict: symdomain::quadrature::Verdict,
}

/// `‖q^m‖²_{μ_α}` on the disk for `m = 0..=max_m`, by closed form, radial
/// quadrature and Monte Carlo, with the probe verdict.
pub fn disk_table(alpha: f64, max_m: usize, seed: u64, samples: usize) -> Result<Vec<TableRow>, VerifyError> {
    let dom = DomainDescriptor::disk();
    let mc_cfg = SamplerConfig {
        seed,
        samples,
        ..SamplerConfig::default()
    };
    let radial_cfg = SamplerConfig {
        method: SamplingMethod::RadialStratified,
        boundary_margin: 0.0,
        ..SamplerConfig::default()
    };
    (0..=max_m)
        .map(|m| {
            let exponent = alpha - 2.0 * m as f64;
            let finite = exponent > -1.0;
            let sig = Signature::new(if m == 0 { vec![] } else { vec![m] }).map_err(lib_err)?;
            let probe = integrability_probe(&sig, alpha, &dom, &ProbeConfig::default()).map_err(lib_err)?;
            let (radial, mc) = if finite {
                let r = weighted_norm(q_power(&dom, m), alpha, &dom, &radial_cfg, &RadialConfig::default())
                    .map_err(lib_err)?;
                let mc = weighted_norm(q_power(&dom, m), alpha, &dom, &mc_cfg, &RadialConfig::default())
                    .map_err(lib_err)?;
                (Some(r.value), Some(mc))
            } else {
                (None, None)
            };
            Ok(TableRow {
                m,
                exponent,
                exact: finite.then(|| disk_q_norm_exact(alpha, m)),
                radial,
                mc,
                verdict: probe.verdict,
            })
        })
        .collect()
}

pub fn table_text(alpha: f64, rows: &[TableRow]) -> String {
    let mut s = format!("disk, alpha = {alpha}\n");
    let _ = writeln!(
        s,
        "{:>3} {:>8} {:>14} {:>14} {:>14} {:>10}  verdict",
        "m", "α-2m", "exact", "radial", "mc", "stderr"
    );
    let opt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.8}"));
    for r in rows {
        let _ = writeln!(
            s,
            "{:>3} {:>8} {:>14} {:>14} {:>14} {:>10}  {:?}",
            r.m,
            r.exponent,
            opt(r.exact),
            opt(r.radial),
            opt(r.mc.map(|e| e.value)),
            r.mc.map_or("-".to_string(), |e| format!("{:.1e}", e.stderr)),
            r.verdict
        );
    }
    s
}
