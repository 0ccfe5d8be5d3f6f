use serde::{Deserialize, Serialize};

use super::norms::h_real;
use super::radial::{radial_integral, RadialConfig};
use super::sampler::{mc_integrate_many, SamplerConfig};
use crate::error::{Error, Result};
use crate::hwv::{compose_with_q, Signature};
use crate::jts::{DomainDescriptor, DomainKind, PointV};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Divergent,
    /// Increments neither settle nor grow monotonically.
    Inconclusive,
}

/// Boundary-margin schedule and decision thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub margin_start: f64,
    pub margin_end: f64,
    /// Geometrically spaced margins, endpoints included.
    pub steps: usize,
    /// Largest relative increment at the finest margin for a finite verdict.
    pub increment_tol: f64,
    /// Fitted rates within this band of zero are undecided.
    pub rate_band: f64,
    pub sampler: SamplerConfig,
    pub radial: RadialConfig,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            margin_start: 1e-2,
            margin_end: 1e-4,
            steps: 9,
            increment_tol: 1e-2,
            rate_band: 0.1,
            sampler: SamplerConfig::default(),
            radial: RadialConfig::default(),
        }
    }
}

impl ProbeConfig {
    pub fn margins(&self) -> Result<Vec<f64>> {
        let ok = self.steps >= 3
            && self.margin_start > self.margin_end
            && self.margin_end > 0.0
            && self.margin_start < 1.0;
        if !ok {
            return Err(Error::InvalidConfig(format!(
                "margin schedule {} -> {} in {} steps",
                self.margin_start, self.margin_end, self.steps
            )));
        }
        let ratio = (self.margin_end / self.margin_start).powf(1.0 / (self.steps - 1) as f64);
        Ok((0..self.steps)
            .map(|k| self.margin_start * ratio.powi(k as i32))
            .collect())
    }
}

/// Partial integrals over `{dist(z, ∂Ω) > ε}` and the rate fitted to their
/// increments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub alpha: f64,
    pub m1: usize,
    pub margins: Vec<f64>,
    pub partials: Vec<f64>,
    /// `partials[k+1] - partials[k]`.
    pub increments: Vec<f64>,
    /// Least-squares slope of `ln |increment|` against `ln ε`.
    pub fitted_rate: f64,
    /// `α - 2 m₁ + 1`.
    pub predicted_rate: f64,
    pub verdict: Verdict,
    /// Finest partial plus the geometric tail implied by the fitted rate.
    pub value: Option<f64>,
}

impl ProbeReport {
    /// `|fitted / predicted - 1|`.
    pub fn rate_error(&self) -> f64 {
        (self.fitted_rate / self.predicted_rate - 1.0).abs()
    }
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Probes `∫ |Δ̄_m(q(z))|² h(z, z̄)^α dm(z)` near the boundary.
///
/// Disk and ball use radial quadrature cut at `1 - ε`; matrix domains use
/// one Monte Carlo pass binned by boundary distance.
pub fn integrability_probe(
    sig: &Signature,
    alpha: f64,
    dom: &DomainDescriptor,
    cfg: &ProbeConfig,
) -> Result<ProbeReport> {
    sig.padded(dom)?;
    let margins = cfg.margins()?;
    let density = |z: &PointV| -> Result<f64> {
        Ok(compose_with_q(sig, z, dom)?.norm_sqr() * h_real(z, dom).powf(alpha))
    };
    let partials: Vec<f64> = match dom.kind {
        DomainKind::Ball { .. } => margins
            .iter()
            .map(|e| radial_integral(dom, 1.0 - e, &cfg.radial, density))
            .collect::<Result<_>>()?,
        DomainKind::MatrixI { .. } => {
            let sampler = SamplerConfig {
                boundary_margin: cfg.margin_end,
                ..cfg.sampler.clone()
            };
            let ms = margins.clone();
            mc_integrate_many(dom, &sampler, ms.len(), |z| {
                let v = density(z)?;
                let dist = 1.0 - dom.spectral_norm(&z.0);
                Ok(ms.iter().map(|e| if dist > *e { v } else { 0.0 }).collect())
            })?
            .into_iter()
            .map(|e| e.value)
            .collect()
        }
    };
    let increments: Vec<f64> = partials.windows(2).map(|w| w[1] - w[0]).collect();
    let predicted_rate = alpha - 2.0 * sig.m1() as f64 + 1.0;

    let usable: Vec<(f64, f64)> = margins
        .windows(2)
        .zip(&increments)
        .filter(|(_, d)| **d > 0.0)
        .map(|(w, d)| ((w[0] * w[1]).sqrt().ln(), d.ln()))
        .collect();
    let fitted_rate = if usable.len() >= 2 {
        let (xs, ys): (Vec<f64>, Vec<f64>) = usable.into_iter().unzip();
        slope(&xs, &ys)
    } else {
        f64::NAN
    };

    let last = *partials.last().expect("at least three margins");
    let last_inc = *increments.last().expect("at least two increments");
    let rel_last = if last != 0.0 { (last_inc / last).abs() } else { 0.0 };
    let all_zero = increments.iter().all(|d| *d == 0.0);
    let growing = increments.iter().all(|d| *d > 0.0) && increments.windows(2).all(|w| w[1] > w[0]);

    let verdict = if all_zero || (fitted_rate > cfg.rate_band && rel_last < cfg.increment_tol) {
        Verdict::Finite
    } else if fitted_rate < -cfg.rate_band && growing {
        Verdict::Divergent
    } else {
        Verdict::Inconclusive
    };

    let value = (verdict == Verdict::Finite).then(|| {
        if all_zero {
            return last;
        }
        let ratio = (margins[1] / margins[0]).powf(fitted_rate);
        last + last_inc * ratio / (1.0 - ratio)
    });

    Ok(ProbeReport {
        alpha,
        m1: sig.m1(),
        margins,
        partials,
        increments,
        fitted_rate,
        predicted_rate,
        verdict,
        value,
    })
}
