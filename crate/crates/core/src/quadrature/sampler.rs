use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jts::{DomainDescriptor, PointV};
use crate::{CVec, C64};

/// Acceptance rate below which rejection sampling is refused.
pub const ACCEPTANCE_FLOOR: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMethod {
    RejectionBox,
    /// Disk and ball only: deterministic radial quadrature.
    RadialStratified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Number of box candidates drawn.
    pub samples: usize,
    /// Accepted points satisfy `‖z‖ < 1 - boundary_margin`.
    pub boundary_margin: f64,
    pub method: SamplingMethod,
    /// Candidates per independent random stream.
    pub chunk_size: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 42,
            samples: 1_000_000,
            boundary_margin: 1e-6,
            method: SamplingMethod::RejectionBox,
            chunk_size: 1 << 14,
        }
    }
}

impl SamplerConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        SamplerConfig { seed, ..self.clone() }
    }

    pub fn with_samples(&self, samples: usize) -> Self {
        SamplerConfig {
            samples,
            ..self.clone()
        }
    }

    fn chunks(&self) -> usize {
        self.samples.div_ceil(self.chunk_size.max(1))
    }

    fn chunk_len(&self, c: usize) -> usize {
        let cs = self.chunk_size.max(1);
        cs.min(self.samples - c * cs)
    }

    fn rng(&self, chunk: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(chunk as u64);
        rng
    }
}

/// Volume of the box `[-1, 1]^{2 dim}` the candidates are drawn from.
pub fn box_volume(dom: &DomainDescriptor) -> f64 {
    4f64.powi(dom.dim as i32)
}

fn candidate<R: Rng>(dim: usize, rng: &mut R) -> CVec {
    CVec::from_fn(dim, |_, _| {
        let re = rng.gen_range(-1.0..1.0);
        let im = rng.gen_range(-1.0..1.0);
        C64::new(re, im)
    })
}

/// Accepted points together with the rejection diagnostics.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub points: Vec<PointV>,
    pub candidates: usize,
    pub acceptance_rate: f64,
    pub box_volume: f64,
}

fn check_rate(accepted: usize, candidates: usize) -> Result<f64> {
    let rate = if candidates == 0 {
        0.0
    } else {
        accepted as f64 / candidates as f64
    };
    if rate < ACCEPTANCE_FLOOR {
        return Err(Error::AcceptanceTooLow {
            rate,
            floor: ACCEPTANCE_FLOOR,
        });
    }
    Ok(rate)
}

/// Lebesgue-uniform points of the domain by rejection from the unit box.
/// The box contains the domain because every entry of a matrix is bounded
/// by its operator norm.
pub fn sample_domain(dom: &DomainDescriptor, cfg: &SamplerConfig) -> Result<SampleSet> {
    let limit = 1.0 - cfg.boundary_margin;
    let chunks: Vec<Vec<PointV>> = (0..cfg.chunks())
        .into_par_iter()
        .map(|c| {
            let mut rng = cfg.rng(c);
            (0..cfg.chunk_len(c))
                .filter_map(|_| {
                    let z = candidate(dom.dim, &mut rng);
                    (dom.spectral_norm(&z) < limit).then_some(PointV(z))
                })
                .collect()
        })
        .collect();
    let points: Vec<PointV> = chunks.into_iter().flatten().collect();
    let acceptance_rate = check_rate(points.len(), cfg.samples)?;
    Ok(SampleSet {
        points,
        candidates: cfg.samples,
        acceptance_rate,
        box_volume: box_volume(dom),
    })
}

/// A Monte Carlo or quadrature value of an integral against Lebesgue measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples_used: usize,
    pub acceptance_rate: f64,
}

impl IntegralEstimate {
    /// Agreement within `k` combined standard errors.
    pub fn agrees_with(&self, other: &IntegralEstimate, k: f64) -> bool {
        let s = (self.stderr.powi(2) + other.stderr.powi(2)).sqrt();
        (self.value - other.value).abs() <= k * s
    }
}

/// `∫ g dm` by rejection sampling. `g` runs only on accepted points; the
/// estimator is `vol(box) · mean over candidates of g·1_Ω`.
pub fn mc_integrate<G>(dom: &DomainDescriptor, cfg: &SamplerConfig, g: G) -> Result<IntegralEstimate>
where
    G: Fn(&PointV) -> Result<f64> + Sync,
{
    mc_integrate_many(dom, cfg, 1, |z| Ok(vec![g(z)?])).map(|mut v| v.swap_remove(0))
}

/// Several integrals over the same samples.
pub fn mc_integrate_many<G>(
    dom: &DomainDescriptor,
    cfg: &SamplerConfig,
    count: usize,
    g: G,
) -> Result<Vec<IntegralEstimate>>
where
    G: Fn(&PointV) -> Result<Vec<f64>> + Sync,
{
    let limit = 1.0 - cfg.boundary_margin;
    // Per chunk: (sums, sums of squares, accepted). Collected in order, then
    // reduced sequentially, so the result does not depend on scheduling.
    let partials: Vec<Result<(Vec<f64>, Vec<f64>, usize)>> = (0..cfg.chunks())
        .into_par_iter()
        .map(|c| {
            let mut rng = cfg.rng(c);
            let (mut s, mut s2, mut acc) = (vec![0.0; count], vec![0.0; count], 0usize);
            for _ in 0..cfg.chunk_len(c) {
                let z = candidate(dom.dim, &mut rng);
                if dom.spectral_norm(&z) < limit {
                    acc += 1;
                    let vals = g(&PointV(z))?;
                    for (k, v) in vals.iter().enumerate() {
                        s[k] += v;
                        s2[k] += v * v;
                    }
                }
            }
            Ok((s, s2, acc))
        })
        .collect();
    let (mut s, mut s2, mut acc) = (vec![0.0; count], vec![0.0; count], 0usize);
    for p in partials {
        let (a, b, n) = p?;
        for k in 0..count {
            s[k] += a[k];
            s2[k] += b[k];
        }
        acc += n;
    }
    let rate = check_rate(acc, cfg.samples)?;
    let n = cfg.samples as f64;
    let vol = box_volume(dom);
    Ok((0..count)
        .map(|k| {
            let mean = s[k] / n;
            let var = (s2[k] / n - mean * mean).max(0.0);
            IntegralEstimate {
                value: vol * mean,
                stderr: vol * (var / (n - 1.0).max(1.0)).sqrt(),
                samples_used: acc,
                acceptance_rate: rate,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn disk_acceptance_is_area_ratio() {
        let d = DomainDescriptor::disk();
        let s = sample_domain(&d, &SamplerConfig::default()).unwrap();
        assert!((s.acceptance_rate - PI / 4.0).abs() < 0.01);
        assert!(s.points.iter().all(|z| d.spectral_norm(&z.0) < 1.0 - 1e-6));
    }

    #[test]
    fn ball_acceptance_is_volume_ratio() {
        let b = DomainDescriptor::ball(2).unwrap();
        let s = sample_domain(&b, &SamplerConfig::default().with_samples(200_000)).unwrap();
        assert!((s.acceptance_rate - PI * PI / 2.0 / 16.0).abs() < 0.005);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let m = DomainDescriptor::matrix(2, 2).unwrap();
        let cfg = SamplerConfig::default().with_samples(50_000);
        let a = mc_integrate(&m, &cfg, |z| Ok(z.0.norm())).unwrap();
        let b = mc_integrate(&m, &cfg, |z| Ok(z.0.norm())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn three_by_three_is_rejected() {
        let m = DomainDescriptor::matrix(3, 3).unwrap();
        let r = mc_integrate(&m, &SamplerConfig::default().with_samples(100_000), |_| Ok(1.0));
        assert!(matches!(r, Err(Error::AcceptanceTooLow { .. })));
    }

    #[test]
    fn stderr_shrinks_like_inverse_root() {
        let d = DomainDescriptor::disk();
        let cfg = SamplerConfig::default().with_samples(100_000);
        let a = mc_integrate(&d, &cfg, |z| Ok(z.0[0].norm_sqr())).unwrap();
        let b = mc_integrate(&d, &cfg.with_samples(400_000), |z| Ok(z.0[0].norm_sqr())).unwrap();
        let ratio = a.stderr / b.stderr;
        assert!((ratio - 2.0).abs() < 0.1, "{ratio}");
    }
}
