use std::f64::consts::PI;

use symdomain::hwv::{compose_with_q, Signature};
use symdomain::jts::{q_closed, DomainDescriptor, PointV};
use symdomain::quadrature::{
    h_real, integrability_probe, mc_integrate, weighted_norm, IntegralEstimate, ProbeConfig,
    RadialConfig, SamplerConfig, SamplingMethod, Verdict,
};
use symdomain::{Error, Result, C64};

use super::{max_of, CheckInput, Measurement};
use crate::report::Status;

/// `(α, m)` pairs with finite `‖q^m‖²_{μ_α}` on the disk.
pub(crate) const DISK_NORM_CASES: [(f64, usize); 3] = [(0.0, 0), (4.0, 1), (6.0, 2)];

/// `π B(m + 1, α - 2m + 1)`, the disk value of `‖q^m‖²_{μ_α}`.
pub fn disk_q_norm_exact(alpha: f64, m: usize) -> f64 {
    let b = alpha - 2.0 * m as f64 + 1.0;
    // B(m+1, b) = m! / (b (b+1) ⋯ (b+m))
    let fact: f64 = (1..=m).map(|k| k as f64).product();
    let denom: f64 = (0..=m).map(|k| b + k as f64).product();
    PI * fact / denom
}

fn require_disk(dom: &DomainDescriptor) -> Result<()> {
    if dom.is_disk() {
        Ok(())
    } else {
        Err(Error::UnsupportedDomain(dom.label()))
    }
}

fn sampler(inp: &CheckInput) -> SamplerConfig {
    SamplerConfig {
        seed: inp.seed,
        samples: inp.samples,
        ..SamplerConfig::default()
    }
}

fn radial_sampler() -> SamplerConfig {
    SamplerConfig {
        method: SamplingMethod::RadialStratified,
        boundary_margin: 0.0,
        ..SamplerConfig::default()
    }
}

pub(crate) fn q_power(dom: &DomainDescriptor, m: usize) -> impl Fn(&PointV) -> Result<C64> + Sync + '_ {
    move |z| Ok(q_closed(z, dom)?.0[0].powi(m as i32))
}

fn disk_cases(inp: &CheckInput) -> Vec<(f64, usize)> {
    match (inp.alpha, &inp.signature) {
        (Some(a), Some(s)) => vec![(a, s.m1())],
        _ => DISK_NORM_CASES.to_vec(),
    }
}

/// Two independent seeds with half the samples each agree within `k`
/// combined standard errors; the error is `|a - b| / σ`.
pub fn seed_halves(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let half = sampler(inp).with_samples(inp.samples / 2);
    let mut errs = Vec::new();
    for (alpha, m) in disk_cases(inp) {
        let a = weighted_norm(q_power(dom, m), alpha, dom, &half, &RadialConfig::default())?;
        let b = weighted_norm(
            q_power(dom, m),
            alpha,
            dom,
            &half.with_seed(inp.seed.wrapping_add(1)),
            &RadialConfig::default(),
        )?;
        errs.push(z_score(&a, &b));
    }
    Ok(Measurement::new(max_of(errs), inp.samples).note("error in combined standard errors"))
}

fn z_score(a: &IntegralEstimate, b: &IntegralEstimate) -> f64 {
    (a.value - b.value).abs() / (a.stderr.powi(2) + b.stderr.powi(2)).sqrt()
}

pub fn radial_vs_mc(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    require_disk(dom)?;
    let mut errs = Vec::new();
    for (alpha, m) in disk_cases(inp) {
        let mc = weighted_norm(q_power(dom, m), alpha, dom, &sampler(inp), &RadialConfig::default())?;
        let r = weighted_norm(q_power(dom, m), alpha, dom, &radial_sampler(), &RadialConfig::default())?;
        errs.push(z_score(&mc, &r));
    }
    Ok(Measurement::new(max_of(errs), inp.samples).note("error in standard errors"))
}

/// Monte Carlo norms against the beta integral, in standard errors.
pub fn disk_norm_mc(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    require_disk(dom)?;
    let mut errs = Vec::new();
    let mut notes = Vec::new();
    for (alpha, m) in disk_cases(inp) {
        let mc = weighted_norm(q_power(dom, m), alpha, dom, &sampler(inp), &RadialConfig::default())?;
        let exact = disk_q_norm_exact(alpha, m);
        notes.push(format!("(α={alpha}, m={m}): {:.6} ± {:.1e} vs {exact:.6}", mc.value, mc.stderr));
        errs.push((mc.value - exact).abs() / mc.stderr);
    }
    let mut out = Measurement::new(max_of(errs), inp.samples);
    out.notes = notes;
    Ok(out)
}

/// Radial quadrature norms against the beta integral, relative error.
pub fn disk_norm_radial(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    require_disk(dom)?;
    let mut errs = Vec::new();
    for (alpha, m) in disk_cases(inp) {
        let r = weighted_norm(q_power(dom, m), alpha, dom, &radial_sampler(), &RadialConfig::default())?;
        let exact = disk_q_norm_exact(alpha, m);
        errs.push((r.value - exact).abs() / exact);
    }
    Ok(Measurement::new(max_of(errs), 0))
}

/// Monotonicity in `m₁`: the pointwise ratio of `|Δ̄_m(q)|² h^α` between
/// `m₁ + 1` and `m₁` must be at least one on matched samples. The error is
/// `max(0, 1 - min ratio)`.
pub fn monotone_in_m1(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    require_disk(dom)?;
    let alpha = inp.alpha_or(6.0);
    let top = ((alpha + 1.0) / 2.0).ceil() as usize;
    let cfg = sampler(inp);
    let mut worst: f64 = 0.0;
    let mut norms = Vec::new();
    for m in 0..top {
        let lo = sig(m);
        let hi = sig(m + 1);
        // Smallest ratio over the sample set.
        let ratio = symdomain::quadrature::sample_domain(dom, &cfg.with_samples(cfg.samples.min(100_000)))?
            .points
            .iter()
            .map(|z| Ok(compose_with_q(&hi, z, dom)?.norm_sqr() / compose_with_q(&lo, z, dom)?.norm_sqr()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(1.0 - ratio);
        norms.push(disk_q_norm_exact(alpha, m));
    }
    let increasing = norms.windows(2).all(|w| w[1] >= w[0]);
    Ok(Measurement::new(worst.max(0.0), cfg.samples.min(100_000)).note(format!(
        "α={alpha}: closed-form norms for m₁ = 0..{} are {:?}; increasing: {increasing}",
        top - 1,
        norms
    )))
}

fn sig(m: usize) -> Signature {
    Signature::new(if m == 0 { vec![] } else { vec![m] }).expect("one-part signature")
}

/// Probe verdicts against the threshold `(α + 1)/2 > m₁`.
///
/// A mismatch fails, an inconclusive verdict is reported as such, and the
/// numeric error is the relative misfit of the divergence rate.
pub fn probe_threshold(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let alpha = inp.alpha_or(2.0);
    let sigs = match &inp.signature {
        Some(s) => vec![s.clone()],
        None => vec![sig(1), sig(2)],
    };
    let cfg = ProbeConfig {
        sampler: sampler(inp),
        ..ProbeConfig::default()
    };
    let mut errs = vec![0.0];
    let mut notes = Vec::new();
    let mut status = None;
    for s in &sigs {
        let expected = if (alpha + 1.0) / 2.0 > s.m1() as f64 {
            Verdict::Finite
        } else {
            Verdict::Divergent
        };
        let r = integrability_probe(s, alpha, dom, &cfg)?;
        notes.push(format!(
            "α={alpha} m₁={}: {:?} (expected {:?}), rate {:.4} vs predicted {}",
            s.m1(),
            r.verdict,
            expected,
            r.fitted_rate,
            r.predicted_rate
        ));
        if r.verdict == Verdict::Inconclusive {
            status = status.or(Some(Status::Inconclusive));
        } else if r.verdict != expected {
            status = Some(Status::Fail);
        } else if expected == Verdict::Divergent {
            errs.push(r.rate_error());
        }
    }
    let mut out = Measurement::new(max_of(errs), sigs.len());
    out.notes = notes;
    out.status = status;
    Ok(out)
}

/// `|stderr(N/4) / stderr(N) - 2| / 2`.
pub fn stderr_scaling(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let cfg = sampler(inp);
    let g = |z: &PointV| Ok(z.0.norm_squared() * h_real(z, dom));
    let a = mc_integrate(dom, &cfg.with_samples(inp.samples / 4), g)?;
    let b = mc_integrate(dom, &cfg, g)?;
    let ratio = a.stderr / b.stderr;
    Ok(Measurement::new((ratio - 2.0).abs() / 2.0, inp.samples).note(format!("ratio {ratio:.4}")))
}
