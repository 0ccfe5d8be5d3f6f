use rand::Rng;
use symdomain::calculus::{PolarizedFn, Tensor};
use symdomain::hwv::{
    boundedness_probe, delta_signature, determinant_q_identity_check, fk_expansion_check,
    k_covariance_residual, loos_h_identity_check, nearly_holo_kernel_check, NearlyHolo,
    SymTensor,
};
use symdomain::jts::{CovectorV, KElement};
use symdomain::quadrature::{integrability_probe, ProbeConfig, Verdict};
use symdomain::{CVec, Result, C64};

use super::{cauchy, max_of, CheckInput, Measurement};
use crate::report::Status;

fn random_vec<R: Rng>(dim: usize, rng: &mut R) -> CVec {
    CVec::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Tensors of products of random linear forms, paired with random covectors.
pub fn pairing_polynomial(inp: &CheckInput) -> Result<Measurement> {
    let dim = inp.dom.dim;
    let mut rng = inp.rng();
    let mut errs = Vec::new();
    for _ in 0..inp.samples {
        let m = rng.gen_range(1..=3);
        let forms: Vec<CVec> = (0..m).map(|_| random_vec(dim, &mut rng)).collect();
        let poly = |x: &CVec| -> C64 { forms.iter().map(|l| l.dot(x)).product() };
        let phi = SymTensor::from_polynomial(dim, m, |x| Ok(poly(x)))?;
        let xi = random_vec(dim, &mut rng);
        errs.push((phi.pairing(&CovectorV(xi.clone())) - poly(&xi)).norm());
    }
    Ok(Measurement::new(max_of(errs), inp.samples))
}

pub fn k_covariance(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let mut rng = inp.rng();
    let zs = inp.points_in(1, 0.9);
    let mut errs = Vec::new();
    for z in &zs {
        let m = rng.gen_range(1..=3);
        let t = Tensor::from_data(
            dom.dim,
            m,
            (0..dom.dim.pow(m as u32))
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        );
        let phi = SymTensor::from_tensor(&t);
        let k = KElement::random(dom, &mut rng);
        errs.push(k_covariance_residual(&phi, &k, z, dom)?);
    }
    Ok(Measurement::new(max_of(errs), zs.len()))
}

/// Relative change of `sup |h^{m₁} Δ̄_m(q)|` between boundary distances
/// `1e-3` and `1e-4`.
pub fn boundary_boundedness(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let mut rng = inp.rng();
    let mut errs = Vec::new();
    let mut notes = Vec::new();
    for sig in inp.signatures(3) {
        let r = boundedness_probe(&sig, dom, [1e-3, 1e-4], inp.samples, &mut rng)?;
        notes.push(format!("{sig}: sup {:.6e} -> {:.6e}", r.sup[0], r.sup[1]));
        errs.push(if r.sup.iter().all(|s| s.is_finite()) {
            r.relative_change
        } else {
            f64::INFINITY
        });
    }
    let mut out = Measurement::new(max_of(errs), inp.samples);
    out.notes = notes;
    Ok(out)
}

/// `Δ̄_m(q)` lies in `Ker D̄^{|m|+1}`, and the probe finds its weighted norm
/// finite when `α - 2m₁ > -1`.
pub fn membership(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let alpha = inp.alpha_or(4.0);
    let zs = inp.points(0.7);
    let probe = ProbeConfig {
        sampler: symdomain::quadrature::SamplerConfig {
            seed: inp.seed,
            samples: 200_000,
            ..Default::default()
        },
        ..Default::default()
    };
    let mut errs = Vec::new();
    let mut notes = Vec::new();
    let mut status = None;
    for sig in inp.signatures(3) {
        let finite = alpha - 2.0 * sig.m1() as f64 > -1.0;
        // The threshold uses m₁; the m_r reading would admit more signatures.
        let mr = sig.padded(dom)?.last().copied().unwrap_or(0);
        if finite != (alpha - 2.0 * mr as f64 > -1.0) {
            notes.push(format!("{sig}: m₁ and m_r readings of the threshold disagree, m₁ used"));
        }
        if !finite {
            continue;
        }
        let m = sig.size();
        let top = SymTensor::from_polynomial(dom.dim, m, |x| delta_signature(&sig, x, dom))?;
        let mut coeffs: Vec<PolarizedFn> =
            (0..m).map(|k| PolarizedFn::constant(dom, Tensor::zeros(dom.dim, k))).collect();
        coeffs.push(PolarizedFn::constant(dom, top.tensor().clone()));
        let f = NearlyHolo::new(dom, coeffs)?;
        errs.push(nearly_holo_kernel_check(&f, &zs, &cauchy())?);
        let r = integrability_probe(&sig, alpha, dom, &probe)?;
        notes.push(format!("{sig}: probe {:?}, rate {:.3}", r.verdict, r.fitted_rate));
        match r.verdict {
            Verdict::Finite => {}
            Verdict::Inconclusive => status = status.or(Some(Status::Inconclusive)),
            Verdict::Divergent => status = Some(Status::Fail),
        }
    }
    let mut out = Measurement::new(max_of(errs), zs.len());
    out.notes = notes;
    out.notes.push(format!("alpha = {alpha}"));
    out.status = status;
    Ok(out)
}

pub fn loos_identity(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.95);
    let vs = inp.points_in(1, 0.5);
    let errs = zs
        .iter()
        .zip(&vs)
        .map(|(z, v)| Ok(loos_h_identity_check(v, z, dom)?.residual))
        .collect::<Result<Vec<_>>>()?;
    Ok(Measurement::new(max_of(errs), zs.len()))
}

pub fn det_q_identity(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.95);
    let errs = zs
        .iter()
        .map(|z| Ok(determinant_q_identity_check(z, dom)?.residual))
        .collect::<Result<Vec<_>>>()?;
    Ok(Measurement::new(max_of(errs), zs.len()))
}

/// Fitted coefficients of `h` against the minor-sum kernels, compared with
/// `(-1)^s`.
pub fn kernel_expansion(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let pairs: Vec<_> = inp.points(0.9).into_iter().zip(inp.points_in(1, 0.9)).collect();
    let r = fk_expansion_check(dom, &pairs)?;
    let sign_err = r
        .fitted
        .iter()
        .enumerate()
        .map(|(s, a)| (a - if s % 2 == 0 { 1.0 } else { -1.0 }).abs());
    let err = max_of(sign_err.chain([r.residual, r.imaginary_part]));
    Ok(Measurement::new(err, pairs.len()).note(format!("fitted {:?}", r.fitted)))
}
