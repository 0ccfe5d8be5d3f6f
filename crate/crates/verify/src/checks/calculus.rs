use symdomain::calculus::{
    adjoint_constant_readings, adjoint_d_ball, cr_apply, cr_power, disk_cr_formula,
    mobius_intertwining_residual, pi_nu_pplus, q_via_potential, wirtinger_d, wirtinger_dbar_dir,
    MobiusElement, PolarizedFn, Tensor,
};
use symdomain::hwv::{delta_q_polarized, delta_signature, SymTensor};
use symdomain::jts::{
    bergman_closed, h_pol, inverse_checked, q_closed, quad_pol, CovectorV, DomainDescriptor,
    PointV,
};
use symdomain::{c, CMat, CVec, Error, Result, C64};

use super::{cauchy, max_of, vec_of, CheckInput, Measurement};

pub fn dbar_q_identity(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let g = cr_apply(&PolarizedFn::q(dom), dom, &cauchy());
    let id = Tensor::from_matrix(&CMat::identity(dom.dim, dom.dim));
    let zs = inp.points(0.9);
    let errs = zs
        .iter()
        .map(|z| Ok(g.restrict(z)?.max_abs_diff(&id)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Measurement::new(max_of(errs), zs.len()))
}

pub fn dbar_power_q(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.8);
    let mut errs = Vec::new();
    for m in 1..=3 {
        let g = cr_power(&PolarizedFn::q_power(dom, m), m, dom, &cauchy(), false)?;
        let target = Tensor::symmetric_identity(dom.dim, m);
        for z in &zs {
            errs.push(g.restrict(z)?.max_abs_diff(&target));
        }
    }
    Ok(Measurement::new(max_of(errs), zs.len()).note("m = 1, 2, 3"))
}

pub fn holomorphic_annihilated(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let f = PolarizedFn::holomorphic(dom, 0, |z| {
        let s: C64 = z.iter().sum();
        Ok(Tensor::scalar(z.len(), s.exp() * z[0] + z[0] * z[0]))
    });
    let g = cr_apply(&f, dom, &cauchy());
    let zs = inp.points(0.9);
    let errs = zs
        .iter()
        .map(|z| Ok(g.restrict(z)?.max_abs()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Measurement::new(max_of(errs), zs.len()))
}

/// A real-analytic test function with genuine dependence on both slots.
pub(crate) fn mixed_function(dom: &DomainDescriptor) -> PolarizedFn {
    let d = dom.clone();
    PolarizedFn::new(dom, 0, move |z, eta| {
        let h = h_pol(&d, z, eta);
        Ok(Tensor::scalar(d.dim, (z[0] + eta[0] * eta[0]) / h + z[0] * eta[0]))
    })
}

pub fn disk_formula(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    if !dom.is_disk() {
        return Err(Error::UnsupportedDomain(dom.label()));
    }
    let f = mixed_function(dom);
    let zs = inp.points(0.8);
    let mut errs = Vec::new();
    for m in 1..=3 {
        let g = cr_power(&f, m, dom, &cauchy(), false)?;
        for z in &zs {
            let a = disk_cr_formula(&f, m, z, &cauchy())?;
            errs.push((a - g.restrict(z)?.data()[0]).norm());
        }
    }
    Ok(Measurement::new(max_of(errs), zs.len()).note("m = 1, 2, 3"))
}

pub fn potential_gradient(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.9);
    let errs = zs
        .iter()
        .map(|z| Ok((q_via_potential(z, dom, &cauchy())?.0 - q_closed(z, dom)?.0).norm()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Measurement::new(max_of(errs), zs.len()))
}

/// `∂_v q = Q(q)v`, `∂_{w̄} q = B(z̄, z)⁻¹ w̄` and `(∂_v - ∂_{Q(z̄)v}) q = 0`,
/// five directions per point.
pub fn q_derivatives(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let q = PolarizedFn::q(dom);
    let zs = inp.points(0.9);
    let dirs = inp.points_in(1, 1.0);
    let mut errs = Vec::new();
    for (i, z) in zs.iter().enumerate() {
        let qz = q_closed(z, dom)?.0;
        let binv = inverse_checked(&bergman_closed(dom, &z.conj(), &z.0))?;
        for k in 0..5 {
            let v = &dirs[(i * 5 + k) % dirs.len()];
            let dv = vec_of(wirtinger_d(&q, z, v, &cauchy())?);
            errs.push((dv - quad_pol(dom, &qz, &v.0)).norm());
            let wbar = CovectorV(v.conj());
            let dw = vec_of(wirtinger_dbar_dir(&q, z, &wbar, &cauchy())?);
            errs.push((dw - &binv * &wbar.0).norm());
            errs.push(pi_nu_pplus(&q, v, dom, &cauchy())?.restrict(z)?.max_abs());
        }
    }
    Ok(Measurement::new(max_of(errs), zs.len() * 5))
}

pub fn pi_nu_annihilation(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.8);
    let dirs = inp.points_in(1, 1.0);
    let sigs = inp.signatures(3);
    let mut errs = Vec::new();
    for sig in &sigs {
        let f = delta_q_polarized(sig, dom)?;
        for (i, z) in zs.iter().enumerate() {
            for v in [&dirs[i], &dirs[(i + 1) % dirs.len()]] {
                errs.push(pi_nu_pplus(&f, v, dom, &cauchy())?.restrict(z)?.max_abs());
            }
        }
    }
    let names: Vec<String> = sigs.iter().map(|s| s.to_string()).collect();
    Ok(Measurement::new(max_of(errs), zs.len() * 2).note(format!("signatures {}", names.join(" "))))
}

/// `D̄^{|m|} Δ̄_m(q)` at every point, with the target `|m|! Δ̄_m`.
fn dbar_delta_values(inp: &CheckInput) -> Result<Vec<(Vec<Tensor>, Tensor)>> {
    let dom = &inp.dom;
    let zs = inp.points(0.7);
    let mut out = Vec::new();
    for sig in inp.signatures(3) {
        let m = sig.size();
        let g = cr_power(&delta_q_polarized(&sig, dom)?, m, dom, &cauchy(), false)?;
        let vals = zs.iter().map(|z| g.restrict(z)).collect::<Result<Vec<_>>>()?;
        let fact: f64 = (1..=m).map(|k| k as f64).product();
        let target = SymTensor::from_polynomial(dom.dim, m, |x| delta_signature(&sig, x, dom))?
            .tensor()
            .scale(c(fact, 0.0));
        out.push((vals, target));
    }
    Ok(out)
}

/// Largest entrywise variance of `D̄^{|m|} Δ̄_m(q)` across the points.
pub fn dbar_delta_variance(inp: &CheckInput) -> Result<Measurement> {
    let mut worst: f64 = 0.0;
    for (vals, _) in dbar_delta_values(inp)? {
        let n = vals.len() as f64;
        for e in 0..vals[0].data().len() {
            let mean: C64 = vals.iter().map(|t| t.data()[e]).sum::<C64>() / n;
            let var = vals.iter().map(|t| (t.data()[e] - mean).norm_sqr()).sum::<f64>() / n;
            worst = worst.max(var);
        }
    }
    Ok(Measurement::new(worst, inp.samples))
}

pub fn dbar_delta_value(inp: &CheckInput) -> Result<Measurement> {
    let mut errs = Vec::new();
    for (vals, target) in dbar_delta_values(inp)? {
        errs.extend(vals.iter().map(|t| t.max_abs_diff(&target)));
    }
    Ok(Measurement::new(max_of(errs), inp.samples))
}

pub fn dbar_delta_kernel(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.7);
    let mut errs = Vec::new();
    for sig in inp.signatures(3) {
        let g = cr_power(&delta_q_polarized(&sig, dom)?, sig.size() + 1, dom, &cauchy(), false)?;
        for z in &zs {
            errs.push(g.restrict(z)?.max_abs());
        }
    }
    Ok(Measurement::new(max_of(errs), zs.len()))
}

pub fn mobius_intertwining(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let n = dom.dim;
    let g = MobiusElement::boost(n, 0.4).compose(&MobiusElement::rotation(n, 0.7));
    let f = mixed_function(dom);
    let nu = inp.alpha_or(4.0) + dom.genus as f64;
    let zs = inp.points(0.3);
    let errs = zs
        .iter()
        .map(|z| mobius_intertwining_residual(&g, &f, nu, z, dom, &cauchy()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Measurement::new(max_of(errs), zs.len()).note(format!("nu = {nu}")))
}

/// Measured constants `C` in `D^m(⊗^m e₁) = C (1 - |z|²)^{-m} z̄₁^m`.
pub(crate) fn adjoint_constants(
    dom: &DomainDescriptor,
    m: usize,
    alpha: f64,
    zs: &[PointV],
) -> Result<Vec<C64>> {
    let mut e1 = CVec::zeros(dom.dim);
    e1[0] = c(1.0, 0.0);
    let cfg = cauchy().unchecked();
    let mut f = PolarizedFn::constant(dom, Tensor::tensor_power(&e1, m));
    for _ in 0..m {
        f = adjoint_d_ball(&f, alpha, dom, &cfg)?;
    }
    zs.iter()
        .map(|z| {
            let h = 1.0 - z.0.norm_squared();
            let shape = z.0[0].conj().powi(m as i32) / h.powi(m as i32);
            Ok(f.restrict(z)?.as_scalar() / shape)
        })
        .collect()
}

/// Points with `|z₁|` bounded below so the shape function is not tiny.
fn adjoint_points(inp: &CheckInput) -> Vec<PointV> {
    inp.points(0.7)
        .into_iter()
        .map(|mut z| {
            z.0[0] += c(0.15, 0.05);
            z
        })
        .collect()
}

/// `m = 1`: the constant is `-α`.
pub fn adjoint_first_order(inp: &CheckInput) -> Result<Measurement> {
    let alpha = inp.alpha_or(7.0);
    let cs = adjoint_constants(&inp.dom, 1, alpha, &adjoint_points(inp))?;
    let errs = cs.iter().map(|k| (k + alpha).norm() / alpha.abs());
    Ok(Measurement::new(max_of(errs), cs.len()).note(format!("alpha = {alpha}")))
}

/// `m = 2, 3`: proportionality constant consistent across points; both
/// closed-form readings reported.
pub fn adjoint_proportional(inp: &CheckInput) -> Result<Measurement> {
    let alpha = inp.alpha_or(7.0);
    let zs = adjoint_points(inp);
    let mut errs = Vec::new();
    let mut notes = Vec::new();
    for m in 2..=3 {
        let cs = adjoint_constants(&inp.dom, m, alpha, &zs)?;
        let mean = cs.iter().sum::<C64>() / cs.len() as f64;
        errs.extend(cs.iter().map(|k| (k - mean).norm() / mean.norm()));
        let r = adjoint_constant_readings(m, alpha);
        notes.push(format!(
            "m={m}: C={:.8} running-index {} frozen-index {}",
            mean.re, r.running_index, r.frozen_index
        ));
    }
    let mut out = Measurement::new(max_of(errs), zs.len());
    out.notes = notes;
    Ok(out)
}
