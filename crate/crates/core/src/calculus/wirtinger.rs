//! Wirtinger derivatives of polarized functions by Cauchy quadrature.

use super::cauchy::{cauchy_derivative_vec, CauchyQuadConfig, CauchyEstimate};
use super::polarized::{boundary_distance, PolarizedFn};
use super::tensor::Tensor;
use crate::error::Result;
use crate::jts::{bergman_closed, CovectorV, DomainDescriptor, PointV};
use crate::{CVec, C64};

fn unit(dim: usize, k: usize) -> CVec {
    let mut e = CVec::zeros(dim);
    e[k] = C64::new(1.0, 0.0);
    e
}

/// Which slot of `F(z, η)` a directional derivative moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Z,
    Eta,
}

/// Directional derivative `d/dt F(z + t v, η)` or `d/dt F(z, η + t v)` at
/// `t = 0`.
pub fn directional_at(
    f: &PolarizedFn,
    slot: Slot,
    z: &CVec,
    eta: &CVec,
    dir: &CVec,
    cfg: &CauchyQuadConfig,
) -> Result<CauchyEstimate<Tensor>> {
    let dom = f.domain();
    dom.check_dim(dir)?;
    let norm = dir.norm();
    if norm == 0.0 {
        return Ok(CauchyEstimate {
            value: Tensor::zeros(f.dim(), f.order()),
            error_estimate: 0.0,
            radius: 0.0,
        });
    }
    let rho = cfg.initial_radius(boundary_distance(dom, z, eta))? / norm;
    let line = |t: C64| -> Result<Vec<C64>> {
        let moved = match slot {
            Slot::Z => f.eval(&(z + dir * t), eta),
            Slot::Eta => f.eval(z, &(eta + dir * t)),
        };
        moved.map(Tensor::into_data)
    };
    let est = cauchy_derivative_vec(&line, C64::new(0.0, 0.0), 1, rho, cfg)?;
    Ok(CauchyEstimate {
        value: Tensor::from_data(f.dim(), f.order(), est.value),
        error_estimate: est.error_estimate,
        radius: est.radius,
    })
}

/// Gradient in one slot, appended as a new last tensor slot.
fn gradient_at(
    f: &PolarizedFn,
    slot: Slot,
    z: &CVec,
    eta: &CVec,
    cfg: &CauchyQuadConfig,
) -> Result<Tensor> {
    let n = f.dim();
    let parts = (0..n)
        .map(|j| directional_at(f, slot, z, eta, &unit(n, j), cfg).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    let len = parts[0].data().len();
    let mut data = Vec::with_capacity(len * n);
    for flat in 0..len {
        for part in &parts {
            data.push(part.data()[flat]);
        }
    }
    Ok(Tensor::from_data(n, f.order() + 1, data))
}

/// `∂̄f` at the polarized point `(z, η)`: the new slot holds `∂F/∂η_j`.
pub fn wirtinger_dbar_at(
    f: &PolarizedFn,
    z: &CVec,
    eta: &CVec,
    cfg: &CauchyQuadConfig,
) -> Result<Tensor> {
    gradient_at(f, Slot::Eta, z, eta, cfg)
}

/// `∂̄f(z)`, of order one higher than `f`.
pub fn wirtinger_dbar(f: &PolarizedFn, z: &PointV, cfg: &CauchyQuadConfig) -> Result<Tensor> {
    f.domain().require_inside(z)?;
    wirtinger_dbar_at(f, &z.0, &z.conj(), cfg)
}

/// `∂f(z)` with the gradient in a new last slot.
pub fn wirtinger_d_grad(f: &PolarizedFn, z: &PointV, cfg: &CauchyQuadConfig) -> Result<Tensor> {
    f.domain().require_inside(z)?;
    gradient_at(f, Slot::Z, &z.0, &z.conj(), cfg)
}

/// `∂_v f(z)`, the holomorphic derivative along `v`.
pub fn wirtinger_d(
    f: &PolarizedFn,
    z: &PointV,
    v: &PointV,
    cfg: &CauchyQuadConfig,
) -> Result<Tensor> {
    f.domain().require_inside(z)?;
    Ok(directional_at(f, Slot::Z, &z.0, &z.conj(), &v.0, cfg)?.value)
}

/// `∂_{w̄} f(z)`: the antiholomorphic derivative along `w̄`, with `w̄` given
/// by its `V̄` coordinates.
pub fn wirtinger_dbar_dir(
    f: &PolarizedFn,
    z: &PointV,
    wbar: &CovectorV,
    cfg: &CauchyQuadConfig,
) -> Result<Tensor> {
    f.domain().require_inside(z)?;
    Ok(directional_at(f, Slot::Eta, &z.0, &z.conj(), &wbar.0, cfg)?.value)
}

/// `q(z)` as the holomorphic gradient of the potential
/// `-(1/p) log det B(z, z̄)`, differentiated numerically in `z` with `z̄`
/// frozen.
pub fn q_via_potential(
    z: &PointV,
    dom: &DomainDescriptor,
    cfg: &CauchyQuadConfig,
) -> Result<CovectorV> {
    dom.require_inside(z)?;
    let genus = dom.genus as f64;
    let d = dom.clone();
    let potential = PolarizedFn::new(dom, 0, move |z, eta| {
        let det = bergman_closed(&d, z, eta).determinant();
        Ok(Tensor::scalar(d.dim, -det.ln() / genus))
    });
    let grad = wirtinger_d_grad(&potential, z, cfg)?;
    Ok(CovectorV(CVec::from_vec(grad.into_data())))
}
