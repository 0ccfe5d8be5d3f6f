//! The formal adjoint of `D̄` on the ball.

use super::cauchy::CauchyQuadConfig;
use super::polarized::PolarizedFn;
use super::tensor::Tensor;
use super::wirtinger::{directional_at, Slot};
use crate::error::{Error, Result};
use crate::jts::{bergman_closed, h_pol, inverse_checked, DomainDescriptor};
use crate::{CVec, C64};

/// `Df = h^{-α} (⊗^{m-1} B) Σ_j ∂_{z_j} [h^α (I ⊗ ⊗^{m-1} B⁻¹) f]_{j, …}`
/// on the ball, with `B = B(z, z̄)` and `h = h(z, z̄)`.
///
/// The derivative index is contracted against the first tensor slot; the
/// result has order `m - 1`.
pub fn adjoint_d_ball(
    f: &PolarizedFn,
    alpha: f64,
    dom: &DomainDescriptor,
    cfg: &CauchyQuadConfig,
) -> Result<PolarizedFn> {
    if !dom.is_ball() {
        return Err(Error::UnsupportedDomain(format!(
            "the adjoint operator is implemented on the ball, got {}",
            dom.label()
        )));
    }
    let m = f.order();
    if m == 0 {
        return Err(Error::InvalidConfig("adjoint needs a tensor of order >= 1".into()));
    }
    let n = dom.dim;
    let (g, d) = (f.clone(), dom.clone());
    let weighted = PolarizedFn::new(dom, m, move |z, eta| {
        let binv = inverse_checked(&bergman_closed(&d, z, eta))?;
        let mut t = g.eval(z, eta)?;
        for slot in 1..m {
            t = t.apply_to_slot(slot, &binv);
        }
        Ok(t.scale(h_pol(&d, z, eta).powf(alpha)))
    });
    let (d, cfg) = (dom.clone(), *cfg);
    Ok(PolarizedFn::new(dom, m - 1, move |z, eta| {
        let width = n.pow(m as u32 - 1);
        let mut acc = vec![C64::new(0.0, 0.0); width];
        for j in 0..n {
            let mut e = CVec::zeros(n);
            e[j] = C64::new(1.0, 0.0);
            let dj = directional_at(&weighted, Slot::Z, z, eta, &e, &cfg)?.value;
            for (a, v) in acc.iter_mut().zip(&dj.data()[j * width..(j + 1) * width]) {
                *a += v;
            }
        }
        let mut t = Tensor::from_data(n, m - 1, acc);
        let b = bergman_closed(&d, z, eta);
        for slot in 0..m - 1 {
            t = t.apply_to_slot(slot, &b);
        }
        Ok(t.scale(h_pol(&d, z, eta).powf(-alpha)))
    }))
}

/// Candidate closed forms for the constant `C` in
/// `D^m (⊗^m e₁) = C (1 - |z|²)^{-m} z̄₁^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjointConstantReadings {
    /// `Π_{l=0}^{m-1} (2(m-1-l) - α + l)`, one index throughout.
    pub running_index: f64,
    /// `(2(m-1) - α)^m`, the inner index frozen at zero.
    pub frozen_index: f64,
}

pub fn adjoint_constant_readings(m: usize, alpha: f64) -> AdjointConstantReadings {
    let running_index = (0..m)
        .map(|l| 2.0 * (m - 1 - l) as f64 - alpha + l as f64)
        .product();
    let frozen_index = (2.0 * (m as f64 - 1.0) - alpha).powi(m as i32);
    AdjointConstantReadings {
        running_index,
        frozen_index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::jts::PointV;

    fn e1_power(dom: &DomainDescriptor, m: usize) -> PolarizedFn {
        let mut e1 = CVec::zeros(dom.dim);
        e1[0] = c(1.0, 0.0);
        PolarizedFn::constant(dom, Tensor::tensor_power(&e1, m))
    }

    #[test]
    fn first_order_constant_is_minus_alpha() {
        let b = DomainDescriptor::ball(2).unwrap();
        let cfg = CauchyQuadConfig::default();
        let d = adjoint_d_ball(&e1_power(&b, 1), 4.0, &b, &cfg).unwrap();
        let v = d.restrict(&PointV::from_real(&[0.5, 0.0])).unwrap().as_scalar();
        assert!((v - c(-8.0 / 3.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn zero_maps_to_zero() {
        let b = DomainDescriptor::ball(2).unwrap();
        let zero = PolarizedFn::constant(&b, Tensor::zeros(2, 2));
        let d = adjoint_d_ball(&zero, 4.0, &b, &CauchyQuadConfig::default()).unwrap();
        let v = d.restrict(&PointV::new(vec![c(0.1, 0.2), c(0.3, 0.0)])).unwrap();
        assert_eq!(v.max_abs(), 0.0);
    }

    #[test]
    fn second_power_matches_running_index_product() {
        let b = DomainDescriptor::ball(2).unwrap();
        let cfg = CauchyQuadConfig::default().unchecked();
        let alpha = 7.0;
        let once = adjoint_d_ball(&e1_power(&b, 2), alpha, &b, &cfg).unwrap();
        let twice = adjoint_d_ball(&once, alpha, &b, &cfg).unwrap();
        let z = PointV::new(vec![c(0.3, 0.1), c(-0.2, 0.25)]);
        let h = 1.0 - z.0.norm_squared();
        let shape = z.0[0].conj().powi(2) / (h * h);
        let measured = twice.restrict(&z).unwrap().as_scalar() / shape;
        let expect = adjoint_constant_readings(2, alpha).running_index;
        assert!((measured - c(expect, 0.0)).norm() < 1e-7 * expect.abs());
    }

    #[test]
    fn readings() {
        let r = adjoint_constant_readings(1, 4.0);
        assert_eq!((r.running_index, r.frozen_index), (-4.0, -4.0));
        let r = adjoint_constant_readings(3, 7.0);
        assert_eq!(r.running_index, -3.0 * -4.0 * -5.0);
    }
}
