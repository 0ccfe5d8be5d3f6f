use super::radial::{radial_integral, RadialConfig};
use super::sampler::{mc_integrate, IntegralEstimate, SamplerConfig, SamplingMethod};
use crate::calculus::Tensor;
use crate::error::{Error, Result};
use crate::jts::{bergman_closed, h_pol, inverse_checked, DomainDescriptor, PointV};
use crate::C64;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > -1.0) {
        return Err(Error::InvalidConfig(format!(
            "weight exponent must exceed -1, got {alpha}"
        )));
    }
    Ok(())
}

/// `h(z, z̄)` as a real number.
pub fn h_real(z: &PointV, dom: &DomainDescriptor) -> f64 {
    h_pol(dom, &z.0, &z.conj()).re
}

fn integrate<G>(
    dom: &DomainDescriptor,
    cfg: &SamplerConfig,
    radial: &RadialConfig,
    g: G,
) -> Result<IntegralEstimate>
where
    G: Fn(&PointV) -> Result<f64> + Sync,
{
    match cfg.method {
        SamplingMethod::RejectionBox => mc_integrate(dom, cfg, g),
        SamplingMethod::RadialStratified => {
            let value = radial_integral(dom, 1.0 - cfg.boundary_margin, radial, g)?;
            Ok(IntegralEstimate {
                value,
                stderr: 0.0,
                samples_used: 0,
                acceptance_rate: 1.0,
            })
        }
    }
}

/// `∫ |f|² h^α dm`.
pub fn weighted_norm<F>(
    f: F,
    alpha: f64,
    dom: &DomainDescriptor,
    cfg: &SamplerConfig,
    radial: &RadialConfig,
) -> Result<IntegralEstimate>
where
    F: Fn(&PointV) -> Result<C64> + Sync,
{
    check_alpha(alpha)?;
    integrate(dom, cfg, radial, |z| {
        Ok(f(z)?.norm_sqr() * h_real(z, dom).powf(alpha))
    })
}

/// `⟨(⊗^m B(z, z̄)⁻¹) f(z), f(z)⟩ h^α`, checked for positivity.
pub fn bergman_tensor_density(
    t: &Tensor,
    z: &PointV,
    alpha: f64,
    dom: &DomainDescriptor,
) -> Result<f64> {
    let binv = inverse_checked(&bergman_closed(dom, &z.0, &z.conj()))?;
    let tb = (0..t.order()).fold(t.clone(), |acc, s| acc.apply_to_slot(s, &binv));
    let inner: C64 = tb
        .data()
        .iter()
        .zip(t.data())
        .map(|(a, b)| a * b.conj())
        .sum();
    let scale = t.data().iter().map(|x| x.norm_sqr()).sum::<f64>();
    if inner.re < -1e-12 * scale.max(1e-300) {
        return Err(Error::NegativeIntegrand { value: inner.re });
    }
    Ok(inner.re.max(0.0) * h_real(z, dom).powf(alpha))
}

/// `∫ ⟨(⊗^m B(z, z̄)⁻¹) f(z), f(z)⟩ dμ_α(z)`.
pub fn bergman_tensor_norm<F>(
    f: F,
    alpha: f64,
    dom: &DomainDescriptor,
    cfg: &SamplerConfig,
    radial: &RadialConfig,
) -> Result<IntegralEstimate>
where
    F: Fn(&PointV) -> Result<Tensor> + Sync,
{
    check_alpha(alpha)?;
    integrate(dom, cfg, radial, |z| bergman_tensor_density(&f(z)?, z, alpha, dom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::jts::q_closed;
    use crate::CVec;
    use std::f64::consts::PI;

    fn radial_cfg() -> SamplerConfig {
        SamplerConfig {
            method: SamplingMethod::RadialStratified,
            boundary_margin: 0.0,
            ..SamplerConfig::default()
        }
    }

    #[test]
    fn constant_has_measure_of_the_weight() {
        let d = DomainDescriptor::disk();
        let one = |_: &PointV| Ok(c(1.0, 0.0));
        for alpha in [0.0, 1.0, 2.5] {
            let v = weighted_norm(one, alpha, &d, &radial_cfg(), &RadialConfig::default()).unwrap();
            assert!((v.value - PI / (alpha + 1.0)).abs() < 1e-10);
        }
        let mc = weighted_norm(one, 0.0, &d, &SamplerConfig::default(), &RadialConfig::default()).unwrap();
        assert!((mc.value - PI).abs() < 3.0 * mc.stderr);
    }

    #[test]
    fn q_norm_on_the_disk() {
        let d = DomainDescriptor::disk();
        let q = |z: &PointV| Ok(q_closed(z, &d)?.0[0]);
        let r = weighted_norm(q, 4.0, &d, &radial_cfg(), &RadialConfig::default()).unwrap();
        assert!((r.value - PI / 12.0).abs() < 1e-10);
        let mc = weighted_norm(q, 4.0, &d, &SamplerConfig::default(), &RadialConfig::default()).unwrap();
        assert!((mc.value - PI / 12.0).abs() < 3.0 * mc.stderr, "{mc:?}");
    }

    #[test]
    fn tensor_norm_of_a_constant() {
        let d = DomainDescriptor::disk();
        let e1 = |_: &PointV| Ok(Tensor::from_vector(&CVec::from_element(1, c(1.0, 0.0))));
        let r = bergman_tensor_norm(e1, 2.0, &d, &radial_cfg(), &RadialConfig::default()).unwrap();
        assert!((r.value - PI).abs() < 1e-10);
        let zero = |_: &PointV| Ok(Tensor::zeros(1, 2));
        let r = bergman_tensor_norm(zero, 2.0, &d, &radial_cfg(), &RadialConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn weight_below_minus_one_is_rejected() {
        let d = DomainDescriptor::disk();
        let r = weighted_norm(|_| Ok(c(1.0, 0.0)), -1.0, &d, &radial_cfg(), &RadialConfig::default());
        assert!(matches!(r, Err(Error::InvalidConfig(_))));
    }
}
