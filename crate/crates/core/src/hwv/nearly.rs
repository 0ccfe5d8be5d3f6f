use crate::calculus::{cr_power, CauchyQuadConfig, PolarizedFn, Tensor};
use crate::error::{Error, Result};
use crate::jts::{q_pol, DomainDescriptor, PointV};

/// `f(z) = Σ_{k=0}^m [g_k(z), ⊗^k q(z)]` with holomorphic `g_k` valued in
/// `S_k(V)`.
#[derive(Debug, Clone)]
pub struct NearlyHolo {
    dom: DomainDescriptor,
    coeffs: Vec<PolarizedFn>,
}

impl NearlyHolo {
    /// `coeffs[k]` must have tensor order `k`; its `η` argument is ignored.
    pub fn new(dom: &DomainDescriptor, coeffs: Vec<PolarizedFn>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidConfig("nearly holomorphic function needs a coefficient".into()));
        }
        for (k, g) in coeffs.iter().enumerate() {
            if g.order() != k || g.dim() != dom.dim {
                return Err(Error::InvalidConfig(format!(
                    "coefficient {k} has order {} on dimension {}",
                    g.order(),
                    g.dim()
                )));
            }
        }
        Ok(NearlyHolo {
            dom: dom.clone(),
            coeffs,
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_polarized(&self) -> PolarizedFn {
        let (coeffs, d) = (self.coeffs.clone(), self.dom.clone());
        PolarizedFn::new(&self.dom, 0, move |z, eta| {
            let q = q_pol(&d, z, eta)?;
            let mut acc = crate::C64::new(0.0, 0.0);
            for g in &coeffs {
                acc += g.eval(z, eta)?.contract_power(&q);
            }
            Ok(Tensor::scalar(d.dim, acc))
        })
    }
}

/// `max |D̄^{m+1} f|` over `points`.
pub fn nearly_holo_kernel_check(
    f: &NearlyHolo,
    points: &[PointV],
    cfg: &CauchyQuadConfig,
) -> Result<f64> {
    let g = cr_power(&f.to_polarized(), f.degree() + 1, &f.dom, cfg, false)?;
    let mut worst: f64 = 0.0;
    for z in points {
        f.dom.require_inside(z)?;
        worst = worst.max(g.restrict(z)?.max_abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::calculus::cr_apply;
    use crate::hwv::{delta_q_polarized, delta_signature, Signature};

    #[test]
    fn one_plus_z_q_on_the_disk() {
        let d = DomainDescriptor::disk();
        let g0 = PolarizedFn::constant(&d, Tensor::scalar(1, c(1.0, 0.0)));
        let g1 = PolarizedFn::holomorphic(&d, 1, |z| Ok(Tensor::from_vector(z)));
        let f = NearlyHolo::new(&d, vec![g0, g1]).unwrap();
        let z = PointV::from_real(&[0.5]);
        let cfg = CauchyQuadConfig::default();
        assert!(nearly_holo_kernel_check(&f, &[z.clone()], &cfg).unwrap() < 1e-7);
        let once = cr_apply(&f.to_polarized(), &d, &cfg).restrict(&z).unwrap();
        assert!((once.data()[0] - c(0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn holomorphic_functions_are_degree_zero() {
        let d = DomainDescriptor::ball(2).unwrap();
        let g0 = PolarizedFn::holomorphic(&d, 0, |z| Ok(Tensor::scalar(2, z[0] * z[1] + z[0])));
        let f = NearlyHolo::new(&d, vec![g0]).unwrap();
        let z = PointV::new(vec![c(0.2, 0.1), c(-0.3, 0.2)]);
        assert!(nearly_holo_kernel_check(&f, &[z], &CauchyQuadConfig::default()).unwrap() < 1e-12);
    }

    #[test]
    fn delta_of_q_is_nearly_holomorphic() {
        let m = DomainDescriptor::matrix(2, 2).unwrap();
        let sig = Signature::new(vec![1, 1]).unwrap();
        let poly = crate::hwv::SymTensor::from_polynomial(4, 2, |x| delta_signature(&sig, x, &m)).unwrap();
        let zero = |k: usize| PolarizedFn::constant(&m, Tensor::zeros(4, k));
        let top = PolarizedFn::constant(&m, poly.tensor().clone());
        let f = NearlyHolo::new(&m, vec![zero(0), zero(1), top]).unwrap();
        let z = PointV::new(vec![c(0.2, 0.1), c(-0.1, 0.05), c(0.0, 0.3), c(0.25, -0.1)]);
        let direct = delta_q_polarized(&sig, &m).unwrap().restrict(&z).unwrap().as_scalar();
        let via = f.to_polarized().restrict(&z).unwrap().as_scalar();
        assert!((direct - via).norm() < 1e-14);
        let r = nearly_holo_kernel_check(&f, &[z], &CauchyQuadConfig::default()).unwrap();
        assert!(r < 1e-5);
    }
}
