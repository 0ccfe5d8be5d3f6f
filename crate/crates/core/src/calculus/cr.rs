//! The invariant Cauchy-Riemann operator `D̄ = B(z, z̄)∂̄` and its powers.

use super::cauchy::{cauchy_derivative, is_guard_error, CauchyQuadConfig};
use super::jet::{degree, taylor_jet, MultiIndices};
use super::polarized::{boundary_distance, PolarizedFn};
use super::tensor::Tensor;
use super::wirtinger::wirtinger_dbar_at;
use crate::error::{Error, Result};
use crate::jts::{bergman_closed, h_pol, DomainDescriptor, PointV};
use crate::{CMat, CVec, C64};

/// The polarized lift `(z, η) ↦ B(z, η) ∂_η F(z, η)`, with the new slot last.
///
/// Each evaluation runs one Cauchy contour per coordinate, so nesting this
/// `m` times costs `O((dim·M)^m)` evaluations of `f`; [`cr_power`] is the
/// efficient route for powers.
pub fn cr_apply(f: &PolarizedFn, dom: &DomainDescriptor, cfg: &CauchyQuadConfig) -> PolarizedFn {
    let (g, d, cfg) = (f.clone(), dom.clone(), *cfg);
    PolarizedFn::new(dom, f.order() + 1, move |z, eta| {
        let grad = wirtinger_dbar_at(&g, z, eta, &cfg)?;
        let b = bergman_closed(&d, z, eta);
        Ok(grad.apply_to_slot(grad.order() - 1, &b))
    })
}

/// `m`-fold [`cr_apply`]; the reference route for small `m`.
pub fn cr_power_nested(
    f: &PolarizedFn,
    m: usize,
    dom: &DomainDescriptor,
    cfg: &CauchyQuadConfig,
) -> PolarizedFn {
    (0..m).fold(f.clone(), |acc, _| cr_apply(&acc, dom, cfg))
}

/// A value of `D̄^m f` with its two-radius discrepancy.
#[derive(Debug, Clone, PartialEq)]
pub struct CrValue {
    pub value: Tensor,
    pub error_estimate: f64,
    pub radius: f64,
}

/// `D̄^m F` at the polarized point `(z, η)`.
///
/// The Taylor jet of `η ↦ F(z, η)` to degree `m` is measured once from
/// directional contours; `B(z, η)` is quadratic in `η` and its jet is exact.
/// Each application of `D̄` is then carried out on jets, lowering the degree
/// by one, and the result is read off at the center. The whole pipeline runs
/// at radii `ρ` and `ρ/2` for the error estimate.
pub fn cr_power_at(
    f: &PolarizedFn,
    m: usize,
    z: &CVec,
    eta: &CVec,
    cfg: &CauchyQuadConfig,
) -> Result<CrValue> {
    if m > cfg.max_order {
        return Err(Error::OrderTooHigh {
            order: m,
            max: cfg.max_order,
        });
    }
    let dom = f.domain();
    if m == 0 {
        return Ok(CrValue {
            value: f.eval(z, eta)?,
            error_estimate: 0.0,
            radius: 0.0,
        });
    }
    let idx = MultiIndices::new(dom.dim, m);
    let b_idx = MultiIndices::new(dom.dim, 2);
    let b_line = |e: &CVec| -> Result<Vec<C64>> {
        Ok(bergman_closed(dom, z, e).as_slice().to_vec())
    };
    // Unit radius: B is a polynomial, so its jet is exact at any radius.
    let b_jet = taylor_jet(&b_line, eta, &b_idx, 1.0, 8)?;
    let b_jet: Vec<CMat> = b_jet
        .into_iter()
        .map(|v| CMat::from_vec(dom.dim, dom.dim, v))
        .collect();

    let f_line = |e: &CVec| -> Result<Vec<C64>> { f.eval(z, e).map(Tensor::into_data) };
    let mut rho = cfg.initial_radius(boundary_distance(dom, z, eta))?;
    for _ in 0..=cfg.max_halvings {
        let first = match taylor_jet(&f_line, eta, &idx, rho, cfg.points) {
            Ok(j) => apply_jets(j, &b_jet, &idx, &b_idx, f.order(), dom.dim, m),
            Err(e) if is_guard_error(&e) => {
                rho *= 0.5;
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut error_estimate = 0.0;
        if cfg.check_convergence {
            let second = match taylor_jet(&f_line, eta, &idx, 0.5 * rho, cfg.points) {
                Ok(j) => apply_jets(j, &b_jet, &idx, &b_idx, f.order(), dom.dim, m),
                Err(e) if is_guard_error(&e) => {
                    rho *= 0.5;
                    continue;
                }
                Err(e) => return Err(e),
            };
            error_estimate = first.max_abs_diff(&second);
            let size = first.max_abs().max(1.0);
            if error_estimate > cfg.tolerance * size {
                return Err(Error::NonConvergent {
                    estimate: error_estimate,
                    tolerance: cfg.tolerance * size,
                });
            }
        }
        return Ok(CrValue {
            value: first,
            error_estimate,
            radius: rho,
        });
    }
    Err(Error::GuardViolation {
        halvings: cfg.max_halvings,
    })
}

/// Apply `D̄` `m` times to a jet of `F` (tensor order `order`), returning the
/// value at the center.
fn apply_jets(
    mut jet: Vec<Vec<C64>>,
    b_jet: &[CMat],
    idx: &MultiIndices,
    b_idx: &MultiIndices,
    order: usize,
    n: usize,
    m: usize,
) -> Tensor {
    let mut width = jet[0].len();
    for step in 0..m {
        let keep = m - step - 1;
        let mut next = Vec::new();
        for a in 0..idx.len() {
            let alpha = idx.get(a);
            if degree(alpha) > keep {
                break;
            }
            let mut out = vec![C64::new(0.0, 0.0); width * n];
            for bi in 0..b_idx.len() {
                let beta = b_idx.get(bi);
                if beta.iter().zip(alpha).any(|(b, a)| b > a) {
                    continue;
                }
                let bm = &b_jet[bi];
                let mut gamma: Vec<usize> = alpha.iter().zip(beta).map(|(a, b)| a - b).collect();
                for j in 0..n {
                    gamma[j] += 1;
                    let factor = gamma[j] as f64;
                    let g = &jet[idx.position(&gamma).expect("jet degree suffices")];
                    gamma[j] -= 1;
                    for (rest, gv) in g.iter().enumerate() {
                        let gv = gv * factor;
                        for i in 0..n {
                            out[rest * n + i] += bm[(i, j)] * gv;
                        }
                    }
                }
            }
            next.push(out);
        }
        jet = next;
        width *= n;
    }
    Tensor::from_data(n, order + m, jet.swap_remove(0))
}

/// `D̄^m f` as a polarized function, optionally symmetrized over the `m` new
/// slots.
pub fn cr_power(
    f: &PolarizedFn,
    m: usize,
    dom: &DomainDescriptor,
    cfg: &CauchyQuadConfig,
    symmetrize: bool,
) -> Result<PolarizedFn> {
    if m > cfg.max_order {
        return Err(Error::OrderTooHigh {
            order: m,
            max: cfg.max_order,
        });
    }
    let (g, cfg) = (f.clone(), *cfg);
    let base = f.order();
    Ok(PolarizedFn::new(dom, base + m, move |z, eta| {
        let t = cr_power_at(&g, m, z, eta, &cfg)?.value;
        if symmetrize && m > 1 {
            let slots: Vec<usize> = (base..base + m).collect();
            Ok(t.symmetrize_slots(&slots))
        } else {
            Ok(t)
        }
    }))
}

/// `D̄^m f(z)` on the disk via `(1 - |z|²)^{m+1} ∂_{z̄}^m (1 - |z|²)^{m-1} f`,
/// evaluated with one contour of order `m`.
pub fn disk_cr_formula(
    f: &PolarizedFn,
    m: usize,
    z: &PointV,
    cfg: &CauchyQuadConfig,
) -> Result<C64> {
    let dom = f.domain();
    if !dom.is_disk() {
        return Err(Error::UnsupportedDomain(format!(
            "the one-variable formula needs the disk, got {}",
            dom.label()
        )));
    }
    dom.require_inside(z)?;
    if f.order() > 0 && f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.dim(),
        });
    }
    let (zc, eta) = (z.0.clone(), z.conj());
    let h0 = h_pol(dom, &zc, &eta);
    let inner = |t: C64| -> Result<C64> {
        let e = &eta + CVec::from_element(1, t);
        let h = h_pol(dom, &zc, &e);
        Ok(f.eval(&zc, &e)?.data()[0] * h.powi(m as i32 - 1))
    };
    let rho = cfg.initial_radius(dom.boundary_distance(&z.0))?;
    let d = cauchy_derivative(inner, C64::new(0.0, 0.0), m, rho, cfg)?;
    Ok(d.value * h0.powi(m as i32 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    fn cfg() -> CauchyQuadConfig {
        CauchyQuadConfig::default()
    }

    #[test]
    fn dbar_q_is_identity() {
        for dom in [
            DomainDescriptor::disk(),
            DomainDescriptor::ball(3).unwrap(),
            DomainDescriptor::matrix(2, 3).unwrap(),
        ] {
            let z = PointV::new((0..dom.dim).map(|k| c(0.1 * k as f64 - 0.2, 0.1)).collect());
            let d = cr_apply(&PolarizedFn::q(&dom), &dom, &cfg()).restrict(&z).unwrap();
            let id = Tensor::from_matrix(&CMat::identity(dom.dim, dom.dim));
            assert!(d.max_abs_diff(&id) < 1e-9, "{}", dom.label());
            let j = cr_power(&PolarizedFn::q(&dom), 1, &dom, &cfg(), false).unwrap();
            assert!(j.restrict(&z).unwrap().max_abs_diff(&id) < 1e-9, "{}", dom.label());
        }
    }

    #[test]
    fn holomorphic_functions_are_annihilated() {
        let dom = DomainDescriptor::ball(2).unwrap();
        let f = PolarizedFn::holomorphic(&dom, 0, |z| Ok(Tensor::scalar(2, (z[0] * z[1]).exp())));
        let z = PointV::new(vec![c(0.3, 0.1), c(-0.2, 0.4)]);
        let d = cr_apply(&f, &dom, &cfg()).restrict(&z).unwrap();
        assert!(d.max_abs() < 1e-12);
    }

    #[test]
    fn disk_one_minus_modulus_squared() {
        let d = DomainDescriptor::disk();
        let f = PolarizedFn::h(&d);
        let z = PointV::from_real(&[0.5]);
        let v = cr_apply(&f, &d, &cfg()).restrict(&z).unwrap();
        assert!((v.data()[0] - c(-0.28125, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn powers_of_q_give_factorials_on_the_disk() {
        let d = DomainDescriptor::disk();
        let z = PointV::from_real(&[0.5]);
        for (m, fact) in [(1, 1.0), (2, 2.0), (3, 6.0)] {
            let f = PolarizedFn::q_power(&d, m);
            let v = cr_power(&f, m, &d, &cfg(), false).unwrap().restrict(&z).unwrap();
            assert!((v.data()[0] - c(fact, 0.0)).norm() < 1e-7, "m={m}");
        }
    }

    #[test]
    fn second_power_kills_q() {
        let b = DomainDescriptor::ball(2).unwrap();
        let z = PointV::new(vec![c(0.3, 0.1), c(-0.2, 0.4)]);
        let v = cr_power(&PolarizedFn::q(&b), 2, &b, &cfg(), false).unwrap();
        assert!(v.restrict(&z).unwrap().max_abs() < 1e-7);
    }

    #[test]
    fn jets_agree_with_nested_application() {
        let m = DomainDescriptor::matrix(2, 2).unwrap();
        let z = PointV::new(vec![c(0.2, 0.1), c(-0.1, 0.05), c(0.0, 0.3), c(0.25, -0.1)]);
        let q2 = PolarizedFn::q_power(&m, 2);
        let jets = cr_power(&q2, 2, &m, &cfg(), false).unwrap().restrict(&z).unwrap();
        let nested = cr_power_nested(&q2, 2, &m, &cfg().unchecked()).restrict(&z).unwrap();
        assert!(jets.max_abs_diff(&nested) < 1e-7);
        assert!(jets.max_abs_diff(&Tensor::symmetric_identity(4, 2)) < 1e-7);
    }

    #[test]
    fn disk_formula_examples() {
        let d = DomainDescriptor::disk();
        let q2 = PolarizedFn::q_power(&d, 2);
        let v = disk_cr_formula(&q2, 2, &PointV::from_real(&[0.5]), &cfg()).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-8);
        let q = PolarizedFn::q(&d);
        let v = disk_cr_formula(&q, 1, &PointV::new(vec![c(0.0, 0.3)]), &cfg()).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-10);
        let holo = PolarizedFn::holomorphic(&d, 0, |z| Ok(Tensor::scalar(1, z[0].exp())));
        for m in 1..4 {
            let v = disk_cr_formula(&holo, m, &PointV::from_real(&[0.4]), &cfg()).unwrap();
            assert!(v.norm() < 1e-9);
        }
    }

    #[test]
    fn order_above_maximum_is_rejected() {
        let d = DomainDescriptor::disk();
        assert!(matches!(
            cr_power(&PolarizedFn::q(&d), 7, &d, &cfg(), false),
            Err(Error::OrderTooHigh { .. })
        ));
    }
}
