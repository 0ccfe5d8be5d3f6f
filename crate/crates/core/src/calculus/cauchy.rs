use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Trapezoid-rule Cauchy quadrature settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyQuadConfig {
    /// Nodes per circle.
    pub points: usize,
    /// Initial radius as a fraction of the distance to the boundary.
    pub radius_fraction: f64,
    /// Absolute initial radius; overrides `radius_fraction` when set.
    pub radius: Option<f64>,
    pub max_order: usize,
    /// How many times the radius may be halved after a guard violation.
    pub max_halvings: usize,
    /// Relative tolerance for the two-radius comparison.
    pub tolerance: f64,
    pub check_convergence: bool,
}

impl Default for CauchyQuadConfig {
    fn default() -> Self {
        CauchyQuadConfig {
            points: 32,
            radius_fraction: 0.05,
            radius: None,
            max_order: 6,
            max_halvings: 8,
            tolerance: 1e-6,
            check_convergence: true,
        }
    }
}

impl CauchyQuadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.points < 8 {
            return Err(Error::InvalidConfig(format!(
                "cauchy points must be >= 8, got {}",
                self.points
            )));
        }
        if !(self.radius_fraction > 0.0 && self.radius_fraction < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "radius fraction must lie in (0, 1), got {}",
                self.radius_fraction
            )));
        }
        if let Some(r) = self.radius {
            if !(r > 0.0) {
                return Err(Error::InvalidConfig(format!("radius must be positive, got {r}")));
            }
        }
        if self.max_order < 4 {
            return Err(Error::InvalidConfig("max_order must be at least 4".into()));
        }
        Ok(())
    }

    /// Same settings with the two-radius check switched off.
    pub fn unchecked(&self) -> Self {
        CauchyQuadConfig {
            check_convergence: false,
            ..*self
        }
    }

    pub(crate) fn initial_radius(&self, boundary_distance: f64) -> Result<f64> {
        if let Some(r) = self.radius {
            return Ok(r);
        }
        if !(boundary_distance > 0.0) {
            return Err(Error::PointOutsideDomain {
                norm: 1.0 - boundary_distance,
            });
        }
        Ok(self.radius_fraction * boundary_distance)
    }
}

/// A derivative value with the two-radius discrepancy and the radius that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchyEstimate<T> {
    pub value: T,
    pub error_estimate: f64,
    pub radius: f64,
}

/// Errors that mean "this node is too close to a singularity".
pub(crate) fn is_guard_error(e: &Error) -> bool {
    matches!(e, Error::GuardViolation { .. } | Error::SingularB { .. })
}

/// Taylor coefficients `a_0..=a_max` of a vector-valued function at `a`,
/// from one circle of radius `rho`. Entry `[k][c]` is component `c` of `a_k`.
pub fn taylor_coefficients<F>(
    f: &F,
    a: C64,
    max_k: usize,
    rho: f64,
    points: usize,
) -> Result<Vec<Vec<C64>>>
where
    F: Fn(C64) -> Result<Vec<C64>> + ?Sized,
{
    let mut coeffs: Vec<Vec<C64>> = Vec::new();
    for j in 0..points {
        let theta = 2.0 * PI * j as f64 / points as f64;
        let w = C64::from_polar(1.0, theta);
        let vals = f(a + w * rho)?;
        if coeffs.is_empty() {
            coeffs = vec![vec![C64::new(0.0, 0.0); vals.len()]; max_k + 1];
        }
        let mut wk = C64::new(1.0, 0.0);
        let winv = w.conj();
        for row in coeffs.iter_mut() {
            for (acc, v) in row.iter_mut().zip(&vals) {
                *acc += v * wk;
            }
            wk *= winv;
        }
    }
    for (k, row) in coeffs.iter_mut().enumerate() {
        let s = 1.0 / (points as f64 * rho.powi(k as i32));
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    Ok(coeffs)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `k`-th derivative at `a` of a vector-valued analytic function, with
/// radius halving on guard violations and a two-radius consistency check.
pub fn cauchy_derivative_vec<F>(
    f: &F,
    a: C64,
    k: usize,
    rho: f64,
    cfg: &CauchyQuadConfig,
) -> Result<CauchyEstimate<Vec<C64>>>
where
    F: Fn(C64) -> Result<Vec<C64>> + ?Sized,
{
    if k > cfg.max_order {
        return Err(Error::OrderTooHigh {
            order: k,
            max: cfg.max_order,
        });
    }
    let scale = factorial(k);
    let mut r = rho;
    for _ in 0..=cfg.max_halvings {
        let first = match taylor_coefficients(f, a, k, r, cfg.points) {
            Ok(c) => c,
            Err(e) if is_guard_error(&e) => {
                r *= 0.5;
                continue;
            }
            Err(e) => return Err(e),
        };
        let value: Vec<C64> = first[k].iter().map(|v| v * scale).collect();
        let mut error_estimate = 0.0;
        if cfg.check_convergence {
            let second = match taylor_coefficients(f, a, k, 0.5 * r, cfg.points) {
                Ok(c) => c,
                Err(e) if is_guard_error(&e) => {
                    r *= 0.5;
                    continue;
                }
                Err(e) => return Err(e),
            };
            error_estimate = value
                .iter()
                .zip(&second[k])
                .map(|(v, w)| (v - w * scale).norm())
                .fold(0.0, f64::max);
            let size = value.iter().map(|v| v.norm()).fold(1.0, f64::max);
            if error_estimate > cfg.tolerance * size {
                return Err(Error::NonConvergent {
                    estimate: error_estimate,
                    tolerance: cfg.tolerance * size,
                });
            }
        }
        return Ok(CauchyEstimate {
            value,
            error_estimate,
            radius: r,
        });
    }
    Err(Error::GuardViolation {
        halvings: cfg.max_halvings,
    })
}

/// `k!/(2πi) ∮ F(ζ)(ζ - a)^{-k-1} dζ` on the circle of radius `rho`.
pub fn cauchy_derivative<F>(
    f: F,
    a: C64,
    k: usize,
    rho: f64,
    cfg: &CauchyQuadConfig,
) -> Result<CauchyEstimate<C64>>
where
    F: Fn(C64) -> Result<C64>,
{
    let wrapped = |t: C64| f(t).map(|v| vec![v]);
    let est = cauchy_derivative_vec(&wrapped, a, k, rho, cfg)?;
    Ok(CauchyEstimate {
        value: est.value[0],
        error_estimate: est.error_estimate,
        radius: est.radius,
    })
}
