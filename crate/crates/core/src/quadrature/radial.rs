use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jts::{DomainDescriptor, DomainKind, PointV};
use crate::{CVec, C64};

/// Panels are `[1 - 2^{-k}, 1 - 2^{-k-1}]`, Gauss-Legendre on each.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialConfig {
    /// Trapezoid nodes in the angle (disk).
    pub angular: usize,
    /// Sphere directions (ball, `n ≥ 2`).
    pub directions: usize,
    pub gauss_points: usize,
    /// Geometric panels toward the boundary when no cutoff is given.
    pub max_panels: usize,
    pub seed: u64,
}

impl Default for RadialConfig {
    fn default() -> Self {
        RadialConfig {
            angular: 64,
            directions: 4096,
            gauss_points: 20,
            max_panels: 52,
            seed: 42,
        }
    }
}

/// Breakpoints `0, 1/2, 3/4, ...` up to `r_max`.
fn panels(r_max: f64, max_panels: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut a = 0.0;
    for k in 1..=max_panels {
        let b = (1.0 - 0.5f64.powi(k as i32)).min(r_max);
        if b > a {
            out.push((a, b));
        }
        a = b;
        if b >= r_max {
            break;
        }
    }
    // With no cutoff the last panel ends at 1 - 2^{-max_panels}, so no node
    // rounds onto the boundary.
    if a < r_max && r_max < 1.0 {
        out.push((a, r_max));
    }
    out
}

fn sphere_area(real_dim: usize) -> f64 {
    // |S^{2n-1}| = 2 π^n / (n-1)!
    let n = real_dim / 2;
    2.0 * PI.powi(n as i32) / (1..n).map(|k| k as f64).product::<f64>()
}

/// `∫_{‖z‖ < r_max} g dm` on the disk or a ball.
///
/// The radius is integrated on geometric Gauss-Legendre panels. On the disk
/// the angle uses the trapezoid rule (exact for trigonometric polynomials of
/// degree below `angular`); on a ball of dimension `n ≥ 2` the sphere
/// average uses a fixed seeded set of directions.
pub fn radial_integral<G>(dom: &DomainDescriptor, r_max: f64, cfg: &RadialConfig, g: G) -> Result<f64>
where
    G: Fn(&PointV) -> Result<f64>,
{
    let DomainKind::Ball { n } = dom.kind else {
        return Err(Error::UnsupportedDomain(format!(
            "radial quadrature needs the disk or a ball, got {}",
            dom.label()
        )));
    };
    let dirs: Vec<CVec> = if n == 1 {
        (0..cfg.angular)
            .map(|j| CVec::from_element(1, C64::from_polar(1.0, 2.0 * PI * j as f64 / cfg.angular as f64)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..cfg.directions)
            .map(|_| {
                let v = CVec::from_fn(n, |_, _| {
                    C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
                });
                let s = v.norm();
                v / C64::new(s, 0.0)
            })
            .collect()
    };
    let area = sphere_area(2 * n);
    let gl = GaussLegendre::new(NonZeroUsize::new(cfg.gauss_points).expect("gauss points > 0"));
    let mut err = None;
    let mut total = 0.0;
    for (a, b) in panels(r_max, cfg.max_panels) {
        total += gl.integrate(a, b, |r| {
            let mut s = 0.0;
            for d in &dirs {
                match g(&PointV(d * C64::new(r, 0.0))) {
                    Ok(v) => s += v,
                    Err(e) => {
                        err.get_or_insert(e);
                    }
                }
            }
            area * s / dirs.len() as f64 * r.powi(2 * n as i32 - 1)
        });
    }
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}
