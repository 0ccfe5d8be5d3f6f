use nalgebra::DMatrix;
use rand::Rng;

use super::delta::{compose_with_q, Signature};
use crate::error::{Error, Result};
use crate::jts::{h_pol, kernel_h, q_closed, DomainDescriptor, DomainKind, PointV};
use crate::{CVec, C64};

/// Both sides of an identity and their difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResidual {
    pub lhs: C64,
    pub rhs: C64,
    pub residual: f64,
}

impl IdentityResidual {
    fn new(lhs: C64, rhs: C64) -> Self {
        IdentityResidual {
            lhs,
            rhs,
            residual: (lhs - rhs).norm(),
        }
    }
}

/// `h(v, z̄^z) = h(v + z, z̄) / h(z, z̄)`, where `z̄^z = q(z)`.
pub fn loos_h_identity_check(
    v: &PointV,
    z: &PointV,
    dom: &DomainDescriptor,
) -> Result<IdentityResidual> {
    dom.check_dim(&v.0)?;
    let q = q_closed(z, dom)?;
    let lhs = h_pol(dom, &v.0, &q.0);
    let rhs = h_pol(dom, &(&v.0 + &z.0), &z.conj()) / kernel_h(z, z, dom)?.value;
    Ok(IdentityResidual::new(lhs, rhs))
}

/// `Δ̄(q(z)) = Δ̄(z) / h(z, z̄)` for the full determinant on square matrices
/// (and the coordinate `z̄_1` on the disk).
pub fn determinant_q_identity_check(z: &PointV, dom: &DomainDescriptor) -> Result<IdentityResidual> {
    let det_bar = match dom.kind {
        DomainKind::MatrixI { p, q } if p == q => dom.as_matrix(&z.0).determinant().conj(),
        DomainKind::Ball { n: 1 } => z.0[0].conj(),
        _ => {
            return Err(Error::UnsupportedDomain(format!(
                "the determinant identity needs a square matrix domain or the disk, got {}",
                dom.label()
            )))
        }
    };
    let sig = Signature::new(vec![1; dom.rank])?;
    let lhs = compose_with_q(&sig, z, dom)?;
    let rhs = det_bar / kernel_h(z, z, dom)?.value;
    Ok(IdentityResidual::new(lhs, rhs))
}

/// Least-squares fit of `h(v, w̄) = Σ_s a_s K_s(v, w̄)` over the minor-sum
/// kernels `K_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct FkReport {
    /// Fitted `a_s`, real parts.
    pub fitted: Vec<f64>,
    /// `|a_s|`, the constants once the sign is factored out.
    pub constants: Vec<f64>,
    /// Whether `sign(a_s) = (-1)^s` for every `s`.
    pub alternating: bool,
    /// Largest imaginary part among the fitted coefficients.
    pub imaginary_part: f64,
    /// Largest pointwise misfit over the samples.
    pub residual: f64,
}

fn fk_kernels(dom: &DomainDescriptor, v: &CVec, w: &CVec) -> Result<Vec<C64>> {
    let one = C64::new(1.0, 0.0);
    match dom.kind {
        DomainKind::Ball { n: 1 } => Ok(vec![one, v[0] * w[0].conj()]),
        DomainKind::MatrixI { p: 2, q: 2 } => {
            let (vm, wm) = (dom.as_matrix(v), dom.as_matrix(w));
            Ok(vec![
                one,
                (&vm * wm.adjoint()).trace(),
                vm.determinant() * wm.determinant().conj(),
            ])
        }
        _ => Err(Error::UnsupportedDomain(format!(
            "kernel expansion is implemented for the disk and 2x2 matrices, got {}",
            dom.label()
        ))),
    }
}

pub fn fk_expansion_check(dom: &DomainDescriptor, pairs: &[(PointV, PointV)]) -> Result<FkReport> {
    if pairs.is_empty() {
        return Err(Error::InvalidConfig("kernel expansion needs samples".into()));
    }
    let width = fk_kernels(dom, &pairs[0].0 .0, &pairs[0].1 .0)?.len();
    let mut a = DMatrix::<C64>::zeros(pairs.len(), width);
    let mut b = CVec::zeros(pairs.len());
    for (row, (v, w)) in pairs.iter().enumerate() {
        dom.check_dim(&v.0)?;
        dom.check_dim(&w.0)?;
        for (col, k) in fk_kernels(dom, &v.0, &w.0)?.into_iter().enumerate() {
            a[(row, col)] = k;
        }
        b[row] = kernel_h(v, w, dom)?.value;
    }
    let svd = a.clone().svd(true, true);
    let coef = svd
        .solve(&b, 1e-12)
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let residual = (a * &coef - b).iter().map(|x| x.norm()).fold(0.0, f64::max);
    let fitted: Vec<f64> = coef.iter().map(|x| x.re).collect();
    let alternating = fitted
        .iter()
        .enumerate()
        .all(|(s, &x)| x != 0.0 && (x > 0.0) == (s % 2 == 0));
    Ok(FkReport {
        constants: fitted.iter().map(|x| x.abs()).collect(),
        imaginary_part: coef.iter().map(|x| x.im.abs()).fold(0.0, f64::max),
        fitted,
        alternating,
        residual,
    })
}

/// `h(z, z̄)^{m_1} Δ̄_m(q(z))` near the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessReport {
    /// Boundary distances, coarse then fine.
    pub distances: [f64; 2],
    /// Supremum of the modulus over the matched samples at each distance.
    pub sup: [f64; 2],
    pub relative_change: f64,
    pub samples: usize,
}

impl BoundednessReport {
    pub fn stable_within(&self, rel: f64) -> bool {
        self.sup.iter().all(|s| s.is_finite()) && self.relative_change <= rel
    }
}

/// Evaluates `h^{m_1} Δ̄_m(q)` at points `(1 - δ) u` for random unit-norm
/// directions `u`, the same directions at both distances.
pub fn boundedness_probe<R: Rng + ?Sized>(
    sig: &Signature,
    dom: &DomainDescriptor,
    distances: [f64; 2],
    samples: usize,
    rng: &mut R,
) -> Result<BoundednessReport> {
    sig.padded(dom)?;
    let dirs: Vec<CVec> = (0..samples)
        .map(|_| {
            let v = CVec::from_fn(dom.dim, |_, _| {
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let n = dom.spectral_norm(&v);
            v / C64::new(n, 0.0)
        })
        .collect();
    let mut sup = [0.0; 2];
    for (slot, &delta) in distances.iter().enumerate() {
        for u in &dirs {
            let z = PointV(u * C64::new(1.0 - delta, 0.0));
            let h = kernel_h(&z, &z, dom)?.value;
            let val = compose_with_q(sig, &z, dom)? * h.powi(sig.m1() as i32);
            sup[slot] = f64::max(sup[slot], val.norm());
        }
    }
    let relative_change = (sup[1] - sup[0]).abs() / sup[0].max(f64::MIN_POSITIVE);
    Ok(BoundednessReport {
        distances,
        sup,
        relative_change,
        samples,
    })
}
