use rand::Rng;
use rand_distr::StandardNormal;

use super::domain::{CovectorV, DomainDescriptor, DomainKind, PointV};
use crate::error::{Error, Result};
use crate::{CMat, C64};

/// Unitarity tolerance for user-supplied `K` elements.
pub const UNITARY_TOL: f64 = 1e-10;

/// An element of the isotropy group `K`.
#[derive(Debug, Clone, PartialEq)]
pub enum KElement {
    /// `z ↦ U z` on the ball.
    Ball(CMat),
    /// `z ↦ U z W*` on `p x q` matrices.
    Matrix { u: CMat, w: CMat },
}

fn unitarity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    if m.ncols() != n {
        return f64::INFINITY;
    }
    (m.adjoint() * m - CMat::identity(n, n)).norm()
}

impl KElement {
    pub fn identity(dom: &DomainDescriptor) -> Self {
        match dom.kind {
            DomainKind::Ball { n } => KElement::Ball(CMat::identity(n, n)),
            DomainKind::MatrixI { p, q } => KElement::Matrix {
                u: CMat::identity(p, p),
                w: CMat::identity(q, q),
            },
        }
    }

    /// Haar-distributed element built from QR of Gaussian matrices.
    pub fn random<R: Rng + ?Sized>(dom: &DomainDescriptor, rng: &mut R) -> Self {
        match dom.kind {
            DomainKind::Ball { n } => KElement::Ball(random_unitary(n, rng)),
            DomainKind::MatrixI { p, q } => KElement::Matrix {
                u: random_unitary(p, rng),
                w: random_unitary(q, rng),
            },
        }
    }

    pub fn validate(&self, dom: &DomainDescriptor) -> Result<()> {
        let (defect, shape_ok) = match (self, dom.kind) {
            (KElement::Ball(u), DomainKind::Ball { n }) => (unitarity_defect(u), u.nrows() == n),
            (KElement::Matrix { u, w }, DomainKind::MatrixI { p, q }) => (
                unitarity_defect(u).max(unitarity_defect(w)),
                u.nrows() == p && w.nrows() == q,
            ),
            _ => {
                return Err(Error::UnsupportedDomain(
                    "K element does not match the domain kind".into(),
                ))
            }
        };
        if !shape_ok {
            return Err(Error::DimensionMismatch {
                expected: dom.dim,
                got: self.matrix_on_v().nrows(),
            });
        }
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(())
    }

    /// The action on `V` as a `dim x dim` matrix in the row-major basis.
    pub fn matrix_on_v(&self) -> CMat {
        match self {
            KElement::Ball(u) => u.clone(),
            KElement::Matrix { u, w } => u.kronecker(&w.map(|c| c.conj())),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            KElement::Ball(u) => KElement::Ball(u.adjoint()),
            KElement::Matrix { u, w } => KElement::Matrix {
                u: u.adjoint(),
                w: w.adjoint(),
            },
        }
    }
}

fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let g = CMat::from_fn(n, n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    // Fix column phases so the distribution is Haar.
    let mut q = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// `z ↦ k z`. Fails with `NotUnitary` when `k` is not a triple automorphism.
pub fn k_transform(k: &KElement, z: &PointV, dom: &DomainDescriptor) -> Result<PointV> {
    k.validate(dom)?;
    dom.check_dim(&z.0)?;
    Ok(PointV(k.matrix_on_v() * &z.0))
}

/// Dual action `(k⁻¹)'` on `V'`. In `V̄` coordinates this is the conjugate
/// matrix of `k`.
pub fn k_transform_dual(k: &KElement, xi: &CovectorV, dom: &DomainDescriptor) -> Result<CovectorV> {
    k.validate(dom)?;
    dom.check_dim(&xi.0)?;
    Ok(CovectorV(k.matrix_on_v().map(|c| c.conj()) * &xi.0))
}
