//! Triple product, quadratic and Bergman operators, the kernel `h` and
//! quasi-inverses.
//!
//! The `*_pol` functions are the polarized forms: every slot that is
//! conjugate-linear in the usual notation takes conjugate coordinates `η`
//! instead, which makes each map a polynomial (or rational function) with
//! real coefficients, holomorphic in all of its arguments. The point-level
//! operations conjugate once and call into them.

use nalgebra::DMatrix;

use super::domain::{CovectorV, DomainDescriptor, DomainKind, LinOpV, PointV};
use crate::error::{Error, Result};
use crate::{CMat, CVec, C64};

/// Pivot ratio below which the Bergman operator is treated as singular.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-14;

fn dot(a: &CVec, b: &CVec) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn basis(dim: usize, k: usize) -> CVec {
    let mut e = CVec::zeros(dim);
    e[k] = C64::new(1.0, 0.0);
    e
}

/// `{x ȳ z}` with `η = ȳ` given in conjugate coordinates.
pub fn triple_pol(dom: &DomainDescriptor, x: &CVec, eta: &CVec, z: &CVec) -> CVec {
    match dom.kind {
        DomainKind::Ball { .. } => z * dot(x, eta) + x * dot(z, eta),
        DomainKind::MatrixI { .. } => {
            let (xm, hm, zm) = (dom.as_matrix(x), dom.as_matrix(eta), dom.as_matrix(z));
            let ht = hm.transpose();
            let out = &xm * &ht * &zm + &zm * &ht * &xm;
            dom.from_matrix(&out)
        }
    }
}

/// `Q(x)η = ½{x η x}`.
pub fn quad_pol(dom: &DomainDescriptor, x: &CVec, eta: &CVec) -> CVec {
    triple_pol(dom, x, eta, x) * C64::new(0.5, 0.0)
}

/// Matrix of `v ↦ {z η v}`.
pub fn d_pol(dom: &DomainDescriptor, z: &CVec, eta: &CVec) -> CMat {
    let n = dom.dim;
    let mut m = CMat::zeros(n, n);
    for k in 0..n {
        m.set_column(k, &triple_pol(dom, z, eta, &basis(n, k)));
    }
    m
}

/// `B(z, η) = I - D(z, η) + Q(z)Q(η)` assembled from the triple product.
pub fn bergman_pol(dom: &DomainDescriptor, z: &CVec, eta: &CVec) -> CMat {
    let n = dom.dim;
    let mut m = CMat::identity(n, n) - d_pol(dom, z, eta);
    for k in 0..n {
        let qq = quad_pol(dom, z, &quad_pol(dom, eta, &basis(n, k)));
        let mut col = m.column_mut(k);
        col += qq;
    }
    m
}

/// Closed form of the Bergman operator.
///
/// Ball: `(1 - z·η)(I - z ηᵀ)`. Matrix: `v ↦ (I - Z Hᵀ) v (I - Hᵀ Z)`,
/// which in row-major coordinates is `(I - Z Hᵀ) ⊗ (I - Hᵀ Z)ᵀ`.
pub fn bergman_closed(dom: &DomainDescriptor, z: &CVec, eta: &CVec) -> CMat {
    match dom.kind {
        DomainKind::Ball { n } => {
            let s = C64::new(1.0, 0.0) - dot(z, eta);
            (CMat::identity(n, n) - z * eta.transpose()) * s
        }
        DomainKind::MatrixI { p, q } => {
            let (zm, hm) = (dom.as_matrix(z), dom.as_matrix(eta));
            let left = CMat::identity(p, p) - &zm * hm.transpose();
            let right = CMat::identity(q, q) - hm.transpose() * &zm;
            left.kronecker(&right.transpose())
        }
    }
}

/// `h(z, η)`: `1 - z·η` on the ball, `det(I - Z Hᵀ)` on matrices.
pub fn h_pol(dom: &DomainDescriptor, z: &CVec, eta: &CVec) -> C64 {
    match dom.kind {
        DomainKind::Ball { .. } => C64::new(1.0, 0.0) - dot(z, eta),
        DomainKind::MatrixI { p, .. } => {
            let (zm, hm) = (dom.as_matrix(z), dom.as_matrix(eta));
            (CMat::identity(p, p) - zm * hm.transpose()).determinant()
        }
    }
}

/// Solve `m x = rhs`, reporting `SingularB` when the LU pivots collapse.
pub fn solve_checked(m: &CMat, rhs: &CVec) -> Result<CVec> {
    let lu = m.clone().lu();
    let u = lu.u();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..u.nrows() {
        let a = u[(i, i)].norm();
        lo = lo.min(a);
        hi = hi.max(a);
    }
    let pivot_ratio = if hi > 0.0 { lo / hi } else { 0.0 };
    if !(pivot_ratio > SINGULAR_PIVOT_RATIO) {
        return Err(Error::SingularB { pivot_ratio });
    }
    lu.solve(rhs).ok_or(Error::SingularB { pivot_ratio })
}

pub fn inverse_checked(m: &CMat) -> Result<CMat> {
    let n = m.nrows();
    let mut inv = CMat::zeros(n, n);
    // n <= 9: column-by-column solves are cheap enough.
    for k in 0..n {
        inv.set_column(k, &solve_checked(m, &basis(n, k))?);
    }
    Ok(inv)
}

/// Quasi-inverse `x^η = B(x, η)⁻¹ (x - Q(x)η)`.
pub fn quasi_inverse_pol(dom: &DomainDescriptor, x: &CVec, eta: &CVec) -> Result<CVec> {
    let b = bergman_closed(dom, x, eta);
    let rhs = x - quad_pol(dom, x, eta);
    solve_checked(&b, &rhs)
}

/// Polarized potential gradient: `q(z, η) = η^z` computed in the conjugate
/// triple. On the diagonal `η = z̄` this is `q(z)` in `V̄` coordinates.
pub fn q_pol(dom: &DomainDescriptor, z: &CVec, eta: &CVec) -> Result<CVec> {
    quasi_inverse_pol(dom, eta, z)
}

/// A conjugate-linear map `V̄ → V`, stored as the matrix acting on the
/// conjugated coordinates of its argument: `Q ȳ = M · conj(y)`.
///
/// Composing two conjugate-linear maps `A ∘ B` gives the linear map with
/// matrix `A · conj(B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjLinearOp(pub CMat);

impl ConjLinearOp {
    pub fn apply(&self, y: &PointV) -> PointV {
        PointV(&self.0 * y.conj())
    }

    pub fn compose(&self, other: &ConjLinearOp) -> LinOpV {
        LinOpV(&self.0 * other.0.map(|c| c.conj()))
    }
}

fn check3(dom: &DomainDescriptor, a: &PointV, b: &PointV, c: &PointV) -> Result<()> {
    dom.check_dim(&a.0)?;
    dom.check_dim(&b.0)?;
    dom.check_dim(&c.0)
}

/// `{x ȳ z}`.
pub fn triple_product(
    x: &PointV,
    y: &PointV,
    z: &PointV,
    dom: &DomainDescriptor,
) -> Result<PointV> {
    check3(dom, x, y, z)?;
    Ok(PointV(triple_pol(dom, &x.0, &y.conj(), &z.0)))
}

/// `D(z, w̄) v = {z w̄ v}`.
pub fn operator_d(z: &PointV, w: &PointV, dom: &DomainDescriptor) -> Result<LinOpV> {
    check3(dom, z, w, z)?;
    Ok(LinOpV(d_pol(dom, &z.0, &w.conj())))
}

/// `Q(z) ȳ = ½{z ȳ z}`.
pub fn operator_q(z: &PointV, dom: &DomainDescriptor) -> Result<ConjLinearOp> {
    dom.check_dim(&z.0)?;
    let n = dom.dim;
    let mut m = CMat::zeros(n, n);
    for k in 0..n {
        m.set_column(k, &quad_pol(dom, &z.0, &basis(n, k)));
    }
    Ok(ConjLinearOp(m))
}

/// Polarized quadratic operator `Q(x, z) ȳ = {x ȳ z}`.
pub fn operator_q2(x: &PointV, z: &PointV, dom: &DomainDescriptor) -> Result<ConjLinearOp> {
    check3(dom, x, z, z)?;
    let n = dom.dim;
    let mut m = CMat::zeros(n, n);
    for k in 0..n {
        m.set_column(k, &triple_pol(dom, &x.0, &basis(n, k), &z.0));
    }
    Ok(ConjLinearOp(m))
}

/// `B(z, w̄) = I - D(z, w̄) + Q(z)Q(w̄)`, from the defining formula.
pub fn bergman_operator(z: &PointV, w: &PointV, dom: &DomainDescriptor) -> Result<LinOpV> {
    check3(dom, z, w, z)?;
    Ok(LinOpV(bergman_pol(dom, &z.0, &w.conj())))
}

/// Value of `h(z, w̄)`; `extrapolated` is set when either argument lies
/// outside the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: C64,
    pub extrapolated: bool,
}

pub fn kernel_h(z: &PointV, w: &PointV, dom: &DomainDescriptor) -> Result<KernelValue> {
    check3(dom, z, w, z)?;
    Ok(KernelValue {
        value: h_pol(dom, &z.0, &w.conj()),
        extrapolated: !(dom.contains(z) && dom.contains(w)),
    })
}

/// `z^{w̄} = B(z, w̄)⁻¹ (z - Q(z) w̄)`.
pub fn quasi_inverse(z: &PointV, w: &PointV, dom: &DomainDescriptor) -> Result<PointV> {
    check3(dom, z, w, z)?;
    Ok(PointV(quasi_inverse_pol(dom, &z.0, &w.conj())?))
}

/// `q(z) = z̄^z`, the quasi-inverse of `z̄` with respect to `z`.
pub fn q_closed(z: &PointV, dom: &DomainDescriptor) -> Result<CovectorV> {
    dom.require_inside(z)?;
    Ok(CovectorV(q_pol(dom, &z.0, &z.conj())?))
}

/// Normalized `K`-invariant inner product (Hilbert–Schmidt on matrices).
pub fn inner_product(z: &PointV, w: &PointV, dom: &DomainDescriptor) -> Result<C64> {
    check3(dom, z, w, z)?;
    Ok(z.0.iter().zip(w.0.iter()).map(|(a, b)| a * b.conj()).sum())
}

/// `Tr D(z, w̄) / genus`; agrees with [`inner_product`].
pub fn inner_product_via_trace(z: &PointV, w: &PointV, dom: &DomainDescriptor) -> Result<C64> {
    Ok(operator_d(z, w, dom)?.trace() / dom.genus as f64)
}

/// `D(x, η)` as a matrix, exposed for identity checks.
pub fn d_matrix(dom: &DomainDescriptor, x: &CVec, eta: &CVec) -> CMat {
    d_pol(dom, x, eta)
}

/// Matrix of the linear map `v ↦ Q(z)Q(η, ν) v` where `Q(η, ν)` is the
/// polarized quadratic operator of the conjugate triple.
pub fn qq_polarized(dom: &DomainDescriptor, z: &CVec, eta: &CVec, nu: &CVec) -> CMat {
    let n = dom.dim;
    let mut m = CMat::zeros(n, n);
    for k in 0..n {
        let inner = triple_pol(dom, eta, &basis(n, k), nu);
        m.set_column(k, &quad_pol(dom, z, &inner));
    }
    m
}

/// Matrix of a linear map given as a closure on coordinate vectors.
pub fn matrix_of<F: Fn(&CVec) -> CVec>(dim: usize, f: F) -> CMat {
    let mut m = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        m.set_column(k, &f(&basis(dim, k)));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    fn approx(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn disk_triple_product_is_twice_the_product() {
        let d = DomainDescriptor::disk();
        let one = PointV::from_real(&[1.0]);
        let t = triple_product(&one, &one, &one, &d).unwrap();
        assert!(approx(t.0[0], c(2.0, 0.0), 1e-15));
    }

    #[test]
    fn frame_elements_are_tripotents() {
        for dom in [
            DomainDescriptor::disk(),
            DomainDescriptor::ball(3).unwrap(),
            DomainDescriptor::matrix(2, 2).unwrap(),
            DomainDescriptor::matrix(2, 3).unwrap(),
        ] {
            for e in &dom.frame {
                let t = triple_product(e, e, e, &dom).unwrap();
                assert!((t.0 - &e.0 * c(2.0, 0.0)).norm() < 1e-14);
                let genus = operator_d(e, e, &dom).unwrap().trace()
                    / inner_product(e, e, &dom).unwrap();
                assert!(approx(genus, c(dom.genus as f64, 0.0), 1e-13));
            }
        }
    }

    #[test]
    fn ball_triple_product_mixes_coordinates() {
        let b = DomainDescriptor::ball(2).unwrap();
        let e1 = PointV::from_real(&[1.0, 0.0]);
        let e2 = PointV::from_real(&[0.0, 1.0]);
        let t = triple_product(&e1, &e1, &e2, &b).unwrap();
        assert!((t.0 - e2.0).norm() < 1e-15);
    }

    #[test]
    fn matrix_triple_product_on_e11() {
        let m = DomainDescriptor::matrix(2, 2).unwrap();
        let e11 = PointV::from_real(&[1.0, 0.0, 0.0, 0.0]);
        let t = triple_product(&e11, &e11, &e11, &m).unwrap();
        assert!((t.0 - &e11.0 * c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn operator_d_examples() {
        let d = DomainDescriptor::disk();
        let one = PointV::from_real(&[1.0]);
        assert!(approx(operator_d(&one, &one, &d).unwrap().0[(0, 0)], c(2.0, 0.0), 1e-15));
        let m = DomainDescriptor::matrix(2, 2).unwrap();
        let zero = PointV::zeros(4);
        let z = PointV::new(vec![c(0.3, 0.1), c(0.0, 0.0), c(0.0, 0.0), c(-0.2, 0.4)]);
        assert!(operator_d(&zero, &z, &m).unwrap().0.norm() == 0.0);
        // diag(a, b) acting on E11 gives 2|a|² E11
        let e11 = PointV::from_real(&[1.0, 0.0, 0.0, 0.0]);
        let out = operator_d(&z, &z, &m).unwrap().apply(&e11);
        let a2 = z.0[0].norm_sqr();
        assert!((out.0 - &e11.0 * c(2.0 * a2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn operator_q_examples() {
        let d = DomainDescriptor::disk();
        let z = PointV::from_real(&[0.5]);
        let one = PointV::from_real(&[1.0]);
        let v = operator_q(&z, &d).unwrap().apply(&one);
        assert!(approx(v.0[0], c(0.25, 0.0), 1e-15));
        let m = DomainDescriptor::matrix(2, 2).unwrap();
        let e11 = PointV::from_real(&[1.0, 0.0, 0.0, 0.0]);
        let v = operator_q(&e11, &m).unwrap().apply(&e11);
        assert!((v.0 - &e11.0).norm() < 1e-15);
        assert!(operator_q(&PointV::zeros(4), &m).unwrap().0.norm() == 0.0);
        // Q2(z, z) = 2 Q(z)
        let z = PointV::new(vec![c(0.3, 0.1), c(0.1, 0.0), c(0.2, -0.3), c(-0.2, 0.4)]);
        let q2 = operator_q2(&z, &z, &m).unwrap();
        let q = operator_q(&z, &m).unwrap();
        assert!((q2.0 - q.0 * c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn bergman_operator_examples() {
        let d = DomainDescriptor::disk();
        let z = PointV::from_real(&[0.5]);
        assert!(approx(bergman_operator(&z, &z, &d).unwrap().0[(0, 0)], c(0.5625, 0.0), 1e-15));
        let b = DomainDescriptor::ball(2).unwrap();
        let zero = PointV::zeros(2);
        assert!((bergman_operator(&zero, &zero, &b).unwrap().0 - CMat::identity(2, 2)).norm() == 0.0);
        let z = PointV::from_real(&[0.5, 0.0]);
        let bz = bergman_operator(&z, &z, &b).unwrap().0;
        let mut ev: Vec<f64> = bz.diagonal().iter().map(|x| x.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] - 9.0 / 16.0).abs() < 1e-15 && (ev[1] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_defining_formula() {
        let z = vec![c(0.2, 0.1), c(-0.3, 0.2), c(0.1, 0.05), c(0.0, -0.25), c(0.15, 0.0), c(0.1, 0.1)];
        let eta = vec![c(0.1, -0.3), c(0.2, 0.2), c(-0.1, 0.0), c(0.3, 0.1), c(0.0, 0.2), c(-0.2, 0.1)];
        for dom in [
            DomainDescriptor::ball(3).unwrap(),
            DomainDescriptor::matrix(2, 3).unwrap(),
            DomainDescriptor::matrix(3, 2).unwrap(),
        ] {
            let zv = CVec::from_vec(z[..dom.dim].to_vec());
            let ev = CVec::from_vec(eta[..dom.dim].to_vec());
            let diff = bergman_pol(&dom, &zv, &ev) - bergman_closed(&dom, &zv, &ev);
            assert!(diff.norm() < 1e-14, "{}", dom.label());
        }
    }

    #[test]
    fn kernel_examples() {
        let d = DomainDescriptor::disk();
        let z = PointV::from_real(&[0.5]);
        let h = kernel_h(&z, &z, &d).unwrap();
        assert!(approx(h.value, c(0.75, 0.0), 1e-15) && !h.extrapolated);
        let det = bergman_operator(&z, &z, &d).unwrap().determinant();
        assert!(approx(det, h.value * h.value, 1e-15));
        let outside = PointV::from_real(&[1.5]);
        assert!(kernel_h(&outside, &z, &d).unwrap().extrapolated);
        let m = DomainDescriptor::matrix(2, 2).unwrap();
        let (a, b) = (c(0.3, 0.4), c(-0.1, 0.6));
        let z = PointV::new(vec![a, c(0.0, 0.0), c(0.0, 0.0), b]);
        let h = kernel_h(&z, &z, &m).unwrap().value;
        let expect = (1.0 - a.norm_sqr()) * (1.0 - b.norm_sqr());
        assert!(approx(h, c(expect, 0.0), 1e-15));
        let det = bergman_operator(&z, &z, &m).unwrap().determinant();
        assert!(approx(det, h.powi(4), 1e-14));
        assert!(approx(kernel_h(&PointV::zeros(4), &z, &m).unwrap().value, c(1.0, 0.0), 0.0));
    }

    #[test]
    fn quasi_inverse_examples() {
        let d = DomainDescriptor::disk();
        let z = PointV::from_real(&[0.5]);
        let q = q_closed(&z, &d).unwrap();
        assert!(approx(q.0[0], c(2.0 / 3.0, 0.0), 1e-15));
        assert!(q_closed(&PointV::zeros(1), &d).unwrap().0[0].norm() == 0.0);
        let m = DomainDescriptor::matrix(2, 2).unwrap();
        let w = PointV::new(vec![c(0.2, 0.3), c(0.1, 0.0), c(-0.4, 0.1), c(0.0, 0.2)]);
        let qi = quasi_inverse(&w, &PointV::zeros(4), &m).unwrap();
        assert!((qi.0 - &w.0).norm() < 1e-15);
        let half = PointV::from_real(&[0.5, 0.0, 0.0, 0.0]);
        let qi = quasi_inverse(&half, &half, &m).unwrap();
        assert!((qi.0 - PointV::from_real(&[2.0 / 3.0, 0.0, 0.0, 0.0]).0).norm() < 1e-15);
        let b = DomainDescriptor::ball(2).unwrap();
        let q = q_closed(&PointV::from_real(&[0.5, 0.0]), &b).unwrap();
        assert!((q.0 - PointV::from_real(&[2.0 / 3.0, 0.0]).0).norm() < 1e-15);
    }

    #[test]
    fn singular_bergman_operator_is_reported() {
        let d = DomainDescriptor::disk();
        let one = PointV::from_real(&[1.0]);
        assert!(matches!(quasi_inverse(&one, &one, &d), Err(Error::SingularB { .. })));
        assert!(matches!(q_closed(&one, &d), Err(Error::PointOutsideDomain { .. })));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let b = DomainDescriptor::ball(2).unwrap();
        let x = PointV::zeros(2);
        let y = PointV::zeros(3);
        assert!(matches!(
            triple_product(&x, &y, &x, &b),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn inner_product_examples() {
        let m = DomainDescriptor::matrix(2, 3).unwrap();
        let e = &m.frame[0];
        assert!(approx(inner_product(e, e, &m).unwrap(), c(1.0, 0.0), 0.0));
        let z = PointV::new((0..6).map(|k| c(0.1 * k as f64, -0.05 * k as f64)).collect());
        let w = PointV::new((0..6).map(|k| c(0.2 - 0.03 * k as f64, 0.07)).collect());
        assert!(approx(inner_product(&z, &PointV::zeros(6), &m).unwrap(), c(0.0, 0.0), 0.0));
        let hs = (m.as_matrix(&z.0) * m.as_matrix(&w.0).adjoint()).trace();
        assert!(approx(inner_product(&z, &w, &m).unwrap(), hs, 1e-15));
        assert!(approx(inner_product_via_trace(&z, &w, &m).unwrap(), hs, 1e-15));
    }
}
