//! The infinitesimal action of `p⁺` and the fractional-linear action of
//! `SU(n, 1)` on the ball.

use std::f64::consts::PI;

use super::cauchy::CauchyQuadConfig;
use super::cr::cr_apply;
use super::polarized::PolarizedFn;
use super::tensor::Tensor;
use super::wirtinger::{directional_at, Slot};
use crate::error::{Error, Result};
use crate::jts::{inverse_checked, quad_pol, DomainDescriptor, DomainKind, PointV};
use crate::{CMat, CVec, C64};

/// `π_ν(v) f = ∂_v f - ∂_{Q(z̄)v} f`, the second derivative taken in the
/// conjugate slot. In `V̄` coordinates `Q(z̄)v` is `½{η v η}`.
pub fn pi_nu_pplus(
    f: &PolarizedFn,
    v: &PointV,
    dom: &DomainDescriptor,
    cfg: &CauchyQuadConfig,
) -> Result<PolarizedFn> {
    dom.check_dim(&v.0)?;
    let (g, d, v, cfg) = (f.clone(), dom.clone(), v.0.clone(), *cfg);
    Ok(PolarizedFn::new(dom, f.order(), move |z, eta| {
        let along_z = directional_at(&g, Slot::Z, z, eta, &v, &cfg)?.value;
        let w = quad_pol(&d, eta, &v);
        let along_eta = directional_at(&g, Slot::Eta, z, eta, &w, &cfg)?.value;
        Ok(along_z.add(&along_eta.scale(C64::new(-1.0, 0.0))))
    }))
}

/// Defect tolerance for accepting a matrix as an element of `SU(n, 1)`.
pub const GROUP_TOL: f64 = 1e-10;

/// An element `g = [[A, b], [cᵀ, d]]` of `SU(n, 1)`, acting on the ball by
/// `g·z = (Az + b)/(c·z + d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusElement {
    m: CMat,
}

fn signature_form(n: usize) -> CMat {
    let mut j = CMat::identity(n + 1, n + 1);
    j[(n, n)] = C64::new(-1.0, 0.0);
    j
}

impl MobiusElement {
    /// Checks `g* J g = J` and `det g = 1` with `J = diag(I_n, -1)`.
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() < 2 {
            return Err(Error::NotInGroup {
                defect: f64::INFINITY,
            });
        }
        let n = m.nrows() - 1;
        let j = signature_form(n);
        let defect = (m.adjoint() * &j * &m - &j).norm() + (m.determinant() - C64::new(1.0, 0.0)).norm();
        if defect > GROUP_TOL {
            return Err(Error::NotInGroup { defect });
        }
        Ok(MobiusElement { m })
    }

    pub fn identity(n: usize) -> Self {
        MobiusElement {
            m: CMat::identity(n + 1, n + 1),
        }
    }

    /// `z ↦ e^{iθ} z`.
    pub fn rotation(n: usize, theta: f64) -> Self {
        let lambda = C64::from_polar(1.0, -(n as f64) * theta / (n as f64 + 1.0));
        let mut m = CMat::identity(n + 1, n + 1) * lambda * C64::from_polar(1.0, theta);
        m[(n, n)] = lambda;
        MobiusElement { m }
    }

    /// Unitary `u` on `C^n`, rescaled by a phase so the determinant is one.
    pub fn from_unitary(u: &CMat) -> Result<Self> {
        let n = u.nrows();
        let lambda = (-u.determinant().ln() / (n as f64 + 1.0)).exp();
        let mut m = CMat::zeros(n + 1, n + 1);
        m.view_mut((0, 0), (n, n)).copy_from(&(u * lambda));
        m[(n, n)] = lambda;
        Self::new(m)
    }

    /// The boost mapping `0` to `tanh(t) e₁`.
    pub fn boost(n: usize, t: f64) -> Self {
        let mut m = CMat::identity(n + 1, n + 1);
        let (ch, sh) = (C64::new(t.cosh(), 0.0), C64::new(t.sinh(), 0.0));
        m[(0, 0)] = ch;
        m[(n, n)] = ch;
        m[(0, n)] = sh;
        m[(n, 0)] = sh;
        MobiusElement { m }
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.nrows() - 1
    }

    pub fn compose(&self, other: &MobiusElement) -> MobiusElement {
        MobiusElement {
            m: &self.m * &other.m,
        }
    }

    /// `J g* J`.
    pub fn inverse(&self) -> MobiusElement {
        let j = signature_form(self.n());
        MobiusElement {
            m: &j * self.m.adjoint() * &j,
        }
    }

    fn parts(&self, conjugate: bool) -> (CMat, CVec, CVec, C64) {
        let n = self.n();
        let m = if conjugate {
            self.m.map(|x| x.conj())
        } else {
            self.m.clone()
        };
        let a = m.view((0, 0), (n, n)).into_owned();
        let b = m.view((0, n), (n, 1)).column(0).into_owned();
        let c = m.view((n, 0), (1, n)).transpose().column(0).into_owned();
        (a, b, c, m[(n, n)])
    }

    fn denominator(c: &CVec, d: C64, z: &CVec) -> C64 {
        c.iter().zip(z.iter()).map(|(x, y)| x * y).sum::<C64>() + d
    }

    /// `g·z`. Polarized points use [`Self::act_conj`] on the `η` slot.
    pub fn act(&self, z: &CVec) -> Result<CVec> {
        self.act_impl(z, false)
    }

    /// `conj(g·conj(η))`: the induced holomorphic map on `V̄` coordinates.
    pub fn act_conj(&self, eta: &CVec) -> Result<CVec> {
        self.act_impl(eta, true)
    }

    fn act_impl(&self, z: &CVec, conjugate: bool) -> Result<CVec> {
        let (a, b, c, d) = self.parts(conjugate);
        let den = Self::denominator(&c, d, z);
        if den.norm() < 1e-14 {
            return Err(Error::OutOfDomain);
        }
        Ok((a * z + b) / den)
    }

    /// The complex derivative `dg(z) = (A - (g·z) cᵀ)/(c·z + d)`.
    pub fn differential(&self, z: &CVec) -> Result<CMat> {
        let (a, _, c, d) = self.parts(false);
        let gz = self.act(z)?;
        let den = Self::denominator(&c, d, z);
        Ok((a - gz * c.transpose()) / den)
    }

    /// `J_g(z)^{ν/p} = (c·z + d)^{-ν}`, continued from the identity: the
    /// logarithm splits as `Log d + Log(1 + c·z/d)`, and on the ball
    /// `|c·z/d| < 1`, so only `Log d` can meet a branch cut.
    pub fn jacobian_power(&self, z: &CVec, nu: f64) -> Result<C64> {
        let (_, _, c, d) = self.parts(false);
        let ratio = Self::denominator(&c, C64::new(0.0, 0.0), z) / d;
        if ratio.norm() >= 1.0 {
            return Err(Error::OutOfDomain);
        }
        let arg = d.arg();
        if PI - arg.abs() < 1e-9 {
            return Err(Error::BranchAmbiguity { arg });
        }
        Ok((-(d.ln() + (C64::new(1.0, 0.0) + ratio).ln()) * nu).exp())
    }
}

/// `π_ν(g) f (z) = f(g⁻¹z) J_{g⁻¹}(z)^{ν/p}` for scalar `f` on the ball.
pub fn mobius_action(
    g: &MobiusElement,
    f: &PolarizedFn,
    nu: f64,
    dom: &DomainDescriptor,
) -> Result<PolarizedFn> {
    let DomainKind::Ball { n } = dom.kind else {
        return Err(Error::UnsupportedDomain(format!(
            "Möbius actions are implemented on the ball, got {}",
            dom.label()
        )));
    };
    if g.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: g.n() + 1,
        });
    }
    if f.order() != 0 {
        return Err(Error::InvalidConfig(
            "mobius_action acts on scalar functions".into(),
        ));
    }
    let (ginv, f, d) = (g.inverse(), f.clone(), dom.clone());
    Ok(PolarizedFn::new(dom, 0, move |z, eta| {
        let (w, weta) = (ginv.act(z)?, ginv.act_conj(eta)?);
        if !d.contains(&PointV(w.clone())) {
            return Err(Error::OutOfDomain);
        }
        let j = ginv.jacobian_power(z, nu)?;
        Ok(Tensor::scalar(d.dim, f.eval(&w, &weta)?.as_scalar() * j))
    }))
}

/// `|D̄(π_ν(g)f)(z) - [d(g⁻¹)(z)]⁻¹ (D̄f)(g⁻¹z) J_{g⁻¹}(z)^{ν/p}|_max`.
pub fn mobius_intertwining_residual(
    g: &MobiusElement,
    f: &PolarizedFn,
    nu: f64,
    z: &PointV,
    dom: &DomainDescriptor,
    cfg: &CauchyQuadConfig,
) -> Result<f64> {
    dom.require_inside(z)?;
    let lhs = cr_apply(&mobius_action(g, f, nu, dom)?, dom, cfg).restrict(z)?;
    let ginv = g.inverse();
    let w = PointV(ginv.act(&z.0)?);
    dom.require_inside(&w)?;
    let dfw = cr_apply(f, dom, cfg).restrict(&w)?;
    let dg = inverse_checked(&ginv.differential(&z.0)?)?;
    let rhs = CVec::from_vec(dfw.into_data());
    let rhs = dg * rhs * ginv.jacobian_power(&z.0, nu)?;
    Ok(lhs
        .data()
        .iter()
        .zip(rhs.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::jts::h_pol;

    fn cfg() -> CauchyQuadConfig {
        CauchyQuadConfig::default()
    }

    fn sample_fn(dom: &DomainDescriptor) -> PolarizedFn {
        let d = dom.clone();
        PolarizedFn::new(dom, 0, move |z, eta| {
            let h = h_pol(&d, z, eta);
            Ok(Tensor::scalar(d.dim, (z[0] + eta[0] * eta[0]) / h + z[0] * eta[0]))
        })
    }

    #[test]
    fn group_elements_validate() {
        for n in 1..=3 {
            MobiusElement::new(MobiusElement::rotation(n, 0.7).matrix().clone()).unwrap();
            MobiusElement::new(MobiusElement::boost(n, 0.4).matrix().clone()).unwrap();
        }
        assert!(matches!(
            MobiusElement::new(CMat::identity(2, 2) * c(2.0, 0.0)),
            Err(Error::NotInGroup { .. })
        ));
    }

    #[test]
    fn boost_moves_origin_and_inverse_undoes_it() {
        let g = MobiusElement::boost(2, 0.5);
        let o = CVec::zeros(2);
        let go = g.act(&o).unwrap();
        assert!((go[0] - c(0.5f64.tanh(), 0.0)).norm() < 1e-15);
        let back = g.inverse().act(&go).unwrap();
        assert!(back.norm() < 1e-15);
    }

    #[test]
    fn differential_matches_finite_difference() {
        let g = MobiusElement::boost(2, 0.3).compose(&MobiusElement::rotation(2, 0.4));
        let z = CVec::from_vec(vec![c(0.2, 0.1), c(-0.3, 0.2)]);
        let dg = g.differential(&z).unwrap();
        let h = 1e-6;
        for k in 0..2 {
            let mut zp = z.clone();
            zp[k] += c(h, 0.0);
            let mut zm = z.clone();
            zm[k] -= c(h, 0.0);
            let fd = (g.act(&zp).unwrap() - g.act(&zm).unwrap()) / c(2.0 * h, 0.0);
            assert!((fd - dg.column(k)).norm() < 1e-8);
        }
    }

    #[test]
    fn identity_leaves_functions_unchanged() {
        let d = DomainDescriptor::disk();
        let f = sample_fn(&d);
        let g = mobius_action(&MobiusElement::identity(1), &f, 3.0, &d).unwrap();
        let z = PointV::new(vec![c(0.3, -0.2)]);
        assert!((g.restrict(&z).unwrap().as_scalar() - f.restrict(&z).unwrap().as_scalar()).norm() < 1e-15);
    }

    #[test]
    fn rotations_have_unimodular_jacobian() {
        let d = DomainDescriptor::disk();
        let f = sample_fn(&d);
        let rot = MobiusElement::rotation(1, 1.1);
        let g = mobius_action(&rot, &f, 2.5, &d).unwrap();
        let z = PointV::new(vec![c(0.3, -0.2)]);
        let back = PointV(rot.inverse().act(&z.0).unwrap());
        let lhs = g.restrict(&z).unwrap().as_scalar().norm();
        let rhs = f.restrict(&back).unwrap().as_scalar().norm();
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn intertwining_on_disk_and_ball() {
        for n in [1, 2] {
            let dom = DomainDescriptor::ball(n).unwrap();
            let f = sample_fn(&dom);
            let g = MobiusElement::boost(n, 0.3).compose(&MobiusElement::rotation(n, 0.5));
            let z = PointV::new((0..n).map(|k| c(0.2 - 0.1 * k as f64, 0.15)).collect());
            let r = mobius_intertwining_residual(&g, &f, 2.0, &z, &dom, &cfg()).unwrap();
            assert!(r < 1e-8, "n={n}: {r}");
        }
    }

    #[test]
    fn pi_nu_kills_constants_and_q() {
        let dom = DomainDescriptor::matrix(2, 2).unwrap();
        let z = PointV::new(vec![c(0.2, 0.1), c(-0.1, 0.05), c(0.0, 0.3), c(0.25, -0.1)]);
        let v = PointV::new(vec![c(0.5, 0.0), c(0.1, 0.3), c(-0.2, 0.0), c(0.0, 0.4)]);
        let one = PolarizedFn::constant(&dom, Tensor::scalar(4, c(1.0, 0.0)));
        let r = pi_nu_pplus(&one, &v, &dom, &cfg()).unwrap().restrict(&z).unwrap();
        assert!(r.max_abs() < 1e-13);
        let q = PolarizedFn::q(&dom);
        let r = pi_nu_pplus(&q, &v, &dom, &cfg()).unwrap().restrict(&z).unwrap();
        assert!(r.max_abs() < 1e-9);
    }
}
