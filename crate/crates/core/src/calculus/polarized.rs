use std::fmt;
use std::sync::Arc;

use super::tensor::Tensor;
use crate::error::{Error, Result};
use crate::jts::{h_pol, q_pol, DomainDescriptor, PointV};
use crate::{CVec, C64};

type EvalFn = dyn Fn(&CVec, &CVec) -> Result<Tensor> + Send + Sync;
type GuardFn = dyn Fn(&CVec, &CVec) -> bool + Send + Sync;

/// `|h(z, η)|` below which the default guard rejects a point.
pub const DEFAULT_GUARD_H: f64 = 1e-10;

/// A function `f` on the domain given by its polarization `F(z, η)`,
/// holomorphic in `z` and in the conjugate coordinates `η` separately, with
/// `f(z) = F(z, z̄)`.
///
/// Values are tensors of a fixed order over `V`. Cloning is cheap; the
/// evaluator is shared.
#[derive(Clone)]
pub struct PolarizedFn {
    dom: DomainDescriptor,
    order: usize,
    eval: Arc<EvalFn>,
    guard: Arc<GuardFn>,
}

impl fmt::Debug for PolarizedFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolarizedFn")
            .field("domain", &self.dom.label())
            .field("order", &self.order)
            .finish()
    }
}

impl PolarizedFn {
    /// Wrap an evaluator. The default guard requires `B(z, η)` to be
    /// invertible, tested through `h(z, η) != 0`.
    pub fn new<F>(dom: &DomainDescriptor, order: usize, eval: F) -> Self
    where
        F: Fn(&CVec, &CVec) -> Result<Tensor> + Send + Sync + 'static,
    {
        let d = dom.clone();
        PolarizedFn {
            dom: dom.clone(),
            order,
            eval: Arc::new(eval),
            guard: Arc::new(move |z, eta| h_pol(&d, z, eta).norm() > DEFAULT_GUARD_H),
        }
    }

    pub fn with_guard<G>(mut self, guard: G) -> Self
    where
        G: Fn(&CVec, &CVec) -> bool + Send + Sync + 'static,
    {
        self.guard = Arc::new(guard);
        self
    }

    pub fn domain(&self) -> &DomainDescriptor {
        &self.dom
    }

    pub fn dim(&self) -> usize {
        self.dom.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn guard_holds(&self, z: &CVec, eta: &CVec) -> bool {
        (self.guard)(z, eta)
    }

    /// `F(z, η)`.
    pub fn eval(&self, z: &CVec, eta: &CVec) -> Result<Tensor> {
        self.dom.check_dim(z)?;
        self.dom.check_dim(eta)?;
        if !(self.guard)(z, eta) {
            return Err(Error::GuardViolation { halvings: 0 });
        }
        let t = (self.eval)(z, eta)?;
        debug_assert_eq!(t.order(), self.order);
        Ok(t)
    }

    /// `f(z) = F(z, z̄)`.
    pub fn restrict(&self, z: &PointV) -> Result<Tensor> {
        self.eval(&z.0, &z.conj())
    }

    /// Constant tensor-valued function.
    pub fn constant(dom: &DomainDescriptor, value: Tensor) -> Self {
        assert_eq!(value.dim(), dom.dim);
        let order = value.order();
        PolarizedFn::new(dom, order, move |_, _| Ok(value.clone()))
    }

    /// A holomorphic function; its polarization ignores `η`.
    pub fn holomorphic<F>(dom: &DomainDescriptor, order: usize, f: F) -> Self
    where
        F: Fn(&CVec) -> Result<Tensor> + Send + Sync + 'static,
    {
        PolarizedFn::new(dom, order, move |z, _| f(z))
    }

    /// `q(z)` in `V̄` coordinates, polarized as `q(z, η) = η^z`.
    pub fn q(dom: &DomainDescriptor) -> Self {
        let d = dom.clone();
        PolarizedFn::new(dom, 1, move |z, eta| Ok(Tensor::from_vector(&q_pol(&d, z, eta)?)))
    }

    /// `⊗^m q`.
    pub fn q_power(dom: &DomainDescriptor, m: usize) -> Self {
        let d = dom.clone();
        PolarizedFn::new(dom, m, move |z, eta| Ok(Tensor::tensor_power(&q_pol(&d, z, eta)?, m)))
    }

    /// The scalar kernel `h(z, η)`.
    pub fn h(dom: &DomainDescriptor) -> Self {
        let d = dom.clone();
        PolarizedFn::new(dom, 0, move |z, eta| Ok(Tensor::scalar(d.dim, h_pol(&d, z, eta))))
    }

    /// Pointwise product with a scalar polarized function.
    pub fn times_scalar(&self, s: &PolarizedFn) -> Self {
        assert_eq!(s.order, 0, "scalar factor expected");
        let (a, b) = (self.clone(), s.clone());
        PolarizedFn::new(&self.dom, self.order, move |z, eta| {
            Ok(a.eval(z, eta)?.scale(b.eval(z, eta)?.as_scalar()))
        })
    }

    pub fn sum(&self, other: &PolarizedFn) -> Self {
        assert_eq!(self.order, other.order);
        let (a, b) = (self.clone(), other.clone());
        PolarizedFn::new(&self.dom, self.order, move |z, eta| {
            Ok(a.eval(z, eta)?.add(&b.eval(z, eta)?))
        })
    }

    /// Apply a scalar map to the single entry of a scalar function.
    pub fn map_scalar<F>(&self, f: F) -> Self
    where
        F: Fn(C64) -> C64 + Send + Sync + 'static,
    {
        assert_eq!(self.order, 0, "scalar function expected");
        let a = self.clone();
        let dim = self.dom.dim;
        PolarizedFn::new(&self.dom, 0, move |z, eta| {
            Ok(Tensor::scalar(dim, f(a.eval(z, eta)?.as_scalar())))
        })
    }
}

/// Radius base for derivatives at the polarized point `(z, η)`: the smaller
/// of the two distances to the boundary.
pub(crate) fn boundary_distance(dom: &DomainDescriptor, z: &CVec, eta: &CVec) -> f64 {
    dom.boundary_distance(z).min(dom.boundary_distance(eta))
}
