//! Differentiation on polarized evaluators.
//!
//! A real-analytic function `f` on the domain is handled through an
//! evaluator `F(z, η)` holomorphic in both arguments with `f(z) = F(z, z̄)`.
//! Wirtinger derivatives then become one-variable complex derivatives,
//! computed here with the trapezoid rule on small circles.

mod action;
mod adjoint;
mod cauchy;
mod cr;
mod jet;
mod polarized;
mod tensor;
mod wirtinger;

pub use action::{mobius_action, mobius_intertwining_residual, pi_nu_pplus, MobiusElement, GROUP_TOL};
pub use adjoint::{adjoint_constant_readings, adjoint_d_ball, AdjointConstantReadings};
pub use cauchy::{
    cauchy_derivative, cauchy_derivative_vec, taylor_coefficients, CauchyEstimate,
    CauchyQuadConfig,
};
pub use cr::{cr_apply, cr_power, cr_power_at, cr_power_nested, disk_cr_formula, CrValue};
pub use jet::{taylor_jet, MultiIndices};
pub use polarized::{PolarizedFn, DEFAULT_GUARD_H};
pub use tensor::Tensor;
pub use wirtinger::{
    directional_at, q_via_potential, wirtinger_d, wirtinger_d_grad, wirtinger_dbar,
    wirtinger_dbar_at, wirtinger_dbar_dir, Slot,
};
