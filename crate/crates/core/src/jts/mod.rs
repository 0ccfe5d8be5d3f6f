//! Hermitian Jordan triple systems of the unit ball and the type-I matrix
//! domains.

mod domain;
mod ktrans;
mod ops;

pub use domain::{
    CovectorV, DomainConfig, DomainDescriptor, DomainKind, LinOpV, PointV, MAX_BALL_DIM,
    MAX_MATRIX_SIDE,
};
pub use ktrans::{k_transform, k_transform_dual, KElement, UNITARY_TOL};
pub use ops::{
    bergman_closed, bergman_operator, bergman_pol, d_matrix, d_pol, h_pol, inner_product,
    inner_product_via_trace, inverse_checked, kernel_h, matrix_of, operator_d, operator_q,
    operator_q2, q_closed, q_pol, qq_polarized, quad_pol, quasi_inverse, quasi_inverse_pol,
    solve_checked, triple_pol, triple_product, ConjLinearOp, KernelValue, SINGULAR_PIVOT_RATIO,
};
