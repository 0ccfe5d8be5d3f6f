//! Signatures, the determinant polynomials `Δ_m`, symmetric tensors and
//! nearly holomorphic functions.

mod checks;
mod delta;
mod nearly;
mod symtensor;

pub use checks::{
    boundedness_probe, determinant_q_identity_check, fk_expansion_check, loos_h_identity_check,
    BoundednessReport, FkReport, IdentityResidual,
};
pub use delta::{
    compose_with_q, delta_bar, delta_fundamental, delta_q_polarized, delta_signature, Signature,
};
pub use nearly::{nearly_holo_kernel_check, NearlyHolo};
pub use symtensor::{k_covariance_residual, SymTensor};
