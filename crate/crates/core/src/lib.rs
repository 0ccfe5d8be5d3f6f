//! Numerical Jordan-triple calculus on bounded symmetric domains.
//!
//! The crate covers the unit ball of `C^n` and the type-I matrix domains
//! (`p x q` complex matrices of operator norm below one):
//!
//! * [`jts`]: triple product, quadratic and Bergman operators, the kernel
//!   `h`, quasi-inverses, the potential gradient `q(z)` and the isotropy
//!   action.
//! * [`calculus`]: polarized evaluators, Cauchy-quadrature Wirtinger
//!   derivatives, the invariant Cauchy-Riemann operator and its powers, the
//!   infinitesimal action of `p⁺`, Möbius actions and the ball adjoint.
//! * [`hwv`]: signatures, determinant polynomials, symmetric tensors and
//!   nearly holomorphic functions.
//! * [`quadrature`]: Lebesgue-uniform sampling, weighted norms and
//!   integrability probes.
//!
//! The guide in `book/` walks through each of these with runnable snippets;
//! those snippets are compiled and run as doc-tests of this crate.

pub mod calculus;
mod error;
pub mod hwv;
pub mod jts;
pub mod quadrature;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;
pub type CVec = nalgebra::DVector<C64>;
pub type CMat = nalgebra::DMatrix<C64>;

/// Shorthand for `C64::new(re, im)`.
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/jordan-triples.md")]
    mod jordan_triples {}
    #[doc = include_str!("../../../book/src/polarized-calculus.md")]
    mod polarized_calculus {}
    #[doc = include_str!("../../../book/src/highest-weight-vectors.md")]
    mod highest_weight_vectors {}
    #[doc = include_str!("../../../book/src/integrability.md")]
    mod integrability {}
}
