use thiserror::Error;

/// Errors raised by the domain calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("Bergman operator is numerically singular (pivot ratio {pivot_ratio:.3e})")]
    SingularB { pivot_ratio: f64 },

    #[error("point lies outside the domain (spectral norm {norm:.6})")]
    PointOutsideDomain { norm: f64 },

    #[error("transformation is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("matrix is not an element of SU(n,1) (defect {defect:.3e})")]
    NotInGroup { defect: f64 },

    #[error("analyticity guard violated at a quadrature node after {halvings} radius halvings")]
    GuardViolation { halvings: usize },

    #[error("quadrature did not converge: two-radius estimate {estimate:.3e} exceeds {tolerance:.3e}")]
    NonConvergent { estimate: f64, tolerance: f64 },

    #[error("branch of the Jacobian power is ambiguous (arg = {arg:.6})")]
    BranchAmbiguity { arg: f64 },

    #[error("group element maps the evaluation point out of the domain")]
    OutOfDomain,

    #[error("invalid signature {0:?}: parts must be non-increasing and match the rank")]
    InvalidSignature(Vec<usize>),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("derivative order {order} exceeds configured maximum {max}")]
    OrderTooHigh { order: usize, max: usize },

    #[error("rejection sampler acceptance rate {rate:.3e} is below the floor {floor:.1e}")]
    AcceptanceTooLow { rate: f64, floor: f64 },

    #[error("integrand is negative at an accepted sample ({value:.3e})")]
    NegativeIntegrand { value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
