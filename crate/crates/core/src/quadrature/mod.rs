//! Sampling of the domain, weighted norms and boundary integrability probes.
//!
//! All integrals are against raw Lebesgue measure on `V ≅ R^{2d}`, so disk
//! values can be compared with beta integrals directly.

mod norms;
mod probe;
mod radial;
mod sampler;

pub use norms::{bergman_tensor_density, bergman_tensor_norm, h_real, weighted_norm};
pub use probe::{integrability_probe, ProbeConfig, ProbeReport, Verdict};
pub use radial::{radial_integral, RadialConfig};
pub use sampler::{
    box_volume, mc_integrate, mc_integrate_many, sample_domain, IntegralEstimate, SampleSet,
    SamplerConfig, SamplingMethod, ACCEPTANCE_FLOOR,
};
