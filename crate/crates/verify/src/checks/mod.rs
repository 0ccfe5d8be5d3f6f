//! Check implementations, one function per registry entry.

pub(crate) mod calculus;
pub(crate) mod hwv;
pub(crate) mod jts;
pub(crate) mod meta;
pub(crate) mod quadrature;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symdomain::calculus::{CauchyQuadConfig, Tensor};
use symdomain::hwv::Signature;
use symdomain::jts::{DomainDescriptor, PointV};
use symdomain::{CMat, CVec};

use crate::report::Status;

/// What a check is run with on one domain.
#[derive(Debug, Clone)]
pub struct CheckInput {
    pub dom: DomainDescriptor,
    pub seed: u64,
    /// Identity sample points, or Monte Carlo candidates for quadrature checks.
    pub samples: usize,
    pub alpha: Option<f64>,
    pub signature: Option<Signature>,
}

impl CheckInput {
    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub(crate) fn points(&self, max_norm: f64) -> Vec<PointV> {
        self.points_in(0, max_norm)
    }

    /// Points from an independent stream of the same seed.
    pub(crate) fn points_in(&self, stream: u64, max_norm: f64) -> Vec<PointV> {
        let mut rng = self.rng();
        rng.set_stream(stream + 1);
        (0..self.samples)
            .map(|_| self.dom.random_point(&mut rng, max_norm))
            .collect()
    }

    pub(crate) fn alpha_or(&self, default: f64) -> f64 {
        self.alpha.unwrap_or(default)
    }

    /// The requested signature, or every signature with `1 ≤ |m| ≤ max_size`.
    pub(crate) fn signatures(&self, max_size: usize) -> Vec<Signature> {
        match &self.signature {
            Some(s) => vec![s.clone()],
            None => Signature::all_up_to(self.dom.rank, max_size)
                .into_iter()
                .filter(|s| s.size() > 0)
                .collect(),
        }
    }
}

/// Result of one check on one domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub max_error: f64,
    pub points: usize,
    pub notes: Vec<String>,
    /// Set by checks whose outcome is a verdict rather than an error bound.
    pub status: Option<Status>,
}

impl Measurement {
    pub(crate) fn new(max_error: f64, points: usize) -> Self {
        Measurement {
            max_error,
            points,
            notes: Vec::new(),
            status: None,
        }
    }

    pub(crate) fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

pub type CheckFn = fn(&CheckInput) -> symdomain::Result<Measurement>;

pub(crate) fn cauchy() -> CauchyQuadConfig {
    CauchyQuadConfig::default()
}

pub(crate) fn op_norm(m: &CMat) -> f64 {
    m.clone().singular_values().max()
}

pub(crate) fn vec_of(t: Tensor) -> CVec {
    CVec::from_vec(t.into_data())
}

pub(crate) fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    // NaN is sticky so a broken sample cannot hide behind a good one.
    it.into_iter().fold(0.0, |a: f64, b| {
        if a.is_nan() || b.is_nan() {
            f64::NAN
        } else {
            a.max(b)
        }
    })
}
