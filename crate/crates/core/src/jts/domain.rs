use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{CVec, C64};

/// Largest ball dimension the library accepts.
pub const MAX_BALL_DIM: usize = 4;
/// Largest matrix side the library accepts.
pub const MAX_MATRIX_SIDE: usize = 3;

/// Which bounded symmetric domain is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    /// Unit ball of `C^n` (the disk for `n = 1`).
    Ball { n: usize },
    /// Operator-norm unit ball of complex `p x q` matrices.
    MatrixI { p: usize, q: usize },
}

/// Flat configuration record a domain is built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainConfig {
    pub kind: String,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub q: Option<usize>,
}

/// An element of `V` in the fixed orthonormal basis.
///
/// Matrix points are stored row-major: entry `(i, j)` of a `p x q` matrix
/// lives at index `i * q + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointV(pub CVec);

/// An element of `V'`, stored in conjugate (`V̄`) coordinates.
///
/// The pairing with a point is the plain bilinear sum `Σ ξ_i v_i`, so the
/// covector of `w` is `conj(w)` and `pairing(covector_of(w), v) = <v, w>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovectorV(pub CVec);

/// Dense linear operator on `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinOpV(pub DMatrix<C64>);

impl PointV {
    pub fn new(coords: Vec<C64>) -> Self {
        PointV(CVec::from_vec(coords))
    }

    pub fn from_real(coords: &[f64]) -> Self {
        PointV(CVec::from_iterator(
            coords.len(),
            coords.iter().map(|&x| C64::new(x, 0.0)),
        ))
    }

    pub fn zeros(dim: usize) -> Self {
        PointV(CVec::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &CVec {
        &self.0
    }

    /// Coordinates of `z̄` in `V̄`.
    pub fn conj(&self) -> CVec {
        self.0.map(|c| c.conj())
    }
}

impl CovectorV {
    pub fn of_point(w: &PointV) -> Self {
        CovectorV(w.conj())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn pairing(&self, v: &PointV) -> C64 {
        self.0.iter().zip(v.0.iter()).map(|(a, b)| a * b).sum()
    }
}

impl LinOpV {
    pub fn identity(dim: usize) -> Self {
        LinOpV(DMatrix::identity(dim, dim))
    }

    pub fn apply(&self, v: &PointV) -> PointV {
        PointV(&self.0 * &v.0)
    }

    pub fn compose(&self, other: &LinOpV) -> LinOpV {
        LinOpV(&self.0 * &other.0)
    }

    pub fn determinant(&self) -> C64 {
        self.0.determinant()
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }
}

/// A supported bounded symmetric domain together with its structure
/// constants and a frame of minimal tripotents.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainDescriptor {
    pub kind: DomainKind,
    pub dim: usize,
    pub rank: usize,
    pub genus: usize,
    pub frame: Vec<PointV>,
}

impl DomainDescriptor {
    pub fn ball(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_BALL_DIM {
            return Err(Error::UnsupportedDomain(format!(
                "ball dimension {n} (supported 1..={MAX_BALL_DIM})"
            )));
        }
        let mut e1 = CVec::zeros(n);
        e1[0] = C64::new(1.0, 0.0);
        Ok(DomainDescriptor {
            kind: DomainKind::Ball { n },
            dim: n,
            rank: 1,
            genus: n + 1,
            frame: vec![PointV(e1)],
        })
    }

    pub fn disk() -> Self {
        Self::ball(1).expect("disk is always supported")
    }

    pub fn matrix(p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 || p > MAX_MATRIX_SIDE || q > MAX_MATRIX_SIDE {
            return Err(Error::UnsupportedDomain(format!(
                "matrix domain {p}x{q} (supported sides 1..={MAX_MATRIX_SIDE})"
            )));
        }
        let rank = p.min(q);
        let frame = (0..rank)
            .map(|j| {
                let mut e = CVec::zeros(p * q);
                e[j * q + j] = C64::new(1.0, 0.0);
                PointV(e)
            })
            .collect();
        Ok(DomainDescriptor {
            kind: DomainKind::MatrixI { p, q },
            dim: p * q,
            rank,
            genus: p + q,
            frame,
        })
    }

    pub fn from_config(cfg: &DomainConfig) -> Result<Self> {
        match cfg.kind.as_str() {
            "ball" | "disk" => Self::ball(cfg.n.unwrap_or(1)),
            "matrix" => {
                let p = cfg
                    .p
                    .ok_or_else(|| Error::InvalidConfig("matrix domain needs p".into()))?;
                let q = cfg.q.unwrap_or(p);
                Self::matrix(p, q)
            }
            other => Err(Error::InvalidConfig(format!("unknown domain kind {other:?}"))),
        }
    }

    pub fn config(&self) -> DomainConfig {
        match self.kind {
            DomainKind::Ball { n } => DomainConfig {
                kind: "ball".into(),
                n: Some(n),
                p: None,
                q: None,
            },
            DomainKind::MatrixI { p, q } => DomainConfig {
                kind: "matrix".into(),
                n: None,
                p: Some(p),
                q: Some(q),
            },
        }
    }

    pub fn is_disk(&self) -> bool {
        matches!(self.kind, DomainKind::Ball { n: 1 })
    }

    pub fn is_ball(&self) -> bool {
        matches!(self.kind, DomainKind::Ball { .. })
    }

    pub fn label(&self) -> String {
        match self.kind {
            DomainKind::Ball { n: 1 } => "disk".into(),
            DomainKind::Ball { n } => format!("ball{n}"),
            DomainKind::MatrixI { p, q } => format!("matrix{p}x{q}"),
        }
    }

    pub fn check_dim(&self, v: &CVec) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Reshape matrix-domain coordinates into a `p x q` matrix.
    pub fn as_matrix(&self, v: &CVec) -> DMatrix<C64> {
        match self.kind {
            DomainKind::MatrixI { p, q } => DMatrix::from_row_slice(p, q, v.as_slice()),
            DomainKind::Ball { n } => DMatrix::from_row_slice(1, n, v.as_slice()),
        }
    }

    pub fn from_matrix(&self, m: &DMatrix<C64>) -> CVec {
        let (rows, cols) = m.shape();
        CVec::from_iterator(
            rows * cols,
            (0..rows).flat_map(|i| (0..cols).map(move |j| m[(i, j)])),
        )
    }

    /// Spectral norm: Euclidean length on the ball, largest singular value on
    /// matrices. Works for `V` and `V̄` coordinates alike.
    pub fn spectral_norm(&self, v: &CVec) -> f64 {
        match self.kind {
            DomainKind::Ball { .. } => v.norm(),
            DomainKind::MatrixI { p, q } => spectral_norm_matrix(v.as_slice(), p, q),
        }
    }

    pub fn contains(&self, z: &PointV) -> bool {
        z.dim() == self.dim && self.spectral_norm(&z.0) < 1.0
    }

    /// `1 - ‖z‖`, positive inside the domain.
    pub fn boundary_distance(&self, v: &CVec) -> f64 {
        1.0 - self.spectral_norm(v)
    }

    pub fn require_inside(&self, z: &PointV) -> Result<()> {
        self.check_dim(&z.0)?;
        let norm = self.spectral_norm(&z.0);
        if norm >= 1.0 {
            return Err(Error::PointOutsideDomain { norm });
        }
        Ok(())
    }

    /// A random point with norm uniform in `[0, max_norm)` along a random
    /// box direction. Not Lebesgue-uniform; used for identity sampling.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R, max_norm: f64) -> PointV {
        let v = CVec::from_fn(self.dim, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let s = rng.gen_range(0.0..max_norm) / self.spectral_norm(&v);
        PointV(v * C64::new(s, 0.0))
    }
}

fn spectral_norm_matrix(a: &[C64], p: usize, q: usize) -> f64 {
    // Gram matrix on the shorter side.
    let k = p.min(q);
    let gram = |i: usize, j: usize| -> C64 {
        if p <= q {
            (0..q).map(|l| a[i * q + l] * a[j * q + l].conj()).sum()
        } else {
            (0..p).map(|l| a[l * q + i].conj() * a[l * q + j]).sum()
        }
    };
    let lambda_max = match k {
        1 => gram(0, 0).re,
        2 => {
            let (g00, g11, g01) = (gram(0, 0).re, gram(1, 1).re, gram(0, 1));
            let tr = g00 + g11;
            let det = g00 * g11 - g01.norm_sqr();
            let disc = (tr * tr - 4.0 * det).max(0.0);
            0.5 * (tr + disc.sqrt())
        }
        _ => {
            let m = DMatrix::from_row_slice(p, q, a);
            let s = m.singular_values();
            return s.iter().cloned().fold(0.0, f64::max);
        }
    };
    lambda_max.max(0.0).sqrt()
}
