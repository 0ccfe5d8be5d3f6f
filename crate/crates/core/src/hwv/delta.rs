use serde::{Deserialize, Serialize};

use crate::calculus::{PolarizedFn, Tensor};
use crate::error::{Error, Result};
use crate::jts::{q_closed, q_pol, CovectorV, DomainDescriptor, DomainKind, PointV};
use crate::{CVec, C64};

/// A non-increasing tuple `(m_1, ..., m_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    parts: Vec<usize>,
}

impl Signature {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSignature(parts));
        }
        Ok(Signature { parts })
    }

    /// Parse `"2,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidConfig(format!("bad signature entry {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|m| = Σ m_j`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn m1(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Parts padded with zeros to the rank of `dom`.
    pub fn padded(&self, dom: &DomainDescriptor) -> Result<Vec<usize>> {
        if self.parts.len() > dom.rank {
            return Err(Error::InvalidSignature(self.parts.clone()));
        }
        let mut p = self.parts.clone();
        p.resize(dom.rank, 0);
        Ok(p)
    }

    /// Every signature of length `rank` with `|m| ≤ max_size`.
    pub fn all_up_to(rank: usize, max_size: usize) -> Vec<Signature> {
        fn rec(rank: usize, left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Signature>) {
            if cur.len() == rank {
                out.push(Signature { parts: cur.clone() });
                return;
            }
            for x in 0..=cap.min(left) {
                cur.push(x);
                rec(rank, left - x, x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rank, max_size, max_size, &mut Vec::new(), &mut out);
        out.sort_by_key(|s| (s.size(), std::cmp::Reverse(s.parts.clone())));
        out
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `Δ_j(v)`: the coordinate `v_1` on the ball, the leading principal
/// `j x j` minor on matrices. `j` is 1-based.
pub fn delta_fundamental(j: usize, v: &CVec, dom: &DomainDescriptor) -> Result<C64> {
    dom.check_dim(v)?;
    if j == 0 || j > dom.rank {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: dom.rank,
        });
    }
    Ok(match dom.kind {
        DomainKind::Ball { .. } => v[0],
        DomainKind::MatrixI { .. } => dom.as_matrix(v).view((0, 0), (j, j)).determinant(),
    })
}

/// `Δ_m(v) = Δ_1(v)^{m_1 - m_2} ⋯ Δ_r(v)^{m_r}`.
pub fn delta_signature(sig: &Signature, v: &CVec, dom: &DomainDescriptor) -> Result<C64> {
    let parts = sig.padded(dom)?;
    let mut out = C64::new(1.0, 0.0);
    for j in 0..parts.len() {
        let next = parts.get(j + 1).copied().unwrap_or(0);
        let e = parts[j] - next;
        if e > 0 {
            out *= delta_fundamental(j + 1, v, dom)?.powi(e as i32);
        }
    }
    Ok(out)
}

/// `Δ̄_m` on `V'`. Covectors are stored in `V̄` coordinates, where the
/// conjugate polynomial is `Δ_m` applied to the coordinates themselves.
pub fn delta_bar(sig: &Signature, xi: &CovectorV, dom: &DomainDescriptor) -> Result<C64> {
    delta_signature(sig, &xi.0, dom)
}

/// `Δ̄_m(q(z))`.
pub fn compose_with_q(sig: &Signature, z: &PointV, dom: &DomainDescriptor) -> Result<C64> {
    delta_bar(sig, &q_closed(z, dom)?, dom)
}

/// `Δ̄_m(q(z))` as a polarized scalar function.
pub fn delta_q_polarized(sig: &Signature, dom: &DomainDescriptor) -> Result<PolarizedFn> {
    sig.padded(dom)?;
    let (s, d) = (sig.clone(), dom.clone());
    Ok(PolarizedFn::new(dom, 0, move |z, eta| {
        let q = q_pol(&d, z, eta)?;
        Ok(Tensor::scalar(d.dim, delta_signature(&s, &q, &d)?))
    }))
}
