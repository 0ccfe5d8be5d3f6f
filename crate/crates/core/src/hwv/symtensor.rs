use crate::calculus::Tensor;
use crate::error::{Error, Result};
use crate::jts::{q_closed, CovectorV, DomainDescriptor, KElement, PointV};
use crate::{CVec, C64};

/// A symmetric tensor in `S_m(V)`, read as a homogeneous polynomial on `V'`
/// through `[φ, v'⊗⋯⊗v'] = φ(v')`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    tensor: Tensor,
}

impl SymTensor {
    /// Symmetrizes its input.
    pub fn from_tensor(t: &Tensor) -> Self {
        SymTensor {
            tensor: t.symmetrize(),
        }
    }

    /// The tensor of a homogeneous degree-`m` polynomial on `V'`, by
    /// polarization: `φ(x_1, …, x_m) = (1/(m! 2^m)) Σ_ε ε_1⋯ε_m P(Σ ε_i x_i)`.
    pub fn from_polynomial<P>(dim: usize, m: usize, poly: P) -> Result<Self>
    where
        P: Fn(&CVec) -> Result<C64>,
    {
        let mut t = Tensor::zeros(dim, m);
        let norm = 1.0 / ((1..=m).product::<usize>() as f64 * 2f64.powi(m as i32));
        for flat in 0..t.data().len() {
            let idx = t.multi_index(flat);
            // Only sorted multi-indices are computed; the rest are copies.
            if idx.windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            let mut acc = C64::new(0.0, 0.0);
            for signs in 0..(1usize << m) {
                let mut x = CVec::zeros(dim);
                let mut sign = 1.0;
                for (a, &i) in idx.iter().enumerate() {
                    let s = if signs >> a & 1 == 1 { -1.0 } else { 1.0 };
                    sign *= s;
                    x[i] += C64::new(s, 0.0);
                }
                acc += poly(&x)? * sign;
            }
            t.data_mut()[flat] = acc * norm;
        }
        for flat in 0..t.data().len() {
            let mut idx = t.multi_index(flat);
            idx.sort_unstable();
            let src = t.flat_index(&idx);
            let v = t.data()[src];
            t.data_mut()[flat] = v;
        }
        Ok(SymTensor { tensor: t })
    }

    pub fn order(&self) -> usize {
        self.tensor.order()
    }

    pub fn tensor(&self) -> &Tensor {
        &self.tensor
    }

    /// `[φ, ξ⊗⋯⊗ξ]`.
    pub fn pairing(&self, xi: &CovectorV) -> C64 {
        self.tensor.contract_power(&xi.0)
    }

    /// `k` acting on every slot.
    pub fn k_act(&self, k: &KElement) -> SymTensor {
        let kv = k.matrix_on_v();
        let t = (0..self.order()).fold(self.tensor.clone(), |t, s| t.apply_to_slot(s, &kv));
        SymTensor { tensor: t }
    }

    pub fn scale(&self, s: f64) -> SymTensor {
        SymTensor {
            tensor: self.tensor.scale(C64::new(s, 0.0)),
        }
    }
}

/// `|[kφ, ⊗q(z)] - [φ, ⊗q(k⁻¹z)]|`.
pub fn k_covariance_residual(
    phi: &SymTensor,
    k: &KElement,
    z: &PointV,
    dom: &DomainDescriptor,
) -> Result<f64> {
    k.validate(dom)?;
    if phi.tensor.dim() != dom.dim {
        return Err(Error::DimensionMismatch {
            expected: dom.dim,
            got: phi.tensor.dim(),
        });
    }
    let lhs = phi.k_act(k).pairing(&q_closed(z, dom)?);
    let kz = crate::jts::k_transform(&k.inverse(), z, dom)?;
    let rhs = phi.pairing(&q_closed(&kz, dom)?);
    Ok((lhs - rhs).norm())
}
