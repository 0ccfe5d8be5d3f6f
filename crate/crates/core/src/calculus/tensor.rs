use crate::{CMat, CVec, C64};

/// Dense tensor of order `m` over a `dim`-dimensional space.
///
/// Data is row-major over the multi-index `(i_1, ..., i_m)`, first slot most
/// significant. Order-0 tensors hold a single scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    dim: usize,
    order: usize,
    data: Vec<C64>,
}

impl Tensor {
    pub fn zeros(dim: usize, order: usize) -> Self {
        Tensor {
            dim,
            order,
            data: vec![C64::new(0.0, 0.0); dim.pow(order as u32)],
        }
    }

    pub fn scalar(dim: usize, value: C64) -> Self {
        Tensor {
            dim,
            order: 0,
            data: vec![value],
        }
    }

    pub fn from_vector(v: &CVec) -> Self {
        Tensor {
            dim: v.len(),
            order: 1,
            data: v.iter().cloned().collect(),
        }
    }

    pub fn from_matrix(m: &CMat) -> Self {
        let n = m.nrows();
        Tensor {
            dim: n,
            order: 2,
            data: (0..n).flat_map(|i| (0..n).map(move |j| m[(i, j)])).collect(),
        }
    }

    pub fn from_data(dim: usize, order: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim.pow(order as u32), "tensor data length");
        Tensor { dim, order, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn as_scalar(&self) -> C64 {
        assert_eq!(self.order, 0, "not a scalar");
        self.data[0]
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.order];
        for slot in (0..self.order).rev() {
            idx[slot] = flat % self.dim;
            flat /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.data[self.flat_index(idx)]
    }

    /// Tensor product `self ⊗ other`.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .flat_map(|a| other.data.iter().map(move |b| a * b))
            .collect();
        Tensor {
            dim: self.dim,
            order: self.order + other.order,
            data,
        }
    }

    /// `⊗^m v`.
    pub fn tensor_power(v: &CVec, m: usize) -> Tensor {
        let base = Tensor::from_vector(v);
        (0..m).fold(Tensor::scalar(v.len(), C64::new(1.0, 0.0)), |acc, _| {
            acc.outer(&base)
        })
    }

    pub fn scale(&self, s: C64) -> Tensor {
        Tensor {
            dim: self.dim,
            order: self.order,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!((self.dim, self.order), (other.dim, other.order));
        Tensor {
            dim: self.dim,
            order: self.order,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        assert_eq!(self.data.len(), other.data.len());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Average over all permutations of the slots in `slots`.
    pub fn symmetrize_slots(&self, slots: &[usize]) -> Tensor {
        let perms = permutations(slots.len());
        let mut out = Tensor::zeros(self.dim, self.order);
        let weight = 1.0 / perms.len() as f64;
        for flat in 0..self.data.len() {
            let idx = self.multi_index(flat);
            let mut acc = C64::new(0.0, 0.0);
            for p in &perms {
                let mut j = idx.clone();
                for (a, &b) in p.iter().enumerate() {
                    j[slots[a]] = idx[slots[b]];
                }
                acc += self.get(&j);
            }
            out.data[flat] = acc * weight;
        }
        out
    }

    pub fn symmetrize(&self) -> Tensor {
        let slots: Vec<usize> = (0..self.order).collect();
        self.symmetrize_slots(&slots)
    }

    /// Apply `m` to slot `slot`: `T'[..i..] = Σ_j m[i, j] T[..j..]`.
    pub fn apply_to_slot(&self, slot: usize, m: &CMat) -> Tensor {
        let mut out = Tensor::zeros(self.dim, self.order);
        for flat in 0..self.data.len() {
            let idx = self.multi_index(flat);
            let mut j = idx.clone();
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..self.dim {
                j[slot] = k;
                acc += m[(idx[slot], k)] * self.get(&j);
            }
            out.data[flat] = acc;
        }
        out
    }

    /// Full contraction with `⊗^m ξ`: `Σ T[i_1..i_m] ξ_{i_1} ⋯ ξ_{i_m}`.
    pub fn contract_power(&self, xi: &CVec) -> C64 {
        (0..self.data.len())
            .map(|flat| {
                let idx = self.multi_index(flat);
                idx.iter().fold(self.data[flat], |acc, &i| acc * xi[i])
            })
            .sum()
    }

    /// The `m!·Id` tensor on `S_m(V) ⊗ S_m(V')`, laid out as
    /// `(k_1..k_m, i_1..i_m)`: `Σ_σ Π_a δ(i_{σ(a)}, k_a)`.
    pub fn symmetric_identity(dim: usize, m: usize) -> Tensor {
        let perms = permutations(m);
        let mut out = Tensor::zeros(dim, 2 * m);
        for flat in 0..out.data.len() {
            let idx = out.multi_index(flat);
            let (k, i) = idx.split_at(m);
            let count = perms
                .iter()
                .filter(|p| (0..m).all(|a| i[p[a]] == k[a]))
                .count();
            out.data[flat] = C64::new(count as f64, 0.0);
        }
        out
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
