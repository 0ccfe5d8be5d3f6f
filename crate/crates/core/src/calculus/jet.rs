//! Taylor jets of several-variable analytic maps from one-variable Cauchy
//! contours along integer directions.
//!
//! Along the line `x0 + tβ` the `k`-th Taylor coefficient is the homogeneous
//! part `P_k(β) = Σ_{|α|=k} c_α β^α`. The `α`-th forward difference of a
//! homogeneous polynomial of degree `|α|` at the origin is `α! c_α`, so
//! `c_α = (1/α!) Σ_{0≠β≤α} (-1)^{|α-β|} Π_j C(α_j, β_j) P_{|α|}(β)`.

use std::collections::HashMap;

use super::cauchy::taylor_coefficients;
use crate::error::Result;
use crate::{CVec, C64};

/// All multi-indices in `n` variables of total degree at most `max_degree`,
/// in order of increasing degree.
#[derive(Debug, Clone)]
pub struct MultiIndices {
    n: usize,
    list: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl MultiIndices {
    pub fn new(n: usize, max_degree: usize) -> Self {
        let mut list = vec![vec![0; n]];
        let mut frontier = vec![vec![0; n]];
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for a in &frontier {
                // Extend only at or after the last nonzero position so each
                // index is produced once.
                let start = a.iter().rposition(|&x| x > 0).unwrap_or(0);
                for j in start..n {
                    let mut b = a.clone();
                    b[j] += 1;
                    next.push(b);
                }
            }
            list.extend(next.iter().cloned());
            frontier = next;
        }
        let index = list.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        MultiIndices { n, list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.list[i]
    }

    pub fn position(&self, a: &[usize]) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn vars(&self) -> usize {
        self.n
    }
}

pub fn degree(a: &[usize]) -> usize {
    a.iter().sum()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Jet coefficients `c_α` (one vector per multi-index of `idx`) of
/// `f(x0 + δ)`, using contours of radius `rho / |β|` along each direction.
pub fn taylor_jet<F>(
    f: &F,
    x0: &CVec,
    idx: &MultiIndices,
    rho: f64,
    points: usize,
) -> Result<Vec<Vec<C64>>>
where
    F: Fn(&CVec) -> Result<Vec<C64>> + ?Sized,
{
    let n = idx.vars();
    let max_degree = (0..idx.len()).map(|i| degree(idx.get(i))).max().unwrap_or(0);
    let f0 = f(x0)?;
    let width = f0.len();
    // homogeneous[i][k] = P_k(β_i)
    let mut homogeneous: Vec<Vec<Vec<C64>>> = vec![Vec::new(); idx.len()];
    for (i, slot) in homogeneous.iter_mut().enumerate().skip(1) {
        let beta = idx.get(i);
        let dir = CVec::from_iterator(n, beta.iter().map(|&b| C64::new(b as f64, 0.0)));
        let r = rho / dir.norm();
        let line = |t: C64| f(&(x0 + &dir * t));
        *slot = taylor_coefficients(&line, C64::new(0.0, 0.0), max_degree, r, points)?;
    }
    let mut jet = vec![vec![C64::new(0.0, 0.0); width]; idx.len()];
    jet[0] = f0;
    for (i, coeff) in jet.iter_mut().enumerate().skip(1) {
        let alpha = idx.get(i);
        let k = degree(alpha);
        let alpha_fact: f64 = alpha.iter().map(|&a| factorial(a)).product();
        // Iterate over 0 ≠ β ≤ α.
        let mut beta = vec![0usize; n];
        loop {
            let mut j = 0;
            while j < n {
                if beta[j] < alpha[j] {
                    beta[j] += 1;
                    break;
                }
                beta[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
            let w: f64 = alpha
                .iter()
                .zip(&beta)
                .map(|(&a, &b)| binomial(a, b))
                .product();
            let sign = if (k - degree(&beta)) % 2 == 0 { 1.0 } else { -1.0 };
            let b_pos = idx.position(&beta).expect("β ≤ α lies in the index set");
            for (acc, p) in coeff.iter_mut().zip(&homogeneous[b_pos][k]) {
                *acc += p * (sign * w / alpha_fact);
            }
        }
    }
    Ok(jet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn index_set_sizes() {
        assert_eq!(MultiIndices::new(1, 4).len(), 5);
        assert_eq!(MultiIndices::new(2, 2).len(), 6);
        assert_eq!(MultiIndices::new(4, 4).len(), 70);
    }

    #[test]
    fn jet_of_a_polynomial_is_its_coefficients() {
        // f(x, y) = 3 + 2x - y + 5xy + x²y
        let f = |v: &CVec| -> Result<Vec<C64>> {
            let (x, y) = (v[0], v[1]);
            Ok(vec![c(3.0, 0.0) + x * 2.0 - y + x * y * 5.0 + x * x * y])
        };
        let idx = MultiIndices::new(2, 3);
        let x0 = CVec::zeros(2);
        let jet = taylor_jet(&f, &x0, &idx, 0.5, 16).unwrap();
        let expect = [
            (vec![0, 0], 3.0),
            (vec![1, 0], 2.0),
            (vec![0, 1], -1.0),
            (vec![1, 1], 5.0),
            (vec![2, 1], 1.0),
            (vec![0, 2], 0.0),
            (vec![3, 0], 0.0),
        ];
        for (a, v) in expect {
            let got = jet[idx.position(&a).unwrap()][0];
            assert!((got - c(v, 0.0)).norm() < 1e-12, "{a:?}: {got}");
        }
    }

    #[test]
    fn jet_of_geometric_series_in_two_variables() {
        // 1/(1 - x - y) has c_α = |α|! / α!
        let one = c(1.0, 0.0);
        let f = |v: &CVec| -> Result<Vec<C64>> { Ok(vec![one / (one - v[0] - v[1])]) };
        let idx = MultiIndices::new(2, 4);
        let jet = taylor_jet(&f, &CVec::zeros(2), &idx, 0.1, 32).unwrap();
        for i in 0..idx.len() {
            let a = idx.get(i);
            let expect = factorial(degree(a)) / (factorial(a[0]) * factorial(a[1]));
            assert!((jet[i][0] - c(expect, 0.0)).norm() < 1e-9, "{a:?}");
        }
    }
}
