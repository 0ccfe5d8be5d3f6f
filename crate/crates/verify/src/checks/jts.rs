use symdomain::jts::{
    bergman_closed, bergman_pol, d_pol, h_pol, inner_product, inner_product_via_trace,
    inverse_checked, k_transform, k_transform_dual, matrix_of, q_closed, quad_pol,
    quasi_inverse_pol, triple_pol, KElement,
};
use symdomain::Result;

use super::{max_of, op_norm, CheckInput, Measurement};

pub fn det_b_genus(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.95);
    let ws = inp.points_in(1, 0.95);
    let mut errs = Vec::new();
    for (z, w) in zs.iter().zip(&ws) {
        for eta in [z.conj(), w.conj()] {
            let lhs = bergman_closed(dom, &z.0, &eta).determinant();
            let rhs = h_pol(dom, &z.0, &eta).powi(dom.genus as i32);
            errs.push((lhs - rhs).norm() / rhs.norm());
        }
    }
    Ok(Measurement::new(max_of(errs), zs.len()).note("relative error, diagonal and off-diagonal pairs"))
}

pub fn quasi_inverse_defining(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.9);
    let ws = inp.points_in(1, 0.9);
    let mut errs = Vec::new();
    for (z, w) in zs.iter().zip(&ws) {
        let eta = w.conj();
        let x = quasi_inverse_pol(dom, &z.0, &eta)?;
        let lhs = bergman_pol(dom, &z.0, &eta) * x;
        let rhs = &z.0 - quad_pol(dom, &z.0, &eta);
        errs.push((lhs - rhs).norm());
    }
    Ok(Measurement::new(max_of(errs), zs.len()))
}

/// `z̄^{z+v} = (z̄^z)^v`, quasi-inverses taken in `V̄`.
pub fn addition_formula(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.6);
    let vs = inp.points_in(1, 0.3);
    let mut errs = Vec::new();
    for (z, v) in zs.iter().zip(&vs) {
        let zbar = z.conj();
        let lhs = quasi_inverse_pol(dom, &zbar, &(&z.0 + &v.0))?;
        let rhs = quasi_inverse_pol(dom, &quasi_inverse_pol(dom, &zbar, &z.0)?, &v.0)?;
        errs.push((lhs - rhs).norm());
    }
    Ok(Measurement::new(max_of(errs), zs.len()))
}

/// `B(z, z̄) D(z^{z̄}, v̄) = D(z, v̄) - Q(z) Q(z̄, v̄)` in operator norm.
pub fn b_times_d_identity(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.9);
    let vs = inp.points_in(1, 1.0);
    let mut errs = Vec::new();
    for (z, v) in zs.iter().zip(&vs) {
        let (zbar, vbar) = (z.conj(), v.conj());
        let zq = quasi_inverse_pol(dom, &z.0, &zbar)?;
        let lhs = bergman_closed(dom, &z.0, &zbar) * d_pol(dom, &zq, &vbar);
        let qq = matrix_of(dom.dim, |x| quad_pol(dom, &z.0, &triple_pol(dom, &zbar, x, &vbar)));
        let rhs = d_pol(dom, &z.0, &vbar) - qq;
        errs.push(op_norm(&(lhs - rhs)));
    }
    Ok(Measurement::new(max_of(errs), zs.len()))
}

/// `B(z̄, z)⁻¹ Q(z̄) = Q(q(z))` as maps `V → V̄`.
pub fn b_inverse_q_identity(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.95);
    let mut errs = Vec::new();
    for z in &zs {
        let zbar = z.conj();
        let q = q_closed(z, dom)?;
        let binv = inverse_checked(&bergman_closed(dom, &zbar, &z.0))?;
        let lhs = binv * matrix_of(dom.dim, |x| quad_pol(dom, &zbar, x));
        let rhs = matrix_of(dom.dim, |x| quad_pol(dom, &q.0, x));
        errs.push(op_norm(&(lhs - rhs)));
    }
    Ok(Measurement::new(max_of(errs), zs.len()))
}

/// `q(kz) = (k⁻¹)' q(z)`.
pub fn k_equivariance(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(0.95);
    let mut rng = inp.rng();
    let mut errs = Vec::new();
    for z in &zs {
        let k = KElement::random(dom, &mut rng);
        let lhs = q_closed(&k_transform(&k, z, dom)?, dom)?;
        let rhs = k_transform_dual(&k, &q_closed(z, dom)?, dom)?;
        errs.push((lhs.0 - rhs.0).norm());
    }
    Ok(Measurement::new(max_of(errs), zs.len()))
}

pub fn inner_product_trace(inp: &CheckInput) -> Result<Measurement> {
    let dom = &inp.dom;
    let zs = inp.points(1.0);
    let ws = inp.points_in(1, 1.0);
    let mut errs = Vec::new();
    for (z, w) in zs.iter().zip(&ws) {
        errs.push((inner_product(z, w, dom)? - inner_product_via_trace(z, w, dom)?).norm());
    }
    Ok(Measurement::new(max_of(errs), zs.len()))
}
