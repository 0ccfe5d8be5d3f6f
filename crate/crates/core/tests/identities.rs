use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symdomain::jts::{
    bergman_operator, inner_product, inner_product_via_trace, k_transform, k_transform_dual,
    kernel_h, operator_q, q_closed, quasi_inverse, DomainDescriptor, KElement, PointV,
};
use symdomain::{c, CVec};

fn domains() -> Vec<DomainDescriptor> {
    vec![
        DomainDescriptor::disk(),
        DomainDescriptor::ball(2).unwrap(),
        DomainDescriptor::ball(3).unwrap(),
        DomainDescriptor::matrix(2, 2).unwrap(),
        DomainDescriptor::matrix(2, 3).unwrap(),
    ]
}

/// A domain index, raw coordinates and a target norm below `0.95`.
fn case() -> impl Strategy<Value = (usize, Vec<(f64, f64)>, f64)> {
    (0usize..5, prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6), 0.0f64..0.95)
}

fn point(dom: &DomainDescriptor, raw: &[(f64, f64)], r: f64) -> PointV {
    let v = CVec::from_iterator(dom.dim, raw.iter().take(dom.dim).map(|&(a, b)| c(a, b)));
    let n = dom.spectral_norm(&v);
    if n == 0.0 {
        PointV::zeros(dom.dim)
    } else {
        PointV(v * c(r / n, 0.0))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_b_is_h_to_the_genus((i, raw, r) in case()) {
        let dom = &domains()[i];
        let z = point(dom, &raw, r);
        let det = bergman_operator(&z, &z, dom).unwrap().determinant();
        let hp = kernel_h(&z, &z, dom).unwrap().value.powi(dom.genus as i32);
        prop_assert!((det - hp).norm() <= 1e-10 * hp.norm());
    }

    #[test]
    fn quasi_inverse_solves_its_defining_system((i, raw, r) in case(), (raw2, r2) in (prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6), 0.0f64..0.95)) {
        let dom = &domains()[i];
        let (z, w) = (point(dom, &raw, r), point(dom, &raw2, r2));
        let zw = quasi_inverse(&z, &w, dom).unwrap();
        let lhs = bergman_operator(&z, &w, dom).unwrap().apply(&zw);
        let rhs = &z.0 - operator_q(&z, dom).unwrap().apply(&w).0;
        prop_assert!((lhs.0 - rhs).norm() < 1e-12);
    }

    #[test]
    fn h_is_hermitian((i, raw, r) in case(), (raw2, r2) in (prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6), 0.0f64..0.95)) {
        let dom = &domains()[i];
        let (z, w) = (point(dom, &raw, r), point(dom, &raw2, r2));
        let a = kernel_h(&z, &w, dom).unwrap().value;
        let b = kernel_h(&w, &z, dom).unwrap().value;
        prop_assert!((a - b.conj()).norm() < 1e-14);
    }

    #[test]
    fn trace_of_d_gives_the_inner_product((i, raw, r) in case(), (raw2, r2) in (prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6), 0.0f64..0.95)) {
        let dom = &domains()[i];
        let (z, w) = (point(dom, &raw, r), point(dom, &raw2, r2));
        let a = inner_product(&z, &w, dom).unwrap();
        let b = inner_product_via_trace(&z, &w, dom).unwrap();
        prop_assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn q_is_k_equivariant((i, raw, r) in case(), seed in any::<u64>()) {
        let dom = &domains()[i];
        let z = point(dom, &raw, r);
        let k = KElement::random(dom, &mut ChaCha8Rng::seed_from_u64(seed));
        let lhs = q_closed(&k_transform(&k, &z, dom).unwrap(), dom).unwrap();
        let rhs = k_transform_dual(&k, &q_closed(&z, dom).unwrap(), dom).unwrap();
        prop_assert!((lhs.0 - rhs.0).norm() < 1e-10);
    }
}

#[test]
fn q_on_the_disk_is_the_conjugate_over_h() {
    let disk = DomainDescriptor::disk();
    for z in [c(0.0, 0.0), c(0.5, 0.0), c(-0.3, 0.6), c(0.0, -0.99)] {
        let q = q_closed(&PointV::new(vec![z]), &disk).unwrap();
        assert!((q.0[0] - z.conj() / (1.0 - z.norm_sqr())).norm() < 1e-12);
    }
}

#[test]
fn q_needs_an_interior_point() {
    let disk = DomainDescriptor::disk();
    assert!(q_closed(&PointV::new(vec![c(1.0, 0.0)]), &disk).is_err());
}
