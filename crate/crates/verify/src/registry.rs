//! Every check the harness knows, and the properties they certify.

use symdomain::jts::{DomainDescriptor, DomainKind};

use crate::checks::{calculus, hwv, jts, meta, quadrature, CheckFn};

/// What `sample_count` means for a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    /// Sampled points for a pointwise identity.
    Points,
    /// Monte Carlo candidates; `--samples` overrides it.
    MonteCarlo,
}

pub struct CheckDef {
    pub id: &'static str,
    /// The identity or statement under test, in formula form.
    pub paper_ref: &'static str,
    pub suite: &'static str,
    pub tolerance: f64,
    pub samples: usize,
    pub kind: SampleKind,
    /// Domain labels the check runs on unless a domain is given.
    pub domains: &'static [&'static str],
    pub supports: fn(&DomainDescriptor) -> bool,
    pub run: CheckFn,
}

/// One invariant of one module, and the check that covers it.
pub struct Property {
    pub module: &'static str,
    pub statement: &'static str,
    pub check: &'static str,
}

const ALL: &[&str] = &["disk", "ball2", "ball3", "matrix2x2", "matrix2x3"];
const PAIR: &[&str] = &["ball2", "matrix2x2"];
const DISK: &[&str] = &["disk"];

fn any(_: &DomainDescriptor) -> bool {
    true
}

fn disk(d: &DomainDescriptor) -> bool {
    d.is_disk()
}

fn ball(d: &DomainDescriptor) -> bool {
    d.is_ball()
}

fn disk_or_square(d: &DomainDescriptor) -> bool {
    match d.kind {
        DomainKind::Ball { n } => n == 1,
        DomainKind::MatrixI { p, q } => p == q,
    }
}

fn disk_or_2x2(d: &DomainDescriptor) -> bool {
    matches!(d.kind, DomainKind::Ball { n: 1 } | DomainKind::MatrixI { p: 2, q: 2 })
}

/// Rejection sampling is refused on the 3-side matrix domains.
fn sampleable(d: &DomainDescriptor) -> bool {
    !matches!(d.kind, DomainKind::MatrixI { p, q } if p.max(q) >= 3)
}

macro_rules! check {
    ($id:literal, $suite:literal, $ref:literal, $tol:expr, $n:expr, $kind:ident, $doms:expr, $sup:expr, $run:expr) => {
        CheckDef {
            id: $id,
            paper_ref: $ref,
            suite: $suite,
            tolerance: $tol,
            samples: $n,
            kind: SampleKind::$kind,
            domains: $doms,
            supports: $sup,
            run: $run,
        }
    };
}

pub static REGISTRY: &[CheckDef] = &[
    check!("jts.det-b-genus", "jts", "det B(z,z̄) = h(z,z̄)^p",
        1e-10, 100, Points, ALL, any, jts::det_b_genus),
    check!("jts.quasi-inverse", "jts", "B(z,w̄) z^w̄ = z − Q(z)w̄",
        1e-12, 100, Points, ALL, any, jts::quasi_inverse_defining),
    check!("jts.addition-formula", "jts", "z̄^(z+v) = (z̄^z)^v",
        1e-10, 100, Points, ALL, any, jts::addition_formula),
    check!("jts.b-d-identity", "jts", "B(z,z̄) D(z^z̄, v̄) = D(z,v̄) − Q(z)Q(z̄,v̄)",
        1e-10, 100, Points, ALL, any, jts::b_times_d_identity),
    check!("jts.b-inverse-q", "jts", "B(z̄,z)⁻¹ Q(z̄) = Q(z̄^z)",
        1e-10, 100, Points, ALL, any, jts::b_inverse_q_identity),
    check!("jts.k-equivariance", "jts", "q(kz) = (k⁻¹)′ q(z)",
        1e-10, 50, Points, ALL, any, jts::k_equivariance),
    check!("jts.inner-product-trace", "jts", "⟨z,w⟩ = Tr D(z,w̄) / p",
        1e-12, 100, Points, ALL, any, jts::inner_product_trace),

    check!("calc.dbar-q", "calculus", "D̄q = Id",
        1e-8, 50, Points, ALL, any, calculus::dbar_q_identity),
    check!("calc.dbar-power-q", "calculus", "D̄^m (⊗^m q) = m! Id on S_m(V) ⊗ S_m(V′), m ≤ 3",
        1e-5, 5, Points, PAIR, any, calculus::dbar_power_q),
    check!("calc.holomorphic-kernel", "calculus", "D̄f = 0 for holomorphic f",
        1e-10, 20, Points, ALL, any, calculus::holomorphic_annihilated),
    check!("calc.disk-formula", "calculus", "D̄^m f = h^(m+1) ∂_w̄^m [h^(m−1) f] on the disk",
        1e-6, 20, Points, DISK, disk, calculus::disk_formula),
    check!("calc.potential-gradient", "calculus", "q(z) = (1/p) ∂ log det B(z,z̄)⁻¹",
        1e-8, 50, Points, ALL, any, calculus::potential_gradient),
    check!("calc.q-derivatives", "calculus", "∂_v q = Q(q)v, ∂_w̄ q = B(z̄,z)⁻¹ w̄, (∂_v − ∂_Q(z̄)v) q = 0",
        1e-8, 50, Points, ALL, any, calculus::q_derivatives),
    check!("calc.pi-nu-annihilation", "calculus", "π_ν(v) Δ̄_m(q(z)) = 0, |m| ≤ 3",
        1e-7, 5, Points, PAIR, any, calculus::pi_nu_annihilation),
    check!("calc.dbar-delta-variance", "calculus", "D̄^|m| Δ̄_m(q(z)) is constant in z",
        1e-6, 10, Points, PAIR, any, calculus::dbar_delta_variance),
    check!("calc.dbar-delta-value", "calculus", "D̄^|m| Δ̄_m(q(z)) = |m|! Δ̄_m",
        1e-5, 10, Points, PAIR, any, calculus::dbar_delta_value),
    check!("calc.dbar-delta-kernel", "calculus", "D̄^(|m|+1) Δ̄_m(q(z)) = 0",
        1e-5, 10, Points, PAIR, any, calculus::dbar_delta_kernel),
    check!("calc.mobius-intertwining", "calculus", "D̄ π_ν(g) f = dg⁻¹ · π_ν(g) D̄f",
        1e-8, 10, Points, &["disk", "ball2"], ball, calculus::mobius_intertwining),
    check!("calc.adjoint-first-order", "calculus", "D(e₁) = −α (1−|z|²)⁻¹ z̄₁",
        1e-8, 10, Points, &["ball2"], ball, calculus::adjoint_first_order),
    check!("calc.adjoint-proportional", "calculus", "D^m (⊗^m e₁) = C (1−|z|²)^(−m) z̄₁^m, m = 2, 3",
        1e-6, 10, Points, &["ball2"], ball, calculus::adjoint_proportional),

    check!("hwv.pairing", "hwv", "[φ, ⊗^m v′] = φ(v′)",
        1e-12, 50, Points, ALL, any, hwv::pairing_polynomial),
    check!("hwv.k-covariance", "hwv", "[kφ, ⊗q(z)] = [φ, ⊗q(k⁻¹z)]",
        1e-9, 50, Points, ALL, any, hwv::k_covariance),
    check!("hwv.boundary-boundedness", "hwv", "h(z,z̄)^m₁ Δ̄_m(q(z)) is bounded up to the boundary",
        0.05, 200, Points, &["disk", "ball2", "matrix2x2"], any, hwv::boundary_boundedness),
    check!("hwv.membership", "hwv", "Δ̄_m(q) ∈ L²(μ_α) ∩ Ker D̄^(|m|+1) when α − 2m₁ > −1",
        1e-5, 5, Points, &["disk", "ball2", "matrix2x2"], sampleable, hwv::membership),
    check!("hwv.loos-identity", "hwv", "h(v, z̄^z) = h(v+z, z̄) / h(z,z̄)",
        1e-12, 100, Points, &["disk", "matrix2x2"], any, hwv::loos_identity),
    check!("hwv.det-q-identity", "hwv", "Δ̄(q(z)) = Δ̄(z) / h(z,z̄)",
        1e-12, 100, Points, &["disk", "matrix2x2"], disk_or_square, hwv::det_q_identity),
    check!("hwv.kernel-expansion", "hwv", "h(v,w̄) = Σ_s (−1)^s K_s(v,w̄)",
        1e-10, 40, Points, &["disk", "matrix2x2"], disk_or_2x2, hwv::kernel_expansion),

    check!("quad.seed-halves", "quadrature", "independent half-samples agree within 3σ",
        3.0, 1_000_000, MonteCarlo, &["disk", "ball2"], sampleable, quadrature::seed_halves),
    check!("quad.radial-vs-mc", "quadrature", "radial quadrature = Monte Carlo within 3σ",
        3.0, 1_000_000, MonteCarlo, DISK, disk, quadrature::radial_vs_mc),
    check!("quad.norm-mc", "quadrature", "‖q^m‖²_μα = π B(m+1, α−2m+1) within 3σ",
        3.0, 1_000_000, MonteCarlo, DISK, disk, quadrature::disk_norm_mc),
    check!("quad.norm-radial", "quadrature", "‖q^m‖²_μα = π B(m+1, α−2m+1) within 0.1%",
        1e-3, 0, Points, DISK, disk, quadrature::disk_norm_radial),
    check!("quad.monotone-m1", "quadrature", "‖Δ̄_m(q)‖²_μα increases with m₁",
        1e-12, 1_000_000, MonteCarlo, DISK, disk, quadrature::monotone_in_m1),
    check!("quad.probe-threshold", "quadrature", "finite iff (α+1)/2 > m₁; divergence rate α − 2m₁ + 1",
        0.2, 1_000_000, MonteCarlo, DISK, sampleable, quadrature::probe_threshold),
    check!("quad.stderr-scaling", "quadrature", "stderr ∝ N^(−1/2)",
        0.05, 1_000_000, MonteCarlo, &["disk", "ball2", "matrix2x2"], sampleable, quadrature::stderr_scaling),

    check!("meta.determinism", "meta", "identical config and seed give identical outcomes",
        0.5, 1, Points, DISK, any, meta::determinism),
    check!("meta.registry", "meta", "every module property maps to a check",
        0.5, 1, Points, DISK, any, meta::registry_completeness),
];

pub static PROPERTIES: &[Property] = &[
    Property { module: "jts-core", statement: "det B = h^genus", check: "jts.det-b-genus" },
    Property { module: "jts-core", statement: "defining quasi-inverse identity", check: "jts.quasi-inverse" },
    Property { module: "jts-core", statement: "quasi-inverse addition formula", check: "jts.addition-formula" },
    Property { module: "jts-core", statement: "B D(z^z̄, v̄) identity", check: "jts.b-d-identity" },
    Property { module: "jts-core", statement: "B(z̄,z)⁻¹ Q(z̄) = Q(z̄^z)", check: "jts.b-inverse-q" },
    Property { module: "jts-core", statement: "K-equivariance of q", check: "jts.k-equivariance" },
    Property { module: "jts-core", statement: "inner product from the trace of D", check: "jts.inner-product-trace" },
    Property { module: "polarized-calculus", statement: "D̄q = Id", check: "calc.dbar-q" },
    Property { module: "polarized-calculus", statement: "D̄^m ⊗^m q = m! Id", check: "calc.dbar-power-q" },
    Property { module: "polarized-calculus", statement: "holomorphic functions are annihilated", check: "calc.holomorphic-kernel" },
    Property { module: "polarized-calculus", statement: "disk operator formula", check: "calc.disk-formula" },
    Property { module: "polarized-calculus", statement: "potential gradient equals q", check: "calc.potential-gradient" },
    Property { module: "polarized-calculus", statement: "derivatives of q", check: "calc.q-derivatives" },
    Property { module: "polarized-calculus", statement: "π_ν(v) annihilates Δ̄_m(q)", check: "calc.pi-nu-annihilation" },
    Property { module: "polarized-calculus", statement: "D̄^m Δ̄_m(q) = m! Δ̄_m, constant", check: "calc.dbar-delta-value" },
    Property { module: "hwv-polys", statement: "pairing equals polynomial evaluation", check: "hwv.pairing" },
    Property { module: "hwv-polys", statement: "K-covariance of composition with q", check: "hwv.k-covariance" },
    Property { module: "hwv-polys", statement: "boundary boundedness of h^m₁ Δ̄_m(q)", check: "hwv.boundary-boundedness" },
    Property { module: "hwv-polys", statement: "L² and kernel membership", check: "hwv.membership" },
    Property { module: "quadrature", statement: "seed halves agree", check: "quad.seed-halves" },
    Property { module: "quadrature", statement: "radial and Monte Carlo agree", check: "quad.radial-vs-mc" },
    Property { module: "quadrature", statement: "norm monotone in m₁", check: "quad.monotone-m1" },
    Property { module: "verify-cli", statement: "determinism", check: "meta.determinism" },
    Property { module: "verify-cli", statement: "registry completeness", check: "meta.registry" },
];

pub fn lookup(id: &str) -> Option<&'static CheckDef> {
    REGISTRY.iter().find(|d| d.id == id)
}

/// Named suites beyond the one-per-module groups.
const NAMED: &[(&str, &[&str])] = &[
    ("potential", &["calc.potential-gradient"]),
    ("threshold", &["quad.probe-threshold"]),
    ("monotonicity", &["quad.monotone-m1"]),
];

/// Module suites in report order; `all` runs each of them.
pub const MODULE_SUITES: &[&str] = &["jts", "calculus", "hwv", "quadrature", "meta"];

pub fn suite_ids() -> Vec<&'static str> {
    MODULE_SUITES
        .iter()
        .copied()
        .chain(NAMED.iter().map(|(n, _)| *n))
        .collect()
}

/// Check ids of a suite or of a single check, `None` if neither.
pub fn suite_checks(id: &str) -> Option<Vec<&'static str>> {
    if MODULE_SUITES.contains(&id) {
        return Some(REGISTRY.iter().filter(|d| d.suite == id).map(|d| d.id).collect());
    }
    if let Some((_, c)) = NAMED.iter().find(|(n, _)| *n == id) {
        return Some(c.to_vec());
    }
    lookup(id).map(|d| vec![d.id])
}

/// `disk`, `ball3`, `matrix2x3`.
pub fn parse_domain_label(label: &str) -> Option<DomainDescriptor> {
    if label == "disk" {
        return Some(DomainDescriptor::disk());
    }
    if let Some(n) = label.strip_prefix("ball") {
        return DomainDescriptor::ball(n.parse().ok()?).ok();
    }
    let (p, q) = label.strip_prefix("matrix")?.split_once('x')?;
    DomainDescriptor::matrix(p.parse().ok()?, q.parse().ok()?).ok()
}
