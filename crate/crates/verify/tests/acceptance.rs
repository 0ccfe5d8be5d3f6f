//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every line is printed; the process fails if any criterion fails.

use std::time::{Duration, Instant};

use symdomain::hwv::Signature;
use symdomain::jts::DomainDescriptor;
use symdomain::quadrature::{
    integrability_probe, weighted_norm, ProbeConfig, RadialConfig, SamplerConfig, SamplingMethod,
    Verdict,
};
use symdomain_verify::registry::{lookup, parse_domain_label};
use symdomain_verify::report::{render, CheckRecord, Format, Status};
use symdomain_verify::suite::{build_suites, run_suite, CheckSpec, Options, SuiteSpec};
use symdomain_verify::tools::disk_q_norm_exact;

const ALL: &[&str] = &["disk", "ball2", "ball3", "matrix2x2", "matrix2x3"];
const PAIR: &[&str] = &["ball2", "matrix2x2"];

struct Outcome {
    pass: bool,
    detail: String,
}

/// Runs one registry check with the given per-domain sample count and tolerance.
fn run(id: &str, domains: &[&str], samples: usize, tol: f64) -> CheckRecord {
    let def = lookup(id).expect("registered check");
    let spec = SuiteSpec {
        id: id.into(),
        seed: 42,
        checks: vec![CheckSpec {
            check_id: id.into(),
            paper_ref: def.paper_ref.into(),
            tolerance: tol,
            sample_count: samples,
            seed: 42,
            domains: domains
                .iter()
                .map(|l| parse_domain_label(l).expect("label").config())
                .collect(),
            alpha: None,
            signature: None,
        }],
    };
    run_suite(&spec).expect("valid spec").checks.remove(0)
}

fn records(recs: &[CheckRecord], limit: Option<Duration>, took: Duration) -> Outcome {
    let mut pass = recs.iter().all(|r| r.status == Status::Pass);
    let mut detail: Vec<String> = recs
        .iter()
        .map(|r| format!("{} {} err {:.3e} (tol {:e})", r.id, r.status.as_str(), r.max_error, r.tolerance))
        .collect();
    if let Some(l) = limit {
        pass &= took < l;
        detail.push(format!("{:.2}s of {}s", took.as_secs_f64(), l.as_secs()));
    }
    Outcome {
        pass,
        detail: detail.join("; "),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn c01() -> Outcome {
    let (r, t) = timed(|| run("jts.det-b-genus", ALL, 100, 1e-10));
    records(&[r], Some(Duration::from_secs(1)), t)
}

fn c02() -> Outcome {
    let (r, t) = timed(|| run("calc.potential-gradient", ALL, 50, 1e-8));
    records(&[r], Some(Duration::from_secs(10)), t)
}

fn c03() -> Outcome {
    let (rs, t) = timed(|| {
        vec![
            run("calc.dbar-q", PAIR, 50, 1e-8),
            run("calc.dbar-power-q", PAIR, 5, 1e-5),
        ]
    });
    records(&rs, Some(Duration::from_secs(60)), t)
}

fn c04() -> Outcome {
    let (r, t) = timed(|| run("calc.disk-formula", &["disk"], 20, 1e-6));
    records(&[r], None, t)
}

fn c05() -> Outcome {
    let (r, t) = timed(|| run("calc.q-derivatives", ALL, 50, 1e-8));
    records(&[r], None, t)
}

fn c06() -> Outcome {
    let (r, t) = timed(|| run("calc.pi-nu-annihilation", &["matrix2x2", "ball2"], 10, 1e-7));
    records(&[r], None, t)
}

fn c07() -> Outcome {
    let (rs, t) = timed(|| {
        vec![
            run("calc.dbar-delta-variance", PAIR, 10, 1e-6),
            run("calc.dbar-delta-value", PAIR, 10, 1e-5),
            run("calc.dbar-delta-kernel", PAIR, 10, 1e-5),
        ]
    });
    records(&rs, None, t)
}

fn c08() -> Outcome {
    let d = &["matrix2x2", "disk"];
    let (rs, t) = timed(|| {
        vec![
            run("hwv.loos-identity", d, 100, 1e-12),
            run("hwv.det-q-identity", d, 100, 1e-12),
        ]
    });
    records(&rs, None, t)
}

fn c09() -> Outcome {
    let (rs, t) = timed(|| {
        vec![
            run("calc.adjoint-first-order", &["ball2"], 10, 1e-8),
            run("calc.adjoint-proportional", &["ball2"], 10, 1e-6),
        ]
    });
    let mut o = records(&rs, None, t);
    o.detail.push_str(&format!("; {}", rs[1].notes));
    o
}

/// Monte Carlo within 3 stderr and radial within 0.1% for the finite cases;
/// the probe must call `(α, m) = (4, 2)` divergent.
fn c10() -> Outcome {
    let dom = DomainDescriptor::disk();
    let q_pow = |m: usize| {
        let dom = dom.clone();
        move |z: &symdomain::jts::PointV| Ok(symdomain::jts::q_closed(z, &dom)?.0[0].powi(m as i32))
    };
    let mc_cfg = SamplerConfig::default().with_samples(1_000_000);
    let radial_cfg = SamplerConfig {
        method: SamplingMethod::RadialStratified,
        boundary_margin: 0.0,
        ..SamplerConfig::default()
    };
    let t = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for (alpha, m) in [(4.0, 1), (6.0, 2)] {
        let exact = disk_q_norm_exact(alpha, m);
        let mc = weighted_norm(q_pow(m), alpha, &dom, &mc_cfg, &RadialConfig::default()).expect("mc");
        let r = weighted_norm(q_pow(m), alpha, &dom, &radial_cfg, &RadialConfig::default()).expect("radial");
        let z = (mc.value - exact).abs() / mc.stderr;
        let rel = (r.value - exact).abs() / exact;
        pass &= z < 3.0 && rel < 1e-3;
        detail.push(format!("({alpha},{m}) exact {exact:.6} mc {z:.2}σ radial rel {rel:.1e}"));
    }
    let sig = Signature::new(vec![2]).expect("signature");
    let probe = integrability_probe(&sig, 4.0, &dom, &ProbeConfig::default()).expect("probe");
    pass &= probe.verdict == Verdict::Divergent;
    detail.push(format!(
        "(4,2) probe {:?} (required Divergent), rate {:.3}, value {:?}",
        probe.verdict, probe.fitted_rate, probe.value
    ));
    let took = t.elapsed();
    pass &= took < Duration::from_secs(120);
    detail.push(format!("{:.2}s of 120s", took.as_secs_f64()));
    Outcome {
        pass,
        detail: detail.join("; "),
    }
}

fn c11() -> Outcome {
    let (r, t) = timed(|| run("quad.probe-threshold", &["disk"], 1_000_000, 0.2));
    let mut o = records(&[r.clone()], None, t);
    o.detail.push_str(&format!("; {}", r.notes));
    o
}

fn c12() -> Outcome {
    let strip = |mut v: serde_json::Value| {
        for r in v.as_array_mut().expect("array of reports") {
            r["env"]["timestamp"] = serde_json::Value::Null;
        }
        serde_json::to_string(&v).expect("json")
    };
    let once = || {
        let specs = build_suites("all", &Options::default()).expect("default suites");
        let reports: Vec<_> = specs.iter().map(|s| run_suite(s).expect("run")).collect();
        let json = render(&reports, Format::Json).expect("render");
        strip(serde_json::from_str(&json).expect("parse"))
    };
    let (a, t) = timed(once);
    let b = once();
    Outcome {
        pass: a == b,
        detail: format!("{} bytes, identical: {}, {:.2}s per run", a.len(), a == b, t.as_secs_f64()),
    }
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 12] = [
        ("c01", "det B = h^p on five domains", c01),
        ("c02", "potential gradient equals quasi-inverse", c02),
        ("c03", "D̄q = Id and D̄^m(⊗^m q) = m!·Id", c03),
        ("c04", "disk operator formula, m ≤ 3", c04),
        ("c05", "first derivatives of q", c05),
        ("c06", "π_ν annihilates Δ̄_m(q), |m| ≤ 3", c06),
        ("c07", "D̄^|m| Δ̄_m(q) constant, next order zero", c07),
        ("c08", "closed-form h and Δ(q) identities", c08),
        ("c09", "ball adjoint constants", c09),
        ("c10", "disk norms and the (4,2) verdict", c10),
        ("c11", "threshold sweep at α = 2", c11),
        ("c12", "determinism of the default run", c12),
    ];
    let mut failed = Vec::new();
    for (id, what, f) in criteria {
        let o = f();
        println!("{} {id} {what}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!("acceptance: {} of 12 failed: {}", failed.len(), failed.join(", "));
        std::process::exit(1);
    }
}
