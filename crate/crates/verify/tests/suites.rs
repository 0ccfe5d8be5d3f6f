use std::collections::BTreeMap;

use symdomain::hwv::Signature;
use symdomain::jts::DomainDescriptor;
use symdomain_verify::registry::{lookup, suite_checks, PROPERTIES, REGISTRY};
use symdomain_verify::report::{render, Format, Report, Status};
use symdomain_verify::suite::{build_suite, build_suites, run_suite, Options, SuiteSpec};

fn disk_opts() -> Options {
    Options {
        domain: Some(DomainDescriptor::disk().config()),
        ..Options::default()
    }
}

fn run(id: &str, opts: &Options) -> Report {
    run_suite(&build_suite(id, opts).unwrap()).unwrap()
}

#[test]
fn every_property_maps_to_one_check() {
    let mut per_module = BTreeMap::new();
    for p in PROPERTIES {
        assert!(lookup(p.check).is_some(), "{} has no check", p.statement);
        *per_module.entry(p.module).or_insert(0) += 1;
    }
    let expected = [
        ("hwv-polys", 4),
        ("jts-core", 7),
        ("polarized-calculus", 8),
        ("quadrature", 3),
        ("verify-cli", 2),
    ];
    assert_eq!(per_module.into_iter().collect::<Vec<_>>(), expected);
    let mut checks: Vec<_> = PROPERTIES.iter().map(|p| p.check).collect();
    checks.sort_unstable();
    checks.dedup();
    assert_eq!(checks.len(), PROPERTIES.len(), "two properties share a check");
}

#[test]
fn registry_ids_are_unique_and_in_a_suite() {
    let mut ids: Vec<_> = REGISTRY.iter().map(|d| d.id).collect();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), REGISTRY.len());
    for d in REGISTRY {
        assert!(suite_checks(d.suite).unwrap().contains(&d.id));
    }
}

#[test]
fn empty_suite_passes() {
    let r = run_suite(&SuiteSpec::empty("none", 42)).unwrap();
    assert!(r.checks.is_empty());
    assert!(!r.any_failed());
}

#[test]
fn zero_tolerance_fails_every_numeric_check() {
    let opts = Options {
        tol: Some(0.0),
        ..disk_opts()
    };
    for suite in ["jts", "calculus"] {
        let r = run(suite, &opts);
        assert!(!r.checks.is_empty());
        for c in &r.checks {
            assert_eq!(c.status, Status::Fail, "{} passed at tolerance 0", c.id);
        }
    }
}

#[test]
fn potential_suite_on_disk() {
    let opts = Options {
        tol: Some(1e-8),
        ..disk_opts()
    };
    let r = run("potential", &opts);
    assert_eq!(r.checks.len(), 1);
    assert_eq!(r.status_of("calc.potential-gradient"), Some(Status::Pass));
}

#[test]
fn threshold_suite_divergent_above_threshold() {
    let opts = Options {
        alpha: Some(2.0),
        signature: Some(Signature::new(vec![2]).unwrap()),
        ..disk_opts()
    };
    let r = run("threshold", &opts);
    let c = &r.checks[0];
    assert_eq!(c.status, Status::Pass, "{}", c.notes);
    assert!(c.notes.contains("Divergent (expected Divergent)"));
}

#[test]
fn threshold_suite_finite_below_threshold() {
    let opts = Options {
        alpha: Some(2.0),
        signature: Some(Signature::new(vec![1]).unwrap()),
        ..disk_opts()
    };
    let r = run("threshold", &opts);
    assert_eq!(r.checks[0].status, Status::Pass, "{}", r.checks[0].notes);
}

/// The norm of `Δ̄_m(q)` is monotone increasing in `m₁` at fixed `α`.
#[test]
fn monotone_in_m1() {
    let r = run("monotonicity", &Options::default());
    assert_eq!(r.checks[0].status, Status::Pass, "{}", r.checks[0].notes);
}

#[test]
fn reruns_are_identical_except_timestamp() {
    let spec = build_suite("hwv", &Options::default()).unwrap();
    let a = run_suite(&spec).unwrap();
    let mut b = run_suite(&spec).unwrap();
    b.env.timestamp = a.env.timestamp.clone();
    assert_eq!(a, b);
    assert_eq!(spec.config_hash(), build_suite("hwv", &Options::default()).unwrap().config_hash());
}

#[test]
fn seed_changes_the_hash() {
    let a = build_suite("quadrature", &Options::default()).unwrap();
    let b = build_suite(
        "quadrature",
        &Options {
            seed: 7,
            ..Options::default()
        },
    )
    .unwrap();
    assert_ne!(a.config_hash(), b.config_hash());
}

#[test]
fn explicit_domain_drops_unsupported_checks() {
    let opts = Options {
        domain: Some(DomainDescriptor::matrix(2, 3).unwrap().config()),
        ..Options::default()
    };
    let spec = build_suite("calculus", &opts).unwrap();
    assert!(spec.checks.iter().all(|c| c.check_id != "calc.disk-formula"));
    assert!(spec.checks.iter().any(|c| c.check_id == "calc.dbar-q"));
}

#[test]
fn all_expands_to_module_suites() {
    let specs = build_suites("all", &Options::default()).unwrap();
    let ids: Vec<_> = specs.iter().map(|s| s.id.as_str()).collect();
    assert_eq!(ids, ["jts", "calculus", "hwv", "quadrature", "meta"]);
}

#[test]
fn json_schema_and_text_share_numbers() {
    let r = run("jts", &disk_opts());
    let json: serde_json::Value = serde_json::from_str(&render(&[r.clone()], Format::Json).unwrap()).unwrap();
    for key in ["suite", "checks", "env"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    for key in ["seed", "config_hash", "timestamp"] {
        assert!(json["env"].get(key).is_some(), "missing env.{key}");
    }
    let text = render(&[r.clone()], Format::Text).unwrap();
    for (c, j) in r.checks.iter().zip(json["checks"].as_array().unwrap()) {
        for key in ["id", "paper_ref", "status", "max_error", "tolerance", "points", "notes"] {
            assert!(j.get(key).is_some(), "missing checks[].{key}");
        }
        let from_json = j["max_error"].as_f64().unwrap();
        assert_eq!(from_json.to_bits(), c.max_error.to_bits());
        let line = text.lines().find(|l| l.starts_with(&c.id)).unwrap();
        let cols: Vec<_> = line.split_whitespace().collect();
        assert_eq!(cols[2].parse::<f64>().unwrap().to_bits(), from_json.to_bits());
        assert_eq!(cols[3].parse::<f64>().unwrap(), j["tolerance"].as_f64().unwrap());
        assert_eq!(cols[4].parse::<usize>().unwrap() as u64, j["points"].as_u64().unwrap());
    }
}

#[test]
fn several_reports_render_as_array() {
    let reports = vec![run("meta", &Options::default()), run("jts", &disk_opts())];
    let v: serde_json::Value = serde_json::from_str(&render(&reports, Format::Json).unwrap()).unwrap();
    assert_eq!(v.as_array().map(Vec::len), Some(2));
}
