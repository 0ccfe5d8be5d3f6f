use symdomain::Result;

use super::{CheckInput, Measurement};
use crate::registry::{lookup, PROPERTIES, REGISTRY};
use crate::suite::{build_suite, run_suite, Options};

/// Runs the `jts` suite twice with the check's seed; the error counts
/// differing entries.
pub fn determinism(inp: &CheckInput) -> Result<Measurement> {
    let opts = Options {
        seed: inp.seed,
        ..Options::default()
    };
    let spec = build_suite("jts", &opts).expect("jts suite is registered");
    let a = run_suite(&spec).expect("registered checks");
    let b = run_suite(&spec).expect("registered checks");
    let differing = a
        .checks
        .iter()
        .zip(&b.checks)
        .filter(|(x, y)| x != y)
        .count()
        + a.checks.len().abs_diff(b.checks.len());
    Ok(Measurement::new(differing as f64, a.checks.len()).note("differing check records"))
}

/// Every listed property resolves to a registered check and every check id
/// is unique; the error counts violations.
pub fn registry_completeness(_: &CheckInput) -> Result<Measurement> {
    let missing = PROPERTIES.iter().filter(|p| lookup(p.check).is_none()).count();
    let mut ids: Vec<&str> = REGISTRY.iter().map(|d| d.id).collect();
    ids.sort_unstable();
    let dups = ids.windows(2).filter(|w| w[0] == w[1]).count();
    Ok(Measurement::new((missing + dups) as f64, PROPERTIES.len())
        .note(format!("{missing} unmapped properties, {dups} duplicate ids")))
}
