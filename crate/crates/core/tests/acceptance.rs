//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p bfh-core --test acceptance -- --nocapture` to see them.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use bfh_core::catalog::Config;
use bfh_core::registry::Context;
use bfh_core::verify::{checks, run_checks, CheckResult};

#[test]
fn acceptance_criteria() {
    let ctx = Context::new(Config::default());
    let start = Instant::now();
    let results = run_checks(&checks(), &ctx, true);
    let elapsed = start.elapsed();

    let mut by_criterion: BTreeMap<u8, Vec<&CheckResult>> = BTreeMap::new();
    for r in &results {
        by_criterion.entry(r.criterion).or_default().push(r);
    }
    assert_eq!(by_criterion.keys().copied().collect::<Vec<_>>(), (1..=9).collect::<Vec<_>>());

    let mut failed = Vec::new();
    for (c, rs) in &by_criterion {
        let ok = rs.iter().all(|r| r.passed());
        let ids: Vec<&str> = rs.iter().map(|r| r.id.as_str()).collect();
        println!("{} criterion {c}: {}", if ok { "PASS" } else { "FAIL" }, ids.join(", "));
        for r in rs.iter().filter(|r| !r.passed()) {
            println!("    {}: expected {}", r.id, r.expected);
            println!("    {}: computed {}", r.id, r.computed);
            failed.push(r.id.clone());
        }
    }
    println!("all checks: {} ms", elapsed.as_millis());
    assert!(failed.is_empty(), "failing checks: {failed:?}");
    assert!(elapsed < Duration::from_secs(30), "suite took {elapsed:?}");
}
