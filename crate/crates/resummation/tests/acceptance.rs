//! End-to-end acceptance suite: runs every numbered criterion of the
//! self-validation suite, prints one pass/fail line per criterion, and fails
//! the test if any criterion fails.

use resummation::check::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all().expect("validation suite must run to completion");
    assert_eq!(results.len(), 12, "expected 12 criteria");
    let mut all_passed = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:2} {}: {}", r.id, r.name, r.detail);
        all_passed &= r.passed;
    }
    assert!(all_passed, "one or more acceptance criteria failed");
}
