//! Acceptance suite: runs every validation criterion, prints one verdict
//! line per criterion, and fails if any criterion fails.

use cpt_core::validation;

#[test]
fn acceptance_criteria() {
    let outcomes = validation::run_all();
    let mut failed = Vec::new();
    for o in &outcomes {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("{}: {} — {}", o.name, verdict, o.details);
        if !o.passed {
            failed.push(o.name.clone());
        }
    }
    assert!(
        failed.is_empty(),
        "failed criteria: {}",
        failed.join(", ")
    );
}
