//! Runs every acceptance criterion at its tolerance and time limit and prints
//! one line per criterion.

use congruence_dessins::selftest::{criteria, run_criterion, Mode};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for c in criteria() {
        let r = run_criterion(&c, Mode::Normal);
        println!("{r} [{:.2} s]", r.elapsed.as_secs_f64());
        if !r.passed {
            failed.push(r.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn fault_injection_is_caught() {
    let results: Vec<_> = criteria()
        .iter()
        .map(|c| run_criterion(c, Mode::CorruptMinpoly))
        .collect();
    for r in &results {
        println!("{r}");
    }
    assert!(results.iter().any(|r| !r.passed));
}
