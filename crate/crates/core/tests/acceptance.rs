//! Acceptance suite: runs every criterion and prints one pass/fail line per
//! criterion. `cargo test --test acceptance -- --nocapture` shows the lines.

use racklab_core::caps::Caps;
use racklab_core::suite::run_all;

#[test]
fn acceptance_criteria() {
    let caps = Caps::default();
    let results = run_all(&caps);
    let mut all_passed = true;
    for r in &results {
        println!("{}", r.line());
        all_passed &= r.passed;
    }
    assert!(all_passed, "one or more acceptance criteria failed");
}
