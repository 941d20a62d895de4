//! Runs the full verifiable-claims registry and prints one pass/fail line
//! per criterion. Criteria with stated runtime budgets are timed
//! individually; the whole suite must finish within five minutes.

use fixity_core::claims::run_claims;

#[test]
fn acceptance_criteria() {
    let outcomes = run_claims(None);
    assert_eq!(outcomes.len(), 12, "registry must expose twelve criteria");

    let mut all_pass = true;
    let mut total_millis = 0u128;
    for (i, outcome) in outcomes.iter().enumerate() {
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:2} [{}] {} ({} ms): {}",
            i + 1,
            outcome.id,
            verdict,
            outcome.millis,
            outcome.detail
        );
        all_pass &= outcome.passed;
        total_millis += outcome.millis;
    }
    println!("total: {total_millis} ms");
    assert!(all_pass, "one or more acceptance criteria failed");

    let budget = |id: &str| {
        outcomes
            .iter()
            .find(|o| o.id == id)
            .map(|o| o.millis)
            .unwrap()
    };
    assert!(budget("fixity-oracle") < 60_000, "criterion 1 over budget");
    assert!(budget("four-families") < 180_000, "criterion 2 over budget");
    assert!(budget("propagation") < 120_000, "criterion 9 over budget");
    assert!(total_millis < 300_000, "suite over the five-minute budget");
}
