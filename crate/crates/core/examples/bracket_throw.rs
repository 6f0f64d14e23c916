//! A thrown match under the random single-elimination bracket can move an
//! ally's win probability from 0 to 1/3 — an unbounded multiplicative gain.
//!
//! Teams 0 and 1 collude: in the honest tournament team 0 beats team 1 and
//! both have probability 0, but if team 0 throws that one match, team 1
//! suddenly wins a third of all brackets. The exhaustive audit over every
//! 4-team tournament confirms no finite delta bounds this rule.
//!
//! Run with `cargo run --example bracket_throw`.

use matchfix::{evaluate, minimal_delta, AuditOptions, AuditScope, RuleId, Tournament};

fn main() -> matchfix::Result<()> {
    // Honest play: 0 beats only 1, 1 beats only 2, and 2 and 3 pick up the
    // rest, so neither colluder can reach the final through teams 2 and 3.
    let honest = Tournament::from_fn(4, |i, j| matches!((i, j), (0, 1) | (1, 2) | (2, 3)));
    // The same tournament with the one pair match thrown.
    let thrown = honest.flip_match(0, 1);

    let before = evaluate(RuleId::Rseb, &honest)?;
    let after = evaluate(RuleId::Rseb, &thrown)?;
    println!("bracket win probabilities (teams 0..4):");
    println!("  honest: {:?}", before.probs().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    println!("  thrown: {:?}", after.probs().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    println!();
    println!("team 0 and team 1 together: {} -> {}",
        before.prob(0) + before.prob(1),
        after.prob(0) + after.prob(1));
    println!();

    // No finite multiplicative bound exists for this rule.
    let report = minimal_delta(
        RuleId::Rseb,
        2,
        &AuditScope::Exhaustive { n: 4 },
        &AuditOptions::default(),
    )?;
    println!(
        "exhaustive n=4 audit: worst delta = {}, passed = {}",
        report.worst_constant.as_ref().unwrap(),
        report.passed,
    );
    Ok(())
}
