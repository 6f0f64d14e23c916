//! Certify pass/fail properties of a rule over every small tournament.
//!
//! Condorcet consistency (a team that beat everyone wins outright),
//! top-cycle consistency (only top-cycle members get probability), and
//! monotonicity (winning more never hurts) are checked exhaustively. A
//! failing check carries a minimal witness: here, the geometric win-count
//! rule is Condorcet consistent and monotone but pays teams outside the
//! top cycle, and the witness shows exactly where.
//!
//! Run with `cargo run --example certify_properties`.

use matchfix::{
    check_condorcet_consistency, check_monotonicity, check_top_cycle_consistency, evaluate,
    AuditOptions, RuleId,
};

fn main() -> matchfix::Result<()> {
    let opts = AuditOptions::default();
    let rule = RuleId::Ngwcs;

    for n in 3..=5 {
        let cc = check_condorcet_consistency(rule, n, &opts)?;
        let mono = check_monotonicity(rule, n, &opts)?;
        println!(
            "ngwcs n={n}: condorcet-consistency {} ({} tournaments), monotonicity {}",
            if cc.passed { "pass" } else { "fail" },
            cc.checked,
            if mono.passed { "pass" } else { "fail" },
        );
    }
    println!();

    let tcc = check_top_cycle_consistency(rule, 4, &opts)?;
    println!("ngwcs n=4 top-cycle-consistency: {}", if tcc.passed { "pass" } else { "fail" });
    let witness = &tcc.witnesses[0];
    let outside = evaluate(rule, &witness.tournament)?;
    println!("witness tournament:\n{}", witness.tournament);
    println!("top cycle {:?}, yet the distribution is:", witness.tournament.top_cycle());
    for (i, p) in outside.probs().iter().enumerate() {
        println!("  team {i}: {p}");
    }
    Ok(())
}
