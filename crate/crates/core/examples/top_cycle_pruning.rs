//! Why the top-cycle rule exists: geometric scoring alone still pays a
//! Condorcet loser.
//!
//! On a tournament where team 0 loses every match, `ngwcs` still gives
//! team 0 a small positive probability (its simple win score is
//! `(1/2)^(n-2)`, never zero), while `tcc-ngwcs` restricts the same scores
//! to the top cycle and pays the loser exactly 0.
//!
//! Run with `cargo run --example top_cycle_pruning`.

use matchfix::{evaluate, to_f64, RuleId, Tournament};

fn main() -> matchfix::Result<()> {
    // Team 0 loses to everyone; teams 1, 2, 3 form a cycle.
    let t = Tournament::from_fn(4, |i, j| match (i, j) {
        (0, _) => false,
        (1, 2) => true,
        (2, 3) => true,
        (1, 3) => false,
        _ => true,
    });

    println!("tournament:\n{t}");
    println!("top cycle: {:?}", t.top_cycle());
    println!();

    for rule in [RuleId::Ngwcs, RuleId::TccNgwcs] {
        let dist = evaluate(rule, &t)?;
        println!("{}:", rule.as_str());
        for (i, p) in dist.probs().iter().enumerate() {
            println!("  team {i}: {p} ({:.4})", to_f64(p));
        }
    }

    let loser = evaluate(RuleId::Ngwcs, &t)?.prob(0).clone();
    println!();
    println!("ngwcs pays the all-losses team {loser}; tcc-ngwcs pays it 0.");
    Ok(())
}
