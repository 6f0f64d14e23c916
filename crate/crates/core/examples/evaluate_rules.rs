//! Evaluate every tournament rule on one 4-team tournament.
//!
//! The tournament is parsed from the plain-text matrix format (`n` on the
//! first line, then one 0/1 row per team, where row `i` column `j` is 1 when
//! team `i` beat team `j`). Each rule returns an exact rational
//! distribution; floats are printed only for readability.
//!
//! Run with `cargo run --example evaluate_rules`.

use matchfix::{evaluate, to_f64, RuleId, Tournament};

fn main() -> matchfix::Result<()> {
    // Teams 2 and 3 beat two opponents each; nobody beats everyone.
    let text = "4\n\
                0 1 0 0\n\
                0 0 1 0\n\
                1 0 0 1\n\
                1 1 0 0\n";
    let t: Tournament = text.parse()?;

    println!("tournament:\n{t}");
    println!("condorcet winner: {:?}", t.condorcet_winner());
    println!("top cycle:        {:?}", t.top_cycle());
    println!();

    for rule in RuleId::ALL {
        let dist = evaluate(rule, &t)?;
        let cells: Vec<String> = dist
            .probs()
            .iter()
            .map(|p| format!("{p} ({:.4})", to_f64(p)))
            .collect();
        println!("{:<16} {}", rule.as_str(), cells.join("  "));
    }
    Ok(())
}
