//! How fast the worst-case collusion gain grows on a bad family for the
//! geometric win-count rule.
//!
//! On the superman-kryptonite family (transitive except the bottom team
//! upsets the top one), throwing the single upset match multiplies the
//! colluders' combined probability without bound as the field grows: the
//! exact additive-gain-over-drop ratio is 2^(n-2) - 1. A family audit scans
//! the generated tournament plus all of its single-flip neighbors.
//!
//! Run with `cargo run --example family_growth`.

use matchfix::{minimal_lambda, AuditOptions, AuditScope, FamilyId, RuleId};

fn main() -> matchfix::Result<()> {
    println!("{:>4}  {:>24}  {:>14}", "n", "lambda", "as float");
    for n in [4, 8, 16, 32] {
        let scope = AuditScope::Family { family: FamilyId::SupermanKryptonite, n, seed: 0 };
        let report = minimal_lambda(RuleId::Ngwcs, &scope, &AuditOptions::default())?;
        let worst = report.worst_constant.as_ref().unwrap();
        println!("{n:>4}  {:>24}  {:>14.4}", worst.to_string(), worst.to_f64().unwrap());
    }
    println!();
    println!("Each doubling of n squares the constant: no finite lambda works");
    println!("for this rule once coalitions may span the whole field size.");
    Ok(())
}
