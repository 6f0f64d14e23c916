//! Exhaustively audit a rule and print the machine-readable report.
//!
//! `minimal_delta` sweeps every labeled tournament of the given size, every
//! coalition of at most `k` teams, and every way the coalition could have
//! thrown its internal matches, and returns the exact worst multiplicative
//! gain together with a witness instance that attains it. The report
//! serializes to JSON and `reverify_witness` recomputes the witness from
//! scratch as an independent check.
//!
//! Run with `cargo run --example audit_worst_case`.

use matchfix::{
    minimal_delta, report_to_json, reverify_witness, AuditOptions, AuditScope, RuleId,
};

fn main() -> matchfix::Result<()> {
    let scope = AuditScope::Exhaustive { n: 4 };
    let opts = AuditOptions::default();

    for k in [2, 3] {
        let report = minimal_delta(RuleId::Ngwcs, k, &scope, &opts)?;
        println!("== ngwcs, coalitions up to size {k}, all 64 tournaments on 4 teams ==");
        println!("worst delta: {}", report.worst_constant.as_ref().unwrap());
        println!("witnesses:   {}", report.witnesses.len());
        println!("independent recheck: {:?}", reverify_witness(&report)?);
        let json = serde_json::to_string_pretty(&report_to_json(&report)).expect("report is json");
        println!("{json}");
        println!();
    }
    Ok(())
}
