//! Reports survive a JSON round trip and tampering is detectable.
//!
//! `report_to_json` emits the stable wire format (exact integers, no
//! floats in the authoritative fields) and `report_from_json` parses it
//! back, re-validating every embedded tournament. `reverify_witness` then
//! recomputes each witness instance from the rule definition alone:
//! a forged constant makes it return `Ok(false)`.
//!
//! Run with `cargo run --example report_roundtrip`.

use matchfix::{
    minimal_lambda, report_from_json, report_to_json, reverify_witness, AuditOptions, AuditScope,
    RuleId,
};

fn main() -> matchfix::Result<()> {
    let report = minimal_lambda(
        RuleId::TrivialUniform,
        &AuditScope::Exhaustive { n: 4 },
        &AuditOptions::default(),
    )?;

    let json = report_to_json(&report);
    let wire = serde_json::to_string(&json).expect("report is json");
    println!("wire form ({} bytes):", wire.len());
    println!("{}", serde_json::to_string_pretty(&json).expect("report is json"));

    let parsed = report_from_json(&json)?;
    assert_eq!(parsed, report);
    println!();
    println!("round trip exact:          {}", parsed == report);
    println!("witness recheck (honest):  {:?}", reverify_witness(&parsed)?);

    // Forge the constant and watch the recheck fail.
    let mut forged = json.clone();
    forged["worst_constant"]["num"] = serde_json::json!(1);
    let forged_report = report_from_json(&forged)?;
    println!("witness recheck (forged):  {:?}", reverify_witness(&forged_report)?);
    Ok(())
}
