//! Exhaustive sweeps partition across worker threads without changing the
//! answer.
//!
//! The enumeration index space is split into contiguous ranges, each worker
//! folds its range independently, and the partial results merge
//! associatively — so the report (constant, witnesses, counts) is identical
//! for every worker count, and the witness is always the lexicographically
//! first one.
//!
//! Run with `cargo run --example parallel_jobs`.

use std::time::Instant;

use matchfix::{minimal_lambda, AuditOptions, AuditScope, RuleId};

fn main() -> matchfix::Result<()> {
    let scope = AuditScope::Exhaustive { n: 6 };

    let mut baseline = None;
    for jobs in [1, 2, 4] {
        let opts = AuditOptions { jobs, ..AuditOptions::default() };
        let start = Instant::now();
        let report = minimal_lambda(RuleId::Ngwss, &scope, &opts)?;
        let elapsed = start.elapsed();
        println!(
            "jobs = {jobs}: lambda = {} over {} tournaments in {:?}",
            report.worst_constant.as_ref().unwrap(),
            report.checked,
            elapsed,
        );
        match &baseline {
            None => baseline = Some(report),
            Some(first) => assert_eq!(first, &report, "worker count changed the result"),
        }
    }
    println!("all worker counts agree, witness included");
    Ok(())
}
