//! Command-line front end: evaluate rules on tournaments, generate named
//! families, audit properties over full enumerations, and chart worst-case
//! constants across family sizes.
//!
//! Exit codes: 0 success (and audit pass), 1 audit fail, 2 usage or parse
//! error, 3 size unsupported by the requested rule.

use clap::{Parser, Subcommand};
use matchfix::{
    audit, evaluate, format_ratio, gen_family, parse_ratio, report_to_json, to_f64, AuditOptions,
    AuditReport, AuditScope, Error, FamilyId, PropertyId, Rational, RuleId, Tournament,
};
use num::bigint::BigInt;
use serde_json::{Map, Number, Value};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "matchfix", version, about = "Exact randomized tournament rules and manipulability audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a rule on one tournament and print each team's win probability.
    Eval {
        /// Rule name: ngwcs, ngwss, tcc-ngwcs, rseb, or trivial-uniform.
        #[arg(long)]
        rule: String,
        /// Read the tournament from this file instead of stdin.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Emit a JSON object instead of per-team lines.
        #[arg(long)]
        json: bool,
    },
    /// Print a generated tournament in the text format.
    Gen {
        /// Family name: cycle3, transitive, superman-kryptonite, or random.
        #[arg(long)]
        family: String,
        /// Team count; defaults to 3 for cycle3 and is required otherwise.
        #[arg(long)]
        n: Option<usize>,
        /// RNG seed; required for the random family, ignored by the rest.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a property over every tournament of a size and print the report JSON.
    Audit {
        /// Rule name: ngwcs, ngwss, tcc-ngwcs, rseb, or trivial-uniform.
        #[arg(long)]
        rule: String,
        /// Property: condorcet-consistency, top-cycle-consistency,
        /// monotonicity, nm-lambda, mnm-delta, or snm-alpha.
        #[arg(long)]
        property: String,
        /// Team count to sweep exhaustively.
        #[arg(long)]
        n: usize,
        /// Coalition size for mnm-delta / snm-alpha (2 or 3; default 2).
        #[arg(long)]
        k: Option<usize>,
        /// Pass/fail cutoff for constant-valued properties, as NUM or NUM/DEN.
        #[arg(long)]
        threshold: Option<String>,
        /// Worker count; the report is identical for every value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Compact single-line JSON instead of pretty-printed.
        #[arg(long)]
        json: bool,
    },
    /// Worst constant over a family member and its single-flip neighbors,
    /// one row per requested size.
    Worst {
        /// Rule name: ngwcs, ngwss, tcc-ngwcs, rseb, or trivial-uniform.
        #[arg(long)]
        rule: String,
        /// Constant-valued property: nm-lambda, mnm-delta, or snm-alpha.
        #[arg(long)]
        property: String,
        /// Family name: cycle3, transitive, superman-kryptonite, or random.
        #[arg(long)]
        family: String,
        /// Comma-separated team counts, e.g. 8,16,32.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// RNG seed; required for the random family, ignored by the rest.
        #[arg(long)]
        seed: Option<u64>,
        /// Coalition size for mnm-delta / snm-alpha (2 or 3; default 2).
        #[arg(long)]
        k: Option<usize>,
        /// Pass/fail cutoff applied to every row, as NUM or NUM/DEN.
        #[arg(long)]
        threshold: Option<String>,
        /// Worker count (family sweeps are small; kept for symmetry).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Emit a JSON array of full reports instead of the table.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe closes (`matchfix ... | head`),
    // like any other filter; the Rust runtime ignores SIGPIPE by default,
    // which would turn the closed pipe into a print panic instead.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::InvalidArgument(_) => ExitCode::from(2),
                Error::UnsupportedSize(_) => ExitCode::from(3),
            }
        }
    }
}

fn run(cli: Cli) -> matchfix::Result<ExitCode> {
    match cli.command {
        Command::Eval { rule, input, json } => cmd_eval(&rule, input.as_deref(), json),
        Command::Gen { family, n, seed } => cmd_gen(&family, n, seed),
        Command::Audit { rule, property, n, k, threshold, jobs, json } => {
            let scope = AuditScope::Exhaustive { n };
            let report = run_audit(&rule, &property, k, threshold.as_deref(), jobs, &scope)?;
            let value = report_to_json(&report);
            if json {
                println!("{value}");
            } else {
                println!("{}", serde_json::to_string_pretty(&value).expect("report serializes"));
            }
            Ok(exit_for(&[report]))
        }
        Command::Worst { rule, property, family, n, seed, k, threshold, jobs, json } => {
            cmd_worst(&rule, &property, &family, &n, seed, k, threshold.as_deref(), jobs, json)
        }
    }
}

fn exit_for(reports: &[AuditReport]) -> ExitCode {
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn bigint_number(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

fn read_tournament(input: Option<&std::path::Path>) -> matchfix::Result<Tournament> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidArgument(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    text.parse()
}

fn cmd_eval(rule: &str, input: Option<&std::path::Path>, json: bool) -> matchfix::Result<ExitCode> {
    let rule: RuleId = rule.parse()?;
    let t = read_tournament(input)?;
    let dist = evaluate(rule, &t)?;
    if json {
        let probs: Vec<Value> = dist
            .probs()
            .iter()
            .map(|p| {
                let mut o = Map::new();
                o.insert("num".into(), bigint_number(p.numer()));
                o.insert("den".into(), bigint_number(p.denom()));
                o.insert(
                    "float".into(),
                    Number::from_f64(to_f64(p)).map_or(Value::Null, Value::Number),
                );
                Value::Object(o)
            })
            .collect();
        let mut o = Map::new();
        o.insert("rule".into(), Value::String(rule.as_str().into()));
        o.insert("n".into(), Value::from(t.n() as u64));
        o.insert("probs".into(), Value::Array(probs));
        println!("{}", Value::Object(o));
    } else {
        for (i, p) in dist.probs().iter().enumerate() {
            println!("{i}: {} ({:.6})", format_ratio(p), to_f64(p));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_family(family: &str, n: Option<usize>, seed: Option<u64>) -> matchfix::Result<(FamilyId, usize, u64)> {
    let family: FamilyId = family.parse()?;
    let n = match (n, family) {
        (Some(n), _) => n,
        (None, FamilyId::Cycle3) => 3,
        (None, _) => {
            return Err(Error::InvalidArgument(format!("family {family} needs --n")));
        }
    };
    let seed = match (seed, family) {
        (Some(s), _) => s,
        (None, FamilyId::RandomUniform) => {
            return Err(Error::InvalidArgument("family random needs --seed".into()));
        }
        (None, _) => 0,
    };
    Ok((family, n, seed))
}

fn cmd_gen(family: &str, n: Option<usize>, seed: Option<u64>) -> matchfix::Result<ExitCode> {
    let (family, n, seed) = parse_family(family, n, seed)?;
    print!("{}", gen_family(family, n, seed)?);
    Ok(ExitCode::SUCCESS)
}

fn run_audit(
    rule: &str,
    property: &str,
    k: Option<usize>,
    threshold: Option<&str>,
    jobs: usize,
    scope: &AuditScope,
) -> matchfix::Result<AuditReport> {
    let rule: RuleId = rule.parse()?;
    let property: PropertyId = property.parse()?;
    let threshold: Option<Rational> = threshold.map(parse_ratio).transpose()?;
    let opts = AuditOptions { jobs, threshold };
    audit(rule, property, k, scope, &opts)
}

#[allow(clippy::too_many_arguments)]
fn cmd_worst(
    rule: &str,
    property: &str,
    family: &str,
    sizes: &[usize],
    seed: Option<u64>,
    k: Option<usize>,
    threshold: Option<&str>,
    jobs: usize,
    json: bool,
) -> matchfix::Result<ExitCode> {
    let prop: PropertyId = property.parse()?;
    if !prop.is_constant_valued() {
        return Err(Error::InvalidArgument(format!(
            "worst charts constant-valued properties; {prop} is pass/fail"
        )));
    }
    let (family, _, seed) = parse_family(family, Some(sizes[0]), seed)?;
    let mut reports = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let scope = AuditScope::Family { family, n, seed };
        reports.push(run_audit(rule, property, k, threshold, jobs, &scope)?);
    }
    if json {
        let value = Value::Array(reports.iter().map(report_to_json).collect());
        println!("{value}");
    } else {
        println!("{:>4}  {:<24}  {:<14}  result", "n", prop.as_str(), "float");
        for report in &reports {
            let worst = report.worst_constant.as_ref().expect("constant-valued audit");
            let float = match worst.to_f64() {
                Some(f) => format!("{f:.6}"),
                None => "inf".into(),
            };
            println!(
                "{:>4}  {:<24}  {:<14}  {}",
                report.n,
                worst.to_string(),
                float,
                if report.passed { "pass" } else { "fail" },
            );
        }
    }
    Ok(exit_for(&reports))
}
