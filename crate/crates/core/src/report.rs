//! JSON form of audit reports, plus independent witness reverification.
//!
//! The JSON layout is stable so other tooling can consume it:
//!
//! ```json
//! {
//!   "rule": "ngwcs",
//!   "property": "mnm-delta",
//!   "k": 2,
//!   "n": 3,
//!   "result": "pass",
//!   "worst_constant": {"num": 3, "den": 2},
//!   "worst_constant_float": 1.5,
//!   "witnesses": [
//!     {"tournament": ["0 0 0", "1 0 0", "1 1 0"],
//!      "coalition": [0, 2],
//!      "adjacent": ["0 0 1", "1 0 0", "0 1 0"]}
//!   ],
//!   "checked": 8
//! }
//! ```
//!
//! `worst_constant` is an exact integer pair, the string `"inf"`, or null
//! for the pass/fail properties; `worst_constant_float` is advisory and
//! null whenever no finite constant exists. `family` appears (with the
//! family name) when the audit ranged over a generated neighborhood
//! instead of the full enumeration; `k` appears for coalition properties.
//! Numerators and denominators round-trip at arbitrary precision.
//!
//! [`reverify_witness`] re-derives the achieved constant (or the claimed
//! violation) from each stored witness using full rational evaluation and
//! local instance math, deliberately sharing nothing with the sweep
//! machinery it double-checks.

use crate::audit::{AuditReport, PropertyId, Witness, WorstConstant};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::rules::{evaluate, RuleId};
use crate::tournament::FamilyId;
use crate::tournament::Tournament;
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde_json::{Map, Number, Value};
use std::str::FromStr;

fn bigint_number(x: &BigInt) -> Value {
    // With arbitrary-precision numbers enabled this keeps every digit.
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

fn matrix_rows(t: &Tournament) -> Value {
    let n = t.n();
    let rows: Vec<Value> = (0..n)
        .map(|i| {
            let row: Vec<&str> =
                (0..n).map(|j| if i != j && t.beats(i, j) { "1" } else { "0" }).collect();
            Value::String(row.join(" "))
        })
        .collect();
    Value::Array(rows)
}

fn witness_to_json(w: &Witness) -> Value {
    let mut o = Map::new();
    o.insert("tournament".into(), matrix_rows(&w.tournament));
    o.insert(
        "coalition".into(),
        Value::Array(w.coalition.iter().map(|&i| Value::from(i as u64)).collect()),
    );
    o.insert("adjacent".into(), matrix_rows(&w.adjacent));
    Value::Object(o)
}

/// The report as a JSON value with the documented schema.
pub fn report_to_json(report: &AuditReport) -> Value {
    let mut o = Map::new();
    o.insert("rule".into(), Value::String(report.rule.as_str().into()));
    o.insert("property".into(), Value::String(report.property.as_str().into()));
    if let Some(k) = report.k {
        o.insert("k".into(), Value::from(k as u64));
    }
    o.insert("n".into(), Value::from(report.n as u64));
    if let Some(f) = report.family {
        o.insert("family".into(), Value::String(f.as_str().into()));
    }
    o.insert("result".into(), Value::String(if report.passed { "pass" } else { "fail" }.into()));
    let (constant, float) = match &report.worst_constant {
        None => (Value::Null, Value::Null),
        Some(WorstConstant::Infinite) => (Value::String("inf".into()), Value::Null),
        Some(WorstConstant::Finite(r)) => {
            let mut pair = Map::new();
            pair.insert("num".into(), bigint_number(r.numer()));
            pair.insert("den".into(), bigint_number(r.denom()));
            let float = Number::from_f64(to_f64(r)).map_or(Value::Null, Value::Number);
            (Value::Object(pair), float)
        }
    };
    o.insert("worst_constant".into(), constant);
    o.insert("worst_constant_float".into(), float);
    o.insert(
        "witnesses".into(),
        Value::Array(report.witnesses.iter().map(witness_to_json).collect()),
    );
    o.insert("checked".into(), Value::from(report.checked));
    Value::Object(o)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn field<'v>(o: &'v Map<String, Value>, key: &str) -> Result<&'v Value> {
    o.get(key).ok_or_else(|| bad(format!("report is missing `{key}`")))
}

fn parse_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| bad(format!("`{what}` must be a nonnegative integer")))
}

fn parse_bigint(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| bad(format!("`{what}` must be an integer"))),
        _ => Err(bad(format!("`{what}` must be an integer"))),
    }
}

fn parse_matrix(v: &Value, what: &str) -> Result<Tournament> {
    let rows = v.as_array().ok_or_else(|| bad(format!("`{what}` must be a row array")))?;
    let mut text = format!("{}\n", rows.len());
    for row in rows {
        let row = row.as_str().ok_or_else(|| bad(format!("`{what}` rows must be strings")))?;
        text.push_str(row);
        text.push('\n');
    }
    text.parse().map_err(|e| bad(format!("`{what}` is not a valid outcome matrix: {e}")))
}

fn parse_witness(v: &Value) -> Result<Witness> {
    let o = v.as_object().ok_or_else(|| bad("witnesses must be objects"))?;
    let tournament = parse_matrix(field(o, "tournament")?, "tournament")?;
    let adjacent = parse_matrix(field(o, "adjacent")?, "adjacent")?;
    let coalition = field(o, "coalition")?
        .as_array()
        .ok_or_else(|| bad("`coalition` must be an array"))?
        .iter()
        .map(|x| parse_usize(x, "coalition"))
        .collect::<Result<Vec<usize>>>()?;
    Ok(Witness { tournament, coalition, adjacent })
}

/// Parses a report emitted by [`report_to_json`].
pub fn report_from_json(value: &Value) -> Result<AuditReport> {
    let o = value.as_object().ok_or_else(|| bad("report must be a JSON object"))?;
    let rule: RuleId = field(o, "rule")?
        .as_str()
        .ok_or_else(|| bad("`rule` must be a string"))?
        .parse()?;
    let property: PropertyId = field(o, "property")?
        .as_str()
        .ok_or_else(|| bad("`property` must be a string"))?
        .parse()?;
    let k = match o.get("k") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_usize(v, "k")?),
    };
    let n = parse_usize(field(o, "n")?, "n")?;
    let family = match o.get("family") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_str()
                .ok_or_else(|| bad("`family` must be a string"))?
                .parse::<FamilyId>()?,
        ),
    };
    let passed = match field(o, "result")?.as_str() {
        Some("pass") => true,
        Some("fail") => false,
        _ => return Err(bad("`result` must be \"pass\" or \"fail\"")),
    };
    let worst_constant = match field(o, "worst_constant")? {
        Value::Null => None,
        Value::String(s) if s == "inf" => Some(WorstConstant::Infinite),
        Value::Object(pair) => {
            let num = parse_bigint(field(pair, "num")?, "num")?;
            let den = parse_bigint(field(pair, "den")?, "den")?;
            if den.is_zero() {
                return Err(bad("`worst_constant` denominator must not be zero"));
            }
            Some(WorstConstant::Finite(Rational::new(num, den)))
        }
        _ => return Err(bad("`worst_constant` must be null, \"inf\", or {num, den}")),
    };
    let witnesses = field(o, "witnesses")?
        .as_array()
        .ok_or_else(|| bad("`witnesses` must be an array"))?
        .iter()
        .map(parse_witness)
        .collect::<Result<Vec<Witness>>>()?;
    let checked = field(o, "checked")?
        .as_u64()
        .ok_or_else(|| bad("`checked` must be a nonnegative integer"))?;
    Ok(AuditReport { rule, property, k, n, family, passed, worst_constant, witnesses, checked })
}

// ======================================================================
// Reverification
// ======================================================================

/// Local, self-contained instance math over full rationals.
enum Achieved {
    Unconstrained,
    Finite(Rational),
    Infinite,
}

fn coalition_mass(dist: &[Rational], s: &[usize]) -> Rational {
    s.iter().map(|&i| dist[i].clone()).sum()
}

fn achieved_constant(
    property: PropertyId,
    dt: &[Rational],
    dtp: &[Rational],
    s: &[usize],
) -> Achieved {
    match property {
        PropertyId::NmLambda => {
            let (i, j) = (s[0], s[1]);
            let gain = (&dtp[i] + &dtp[j]) - (&dt[i] + &dt[j]);
            if !gain.is_positive() {
                return Achieved::Unconstrained;
            }
            let drop = (&dt[i] - &dtp[i]).max(&dt[j] - &dtp[j]);
            if drop.is_positive() {
                Achieved::Finite(gain / drop)
            } else {
                Achieved::Infinite
            }
        }
        PropertyId::MnmDelta => {
            let mass_t = coalition_mass(dt, s);
            if mass_t.is_zero() {
                return Achieved::Unconstrained;
            }
            let mass_tp = coalition_mass(dtp, s);
            if mass_tp.is_zero() {
                Achieved::Infinite
            } else {
                Achieved::Finite(mass_t / mass_tp)
            }
        }
        PropertyId::SnmAlpha => {
            let gap = coalition_mass(dt, s) - coalition_mass(dtp, s);
            if gap.is_positive() {
                Achieved::Finite(gap)
            } else {
                Achieved::Unconstrained
            }
        }
        _ => unreachable!("constant properties only"),
    }
}

/// Matches where the two tournaments disagree, as team pairs.
fn differing_matches(a: &Tournament, b: &Tournament) -> Vec<(usize, usize)> {
    let n = a.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if a.beats(i, j) != b.beats(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn check_witness_shape(report: &AuditReport, w: &Witness) -> Result<()> {
    if w.tournament.n() != report.n || w.adjacent.n() != report.n {
        return Err(bad("witness tournament size disagrees with the report"));
    }
    let diffs = differing_matches(&w.tournament, &w.adjacent);
    match report.property {
        PropertyId::CondorcetConsistency | PropertyId::TopCycleConsistency => {
            if !w.coalition.is_empty() || !diffs.is_empty() {
                return Err(bad("consistency witnesses carry no move"));
            }
        }
        PropertyId::Monotonicity | PropertyId::NmLambda => {
            if w.coalition.len() != 2 || w.coalition[0] >= w.coalition[1] {
                return Err(bad("witness coalition must be an ordered team pair"));
            }
            if diffs != [(w.coalition[0], w.coalition[1])] {
                return Err(bad("witness tournaments must differ in exactly the coalition match"));
            }
        }
        PropertyId::MnmDelta | PropertyId::SnmAlpha => {
            let s = &w.coalition;
            if s.len() < 2 || s.windows(2).any(|p| p[0] >= p[1]) {
                return Err(bad("witness coalition must be a sorted team set"));
            }
            if let Some(k) = report.k {
                if s.len() > k {
                    return Err(bad("witness coalition exceeds the report's k"));
                }
            }
            if s.last().copied().unwrap_or(0) >= report.n {
                return Err(bad("witness coalition is out of range"));
            }
            if diffs.iter().any(|&(i, j)| !s.contains(&i) || !s.contains(&j)) {
                return Err(bad("witness tournaments differ outside the coalition"));
            }
        }
    }
    Ok(())
}

/// Recomputes every stored witness from scratch and compares it against the
/// report's claim.
///
/// Returns `Ok(true)` when each witness independently reproduces the worst
/// constant (or, for pass/fail properties, exhibits the claimed violation),
/// `Ok(false)` when a witness is well-formed but does not support the
/// claim, and an error when the report is structurally broken — a failing
/// report without witnesses, a malformed coalition, or a witness pair that
/// is not adjacent at its coalition.
pub fn reverify_witness(report: &AuditReport) -> Result<bool> {
    if report.witnesses.is_empty() {
        return if report.passed {
            Ok(true)
        } else {
            Err(bad("failing report carries no witness"))
        };
    }
    if report.property.is_constant_valued() && report.worst_constant.is_none() {
        return Err(bad(format!("{} reports must carry a worst constant", report.property)));
    }

    for w in &report.witnesses {
        check_witness_shape(report, w)?;
        let dt = evaluate(report.rule, &w.tournament)?.into_probs();
        match report.property {
            PropertyId::CondorcetConsistency => {
                let violated = match w.tournament.condorcet_winner() {
                    Some(c) => !dt[c].is_one(),
                    None => false,
                };
                if !violated {
                    return Ok(false);
                }
            }
            PropertyId::TopCycleConsistency => {
                let cycle = w.tournament.top_cycle();
                let violated =
                    (0..report.n).any(|i| !cycle.contains(&i) && !dt[i].is_zero());
                if !violated {
                    return Ok(false);
                }
            }
            PropertyId::Monotonicity => {
                let (i, j) = (w.coalition[0], w.coalition[1]);
                let winner = if w.tournament.beats(i, j) { i } else { j };
                let dtp = evaluate(report.rule, &w.adjacent)?.into_probs();
                if dt[winner] >= dtp[winner] {
                    return Ok(false);
                }
            }
            PropertyId::NmLambda | PropertyId::MnmDelta | PropertyId::SnmAlpha => {
                let dtp = evaluate(report.rule, &w.adjacent)?.into_probs();
                let achieved = achieved_constant(report.property, &dt, &dtp, &w.coalition);
                let matches = match (&achieved, report.worst_constant.as_ref().unwrap()) {
                    (Achieved::Infinite, WorstConstant::Infinite) => true,
                    (Achieved::Finite(a), WorstConstant::Finite(b)) => a == b,
                    _ => false,
                };
                if !matches {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
