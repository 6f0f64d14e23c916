//! Randomized tournament rules with exact output distributions.
//!
//! Every rule maps a tournament to a probability distribution over teams.
//! All five rules here are computed exactly: each distribution is a vector
//! of integer numerators over one common denominator, converted to reduced
//! rationals at the public boundary. With at most [`crate::MAX_TEAMS`] teams
//! every intermediate fits comfortably in a `u128` (denominators stay below
//! `2^76`), so no rounding ever happens.

use crate::error::{Error, Result};
use crate::rational::{pow2, Rational};
use crate::tournament::Tournament;
use num::bigint::BigInt;
use std::fmt;
use std::str::FromStr;

// ======================================================================
// Rule identifiers
// ======================================================================

/// The rules this crate can evaluate and audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleId {
    /// Geometric weights `2^outdegree`, normalized, with the winner taking
    /// everything when some team beat all others.
    Ngwcs,
    /// Like [`RuleId::Ngwcs`] but weighting each team by its own geometric
    /// score plus those of the teams it beat, mixed with uniform.
    Ngwss,
    /// [`RuleId::Ngwcs`] applied inside the top cycle, zero elsewhere.
    TccNgwcs,
    /// Single-elimination bracket with every leaf order equally likely.
    /// Defined for 1, 2, 4, or 8 teams.
    Rseb,
    /// The whole prize to a Condorcet winner, otherwise uniform.
    TrivialUniform,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [
        RuleId::Ngwcs,
        RuleId::Ngwss,
        RuleId::TccNgwcs,
        RuleId::Rseb,
        RuleId::TrivialUniform,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Ngwcs => "ngwcs",
            RuleId::Ngwss => "ngwss",
            RuleId::TccNgwcs => "tcc-ngwcs",
            RuleId::Rseb => "rseb",
            RuleId::TrivialUniform => "trivial-uniform",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RuleId> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown rule `{s}`")))
    }
}

// ======================================================================
// Distributions
// ======================================================================

/// A probability distribution over the teams of one tournament. Entries are
/// exact, nonnegative, and sum to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinnerDistribution {
    probs: Vec<Rational>,
}

impl WinnerDistribution {
    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn prob(&self, i: usize) -> &Rational {
        &self.probs[i]
    }

    pub fn into_probs(self) -> Vec<Rational> {
        self.probs
    }
}

/// Distribution as integer numerators over one shared denominator. All rule
/// arithmetic happens here; nothing is reduced until the rational boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntDist {
    pub num: Vec<u128>,
    pub den: u128,
}

impl IntDist {
    fn new(num: Vec<u128>, den: u128) -> IntDist {
        debug_assert!(den > 0);
        debug_assert_eq!(num.iter().sum::<u128>(), den, "probabilities must sum to 1");
        IntDist { num, den }
    }

    fn indicator(n: usize, winner: usize) -> IntDist {
        let mut num = vec![0; n];
        num[winner] = 1;
        IntDist::new(num, 1)
    }

    pub fn to_distribution(&self) -> WinnerDistribution {
        let den = BigInt::from(self.den);
        let probs = self
            .num
            .iter()
            .map(|&v| Rational::new(BigInt::from(v), den.clone()))
            .collect();
        WinnerDistribution { probs }
    }
}

// ======================================================================
// Score vectors
// ======================================================================

/// The two geometric score vectors behind the normalized rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreVectors {
    /// `(1/2)^((n-2) - outdegree(i))` per team.
    pub simple: Vec<Rational>,
    /// Twice a team's simple score plus the simple scores of the teams it
    /// beat.
    pub true_win: Vec<Rational>,
}

/// Simple win scores: team `i` gets `(1/2)^((n-2) - outdegree(i))`. A team
/// that beat everyone therefore scores exactly 2.
pub fn simple_win_scores(t: &Tournament) -> Vec<Rational> {
    let n = t.n() as i64;
    (0..t.n()).map(|i| pow2(t.outdegree(i) as i64 - (n - 2))).collect()
}

/// True win scores: `2 * simple(i) + sum of simple(j) over beaten j`.
pub fn true_win_scores(t: &Tournament) -> Vec<Rational> {
    let simple = simple_win_scores(t);
    (0..t.n())
        .map(|i| {
            let beaten: Rational =
                t.defeated_set(i).into_iter().map(|j| simple[j].clone()).sum();
            &simple[i] + &simple[i] + beaten
        })
        .collect()
}

pub fn score_vectors(t: &Tournament) -> ScoreVectors {
    ScoreVectors { simple: simple_win_scores(t), true_win: true_win_scores(t) }
}

// ======================================================================
// The rules
// ======================================================================

/// Powers of two trimmed of the common `2^(n-2)` factor: weights `2^d_i`
/// stand in for the simple scores, which only ever appear normalized.
fn weights(t: &Tournament) -> Vec<u128> {
    (0..t.n()).map(|i| 1u128 << t.outdegree(i)).collect()
}

fn int_ngwcs(t: &Tournament) -> IntDist {
    if let Some(w) = t.condorcet_winner() {
        return IntDist::indicator(t.n(), w);
    }
    let a = weights(t);
    let den = a.iter().sum();
    IntDist::new(a, den)
}

fn int_ngwss(t: &Tournament) -> IntDist {
    if let Some(w) = t.condorcet_winner() {
        return IntDist::indicator(t.n(), w);
    }
    // No Condorcet winner forces n >= 3. With scores scaled by 2^(n-2) the
    // true win score of team i becomes b_i below, the score cap 14 becomes
    // 14 * 2^(n-2), and the uniform make-up weight spreads the slack
    // between the cap and the realized total.
    let n = t.n() as u128;
    let a = weights(t);
    let b: Vec<u128> = (0..t.n())
        .map(|i| {
            let beaten: u128 =
                t.defeated_set(i).into_iter().map(|j| a[j]).sum();
            2 * a[i] + beaten
        })
        .collect();
    let cap = 14u128 << (t.n() - 2);
    let total: u128 = b.iter().sum();
    let slack = cap
        .checked_sub(total)
        .expect("true win scores exceed their cap on a tournament with no Condorcet winner");
    let num = b.iter().map(|&bi| n * bi + slack).collect();
    IntDist::new(num, n * cap)
}

fn int_tcc(t: &Tournament) -> IntDist {
    let cycle = t.top_cycle();
    if cycle.len() == 1 {
        return IntDist::indicator(t.n(), cycle[0]);
    }
    debug_assert!(cycle.len() >= 3, "no tournament has a dominant pair");
    let mask: u64 = cycle.iter().fold(0, |m, &i| m | 1 << i);
    let mut num = vec![0u128; t.n()];
    for &i in &cycle {
        let restricted = (t.defeated_mask(i) & mask).count_ones();
        // The restriction has no Condorcet winner, so no weight hits the
        // winner-takes-all case of the inner rule.
        debug_assert!((restricted as usize) < cycle.len() - 1);
        num[i] = 1u128 << restricted;
    }
    let den = num.iter().sum();
    IntDist::new(num, den)
}

fn int_rseb(t: &Tournament) -> Result<IntDist> {
    let n = t.n();
    if !matches!(n, 1 | 2 | 4 | 8) {
        return Err(Error::UnsupportedSize(format!(
            "rseb runs single-elimination brackets and needs 1, 2, 4, or 8 teams, got {n}"
        )));
    }
    let mut wins = vec![0u128; n];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rounds = Vec::new();
    for_each_permutation(&mut perm, &mut |leaves| {
        rounds.clear();
        rounds.extend_from_slice(leaves);
        while rounds.len() > 1 {
            let mut next = 0;
            for k in 0..rounds.len() / 2 {
                let (x, y) = (rounds[2 * k], rounds[2 * k + 1]);
                rounds[next] = if t.beats(x, y) { x } else { y };
                next += 1;
            }
            rounds.truncate(next);
        }
        wins[rounds[0]] += 1;
    });
    let den = wins.iter().sum();
    Ok(IntDist::new(wins, den))
}

fn int_trivial(t: &Tournament) -> IntDist {
    match t.condorcet_winner() {
        Some(w) => IntDist::indicator(t.n(), w),
        None => IntDist::new(vec![1; t.n()], t.n() as u128),
    }
}

/// Heap's algorithm; calls `visit` once per permutation of `items`.
fn for_each_permutation<T>(items: &mut [T], visit: &mut impl FnMut(&[T])) {
    fn go<T>(k: usize, items: &mut [T], visit: &mut impl FnMut(&[T])) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, items, visit);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        go(k - 1, items, visit);
    }
    go(items.len(), items, visit);
}

pub(crate) fn evaluate_int(rule: RuleId, t: &Tournament) -> Result<IntDist> {
    match rule {
        RuleId::Ngwcs => Ok(int_ngwcs(t)),
        RuleId::Ngwss => Ok(int_ngwss(t)),
        RuleId::TccNgwcs => Ok(int_tcc(t)),
        RuleId::Rseb => int_rseb(t),
        RuleId::TrivialUniform => Ok(int_trivial(t)),
    }
}

/// Normalized geometric win count score rule.
pub fn ngwcs(t: &Tournament) -> WinnerDistribution {
    int_ngwcs(t).to_distribution()
}

/// Normalized geometric win strength score rule.
pub fn ngwss(t: &Tournament) -> WinnerDistribution {
    int_ngwss(t).to_distribution()
}

/// Top-cycle restriction of [`ngwcs`].
pub fn tcc_rule(t: &Tournament) -> WinnerDistribution {
    int_tcc(t).to_distribution()
}

/// Randomized single-elimination bracket, averaged over all `n!` seedings.
pub fn rseb(t: &Tournament) -> Result<WinnerDistribution> {
    Ok(int_rseb(t)?.to_distribution())
}

/// Condorcet winner takes all, uniform otherwise.
pub fn trivial_uniform(t: &Tournament) -> WinnerDistribution {
    int_trivial(t).to_distribution()
}

/// Evaluates any rule by id. Only [`RuleId::Rseb`] can fail, on team counts
/// it does not support.
pub fn evaluate(rule: RuleId, t: &Tournament) -> Result<WinnerDistribution> {
    Ok(evaluate_int(rule, t)?.to_distribution())
}

// ======================================================================
// Tests
// ======================================================================
