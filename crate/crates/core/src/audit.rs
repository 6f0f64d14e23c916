//! Property checks and exact worst-case manipulability constants.
//!
//! Audits either sweep every tournament of a given size or walk an explicit
//! list (typically a generated family member plus its single-flip
//! neighbors). Sweeps over the full enumeration partition the index space
//! across workers with no shared state; partial results merge by maximum
//! constant with a deterministic tie-break, so the report is identical for
//! every `jobs` setting.
//!
//! All constants are exact. Exhaustive sweeps run on integer numerators
//! over common denominators, which stay far below `u128` range for every
//! enumerable size; every product here is checked. Explicit lists may hold
//! much larger tournaments and use full rational arithmetic instead.
//!
//! Instance semantics, shared by both paths:
//! * pairwise selfishness (lambda): over ordered adjacent pairs `(T, T')`
//!   differing in the `{i,j}` match, with `gain = (r_i(T')+r_j(T')) -
//!   (r_i(T)+r_j(T))` and `drop = max(r_i(T)-r_i(T'), r_j(T)-r_j(T'))`: a
//!   positive gain with `drop <= 0` is infinitely manipulable, a positive
//!   gain otherwise costs `gain/drop`, and everything else is unconstrained.
//! * multiplicative coalition gain (delta): over coalitions `S` of 2..=k
//!   teams and ordered S-adjacent pairs, the ratio of coalition mass before
//!   and after; positive mass over zero mass is infinite and `0/x` never
//!   constrains.
//! * additive coalition gain (alpha): the same sweep, tracking the mass
//!   difference floored at zero.
//!
//! A pair of distinct tournaments is scanned once and contributes both
//! ordered instances; `T = T'` contributes nothing (any instance that
//! constrains at all already forces delta >= 1 through its reverse
//! ordering, so identity pairs can never move a worst constant).

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::rules::{evaluate_int, IntDist, RuleId};
use crate::tournament::{
    all_pairs, enumeration_count, gen_family, pair_count, pair_index, CoalitionMove, FamilyId,
    Tournament,
};
use num::bigint::BigInt;
use num::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

// ======================================================================
// Identifiers, scopes, options
// ======================================================================

/// The properties an audit can certify or refute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyId {
    /// A Condorcet winner receives probability exactly 1.
    CondorcetConsistency,
    /// Teams outside the top cycle receive probability exactly 0.
    TopCycleConsistency,
    /// Winning a match never lowers the winner's probability.
    Monotonicity,
    /// Minimal lambda bounding pairwise gain against individual drop.
    NmLambda,
    /// Minimal multiplicative coalition gain delta.
    MnmDelta,
    /// Minimal additive coalition gain alpha.
    SnmAlpha,
}

impl PropertyId {
    pub const ALL: [PropertyId; 6] = [
        PropertyId::CondorcetConsistency,
        PropertyId::TopCycleConsistency,
        PropertyId::Monotonicity,
        PropertyId::NmLambda,
        PropertyId::MnmDelta,
        PropertyId::SnmAlpha,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::CondorcetConsistency => "condorcet-consistency",
            PropertyId::TopCycleConsistency => "top-cycle-consistency",
            PropertyId::Monotonicity => "monotonicity",
            PropertyId::NmLambda => "nm-lambda",
            PropertyId::MnmDelta => "mnm-delta",
            PropertyId::SnmAlpha => "snm-alpha",
        }
    }

    /// Whether the audit computes a worst constant rather than pass/fail.
    pub fn is_constant_valued(self) -> bool {
        matches!(self, PropertyId::NmLambda | PropertyId::MnmDelta | PropertyId::SnmAlpha)
    }

    /// Whether the property takes a coalition size.
    pub fn takes_k(self) -> bool {
        self.is_constant_valued()
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<PropertyId> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property `{s}`")))
    }
}

/// Which tournaments a constant audit ranges over.
#[derive(Debug, Clone)]
pub enum AuditScope {
    /// Every tournament on `n` teams.
    Exhaustive { n: usize },
    /// One generated family member and all of its single-flip neighbors.
    Family { family: FamilyId, n: usize, seed: u64 },
    /// Any explicit list of same-size tournaments. Adjacency is discovered
    /// by diffing outcome matrices; list position serves as the tournament
    /// index for witness tie-breaking.
    Explicit { tournaments: Vec<Tournament> },
}

/// The generated family member followed by its `C(n,2)` single-flip
/// neighbors in pair order.
pub fn family_neighborhood(family: FamilyId, n: usize, seed: u64) -> Result<Vec<Tournament>> {
    let base = gen_family(family, n, seed)?;
    let mut list = Vec::with_capacity(1 + pair_count(n));
    list.push(base.clone());
    for (i, j) in all_pairs(n) {
        list.push(base.flip_match(i, j));
    }
    Ok(list)
}

enum ResolvedScope {
    Exhaustive { n: usize, count: u64 },
    List { n: usize, family: Option<FamilyId>, tournaments: Vec<Tournament> },
}

impl AuditScope {
    fn resolve(&self) -> Result<ResolvedScope> {
        match self {
            AuditScope::Exhaustive { n } => {
                Ok(ResolvedScope::Exhaustive { n: *n, count: enumeration_count(*n)? })
            }
            AuditScope::Family { family, n, seed } => Ok(ResolvedScope::List {
                n: *n,
                family: Some(*family),
                tournaments: family_neighborhood(*family, *n, *seed)?,
            }),
            AuditScope::Explicit { tournaments } => {
                let n = match tournaments.first() {
                    Some(t) => t.n(),
                    None => {
                        return Err(Error::InvalidArgument(
                            "explicit audit scope must not be empty".into(),
                        ))
                    }
                };
                if tournaments.iter().any(|t| t.n() != n) {
                    return Err(Error::InvalidArgument(
                        "explicit audit scope mixes tournament sizes".into(),
                    ));
                }
                Ok(ResolvedScope::List { n, family: None, tournaments: tournaments.clone() })
            }
        }
    }
}

/// Knobs shared by every audit entry point.
#[derive(Debug, Clone)]
pub struct AuditOptions {
    /// Worker count for exhaustive sweeps. Results are identical for every
    /// value; only timing changes.
    pub jobs: usize,
    /// Pass/fail cutoff for constant-valued audits. Without one, an audit
    /// passes exactly when the worst constant is finite.
    pub threshold: Option<Rational>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { jobs: 1, threshold: None }
    }
}

// ======================================================================
// Reports
// ======================================================================

/// One instance achieving a report's worst constant, or one violation of a
/// pass/fail property. `adjacent` differs from `tournament` only inside
/// `coalition`; property violations that involve no move carry an empty
/// coalition and `adjacent == tournament`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tournament: Tournament,
    pub coalition: Vec<usize>,
    pub adjacent: Tournament,
}

/// Exact worst constant of a constant-valued audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WorstConstant {
    Finite(Rational),
    Infinite,
}

impl WorstConstant {
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            WorstConstant::Finite(r) => Some(r),
            WorstConstant::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, WorstConstant::Infinite)
    }

    /// Advisory float; `None` for the infinite case.
    pub fn to_f64(&self) -> Option<f64> {
        self.as_finite().map(to_f64)
    }
}

impl fmt::Display for WorstConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WorstConstant::Finite(r) => write!(f, "{}", crate::rational::format_ratio(r)),
            WorstConstant::Infinite => f.write_str("inf"),
        }
    }
}

/// Outcome of one audit: what was checked, over what, and what was found.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub rule: RuleId,
    pub property: PropertyId,
    /// Coalition size for the coalition properties, absent otherwise.
    pub k: Option<usize>,
    pub n: usize,
    /// Set when the scope was a generated family neighborhood.
    pub family: Option<FamilyId>,
    pub passed: bool,
    /// Absent for pass/fail properties.
    pub worst_constant: Option<WorstConstant>,
    /// The lexicographically smallest (tournament index, coalition,
    /// orientation) instance achieving the worst constant, or the smallest
    /// violation for pass/fail properties. Empty when nothing constrained.
    pub witnesses: Vec<Witness>,
    /// Tournaments visited as instance bases.
    pub checked: u64,
}

// ======================================================================
// Constants and extremum tracking
// ======================================================================

/// Nonnegative fraction on `u128` parts. Exhaustive sweeps cap at 11 teams,
/// where every numerator and denominator entering a comparison is below
/// `2^35`, so checked cross-multiplication never overflows.
#[derive(Debug, Clone, Copy)]
struct Frac {
    num: u128,
    den: u128,
}

trait ConstOrd {
    fn const_cmp(&self, other: &Self) -> Ordering;
}

impl ConstOrd for Frac {
    fn const_cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num.checked_mul(other.den).expect("fraction compare overflow");
        let rhs = other.num.checked_mul(self.den).expect("fraction compare overflow");
        lhs.cmp(&rhs)
    }
}

impl ConstOrd for Rational {
    fn const_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Violations of pass/fail properties all rank equally; only the witness
/// key matters.
impl ConstOrd for () {
    fn const_cmp(&self, _: &Self) -> Ordering {
        Ordering::Equal
    }
}

#[derive(Debug, Clone)]
enum Cand<C> {
    Finite(C),
    Infinite,
}

impl<C: ConstOrd> Cand<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cand::Infinite, Cand::Infinite) => Ordering::Equal,
            (Cand::Infinite, Cand::Finite(_)) => Ordering::Greater,
            (Cand::Finite(_), Cand::Infinite) => Ordering::Less,
            (Cand::Finite(a), Cand::Finite(b)) => a.const_cmp(b),
        }
    }
}

/// Witness tie-break key; ordered instances compare by the pre-move
/// tournament's index, then coalition, then the move's orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    index: u64,
    coalition: Vec<usize>,
    orientation: u64,
}

struct Best<C> {
    cand: Cand<C>,
    key: Key,
    witness: Witness,
}

/// Per-worker maximum with deterministic tie-breaking. Merging is
/// associative and commutative, so partition boundaries cannot show up in
/// the result.
struct Tracker<C> {
    best: Option<Best<C>>,
}

impl<C: ConstOrd> Tracker<C> {
    fn new() -> Self {
        Tracker { best: None }
    }

    fn offer(
        &mut self,
        cand: Cand<C>,
        key: impl FnOnce() -> Key,
        witness: impl FnOnce() -> Witness,
    ) {
        match &mut self.best {
            None => self.best = Some(Best { cand, key: key(), witness: witness() }),
            Some(best) => match cand.cmp(&best.cand) {
                Ordering::Less => {}
                Ordering::Greater => {
                    self.best = Some(Best { cand, key: key(), witness: witness() })
                }
                Ordering::Equal => {
                    let key = key();
                    if key < best.key {
                        self.best = Some(Best { cand, key, witness: witness() });
                    }
                }
            },
        }
    }

    fn merge(mut self, other: Self) -> Self {
        if let Some(b) = other.best {
            self.offer(b.cand, || b.key, || b.witness);
        }
        self
    }
}

// ======================================================================
// Instance math, integer path
// ======================================================================

/// Products of a numerator and a foreign denominator; below `2^35` for
/// every enumerable size, comfortably inside `i128`.
#[inline]
fn cross(a: &IntDist, b: &IntDist, i: usize) -> i128 {
    a.num[i] as i128 * b.den as i128
}

/// Lambda of the ordered instance (T, T') on the pair `{i, j}`.
#[inline]
fn lambda_instance(dt: &IntDist, dtp: &IntDist, i: usize, j: usize) -> Option<Cand<Frac>> {
    let gain = (dtp.num[i] + dtp.num[j]) as i128 * dt.den as i128
        - (dt.num[i] + dt.num[j]) as i128 * dtp.den as i128;
    if gain <= 0 {
        return None;
    }
    let drop = (cross(dt, dtp, i) - cross(dtp, dt, i)).max(cross(dt, dtp, j) - cross(dtp, dt, j));
    if drop <= 0 {
        Some(Cand::Infinite)
    } else {
        Some(Cand::Finite(Frac { num: gain as u128, den: drop as u128 }))
    }
}

/// Delta of the ordered instance (T, T') on coalition `s`.
#[inline]
fn delta_instance(dt: &IntDist, dtp: &IntDist, s: &[usize]) -> Option<Cand<Frac>> {
    let mass_t: u128 = s.iter().map(|&i| dt.num[i]).sum();
    if mass_t == 0 {
        return None;
    }
    let mass_tp: u128 = s.iter().map(|&i| dtp.num[i]).sum();
    if mass_tp == 0 {
        return Some(Cand::Infinite);
    }
    Some(Cand::Finite(Frac {
        num: mass_t.checked_mul(dtp.den).expect("delta numerator overflow"),
        den: mass_tp.checked_mul(dt.den).expect("delta denominator overflow"),
    }))
}

/// Alpha of the ordered instance (T, T') on coalition `s`.
#[inline]
fn alpha_instance(dt: &IntDist, dtp: &IntDist, s: &[usize]) -> Option<Cand<Frac>> {
    let mass_t: i128 = s.iter().map(|&i| dt.num[i] as i128).sum();
    let mass_tp: i128 = s.iter().map(|&i| dtp.num[i] as i128).sum();
    let gap = mass_t * dtp.den as i128 - mass_tp * dt.den as i128;
    if gap <= 0 {
        None
    } else {
        Some(Cand::Finite(Frac {
            num: gap as u128,
            den: (dt.den as i128 * dtp.den as i128) as u128,
        }))
    }
}

// ======================================================================
// Instance math, rational path (explicit lists)
// ======================================================================

fn lambda_instance_big(rt: &[Rational], rtp: &[Rational], i: usize, j: usize) -> Option<Cand<Rational>> {
    let gain = (&rtp[i] + &rtp[j]) - (&rt[i] + &rt[j]);
    if !gain.is_positive() {
        return None;
    }
    let drop = (&rt[i] - &rtp[i]).max(&rt[j] - &rtp[j]);
    if drop.is_positive() {
        Some(Cand::Finite(gain / drop))
    } else {
        Some(Cand::Infinite)
    }
}

fn delta_instance_big(rt: &[Rational], rtp: &[Rational], s: &[usize]) -> Option<Cand<Rational>> {
    let mass_t: Rational = s.iter().map(|&i| rt[i].clone()).sum();
    if mass_t.is_zero() {
        return None;
    }
    let mass_tp: Rational = s.iter().map(|&i| rtp[i].clone()).sum();
    if mass_tp.is_zero() {
        Some(Cand::Infinite)
    } else {
        Some(Cand::Finite(mass_t / mass_tp))
    }
}

fn alpha_instance_big(rt: &[Rational], rtp: &[Rational], s: &[usize]) -> Option<Cand<Rational>> {
    let mass_t: Rational = s.iter().map(|&i| rt[i].clone()).sum();
    let mass_tp: Rational = s.iter().map(|&i| rtp[i].clone()).sum();
    let gap = mass_t - mass_tp;
    if gap.is_positive() {
        Some(Cand::Finite(gap))
    } else {
        None
    }
}

// ======================================================================
// Partitioned exhaustive sweeps
// ======================================================================

type EvalFn<'a> = dyn Fn(&Tournament) -> Result<IntDist> + Sync + 'a;

fn split_ranges(count: u64, jobs: usize) -> Vec<Range<u64>> {
    let jobs = jobs.max(1).min(count.max(1) as usize) as u64;
    let base = count / jobs;
    let extra = count % jobs;
    let mut ranges = Vec::with_capacity(jobs as usize);
    let mut start = 0;
    for w in 0..jobs {
        let len = base + u64::from(w < extra);
        ranges.push(start..start + len);
        start += len;
    }
    ranges
}

/// Runs `worker` over a partition of `0..count` and folds the results in
/// partition order. Fold order is irrelevant for correctness because the
/// merge is associative and commutative, but keeping it fixed makes that
/// easy to audit.
fn run_sweep<S: Send>(
    count: u64,
    jobs: usize,
    worker: &(impl Fn(Range<u64>) -> Result<S> + Sync),
    merge: impl Fn(S, S) -> S,
) -> Result<S> {
    let ranges = split_ranges(count, jobs);
    if ranges.len() == 1 {
        return worker(ranges.into_iter().next().unwrap());
    }
    let results: Vec<Result<S>> = std::thread::scope(|scope| {
        let handles: Vec<_> =
            ranges.into_iter().map(|r| scope.spawn(move || worker(r))).collect();
        handles.into_iter().map(|h| h.join().expect("audit worker panicked")).collect()
    });
    let mut acc: Option<S> = None;
    for r in results {
        let s = r?;
        acc = Some(match acc {
            None => s,
            Some(a) => merge(a, s),
        });
    }
    Ok(acc.expect("at least one partition"))
}

/// Cached distribution of the sweep's current base tournament.
struct BaseEval<'a> {
    eval: &'a EvalFn<'a>,
    cached: Option<IntDist>,
}

impl<'a> BaseEval<'a> {
    fn new(eval: &'a EvalFn<'a>) -> Self {
        BaseEval { eval, cached: None }
    }

    fn reset(&mut self) {
        self.cached = None;
    }

    fn get(&mut self, t: &Tournament) -> Result<&IntDist> {
        if self.cached.is_none() {
            self.cached = Some((self.eval)(t)?);
        }
        Ok(self.cached.as_ref().unwrap())
    }
}

fn scan_condorcet(eval: &EvalFn, n: usize, count: u64, jobs: usize) -> Result<Tracker<()>> {
    run_sweep(
        count,
        jobs,
        &|range: Range<u64>| {
            let mut tracker = Tracker::new();
            for idx in range {
                let t = Tournament::from_index(n, idx);
                if let Some(w) = t.condorcet_winner() {
                    let d = eval(&t)?;
                    if d.num[w] != d.den {
                        tracker.offer(
                            Cand::Finite(()),
                            || Key { index: idx, coalition: vec![], orientation: 0 },
                            || Witness {
                                tournament: t.clone(),
                                coalition: vec![],
                                adjacent: t.clone(),
                            },
                        );
                    }
                }
            }
            Ok(tracker)
        },
        Tracker::merge,
    )
}

fn scan_top_cycle(eval: &EvalFn, n: usize, count: u64, jobs: usize) -> Result<Tracker<()>> {
    run_sweep(
        count,
        jobs,
        &|range: Range<u64>| {
            let mut tracker = Tracker::new();
            for idx in range {
                let t = Tournament::from_index(n, idx);
                let cycle = t.top_cycle();
                if cycle.len() == n {
                    continue;
                }
                let mask: u64 = cycle.iter().fold(0, |m, &i| m | 1 << i);
                let d = eval(&t)?;
                if (0..n).any(|i| mask >> i & 1 == 0 && d.num[i] != 0) {
                    tracker.offer(
                        Cand::Finite(()),
                        || Key { index: idx, coalition: vec![], orientation: 0 },
                        || Witness { tournament: t.clone(), coalition: vec![], adjacent: t.clone() },
                    );
                }
            }
            Ok(tracker)
        },
        Tracker::merge,
    )
}

fn scan_monotonicity(eval: &EvalFn, n: usize, count: u64, jobs: usize) -> Result<Tracker<()>> {
    let pairs = all_pairs(n);
    let m = pairs.len();
    run_sweep(
        count,
        jobs,
        &|range: Range<u64>| {
            let mut tracker = Tracker::new();
            let mut base = BaseEval::new(eval);
            for idx in range {
                let t = Tournament::from_index(n, idx);
                base.reset();
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    // Visit each unordered adjacent pair from the side
                    // where i (the lower index) won.
                    if !t.beats(i, j) {
                        continue;
                    }
                    let flipped = t.flip_match(i, j);
                    let dt = base.get(&t)?.clone();
                    let df = eval(&flipped)?;
                    // In t, i beat j: i must not gain from losing instead.
                    if cross(&dt, &df, i) < cross(&df, &dt, i) {
                        tracker.offer(
                            Cand::Finite(()),
                            || Key { index: idx, coalition: vec![i, j], orientation: 0 },
                            || Witness {
                                tournament: t.clone(),
                                coalition: vec![i, j],
                                adjacent: flipped.clone(),
                            },
                        );
                    }
                    // In flipped, j beat i: j must not gain from losing.
                    if cross(&df, &dt, j) < cross(&dt, &df, j) {
                        let fidx = idx ^ 1 << (m - 1 - k);
                        tracker.offer(
                            Cand::Finite(()),
                            || Key { index: fidx, coalition: vec![i, j], orientation: 1 },
                            || Witness {
                                tournament: flipped.clone(),
                                coalition: vec![i, j],
                                adjacent: t.clone(),
                            },
                        );
                    }
                }
            }
            Ok(tracker)
        },
        Tracker::merge,
    )
}

/// Instance kind shared by the three constant-valued sweeps.
#[derive(Clone, Copy, PartialEq, Eq)]
enum ConstantKind {
    Lambda,
    Delta,
    Alpha,
}

fn pair_instance(
    kind: ConstantKind,
    dt: &IntDist,
    dtp: &IntDist,
    i: usize,
    j: usize,
) -> Option<Cand<Frac>> {
    match kind {
        ConstantKind::Lambda => lambda_instance(dt, dtp, i, j),
        ConstantKind::Delta => delta_instance(dt, dtp, &[i, j]),
        ConstantKind::Alpha => alpha_instance(dt, dtp, &[i, j]),
    }
}

/// Sweeps pair coalitions, and triple coalitions when `k == 3`, over the
/// whole enumeration. Each unordered adjacent pair of tournaments is
/// visited exactly once and contributes both ordered instances; triple
/// cubes are processed at their all-zero-orientation corner.
fn scan_constant(
    kind: ConstantKind,
    eval: &EvalFn,
    n: usize,
    count: u64,
    k: usize,
    jobs: usize,
) -> Result<Tracker<Frac>> {
    let pairs = all_pairs(n);
    let m = pairs.len();
    let triples: Vec<[usize; 3]> = if k >= 3 {
        let mut v = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    v.push([a, b, c]);
                }
            }
        }
        v
    } else {
        Vec::new()
    };
    // Global index bit positions of a triple's three internal pairs.
    let triple_bits: Vec<[u64; 3]> = triples
        .iter()
        .map(|&[a, b, c]| {
            [
                1 << (m - 1 - pair_index(n, a, b)),
                1 << (m - 1 - pair_index(n, a, c)),
                1 << (m - 1 - pair_index(n, b, c)),
            ]
        })
        .collect();

    run_sweep(
        count,
        jobs,
        &|range: Range<u64>| {
            let mut tracker: Tracker<Frac> = Tracker::new();
            let mut base = BaseEval::new(eval);
            for idx in range {
                let t = Tournament::from_index(n, idx);
                base.reset();

                for (p, &(i, j)) in pairs.iter().enumerate() {
                    // Once per unordered pair, from the bit=1 side.
                    if !t.beats(i, j) {
                        continue;
                    }
                    let other = t.flip_match(i, j);
                    let dt = base.get(&t)?.clone();
                    let dp = eval(&other)?;
                    let oidx = idx ^ 1 << (m - 1 - p);
                    if let Some(c) = pair_instance(kind, &dt, &dp, i, j) {
                        tracker.offer(
                            c,
                            || Key { index: idx, coalition: vec![i, j], orientation: 0 },
                            || Witness {
                                tournament: t.clone(),
                                coalition: vec![i, j],
                                adjacent: other.clone(),
                            },
                        );
                    }
                    if let Some(c) = pair_instance(kind, &dp, &dt, i, j) {
                        tracker.offer(
                            c,
                            || Key { index: oidx, coalition: vec![i, j], orientation: 1 },
                            || Witness {
                                tournament: other.clone(),
                                coalition: vec![i, j],
                                adjacent: t.clone(),
                            },
                        );
                    }
                }

                for (s_idx, s) in triples.iter().enumerate() {
                    let bits = &triple_bits[s_idx];
                    // Process the 8-tournament cube at its all-zero corner.
                    if bits.iter().any(|&b| idx & b != 0) {
                        continue;
                    }
                    let coalition = s.to_vec();
                    let mut variants: Vec<(u64, Tournament, IntDist)> = Vec::with_capacity(8);
                    for o in 0..8u64 {
                        let vidx = idx
                            | (o >> 2 & 1) * bits[0]
                            | (o >> 1 & 1) * bits[1]
                            | (o & 1) * bits[2];
                        let v = if vidx == idx {
                            t.clone()
                        } else {
                            CoalitionMove::new(coalition.clone(), o, n)
                                .expect("triple move is valid")
                                .apply(&t)
                        };
                        let d = eval(&v)?;
                        variants.push((o, v, d));
                    }
                    for (oa, va, da) in &variants {
                        for (ob, vb, db) in &variants {
                            if oa == ob {
                                continue;
                            }
                            let inst = match kind {
                                ConstantKind::Lambda => unreachable!("lambda is pairwise"),
                                ConstantKind::Delta => delta_instance(da, db, s),
                                ConstantKind::Alpha => alpha_instance(da, db, s),
                            };
                            if let Some(c) = inst {
                                tracker.offer(
                                    c,
                                    || Key {
                                        index: va.index(),
                                        coalition: coalition.clone(),
                                        orientation: *ob,
                                    },
                                    || Witness {
                                        tournament: va.clone(),
                                        coalition: coalition.clone(),
                                        adjacent: vb.clone(),
                                    },
                                );
                            }
                        }
                    }
                }
            }
            Ok(tracker)
        },
        Tracker::merge,
    )
}

// ======================================================================
// Explicit-list sweeps
// ======================================================================

/// Endpoints of the matches where `a` and `b` disagree, and how many
/// matches that is.
fn diff_endpoints(a: &Tournament, b: &Tournament, n: usize) -> (Vec<usize>, u32) {
    let mut endpoints = Vec::new();
    let mut matches = 0;
    for i in 0..n {
        let x = a.defeated_mask(i) ^ b.defeated_mask(i);
        if x != 0 {
            endpoints.push(i);
            matches += x.count_ones();
        }
    }
    (endpoints, matches / 2)
}

fn scan_constant_list(
    kind: ConstantKind,
    rule: RuleId,
    k: usize,
    tournaments: &[Tournament],
) -> Result<Tracker<Rational>> {
    let n = tournaments[0].n();
    let dists: Vec<Vec<Rational>> = tournaments
        .iter()
        .map(|t| Ok(evaluate_int(rule, t)?.to_distribution().into_probs()))
        .collect::<Result<_>>()?;
    let mut tracker: Tracker<Rational> = Tracker::new();

    let mut offer = |cand: Cand<Rational>, a: usize, b: usize, s: &[usize]| {
        tracker.offer(
            cand,
            || Key {
                index: a as u64,
                coalition: s.to_vec(),
                orientation: CoalitionMove::read(&tournaments[b], s.to_vec()).orientation(),
            },
            || Witness {
                tournament: tournaments[a].clone(),
                coalition: s.to_vec(),
                adjacent: tournaments[b].clone(),
            },
        );
    };

    for a in 0..tournaments.len() {
        for b in 0..tournaments.len() {
            if a == b {
                continue;
            }
            let (endpoints, matches) = diff_endpoints(&tournaments[a], &tournaments[b], n);
            if endpoints.is_empty() || endpoints.len() > k {
                continue;
            }
            match kind {
                ConstantKind::Lambda => {
                    if matches == 1 {
                        let (i, j) = (endpoints[0], endpoints[1]);
                        if let Some(c) = lambda_instance_big(&dists[a], &dists[b], i, j) {
                            offer(c, a, b, &endpoints);
                        }
                    }
                }
                ConstantKind::Delta | ConstantKind::Alpha => {
                    // Every coalition containing all differing endpoints
                    // sees this ordered pair as adjacent.
                    let mut coalitions: Vec<Vec<usize>> = vec![endpoints.clone()];
                    if k == 3 && endpoints.len() == 2 {
                        for x in 0..n {
                            if !endpoints.contains(&x) {
                                let mut s = vec![endpoints[0], endpoints[1], x];
                                s.sort_unstable();
                                coalitions.push(s);
                            }
                        }
                    }
                    for s in coalitions {
                        let inst = match kind {
                            ConstantKind::Delta => delta_instance_big(&dists[a], &dists[b], &s),
                            _ => alpha_instance_big(&dists[a], &dists[b], &s),
                        };
                        if let Some(c) = inst {
                            offer(c, a, b, &s);
                        }
                    }
                }
            }
        }
    }
    Ok(tracker)
}

// ======================================================================
// Report assembly
// ======================================================================

fn finish_check(
    rule: RuleId,
    property: PropertyId,
    n: usize,
    checked: u64,
    opts: &AuditOptions,
    tracker: Tracker<()>,
) -> Result<AuditReport> {
    if opts.threshold.is_some() {
        return Err(Error::InvalidArgument(format!(
            "property {property} is pass/fail and takes no threshold"
        )));
    }
    let (passed, witnesses) = match tracker.best {
        None => (true, vec![]),
        Some(b) => (false, vec![b.witness]),
    };
    Ok(AuditReport {
        rule,
        property,
        k: None,
        n,
        family: None,
        passed,
        worst_constant: None,
        witnesses,
        checked,
    })
}

fn frac_to_rational(f: Frac) -> Rational {
    Rational::new(BigInt::from(f.num), BigInt::from(f.den))
}

fn finish_constant(
    rule: RuleId,
    property: PropertyId,
    k: Option<usize>,
    n: usize,
    family: Option<FamilyId>,
    checked: u64,
    opts: &AuditOptions,
    best: Option<(Cand<Rational>, Witness)>,
) -> AuditReport {
    let (worst, witnesses) = match best {
        None => (WorstConstant::Finite(Rational::zero()), vec![]),
        Some((Cand::Finite(c), w)) => (WorstConstant::Finite(c), vec![w]),
        Some((Cand::Infinite, w)) => (WorstConstant::Infinite, vec![w]),
    };
    let passed = match (&opts.threshold, &worst) {
        (None, w) => !w.is_infinite(),
        (Some(_), WorstConstant::Infinite) => false,
        (Some(th), WorstConstant::Finite(c)) => c <= th,
    };
    AuditReport {
        rule,
        property,
        k,
        n,
        family,
        passed,
        worst_constant: Some(worst),
        witnesses,
        checked,
    }
}

fn best_to_rational(t: Tracker<Frac>) -> Option<(Cand<Rational>, Witness)> {
    t.best.map(|b| {
        let cand = match b.cand {
            Cand::Finite(f) => Cand::Finite(frac_to_rational(f)),
            Cand::Infinite => Cand::Infinite,
        };
        (cand, b.witness)
    })
}

fn best_rational(t: Tracker<Rational>) -> Option<(Cand<Rational>, Witness)> {
    t.best.map(|b| (b.cand, b.witness))
}

// ======================================================================
// Public entry points
// ======================================================================

pub(crate) fn check_condorcet_consistency_with(
    eval: &EvalFn,
    rule: RuleId,
    n: usize,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    let count = enumeration_count(n)?;
    let tracker = scan_condorcet(eval, n, count, opts.jobs)?;
    finish_check(rule, PropertyId::CondorcetConsistency, n, count, opts, tracker)
}

/// Does `rule` hand a Condorcet winner the whole prize on every `n`-team
/// tournament?
pub fn check_condorcet_consistency(
    rule: RuleId,
    n: usize,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    check_condorcet_consistency_with(&move |t| evaluate_int(rule, t), rule, n, opts)
}

pub(crate) fn check_top_cycle_consistency_with(
    eval: &EvalFn,
    rule: RuleId,
    n: usize,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    let count = enumeration_count(n)?;
    let tracker = scan_top_cycle(eval, n, count, opts.jobs)?;
    finish_check(rule, PropertyId::TopCycleConsistency, n, count, opts, tracker)
}

/// Does `rule` give probability 0 to every team outside the top cycle?
pub fn check_top_cycle_consistency(
    rule: RuleId,
    n: usize,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    check_top_cycle_consistency_with(&move |t| evaluate_int(rule, t), rule, n, opts)
}

pub(crate) fn check_monotonicity_with(
    eval: &EvalFn,
    rule: RuleId,
    n: usize,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    let count = enumeration_count(n)?;
    let tracker = scan_monotonicity(eval, n, count, opts.jobs)?;
    finish_check(rule, PropertyId::Monotonicity, n, count, opts, tracker)
}

/// Can a team ever raise its probability by losing a match instead of
/// winning it?
pub fn check_monotonicity(rule: RuleId, n: usize, opts: &AuditOptions) -> Result<AuditReport> {
    check_monotonicity_with(&move |t| evaluate_int(rule, t), rule, n, opts)
}

fn run_constant(
    kind: ConstantKind,
    property: PropertyId,
    rule: RuleId,
    k: usize,
    scope: &AuditScope,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "coalition size {k} unsupported, expected 2 or 3"
        )));
    }
    let report_k = Some(k);
    match scope.resolve()? {
        ResolvedScope::Exhaustive { n, count } => {
            let eval = move |t: &Tournament| evaluate_int(rule, t);
            let tracker = scan_constant(kind, &eval, n, count, k, opts.jobs)?;
            Ok(finish_constant(
                rule,
                property,
                report_k,
                n,
                None,
                count,
                opts,
                best_to_rational(tracker),
            ))
        }
        ResolvedScope::List { n, family, tournaments } => {
            let tracker = scan_constant_list(kind, rule, k, &tournaments)?;
            Ok(finish_constant(
                rule,
                property,
                report_k,
                n,
                family,
                tournaments.len() as u64,
                opts,
                best_rational(tracker),
            ))
        }
    }
}

/// Exact minimal lambda such that no pair of teams can profitably trade
/// their head-to-head match, over the scope.
pub fn minimal_lambda(rule: RuleId, scope: &AuditScope, opts: &AuditOptions) -> Result<AuditReport> {
    run_constant(ConstantKind::Lambda, PropertyId::NmLambda, rule, 2, scope, opts)
}

/// Exact minimal delta bounding any size-`k` coalition's multiplicative
/// gain, over the scope.
pub fn minimal_delta(
    rule: RuleId,
    k: usize,
    scope: &AuditScope,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    run_constant(ConstantKind::Delta, PropertyId::MnmDelta, rule, k, scope, opts)
}

/// Exact minimal alpha bounding any size-`k` coalition's additive gain,
/// over the scope.
pub fn minimal_alpha(
    rule: RuleId,
    k: usize,
    scope: &AuditScope,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    run_constant(ConstantKind::Alpha, PropertyId::SnmAlpha, rule, k, scope, opts)
}

/// Single dispatcher used by the command line: validates the property,
/// coalition size, and scope combination, then runs the audit.
pub fn audit(
    rule: RuleId,
    property: PropertyId,
    k: Option<usize>,
    scope: &AuditScope,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    match property {
        PropertyId::CondorcetConsistency | PropertyId::TopCycleConsistency | PropertyId::Monotonicity => {
            if k.is_some() {
                return Err(Error::InvalidArgument(format!(
                    "property {property} takes no coalition size"
                )));
            }
            let n = match scope {
                AuditScope::Exhaustive { n } => *n,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "property {property} audits the full enumeration; use an exhaustive scope"
                    )))
                }
            };
            match property {
                PropertyId::CondorcetConsistency => check_condorcet_consistency(rule, n, opts),
                PropertyId::TopCycleConsistency => check_top_cycle_consistency(rule, n, opts),
                _ => check_monotonicity(rule, n, opts),
            }
        }
        PropertyId::NmLambda => {
            if let Some(k) = k {
                if k != 2 {
                    return Err(Error::InvalidArgument(
                        "nm-lambda is pairwise; only k = 2 is defined".into(),
                    ));
                }
            }
            minimal_lambda(rule, scope, opts)
        }
        PropertyId::MnmDelta => minimal_delta(rule, k.unwrap_or(2), scope, opts),
        PropertyId::SnmAlpha => minimal_alpha(rule, k.unwrap_or(2), scope, opts),
    }
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_ratio;
    use crate::rules::evaluate;
    use crate::tournament::enumerate_all;
    use num::One;
    use proptest::prelude::*;

    fn opts() -> AuditOptions {
        AuditOptions::default()
    }

    fn exhaustive(n: usize) -> AuditScope {
        AuditScope::Exhaustive { n }
    }

    fn uniform_eval(t: &Tournament) -> Result<IntDist> {
        let n = t.n();
        Ok(IntDist { num: vec![1; n], den: n as u128 })
    }

    #[test]
    fn condorcet_check_passes_and_fails_correctly() {
        for rule in [RuleId::Ngwcs, RuleId::Ngwss, RuleId::TccNgwcs, RuleId::TrivialUniform] {
            let report = check_condorcet_consistency(rule, 4, &opts()).unwrap();
            assert!(report.passed, "{rule}");
            assert!(report.witnesses.is_empty());
            assert_eq!(report.checked, 64);
            assert_eq!(report.worst_constant, None);
        }

        // A rule that always plays uniformly ignores Condorcet winners.
        let report = check_condorcet_consistency_with(
            &uniform_eval,
            RuleId::TrivialUniform,
            3,
            &opts(),
        )
        .unwrap();
        assert!(!report.passed);
        let w = &report.witnesses[0];
        assert!(w.tournament.condorcet_winner().is_some());
        assert_eq!(w.coalition, Vec::<usize>::new());
        // Lexicographically first violating index.
        assert_eq!(w.tournament.index(), 0);
    }

    #[test]
    fn top_cycle_check_matches_known_rules() {
        assert!(check_top_cycle_consistency(RuleId::TccNgwcs, 5, &opts()).unwrap().passed);

        // Geometric scores leak probability to a Condorcet loser.
        let report = check_top_cycle_consistency(RuleId::Ngwcs, 4, &opts()).unwrap();
        assert!(!report.passed);
        let w = &report.witnesses[0];
        let cycle = w.tournament.top_cycle();
        let d = evaluate(RuleId::Ngwcs, &w.tournament).unwrap();
        assert!((0..4).any(|i| !cycle.contains(&i) && !d.prob(i).is_zero()));

        // With 3 teams the top cycle is a winner or everyone, so uniform
        // fallback is safe; a dominated fourth team breaks it.
        assert!(check_top_cycle_consistency(RuleId::TrivialUniform, 3, &opts()).unwrap().passed);
        let report = check_top_cycle_consistency(RuleId::TrivialUniform, 4, &opts()).unwrap();
        assert!(!report.passed);
        assert_eq!(report.witnesses[0].tournament.top_cycle().len(), 3);
    }

    #[test]
    fn monotonicity_check_passes_for_all_rules_small() {
        for rule in RuleId::ALL {
            let n = if rule == RuleId::Rseb { 4 } else { 5 };
            let report = check_monotonicity(rule, n, &opts()).unwrap();
            assert!(report.passed, "{rule}");
        }
    }

    #[test]
    fn monotonicity_check_catches_an_antitone_rule() {
        // Weight teams by losses instead of wins.
        let eval = |t: &Tournament| -> Result<IntDist> {
            let n = t.n();
            let num: Vec<u128> =
                (0..n).map(|i| 1u128 << (n - 1 - t.outdegree(i))).collect();
            let den = num.iter().sum();
            Ok(IntDist { num, den })
        };
        let report = check_monotonicity_with(&eval, RuleId::Ngwcs, 3, &opts()).unwrap();
        assert!(!report.passed);
        let w = &report.witnesses[0];
        assert_eq!(w.coalition.len(), 2);
        let (i, j) = (w.coalition[0], w.coalition[1]);
        // The witness records the side where the constrained team won.
        assert_eq!(w.adjacent, w.tournament.flip_match(i, j));
    }

    #[test]
    fn trivial_rule_lambda_is_n_minus_2() {
        for (n, expect) in [(3usize, "1"), (4, "2"), (5, "3")] {
            let report =
                minimal_lambda(RuleId::TrivialUniform, &exhaustive(n), &opts()).unwrap();
            assert_eq!(
                report.worst_constant,
                Some(WorstConstant::Finite(parse_ratio(expect).unwrap())),
                "n={n}"
            );
            assert!(report.passed);
            assert_eq!(report.k, Some(2));
        }
    }

    #[test]
    fn ngwcs_delta_at_three_teams_is_three_halves_with_cycle_witness() {
        let report = minimal_delta(RuleId::Ngwcs, 2, &exhaustive(3), &opts()).unwrap();
        assert_eq!(
            report.worst_constant,
            Some(WorstConstant::Finite(parse_ratio("3/2").unwrap()))
        );
        let w = &report.witnesses[0];
        // Winning side of the instance is a tournament with a Condorcet
        // winner; the adjacent side is a 3-cycle.
        assert_eq!(w.tournament.index(), 0);
        assert_eq!(w.coalition, vec![0, 2]);
        assert_eq!(w.adjacent.top_cycle().len(), 3);
        assert_eq!(report.checked, 8);
    }

    #[test]
    fn rseb_delta_is_infinite_at_four_teams() {
        let report = minimal_delta(RuleId::Rseb, 2, &exhaustive(4), &opts()).unwrap();
        assert_eq!(report.worst_constant, Some(WorstConstant::Infinite));
        assert!(!report.passed);
        let w = &report.witnesses[0];
        let dt = evaluate(RuleId::Rseb, &w.tournament).unwrap();
        let dp = evaluate(RuleId::Rseb, &w.adjacent).unwrap();
        let mass_t: Rational = w.coalition.iter().map(|&i| dt.prob(i).clone()).sum();
        let mass_p: Rational = w.coalition.iter().map(|&i| dp.prob(i).clone()).sum();
        assert!(mass_t.is_positive());
        assert!(mass_p.is_zero());
    }

    #[test]
    fn alpha_at_three_teams_is_one_third() {
        for rule in [RuleId::TrivialUniform, RuleId::Ngwcs] {
            let report = minimal_alpha(rule, 2, &exhaustive(3), &opts()).unwrap();
            assert_eq!(
                report.worst_constant,
                Some(WorstConstant::Finite(parse_ratio("1/3").unwrap())),
                "{rule}"
            );
        }
    }

    #[test]
    fn thresholds_decide_pass_exactly() {
        let mut o = opts();
        o.threshold = Some(parse_ratio("2").unwrap());
        let report = minimal_lambda(RuleId::TrivialUniform, &exhaustive(4), &o).unwrap();
        assert!(report.passed);

        o.threshold = Some(parse_ratio("199/100").unwrap());
        let report = minimal_lambda(RuleId::TrivialUniform, &exhaustive(4), &o).unwrap();
        assert!(!report.passed);

        // Infinite worst fails every threshold.
        o.threshold = Some(parse_ratio("1000000").unwrap());
        let report = minimal_delta(RuleId::Rseb, 2, &exhaustive(4), &o).unwrap();
        assert!(!report.passed);
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let single = minimal_lambda(RuleId::Ngwss, &exhaustive(5), &opts()).unwrap();
        for jobs in [2usize, 3, 7] {
            let o = AuditOptions { jobs, threshold: None };
            let multi = minimal_lambda(RuleId::Ngwss, &exhaustive(5), &o).unwrap();
            assert_eq!(single, multi, "jobs={jobs}");
        }
        let single = check_monotonicity(RuleId::Ngwcs, 5, &opts()).unwrap();
        let multi =
            check_monotonicity(RuleId::Ngwcs, 5, &AuditOptions { jobs: 4, threshold: None })
                .unwrap();
        assert_eq!(single, multi);
    }

    #[test]
    fn family_scope_reproduces_the_kryptonite_blowup() {
        let scope = AuditScope::Family { family: FamilyId::SupermanKryptonite, n: 8, seed: 0 };
        let report = minimal_lambda(RuleId::Ngwcs, &scope, &opts()).unwrap();
        assert_eq!(
            report.worst_constant,
            Some(WorstConstant::Finite(parse_ratio("63").unwrap()))
        );
        assert_eq!(report.family, Some(FamilyId::SupermanKryptonite));
        assert_eq!(report.n, 8);
        assert_eq!(report.checked, 29);
        let w = &report.witnesses[0];
        // The gaining side is the family tournament itself; the adjacent
        // side crowns the superman by flipping the kryptonite match.
        assert_eq!(w.tournament, gen_family(FamilyId::SupermanKryptonite, 8, 0).unwrap());
        assert_eq!(w.coalition, vec![0, 7]);
        assert_eq!(w.adjacent, w.tournament.flip_match(0, 7));
    }

    #[test]
    fn family_scope_with_cycle_gives_lambda_one() {
        let scope = AuditScope::Family { family: FamilyId::Cycle3, n: 3, seed: 0 };
        let report = minimal_lambda(RuleId::TrivialUniform, &scope, &opts()).unwrap();
        assert_eq!(
            report.worst_constant,
            Some(WorstConstant::Finite(parse_ratio("1").unwrap()))
        );
    }

    #[test]
    fn explicit_scope_matches_exhaustive_on_the_same_set() {
        let tournaments: Vec<Tournament> = enumerate_all(3).unwrap().collect();
        let explicit = minimal_delta(
            RuleId::Ngwcs,
            2,
            &AuditScope::Explicit { tournaments },
            &opts(),
        )
        .unwrap();
        let full = minimal_delta(RuleId::Ngwcs, 2, &exhaustive(3), &opts()).unwrap();
        assert_eq!(explicit.worst_constant, full.worst_constant);
        assert_eq!(explicit.witnesses, full.witnesses);
    }

    #[test]
    fn coalition_size_three_sees_strictly_more_than_pairs() {
        // Sanity: k=3 includes every k=2 instance, so delta can only grow.
        for rule in [RuleId::Ngwcs, RuleId::TrivialUniform] {
            let d2 = minimal_delta(rule, 2, &exhaustive(4), &opts()).unwrap();
            let d3 = minimal_delta(rule, 3, &exhaustive(4), &opts()).unwrap();
            let (Some(WorstConstant::Finite(a)), Some(WorstConstant::Finite(b))) =
                (&d2.worst_constant, &d3.worst_constant)
            else {
                panic!("expected finite constants for {rule}");
            };
            assert!(b >= a, "{rule}");
        }
    }

    #[test]
    fn dispatcher_validates_combinations() {
        let e = audit(RuleId::Ngwcs, PropertyId::Monotonicity, Some(2), &exhaustive(3), &opts());
        assert!(matches!(e, Err(Error::InvalidArgument(_))));

        let e = audit(RuleId::Ngwcs, PropertyId::NmLambda, Some(3), &exhaustive(3), &opts());
        assert!(matches!(e, Err(Error::InvalidArgument(_))));

        let e = audit(
            RuleId::Ngwcs,
            PropertyId::Monotonicity,
            None,
            &AuditScope::Family { family: FamilyId::Cycle3, n: 3, seed: 0 },
            &opts(),
        );
        assert!(matches!(e, Err(Error::InvalidArgument(_))));

        let e = minimal_delta(RuleId::Ngwcs, 4, &exhaustive(3), &opts());
        assert!(matches!(e, Err(Error::InvalidArgument(_))));

        let e = check_monotonicity(
            RuleId::Ngwcs,
            3,
            &AuditOptions { jobs: 1, threshold: Some(Rational::one()) },
        );
        assert!(matches!(e, Err(Error::InvalidArgument(_))));

        let ok = audit(RuleId::Ngwcs, PropertyId::MnmDelta, None, &exhaustive(3), &opts());
        assert_eq!(ok.unwrap().k, Some(2));
    }

    #[test]
    fn unsupported_rule_sizes_surface_as_errors() {
        let e = minimal_lambda(RuleId::Rseb, &exhaustive(3), &opts());
        assert!(matches!(e, Err(Error::UnsupportedSize(_))));
        let e = check_condorcet_consistency(RuleId::Rseb, 5, &opts());
        assert!(matches!(e, Err(Error::UnsupportedSize(_))));
    }

    /// The raw pairwise definition and its rearranged form for monotone
    /// rules must land on the same minimal lambda.
    #[test]
    fn simplified_lambda_form_agrees_for_monotone_rules() {
        for (rule, sizes) in [
            (RuleId::Ngwcs, vec![3usize, 4, 5]),
            (RuleId::Ngwss, vec![3, 4]),
            (RuleId::TccNgwcs, vec![3, 4]),
            (RuleId::TrivialUniform, vec![3, 4, 5]),
            (RuleId::Rseb, vec![4]),
        ] {
            for n in sizes {
                let direct = minimal_lambda(rule, &exhaustive(n), &opts()).unwrap();
                let simplified = simplified_lambda(rule, n);
                let got = match direct.worst_constant.unwrap() {
                    WorstConstant::Finite(r) => Some(r),
                    WorstConstant::Infinite => None,
                };
                assert_eq!(got, simplified, "{rule} n={n}");
            }
        }
    }

    /// Minimal lambda via "the loser's gain is at most (lambda + 1) times
    /// the winner's drop", scanning winners only. Valid for monotone rules.
    fn simplified_lambda(rule: RuleId, n: usize) -> Option<Rational> {
        let mut worst: Option<Rational> = Some(Rational::zero());
        for t in enumerate_all(n).unwrap() {
            let dt = evaluate(rule, &t).unwrap();
            for (i, j) in all_pairs(n) {
                let (w, l) = if t.beats(i, j) { (i, j) } else { (j, i) };
                let flipped = t.flip_match(i, j);
                let df = evaluate(rule, &flipped).unwrap();
                let loser_gain = df.prob(l) - dt.prob(l);
                if !loser_gain.is_positive() {
                    continue;
                }
                let winner_drop = dt.prob(w) - df.prob(w);
                if !winner_drop.is_positive() {
                    return None;
                }
                let lam = loser_gain / winner_drop - Rational::one();
                let candidate = lam.max(Rational::zero());
                worst = match worst {
                    None => None,
                    Some(cur) => Some(cur.max(candidate)),
                };
            }
        }
        worst
    }

    proptest! {
        /// Pass under a threshold iff the worst constant is at most it.
        #[test]
        fn prop_threshold_coherence(num in 0u32..40, den in 1u32..12) {
            let threshold = Rational::new(BigInt::from(num), BigInt::from(den));
            let o = AuditOptions { jobs: 1, threshold: Some(threshold.clone()) };
            let report = minimal_delta(RuleId::Ngwcs, 2, &exhaustive(4), &o).unwrap();
            let worst = report.worst_constant.clone().unwrap();
            match worst {
                WorstConstant::Finite(c) => prop_assert_eq!(report.passed, c <= threshold),
                WorstConstant::Infinite => prop_assert!(!report.passed),
            }
        }
    }
}
