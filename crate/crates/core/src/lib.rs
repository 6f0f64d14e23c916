//! Exact evaluation and manipulability audits for randomized tournament
//! rules.
//!
//! A round-robin tournament on `n` teams records one decisive match per
//! pair. A randomized rule turns the outcome table into a probability of
//! winning the event for every team. This crate implements a family of
//! such rules exactly — every probability is a rational number, never a
//! float — and audits how far coalitions of teams can get by deliberately
//! throwing matches among themselves:
//!
//! * [`rules::ngwcs`] — geometric weights on win counts, with a Condorcet
//!   winner taking everything;
//! * [`rules::ngwss`] — a refinement that also credits wins over strong
//!   opponents, trading a small uniform slack for bounded manipulability;
//! * [`rules::tcc_rule`] — the geometric weights restricted to the top
//!   cycle, so dominated teams get exactly zero;
//! * [`rules::rseb`] — single-elimination brackets under a uniformly
//!   random seeding, for 1, 2, 4, or 8 teams;
//! * [`rules::trivial_uniform`] — Condorcet winner or bust, the baseline
//!   that maximally rewards match throwing.
//!
//! The [`audit`] module checks structural properties (Condorcet
//! consistency, top-cycle consistency, monotonicity) across the full
//! enumeration of a given size, and computes exact worst-case
//! manipulability constants: the pairwise gain-to-drop ratio `lambda`, the
//! multiplicative coalition gain `delta`, and the additive coalition gain
//! `alpha`. Every report carries a concrete witness, and
//! [`report::reverify_witness`] recomputes claims from scratch.
//!
//! # Quick start
//!
//! ```
//! use matchfix::prelude::*;
//!
//! // Three teams in a cycle: 0 beats 1, 1 beats 2, 2 beats 0.
//! let t: Tournament = "3\n0 1 0\n0 0 1\n1 0 0\n".parse()?;
//! assert_eq!(t.top_cycle(), vec![0, 1, 2]);
//!
//! let dist = evaluate(RuleId::Ngwcs, &t)?;
//! assert_eq!(format_ratio(dist.prob(0)), "1/3");
//!
//! // How much can a pair of teams gain by throwing their match?
//! let report = minimal_lambda(
//!     RuleId::Ngwcs,
//!     &AuditScope::Exhaustive { n: 3 },
//!     &AuditOptions::default(),
//! )?;
//! assert!(report.passed);
//! # Ok::<(), matchfix::Error>(())
//! ```
//!
//! Sizes are bounded: tournaments hold up to 64 teams, exhaustive
//! enumeration is available up to 11 (the match table must fit in 64
//! bits), and audits beyond 7 or 8 teams are better pointed at generated
//! families via [`audit::AuditScope::Family`].

pub mod audit;
pub mod error;
pub mod rational;
pub mod report;
pub mod rules;
pub mod tournament;

pub use crate::audit::{
    audit, check_condorcet_consistency, check_monotonicity, check_top_cycle_consistency,
    family_neighborhood, minimal_alpha, minimal_delta, minimal_lambda, AuditOptions, AuditReport,
    AuditScope, PropertyId, Witness, WorstConstant,
};
pub use crate::error::{Error, Result};
pub use crate::rational::{format_ratio, parse_ratio, to_f64, Rational};
pub use crate::report::{report_from_json, report_to_json, reverify_witness};
pub use crate::rules::{evaluate, RuleId, WinnerDistribution};
pub use crate::tournament::{
    enumerate_all, gen_family, CoalitionMove, FamilyId, Tournament, MAX_ENUMERATION_TEAMS,
    MAX_TEAMS,
};

/// Everything most callers need, for glob import.
pub mod prelude {
    pub use crate::audit::{
        minimal_alpha, minimal_delta, minimal_lambda, AuditOptions, AuditReport, AuditScope,
        PropertyId, WorstConstant,
    };
    pub use crate::error::{Error, Result};
    pub use crate::rational::{format_ratio, parse_ratio, Rational};
    pub use crate::rules::{evaluate, RuleId};
    pub use crate::tournament::{FamilyId, Tournament};
}
