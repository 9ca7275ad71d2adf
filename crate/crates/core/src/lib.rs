//! Exact, tie-aware approval-based multiwinner elections.
//!
//! The crate computes the full set of tied winning committees for the
//! classic approval-based rules (AV, SAV, MAV, CC, Monroe, PAV, SeqPAV,
//! max- and seq-Phragmén, arbitrary counting rules), checks the
//! representation axioms JR/PJR/EJR/PR, and checks support and committee
//! monotonicity by quantifying over every single-step mutation of an
//! election. All arithmetic is exact.
//!
//! ```
//! use amw_core::{abme::parse_election, rules::Rule};
//!
//! let e = parse_election("candidates: a b c\nk: 2\n2: a b\n1: c").unwrap();
//! let scored = Rule::parse("pav").unwrap().evaluate(&e).unwrap();
//! assert_eq!(scored.outcome.format(&e), "{{a,b}, {a,c}, {b,c}}");
//! ```

pub mod abme;
pub mod election;
pub mod fixtures;
pub mod monotonicity;
pub mod rational;
pub mod representation;
pub mod rules;
pub mod search;
pub mod solvers;

pub use election::{CandidateId, CandidateSet, Committee, Election, ElectionError, RuleOutcome};
pub use rational::Rational;
