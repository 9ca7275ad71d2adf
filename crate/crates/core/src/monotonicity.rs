//! Support monotonicity (with and without population increase), candidate
//! monotonicity and committee monotonicity, checked over every single-step
//! mutation of one election.
//!
//! For a candidate set `G` that is part of some winning committee, the two
//! support mutations are
//!
//! * `E_ΔG`: a new voter approving exactly `G` joins (population increase);
//! * `E_{i+G}`: voter `i`, who approves nobody in `G`, adds `G` to their
//!   ballot (no population increase).
//!
//! Each mutation is then judged by two clauses comparing `R(E)` with the
//! outcome on the mutated election. Clause (i): if `G` is inside some winning
//! committee before, then afterwards some committee must contain `G`
//! (strong) or meet `G` (weak). Clause (ii) is the same with "every winning
//! committee" in both places.
//!
//! A check on one election can only refute the axiom for the rule. Rules
//! whose evaluation fails on the base election (seq- or max-Phragmén with
//! too few approved candidates) hold vacuously there.

use crate::election::{CandidateSet, Committee, Election, RuleOutcome};
use crate::rules::{Rule, RuleError};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strength {
    Strong,
    Weak,
}

impl Strength {
    pub fn as_str(self) -> &'static str {
        match self {
            Strength::Strong => "strong",
            Strength::Weak => "weak",
        }
    }
}

/// A monotonicity property that can be checked on a single election.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Smwpi(Strength),
    Smwopi(Strength),
    Candidate,
    /// Committee monotonicity between `k` and `k + 1` for the election's `k`.
    Committee,
}

impl Property {
    pub fn parse(s: &str) -> Option<Property> {
        Some(match s {
            "strong-smwpi" => Property::Smwpi(Strength::Strong),
            "weak-smwpi" => Property::Smwpi(Strength::Weak),
            "strong-smwopi" => Property::Smwopi(Strength::Strong),
            "weak-smwopi" => Property::Smwopi(Strength::Weak),
            "candidate" | "candidate-monotonicity" => Property::Candidate,
            "committee" | "committee-monotonicity" => Property::Committee,
            _ => return None,
        })
    }

    pub fn id(self) -> String {
        match self {
            Property::Smwpi(s) => format!("{}-smwpi", s.as_str()),
            Property::Smwopi(s) => format!("{}-smwopi", s.as_str()),
            Property::Candidate => "candidate".into(),
            Property::Committee => "committee".into(),
        }
    }

    pub fn all() -> [Property; 6] {
        [
            Property::Smwpi(Strength::Strong),
            Property::Smwpi(Strength::Weak),
            Property::Smwopi(Strength::Strong),
            Property::Smwopi(Strength::Weak),
            Property::Candidate,
            Property::Committee,
        ]
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// The clause that failed. For committee monotonicity, `I` is "every
/// size-k winner extends to a size-(k+1) winner" and `II` the converse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    I,
    II,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::I => "(i)",
            Clause::II => "(ii)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub property: Property,
    /// The supported set `G`; for committee monotonicity, the committee
    /// that has no counterpart on the other side.
    pub g: CandidateSet,
    /// The voter extending their ballot, for SMWOPI and candidate
    /// monotonicity.
    pub voter: Option<usize>,
    pub clause: Clause,
    pub before: RuleOutcome,
    pub after: RuleOutcome,
    pub base: Election,
    pub mutated: Election,
}

impl MonotonicityWitness {
    /// Re-runs the rule on both elections and re-evaluates the failing
    /// clause.
    pub fn revalidate(&self, rule: &Rule) -> bool {
        let (Ok(before), Ok(after)) = (rule.outcome(&self.base), rule.outcome(&self.mutated)) else {
            return false;
        };
        if before != self.before || after != self.after {
            return false;
        }
        match self.property {
            Property::Committee => committee_clause_failure(&before, &after) == Some((self.clause, self.g)),
            Property::Smwpi(s) | Property::Smwopi(s) => {
                support_clause_failure(s, self.g, &before, &after) == Some(self.clause)
            }
            Property::Candidate => {
                support_clause_failure(Strength::Strong, self.g, &before, &after) == Some(self.clause)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityVerdict {
    pub holds: bool,
    pub witness: Option<MonotonicityWitness>,
    /// Mutations examined: all of them when the check holds, otherwise up to
    /// and including the first failing one.
    pub mutations_checked: usize,
}

impl MonotonicityVerdict {
    fn vacuous() -> Self {
        MonotonicityVerdict {
            holds: true,
            witness: None,
            mutations_checked: 0,
        }
    }
}

/// The first clause violated by the transition `before → after` for the
/// supported set `g`, or `None` when both clauses hold.
pub fn support_clause_failure(
    strength: Strength,
    g: CandidateSet,
    before: &RuleOutcome,
    after: &RuleOutcome,
) -> Option<Clause> {
    let (some_ok, all_ok) = match strength {
        Strength::Strong => (after.some_contains(g), after.all_contain(g)),
        Strength::Weak => (after.some_intersects(g), after.all_intersect(g)),
    };
    if before.some_contains(g) && !some_ok {
        Some(Clause::I)
    } else if before.all_contain(g) && !all_ok {
        Some(Clause::II)
    } else {
        None
    }
}

/// The first committee-monotonicity condition violated between the size-k
/// outcome `small` and the size-(k+1) outcome `large`, with the committee
/// lacking a counterpart.
pub fn committee_clause_failure(small: &RuleOutcome, large: &RuleOutcome) -> Option<(Clause, Committee)> {
    if let Some(&w) = small
        .winners()
        .iter()
        .find(|&&w| !large.winners().iter().any(|&w2| w.is_subset(w2)))
    {
        return Some((Clause::I, w));
    }
    large
        .winners()
        .iter()
        .find(|&&w| !small.winners().iter().any(|&w2| w2.is_subset(w)))
        .map(|&w| (Clause::II, w))
}

/// Every non-empty subset of some winning committee, in canonical order.
pub fn supported_sets(outcome: &RuleOutcome) -> Vec<CandidateSet> {
    outcome
        .winners()
        .iter()
        .flat_map(|w| w.nonempty_subsets())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Lowest-index representative of each distinct ballot. All rules are
/// anonymous, so voters with equal ballots yield isomorphic mutations.
fn distinct_voters(e: &Election) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    (0..e.n()).filter(|&i| seen.insert(e.ballot(i))).collect()
}

struct Mutation {
    g: CandidateSet,
    voter: Option<usize>,
}

fn run_mutations(
    rule: &Rule,
    e: &Election,
    property: Property,
    mutations: Vec<Mutation>,
    before: RuleOutcome,
) -> Result<MonotonicityVerdict, RuleError> {
    let strength = match property {
        Property::Smwpi(s) | Property::Smwopi(s) => s,
        _ => Strength::Strong,
    };
    let total = mutations.len();
    let found = mutations.par_iter().enumerate().find_map_first(|(idx, m)| {
        let mutated = match m.voter {
            None => e.add_new_voter(m.g),
            Some(i) => e.extend_ballot(i, m.g),
        }
        .expect("mutation of a valid election is valid");
        let after = match rule.outcome(&mutated) {
            Ok(after) => after,
            Err(err) => return Some(Err(err)),
        };
        support_clause_failure(strength, m.g, &before, &after).map(|clause| {
            Ok((
                idx,
                MonotonicityWitness {
                    property,
                    g: m.g,
                    voter: m.voter,
                    clause,
                    before: before.clone(),
                    after,
                    base: e.clone(),
                    mutated,
                },
            ))
        })
    });
    Ok(match found.transpose()? {
        Some((idx, witness)) => MonotonicityVerdict {
            holds: false,
            witness: Some(witness),
            mutations_checked: idx + 1,
        },
        None => MonotonicityVerdict {
            holds: true,
            witness: None,
            mutations_checked: total,
        },
    })
}

/// Support monotonicity with population increase, over every supported `G`
/// with `|G| ≤ k`.
pub fn check_smwpi(rule: &Rule, e: &Election, strength: Strength) -> Result<MonotonicityVerdict, RuleError> {
    let Ok(before) = rule.outcome(e) else {
        return Ok(MonotonicityVerdict::vacuous());
    };
    let mutations = supported_sets(&before)
        .into_iter()
        .map(|g| Mutation { g, voter: None })
        .collect();
    run_mutations(rule, e, Property::Smwpi(strength), mutations, before)
}

/// Support monotonicity without population increase, over every supported
/// `G` and every voter approving nobody in `G`.
pub fn check_smwopi(rule: &Rule, e: &Election, strength: Strength) -> Result<MonotonicityVerdict, RuleError> {
    let Ok(before) = rule.outcome(e) else {
        return Ok(MonotonicityVerdict::vacuous());
    };
    let voters = distinct_voters(e);
    let mutations = supported_sets(&before)
        .into_iter()
        .flat_map(|g| {
            voters
                .iter()
                .filter(move |&&i| !e.ballot(i).intersects(g))
                .map(move |&i| Mutation { g, voter: Some(i) })
        })
        .collect();
    run_mutations(rule, e, Property::Smwopi(strength), mutations, before)
}

/// Candidate monotonicity: SMWOPI restricted to single candidates, where the
/// strong and weak forms coincide.
pub fn check_candidate_monotonicity(rule: &Rule, e: &Election) -> Result<MonotonicityVerdict, RuleError> {
    let Ok(before) = rule.outcome(e) else {
        return Ok(MonotonicityVerdict::vacuous());
    };
    let winners = before
        .winners()
        .iter()
        .fold(CandidateSet::empty(), |acc, &w| acc | w);
    let voters = distinct_voters(e);
    let mutations = winners
        .iter()
        .flat_map(|c| {
            voters
                .iter()
                .filter(move |&&i| !e.ballot(i).contains(c))
                .map(move |&i| Mutation {
                    g: CandidateSet::singleton(c),
                    voter: Some(i),
                })
        })
        .collect();
    run_mutations(rule, e, Property::Candidate, mutations, before)
}

/// Judges the single mutation `E_ΔG`.
pub fn check_smwpi_at(
    rule: &Rule,
    e: &Election,
    g: CandidateSet,
    strength: Strength,
) -> Result<MonotonicityVerdict, RuleError> {
    let before = rule.outcome(e)?;
    run_mutations(rule, e, Property::Smwpi(strength), vec![Mutation { g, voter: None }], before)
}

/// Judges the single mutation `E_{i+G}`.
pub fn check_smwopi_at(
    rule: &Rule,
    e: &Election,
    g: CandidateSet,
    voter: usize,
    strength: Strength,
) -> Result<MonotonicityVerdict, RuleError> {
    let before = rule.outcome(e)?;
    run_mutations(
        rule,
        e,
        Property::Smwopi(strength),
        vec![Mutation {
            g,
            voter: Some(voter),
        }],
        before,
    )
}

/// Committee monotonicity for every consecutive pair `(k, k + 1)` with
/// `k_from ≤ k < k_to`. The `k` stored in `e` is ignored. Pairs where the
/// rule has no output on either side are skipped.
pub fn check_committee_monotonicity(
    rule: &Rule,
    e: &Election,
    k_from: usize,
    k_to: usize,
) -> Result<MonotonicityVerdict, RuleError> {
    assert!(
        1 <= k_from && k_from < k_to && k_to <= e.m(),
        "need 1 ≤ k_from < k_to ≤ m"
    );
    let elections: Vec<Election> = (k_from..=k_to)
        .map(|k| e.with_k(k).expect("k within range"))
        .collect();
    let outcomes: Vec<Option<RuleOutcome>> = elections
        .par_iter()
        .map(|ek| rule.outcome(ek).ok())
        .collect();
    let mut checked = 0;
    for (j, pair) in outcomes.windows(2).enumerate() {
        let (Some(small), Some(large)) = (&pair[0], &pair[1]) else {
            continue;
        };
        checked += 1;
        if let Some((clause, g)) = committee_clause_failure(small, large) {
            return Ok(MonotonicityVerdict {
                holds: false,
                witness: Some(MonotonicityWitness {
                    property: Property::Committee,
                    g,
                    voter: None,
                    clause,
                    before: small.clone(),
                    after: large.clone(),
                    base: elections[j].clone(),
                    mutated: elections[j + 1].clone(),
                }),
                mutations_checked: checked,
            });
        }
    }
    Ok(MonotonicityVerdict {
        holds: true,
        witness: None,
        mutations_checked: checked,
    })
}

/// Checks `property` on `e`. Committee monotonicity compares the election's
/// own `k` with `k + 1` and holds vacuously when `k = m`.
pub fn check(rule: &Rule, e: &Election, property: Property) -> Result<MonotonicityVerdict, RuleError> {
    match property {
        Property::Smwpi(s) => check_smwpi(rule, e, s),
        Property::Smwopi(s) => check_smwopi(rule, e, s),
        Property::Candidate => check_candidate_monotonicity(rule, e),
        Property::Committee if e.k() < e.m() => check_committee_monotonicity(rule, e, e.k(), e.k() + 1),
        Property::Committee => Ok(MonotonicityVerdict::vacuous()),
    }
}
