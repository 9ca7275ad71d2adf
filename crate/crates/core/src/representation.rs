//! Proportionality axioms: JR, PJR and EJR for arbitrary committees, and
//! perfect representation (PR) when `k` divides `n`.
//!
//! A group of voters `N*` is ℓ-cohesive when `|N*| · k ≥ ℓ · n` and its
//! members commonly approve at least ℓ candidates. The three axioms demand,
//! for every ℓ-cohesive group,
//!
//! * JR (ℓ = 1 only): some member approves a winner;
//! * PJR: the group's members jointly approve at least ℓ winners;
//! * EJR: some member approves at least ℓ winners.
//!
//! The optimized checks never enumerate voter groups. For EJR and a fixed
//! set `T` of ℓ candidates, every violating group with `T` in its common
//! ballot lies inside `{i : T ⊆ A_i, |A_i ∩ W| < ℓ}`, which is itself
//! cohesive whenever it is large enough. PJR is handled the same way with
//! one extra quantifier over the set `U ⊆ W`, `|U| = ℓ − 1`, that bounds the
//! winners the group may jointly approve.

use crate::election::{CandidateSet, Combinations, Committee, Election};
use crate::rules::{Rule, RuleError};
use crate::solvers::{self, PrError, PrPartition};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Jr,
    Pjr,
    Ejr,
    Pr,
}

impl Axiom {
    pub fn parse(s: &str) -> Option<Axiom> {
        match s.to_ascii_lowercase().as_str() {
            "jr" => Some(Axiom::Jr),
            "pjr" => Some(Axiom::Pjr),
            "ejr" => Some(Axiom::Ejr),
            "pr" => Some(Axiom::Pr),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Jr => "jr",
            Axiom::Pjr => "pjr",
            Axiom::Ejr => "ejr",
            Axiom::Pr => "pr",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str().to_ascii_uppercase())
    }
}

/// An ℓ-cohesive voter group; `common` is the full intersection of their
/// ballots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohesiveWitness {
    pub level: usize,
    pub voters: Vec<usize>,
    pub common: CandidateSet,
}

impl CohesiveWitness {
    fn from_voters(e: &Election, level: usize, voters: Vec<usize>) -> Self {
        let common = common_ballot(e, &voters);
        CohesiveWitness {
            level,
            voters,
            common,
        }
    }

    /// Re-checks from scratch that the group is `level`-cohesive and breaks
    /// `axiom` for `w`.
    pub fn violates(&self, e: &Election, w: Committee, axiom: Axiom) -> bool {
        let l = self.level;
        let (cohesive, _) = is_cohesive(e, &self.voters, l);
        cohesive
            && match axiom {
                Axiom::Jr => l == 1 && self.voters.iter().all(|&i| !e.ballot(i).intersects(w)),
                Axiom::Ejr => self.voters.iter().all(|&i| (e.ballot(i) & w).len() < l),
                Axiom::Pjr => (union_ballot(e, &self.voters) & w).len() < l,
                Axiom::Pr => false,
            }
    }
}

/// Result of checking one axiom on one committee or rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    /// Violating group, for a failed JR/PJR/EJR check.
    pub witness: Option<CohesiveWitness>,
    /// Representative partition, for a committee that provides PR.
    pub partition: Option<PrPartition>,
    /// Offending committee, for a rule that outputs a non-PR committee.
    pub committee: Option<Committee>,
}

impl RepresentationVerdict {
    fn cohesive(axiom: Axiom, witness: Option<CohesiveWitness>) -> Self {
        RepresentationVerdict {
            axiom,
            holds: witness.is_none(),
            witness,
            partition: None,
            committee: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepresentationError {
    #[error(transparent)]
    Pr(#[from] PrError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

fn common_ballot(e: &Election, voters: &[usize]) -> CandidateSet {
    voters
        .iter()
        .fold(e.roster(), |acc, &i| acc & e.ballot(i))
}

fn union_ballot(e: &Election, voters: &[usize]) -> CandidateSet {
    voters
        .iter()
        .fold(CandidateSet::empty(), |acc, &i| acc | e.ballot(i))
}

/// `|N*| · k ≥ ℓ · n`, in integers.
fn large_enough(e: &Election, size: usize, level: usize) -> bool {
    size * e.k() >= level * e.n()
}

/// Whether `voters` is `level`-cohesive, together with their common ballot.
pub fn is_cohesive(e: &Election, voters: &[usize], level: usize) -> (bool, CandidateSet) {
    if voters.is_empty() {
        return (false, CandidateSet::empty());
    }
    let common = common_ballot(e, voters);
    (
        large_enough(e, voters.len(), level) && common.len() >= level,
        common,
    )
}

fn candidate_sets(e: &Election, size: usize) -> impl Iterator<Item = CandidateSet> {
    Combinations::new(e.m(), size)
}

fn ejr_witness(e: &Election, w: Committee, max_level: usize) -> Option<CohesiveWitness> {
    (1..=max_level).find_map(|l| {
        candidate_sets(e, l).find_map(|t| {
            let group: Vec<usize> = (0..e.n())
                .filter(|&i| t.is_subset(e.ballot(i)) && (e.ballot(i) & w).len() < l)
                .collect();
            (!group.is_empty() && large_enough(e, group.len(), l))
                .then(|| CohesiveWitness::from_voters(e, l, group))
        })
    })
}

pub fn check_jr(e: &Election, w: Committee) -> RepresentationVerdict {
    RepresentationVerdict::cohesive(Axiom::Jr, ejr_witness(e, w, 1))
}

pub fn check_ejr(e: &Election, w: Committee) -> RepresentationVerdict {
    RepresentationVerdict::cohesive(Axiom::Ejr, ejr_witness(e, w, e.k()))
}

pub fn check_pjr(e: &Election, w: Committee) -> RepresentationVerdict {
    let members: Vec<usize> = w.iter().collect();
    let witness = (1..=e.k()).find_map(|l| {
        let bounds: Vec<CandidateSet> = Combinations::new(members.len(), l - 1)
            .map(|pick| pick.iter().map(|j| members[j]).collect())
            .collect();
        candidate_sets(e, l).find_map(|t| {
            bounds.iter().find_map(|&u| {
                let group: Vec<usize> = (0..e.n())
                    .filter(|&i| t.is_subset(e.ballot(i)) && (e.ballot(i) & w).is_subset(u))
                    .collect();
                (!group.is_empty() && large_enough(e, group.len(), l))
                    .then(|| CohesiveWitness::from_voters(e, l, group))
            })
        })
    });
    RepresentationVerdict::cohesive(Axiom::Pjr, witness)
}

/// Dispatches to the optimized check for `axiom`; PR errors when `k ∤ n`.
pub fn check(e: &Election, w: Committee, axiom: Axiom) -> Result<RepresentationVerdict, PrError> {
    Ok(match axiom {
        Axiom::Jr => check_jr(e, w),
        Axiom::Pjr => check_pjr(e, w),
        Axiom::Ejr => check_ejr(e, w),
        Axiom::Pr => provides_pr(e, w)?,
    })
}

/// Definition-level check over all `2^n − 1` voter groups. Only for small
/// `n`; used to validate the optimized checks.
pub fn check_brute_force(e: &Election, w: Committee, axiom: Axiom) -> RepresentationVerdict {
    assert!(axiom != Axiom::Pr, "PR has no cohesive-group formulation");
    assert!(e.n() < 31, "brute-force check limited to n < 31");
    let witness = (1u32..1 << e.n()).find_map(|mask| {
        let voters: Vec<usize> = (0..e.n()).filter(|&i| mask >> i & 1 == 1).collect();
        let common = common_ballot(e, &voters);
        let max_level = match axiom {
            Axiom::Jr => 1,
            _ => e.k(),
        };
        (1..=max_level.min(common.len()))
            .filter(|&l| large_enough(e, voters.len(), l))
            .find(|&l| match axiom {
                Axiom::Jr => voters.iter().all(|&i| !e.ballot(i).intersects(w)),
                Axiom::Ejr => voters.iter().all(|&i| (e.ballot(i) & w).len() < l),
                Axiom::Pjr => (union_ballot(e, &voters) & w).len() < l,
                Axiom::Pr => unreachable!(),
            })
            .map(|l| CohesiveWitness {
                level: l,
                voters: voters.clone(),
                common,
            })
    });
    RepresentationVerdict::cohesive(axiom, witness)
}

/// Whether some partition of the voters into groups of size `n/k`, one per
/// member, has every voter approve their member.
pub fn provides_pr(e: &Election, w: Committee) -> Result<RepresentationVerdict, PrError> {
    let partition = solvers::pr_assignment(e, w)?;
    Ok(RepresentationVerdict {
        axiom: Axiom::Pr,
        holds: partition.is_some(),
        witness: None,
        partition,
        committee: None,
    })
}

/// Every committee of size `k` that provides PR, in canonical order.
pub fn pr_committees(e: &Election) -> Result<Vec<Committee>, PrError> {
    solvers::require_divisible(e, e.k())?;
    let approved = e
        .ballots()
        .iter()
        .fold(CandidateSet::empty(), |acc, &b| acc | b);
    Ok(e.committees()
        .filter(|w| w.is_subset(approved))
        .filter(|&w| matches!(solvers::pr_assignment(e, w), Ok(Some(_))))
        .collect())
}

/// Holds iff no committee provides PR, or every committee the rule outputs
/// does.
pub fn rule_respects_pr_on(
    e: &Election,
    rule: &Rule,
) -> Result<RepresentationVerdict, RepresentationError> {
    let feasible = pr_committees(e)?;
    let offending = if feasible.is_empty() {
        None
    } else {
        rule.outcome(e)?
            .winners()
            .iter()
            .copied()
            .find(|w| !feasible.contains(w))
    };
    Ok(RepresentationVerdict {
        axiom: Axiom::Pr,
        holds: offending.is_none(),
        witness: None,
        partition: None,
        committee: offending,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abme::parse_election;
    use crate::solvers::oracle;

    fn election(text: &str) -> Election {
        parse_election(text).unwrap()
    }

    #[test]
    fn cohesion_basics() {
        let e = election("candidates: a b c\nk: 2\n1: a\n1: b\n1: a c");
        // 2 · 2 ≥ 1 · 3 with {a} in common
        assert!(is_cohesive(&e, &[0, 2], 1).0);
        assert!(!is_cohesive(&e, &[0, 1], 1).0);
        assert!(!is_cohesive(&e, &[0, 2], 2).0);
        assert!(!is_cohesive(&e, &[], 1).0);
        let single = election("candidates: a b\nk: 2\n1: a\n1: b");
        assert!(is_cohesive(&single, &[1], 1).0);
    }

    #[test]
    fn covering_committee_satisfies_jr() {
        let e = election("candidates: a b c d\nk: 2\n2: a b\n2: c d");
        let w = e.set_of(&["a", "c"]).unwrap();
        assert!(check_jr(&e, w).holds);
        assert!(check_pjr(&e, w).holds);
        assert!(check_ejr(&e, w).holds);
    }

    #[test]
    fn ignored_half_breaks_jr() {
        let e = election("candidates: a b c d\nk: 2\n2: a b\n2: c d");
        let w = e.set_of(&["a", "b"]).unwrap();
        let v = check_jr(&e, w);
        assert!(!v.holds);
        let wit = v.witness.unwrap();
        assert_eq!(wit.voters, vec![2, 3]);
        assert!(wit.violates(&e, w, Axiom::Jr));
    }

    // Two voters approving {a, b} and one voter approving {c}; k = 3.
    // W = {a, c, d}: the pair is 2-cohesive (2·3 ≥ 2·3) yet jointly approves
    // only a. PJR and EJR fail while JR holds.
    #[test]
    fn pjr_stronger_than_jr() {
        let e = election("candidates: a b c d\nk: 3\n2: a b\n1: c");
        let w = e.set_of(&["a", "c", "d"]).unwrap();
        assert!(check_jr(&e, w).holds);
        let p = check_pjr(&e, w);
        assert!(!p.holds);
        assert_eq!(p.witness.as_ref().unwrap().level, 2);
        assert!(p.witness.unwrap().violates(&e, w, Axiom::Pjr));
        assert!(!check_ejr(&e, w).holds);
    }

    // Voters {a,b,c}, {a,b,d}; k = 2, W = {c, d}. The pair is 2-cohesive via
    // {a,b}; jointly they approve both winners (PJR holds) but each approves
    // one (EJR fails).
    #[test]
    fn ejr_stronger_than_pjr() {
        let e = election("candidates: a b c d\nk: 2\n1: a b c\n1: a b d");
        let w = e.set_of(&["c", "d"]).unwrap();
        assert!(check_pjr(&e, w).holds);
        let v = check_ejr(&e, w);
        assert!(!v.holds);
        assert!(v.witness.unwrap().violates(&e, w, Axiom::Ejr));
    }

    #[test]
    fn optimized_checks_match_brute_force_exhaustively() {
        // Every profile of 4 voters over 3 candidates, every k and W.
        let ballots: Vec<u64> = (1..8).collect();
        for a in 0..7 {
            for b in a..7 {
                for c in b..7 {
                    for d in c..7 {
                        let bs: Vec<CandidateSet> = [a, b, c, d]
                            .iter()
                            .map(|&j| CandidateSet::from_bits(ballots[j]))
                            .collect();
                        for k in 1..=3 {
                            let e = Election::with_default_names(3, bs.clone(), k).unwrap();
                            for w in e.committees() {
                                for axiom in [Axiom::Jr, Axiom::Pjr, Axiom::Ejr] {
                                    let fast = check(&e, w, axiom).unwrap();
                                    let slow = check_brute_force(&e, w, axiom);
                                    assert_eq!(fast.holds, slow.holds, "{axiom} {bs:?} k={k} {w:?}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pr_committee_enumeration_matches_oracle() {
        let e = election("candidates: a b c d\nk: 2\n1: a b\n1: a\n1: c d\n1: b d");
        assert_eq!(pr_committees(&e).unwrap(), oracle::pr_committees_brute(&e));
        let odd = e.with_k(3).unwrap();
        assert!(pr_committees(&odd).is_err());
        assert!(provides_pr(&odd, e.set_of(&["a", "b", "c"]).unwrap()).is_err());
    }

    #[test]
    fn rule_pr_check_reports_offender() {
        // PR needs one a-supporter pair and one c-supporter pair; AV picks a, b.
        let e = election("candidates: a b c\nk: 2\n2: a b\n1: c\n1: a b c");
        let av = Rule::parse("av").unwrap();
        let v = rule_respects_pr_on(&e, &av).unwrap();
        assert!(!v.holds);
        assert_eq!(v.committee, Some(e.set_of(&["a", "b"]).unwrap()));
        let cc = Rule::parse("cc-prties").unwrap();
        assert!(rule_respects_pr_on(&e, &cc).unwrap().holds);
    }
}
