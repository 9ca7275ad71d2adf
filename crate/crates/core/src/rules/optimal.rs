//! Rules defined as an optimum over all committees.

use super::{argbest, Direction, RuleError, ScoredOutcome};
use crate::election::{hamming, Committee, Election, RuleOutcome};
use crate::rational::Rational;
use crate::solvers::{self, oracle};

/// Which implementation backs the Monroe and max-Phragmén subproblems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverMode {
    #[default]
    Flow,
    BruteForce,
}

/// Minimizes the largest Hamming distance to any ballot.
pub fn minimax_av(e: &Election) -> ScoredOutcome {
    argbest(e.committees(), Direction::Min, |w| {
        let worst = e.ballots().iter().map(|&b| hamming(w, b)).max().unwrap_or(0);
        Rational::from(worst)
    })
}

fn misrepresentation(e: &Election, w: Committee) -> usize {
    e.ballots().iter().filter(|b| !b.intersects(w)).count()
}

/// Minimizes the number of voters approving no member of the committee.
pub fn chamberlin_courant(e: &Election) -> ScoredOutcome {
    argbest(e.committees(), Direction::Min, |w| {
        Rational::from(misrepresentation(e, w))
    })
}

/// CC where, if some committee provides perfect representation, only the
/// PR-providing CC winners are kept. Plain CC when `k ∤ n`.
pub fn cc_with_pr_ties(e: &Election) -> ScoredOutcome {
    let cc = chamberlin_courant(e);
    if solvers::require_divisible(e, e.k()).is_err() {
        return cc;
    }
    let pr: Vec<Committee> = cc
        .outcome
        .winners()
        .iter()
        .copied()
        .filter(|&w| matches!(solvers::pr_assignment(e, w), Ok(Some(_))))
        .collect();
    if pr.is_empty() {
        cc
    } else {
        ScoredOutcome {
            outcome: RuleOutcome::new(pr),
            objective: cc.objective,
        }
    }
}

/// Minimizes misrepresentation over balanced voter-to-member assignments.
pub fn monroe(e: &Election, mode: SolverMode) -> ScoredOutcome {
    argbest(e.committees(), Direction::Min, |w| {
        let misrep = match mode {
            SolverMode::Flow => solvers::monroe_min_misrep(e, w).0,
            SolverMode::BruteForce => oracle::monroe_min_misrep_brute(e, w),
        };
        Rational::from(misrep)
    })
}

/// Maximizes `Σ_i H(|A_i ∩ W|)` with `H` the harmonic numbers.
pub fn pav(e: &Election) -> ScoredOutcome {
    let harmonic: Vec<Rational> = (0..=e.k()).map(Rational::harmonic).collect();
    argbest(e.committees(), Direction::Max, |w| {
        let mut counts = vec![0usize; e.k() + 1];
        for b in e.ballots() {
            counts[(*b & w).len()] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|&(x, &n)| x > 0 && n > 0)
            .map(|(x, &n)| &harmonic[x] * &Rational::from(n))
            .sum()
    })
}

/// Minimizes the maximum voter load. Committees with an unapproved member
/// admit no load distribution and are skipped.
pub fn max_phragmen(e: &Election, mode: SolverMode) -> Result<ScoredOutcome, RuleError> {
    let approved = e
        .ballots()
        .iter()
        .fold(crate::CandidateSet::empty(), |acc, &b| acc | b);
    if approved.len() < e.k() {
        return Err(RuleError::Infeasible(format!(
            "only {} candidates are approved by anyone, k = {}",
            approved.len(),
            e.k()
        )));
    }
    let feasible = e.committees().filter(|w| w.is_subset(approved));
    Ok(argbest(feasible, Direction::Min, |w| match mode {
        SolverMode::Flow => solvers::min_max_load(e, w).expect("feasible committee").value,
        SolverMode::BruteForce => oracle::min_max_load_brute(e, w).expect("feasible committee"),
    }))
}
