//! Two artificial rules that satisfy a monotonicity axiom for single
//! candidates yet fail its weak form. They exist to exercise the checkers.

use super::approval::{approval_voting, top_k};
use super::ScoredOutcome;
use crate::election::{CandidateSet, Election, RuleOutcome};
use crate::rational::Rational;
use itertools::Itertools;

/// Argmax of `Σ_{c∈W} |{i : A_i = {c}}| − Σ_{c∈W} |{i : c ∈ A_i, |A_i| ≥ 2}|`.
pub fn rule_not_weak_smwpi(e: &Election) -> ScoredOutcome {
    let mut scores = vec![0i64; e.m()];
    for b in e.ballots() {
        let delta = if b.len() == 1 { 1 } else { -1 };
        for c in b.iter() {
            scores[c] += delta;
        }
    }
    let scores: Vec<Rational> = scores.into_iter().map(Rational::from).collect();
    top_k(&scores, e.k())
}

const E1: [&[usize]; 4] = [&[0, 1], &[2, 3], &[0, 2, 3], &[1, 2, 3]];
const E1_OUT: [&[usize]; 2] = [&[0, 1], &[2, 3]];
const E2: [&[usize]; 4] = [&[0, 1], &[0, 1, 2, 3], &[0, 2, 3], &[1, 2, 3]];
const E2_OUT: [&[usize]; 1] = [&[2, 3]];

fn relabel(sigma: &[usize], set: &[usize]) -> CandidateSet {
    set.iter().map(|&c| sigma[c]).collect()
}

/// Maps `pattern` onto the ballots of `e` by some candidate relabeling and
/// returns the correspondingly relabeled `output`.
fn match_pattern(e: &Election, pattern: &[&[usize]], output: &[&[usize]]) -> Option<RuleOutcome> {
    let mut ballots = e.ballots().to_vec();
    ballots.sort();
    (0..e.m()).permutations(e.m()).find_map(|sigma| {
        let mut mapped: Vec<CandidateSet> = pattern.iter().map(|s| relabel(&sigma, s)).collect();
        mapped.sort();
        (mapped == ballots)
            .then(|| RuleOutcome::new(output.iter().map(|s| relabel(&sigma, s)).collect()))
    })
}

/// AV, except on two specific 4-voter, 4-candidate, `k = 2` profiles (and
/// their relabelings) where the output is fixed.
pub fn av_not_weak_smwopi(e: &Election) -> RuleOutcome {
    if e.n() == 4 && e.m() == 4 && e.k() == 2 {
        if let Some(out) = match_pattern(e, &E1, &E1_OUT) {
            return out;
        }
        if let Some(out) = match_pattern(e, &E2, &E2_OUT) {
            return out;
        }
    }
    approval_voting(e).outcome
}
