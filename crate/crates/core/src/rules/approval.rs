//! Rules that decompose into independent per-candidate scores.

use super::ScoredOutcome;
use crate::election::{CandidateSet, Combinations, Election, RuleOutcome};
use crate::rational::Rational;

/// Every committee made of `k` highest-scoring candidates, resolving ties at
/// the boundary in all possible ways. The objective is the committee total.
pub(crate) fn top_k(scores: &[Rational], k: usize) -> ScoredOutcome {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].cmp(&scores[a]).then(a.cmp(&b)));
    let threshold = &scores[order[k - 1]];
    let above: CandidateSet = order
        .iter()
        .copied()
        .filter(|&c| scores[c] > *threshold)
        .collect();
    let tied: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&c| scores[c] == *threshold)
        .collect();
    let need = k - above.len();
    let winners = Combinations::new(tied.len(), need)
        .map(|pick| above | pick.iter().map(|j| tied[j]).collect::<CandidateSet>())
        .collect();
    let objective = order[..k].iter().map(|&c| &scores[c]).sum();
    ScoredOutcome {
        outcome: RuleOutcome::new(winners),
        objective: Some(objective),
    }
}

/// The `k` candidates with the most approvals (all boundary tie resolutions).
pub fn approval_voting(e: &Election) -> ScoredOutcome {
    let scores: Vec<Rational> = (0..e.m())
        .map(|c| Rational::from(e.approval_score(c)))
        .collect();
    top_k(&scores, e.k())
}

/// Maximizes `Σ_i |A_i ∩ W| / |A_i|`; computed through the per-candidate
/// shares `Σ_{i : c ∈ A_i} 1 / |A_i|`.
pub fn satisfaction_av(e: &Election) -> ScoredOutcome {
    let mut scores = vec![Rational::zero(); e.m()];
    for b in e.ballots() {
        let share = Rational::new(1, b.len() as i64);
        for c in b.iter() {
            scores[c] += &share;
        }
    }
    top_k(&scores, e.k())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abme::parse_election;

    #[test]
    fn forced_when_k_equals_m() {
        let e = parse_election("candidates: a b c\nk: 3\n1: a").unwrap();
        assert_eq!(approval_voting(&e).outcome.winners(), &[e.roster()]);
    }

    #[test]
    fn unique_approval() {
        let e = parse_election("candidates: a b\nk: 1\n1: a").unwrap();
        let out = approval_voting(&e);
        assert_eq!(out.outcome.winners(), &[e.set_of(&["a"]).unwrap()]);
        assert_eq!(out.objective, Some(Rational::one()));
    }

    #[test]
    fn boundary_ties_enumerated() {
        let e = parse_election("candidates: a b c d\nk: 2\n2: a\n1: b\n1: c\n1: d").unwrap();
        let out = approval_voting(&e);
        assert_eq!(out.outcome.len(), 3);
        assert!(out.outcome.all_contain(e.set_of(&["a"]).unwrap()));
        assert_eq!(out.objective, Some(Rational::from(3i64)));
    }

    #[test]
    fn sav_symmetric_tie() {
        let e = parse_election("candidates: a b\nk: 1\n1: a b").unwrap();
        let out = satisfaction_av(&e);
        assert_eq!(out.outcome.len(), 2);
        assert_eq!(out.objective, Some(Rational::new(1, 2)));
    }
}
