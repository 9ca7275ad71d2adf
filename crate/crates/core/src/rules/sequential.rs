//! SeqPAV and seq-Phragmén, with parallel-universes or lexicographic ties.

use super::{RuleError, TieMode};
use crate::election::{CandidateSet, Election, RuleOutcome};
use crate::rational::Rational;
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequentialMethod {
    /// Adds the candidate with the highest marginal PAV score.
    Pav,
    /// Adds the candidate whose election yields the lowest maximal load.
    Phragmen,
}

/// One complete run: the selection order and the value that decided each
/// step (marginal score for SeqPAV, new load for seq-Phragmén).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequentialRun {
    pub order: Vec<usize>,
    pub values: Vec<Rational>,
}

impl SequentialRun {
    pub fn committee(&self) -> CandidateSet {
        self.order.iter().copied().collect()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    w: CandidateSet,
    /// Voter loads; left empty for SeqPAV, whose step depends on `w` only.
    loads: Vec<Rational>,
}

impl State {
    fn initial(method: SequentialMethod, e: &Election) -> Self {
        let loads = match method {
            SequentialMethod::Pav => Vec::new(),
            SequentialMethod::Phragmen => vec![Rational::zero(); e.n()],
        };
        State {
            w: CandidateSet::empty(),
            loads,
        }
    }

    /// The tied best candidates of the next step, ascending, and their value.
    fn best(&self, method: SequentialMethod, e: &Election) -> (Vec<usize>, Rational) {
        let mut best: Option<Rational> = None;
        let mut picks = Vec::new();
        for c in (0..e.m()).filter(|&c| !self.w.contains(c)) {
            let value = match method {
                SequentialMethod::Pav => e
                    .ballots()
                    .iter()
                    .filter(|b| b.contains(c))
                    .map(|b| Rational::new(1, 1 + (*b & self.w).len() as i64))
                    .sum(),
                SequentialMethod::Phragmen => {
                    let supporters: Vec<usize> =
                        (0..e.n()).filter(|&i| e.ballot(i).contains(c)).collect();
                    if supporters.is_empty() {
                        continue;
                    }
                    let total: Rational = supporters.iter().map(|&i| &self.loads[i]).sum();
                    (total + Rational::one()) / Rational::from(supporters.len())
                }
            };
            let better = match (&best, method) {
                (None, _) => true,
                (Some(b), SequentialMethod::Pav) => value > *b,
                (Some(b), SequentialMethod::Phragmen) => value < *b,
            };
            if better {
                best = Some(value);
                picks.clear();
                picks.push(c);
            } else if best.as_ref() == Some(&value) {
                picks.push(c);
            }
        }
        (picks, best.unwrap_or_default())
    }

    fn select(&self, method: SequentialMethod, e: &Election, c: usize, value: &Rational) -> Self {
        let mut next = self.clone();
        next.w = self.w.with(c);
        if method == SequentialMethod::Phragmen {
            for i in (0..e.n()).filter(|&i| e.ballot(i).contains(c)) {
                next.loads[i] = value.clone();
            }
        }
        next
    }
}

fn check_feasible(method: SequentialMethod, e: &Election) -> Result<(), RuleError> {
    if method == SequentialMethod::Phragmen {
        let approved = e
            .ballots()
            .iter()
            .fold(CandidateSet::empty(), |acc, &b| acc | b);
        if approved.len() < e.k() {
            return Err(RuleError::Infeasible(format!(
                "only {} candidates are approved by anyone, k = {}",
                approved.len(),
                e.k()
            )));
        }
    }
    Ok(())
}

fn run_sequential(
    method: SequentialMethod,
    e: &Election,
    ties: TieMode,
) -> Result<RuleOutcome, RuleError> {
    check_feasible(method, e)?;
    let mut frontier = vec![State::initial(method, e)];
    for _ in 0..e.k() {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for state in &frontier {
            let (picks, value) = state.best(method, e);
            let picks = match ties {
                TieMode::Put => &picks[..],
                TieMode::Lex => &picks[..1],
            };
            for &c in picks {
                let s = state.select(method, e, c, &value);
                if seen.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    Ok(RuleOutcome::new(frontier.into_iter().map(|s| s.w).collect()))
}

/// SeqPAV: in each round add a candidate maximizing
/// `Σ_{i : c ∈ A_i} 1 / (1 + |A_i ∩ W|)`.
pub fn seq_pav(e: &Election, ties: TieMode) -> RuleOutcome {
    run_sequential(SequentialMethod::Pav, e, ties).expect("SeqPAV is always feasible")
}

/// Sequential Phragmén. Candidates nobody approves are never selected.
pub fn seq_phragmen(e: &Election, ties: TieMode) -> Result<RuleOutcome, RuleError> {
    run_sequential(SequentialMethod::Phragmen, e, ties)
}

/// Every selection run, without merging runs that reach the same state.
/// A tie-free election has exactly one run.
pub fn sequential_runs(
    method: SequentialMethod,
    e: &Election,
    ties: TieMode,
) -> Result<Vec<SequentialRun>, RuleError> {
    check_feasible(method, e)?;
    let mut runs = Vec::new();
    let mut stack = vec![(
        State::initial(method, e),
        SequentialRun {
            order: Vec::new(),
            values: Vec::new(),
        },
    )];
    while let Some((state, run)) = stack.pop() {
        if run.order.len() == e.k() {
            runs.push(run);
            continue;
        }
        let (picks, value) = state.best(method, e);
        let picks = match ties {
            TieMode::Put => &picks[..],
            TieMode::Lex => &picks[..1],
        };
        // Pushed in reverse so runs come out in lexicographic order.
        for &c in picks.iter().rev() {
            let mut r = run.clone();
            r.order.push(c);
            r.values.push(value.clone());
            stack.push((state.select(method, e, c, &value), r));
        }
    }
    Ok(runs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abme::parse_election;

    #[test]
    fn disjoint_singletons_have_unit_loads() {
        let e = parse_election("candidates: a b\nk: 2\n1: a\n1: b").unwrap();
        let out = seq_phragmen(&e, TieMode::Put).unwrap();
        assert_eq!(out.winners(), &[e.roster()]);
        let runs = sequential_runs(SequentialMethod::Phragmen, &e, TieMode::Put).unwrap();
        assert_eq!(runs.len(), 2);
        assert!(runs.iter().all(|r| r.values == vec![Rational::one(), Rational::one()]));
        let lex = sequential_runs(SequentialMethod::Phragmen, &e, TieMode::Lex).unwrap();
        assert_eq!(lex.len(), 1);
        assert_eq!(lex[0].order, vec![0, 1]);
    }

    #[test]
    fn seq_pav_discounts_covered_voters() {
        // a is picked first; afterwards b is worth 3/2 + ... vs c worth 2.
        let e = parse_election("candidates: a b c\nk: 2\n3: a b\n2: c").unwrap();
        let runs = sequential_runs(SequentialMethod::Pav, &e, TieMode::Lex).unwrap();
        assert_eq!(runs[0].order, vec![0, 2]);
        assert_eq!(runs[0].values, vec![Rational::from(3i64), Rational::from(2i64)]);
        let put = seq_pav(&e, TieMode::Put);
        assert_eq!(
            put.winners(),
            &[e.set_of(&["a", "c"]).unwrap(), e.set_of(&["b", "c"]).unwrap()]
        );
    }

    #[test]
    fn phragmen_skips_unapproved_candidates() {
        let e = parse_election("candidates: a b c\nk: 2\n1: a").unwrap();
        assert!(matches!(seq_phragmen(&e, TieMode::Put), Err(RuleError::Infeasible(_))));
        let e1 = e.with_k(1).unwrap();
        assert_eq!(
            seq_phragmen(&e1, TieMode::Put).unwrap().winners(),
            &[e.set_of(&["a"]).unwrap()]
        );
    }
}
