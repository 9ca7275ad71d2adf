//! Voting rules. Every rule returns the full set of tied winning committees.

mod adversarial;
mod approval;
mod counting;
mod optimal;
mod sequential;

pub use adversarial::{av_not_weak_smwopi, rule_not_weak_smwpi};
pub use approval::{approval_voting, satisfaction_av};
pub use counting::{
    counting_function_properties, counting_rule, CountingFunction, CountingProperties,
};
pub use optimal::{
    cc_with_pr_ties, chamberlin_courant, max_phragmen, minimax_av, monroe, pav, SolverMode,
};
pub use sequential::{seq_pav, seq_phragmen, sequential_runs, SequentialMethod, SequentialRun};

use crate::election::{Committee, Election, RuleOutcome};
use crate::rational::Rational;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("no feasible committee: {0}")]
    Infeasible(String),
    #[error("counting function `{name}` decreases in x at x = {x}, y = {y}")]
    NonMonotoneCounting { name: String, x: usize, y: usize },
}

/// Tie handling for the sequential rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieMode {
    /// Branch on every tie and return every reachable committee.
    #[default]
    Put,
    /// Break ties towards the lowest candidate index.
    Lex,
}

impl TieMode {
    pub fn parse(s: &str) -> Option<TieMode> {
        match s {
            "put" => Some(TieMode::Put),
            "lex" => Some(TieMode::Lex),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TieMode::Put => "put",
            TieMode::Lex => "lex",
        }
    }
}

/// Winning committees plus the optimal objective, for rules that have one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoredOutcome {
    pub outcome: RuleOutcome,
    pub objective: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    Av,
    Sav,
    Mav,
    Cc,
    /// CC, keeping only PR-providing winners when any exist.
    CcPrTies,
    Monroe,
    Pav,
    SeqPav,
    MaxPhragmen,
    SeqPhragmen,
    Counting(CountingFunction),
    NotWeakSmwpi,
    AvNotWeakSmwopi,
}

/// A rule together with its evaluation options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub kind: RuleKind,
    pub ties: TieMode,
    /// Use the brute-force solvers for Monroe and max-Phragmén.
    pub oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl Rule {
    pub fn new(kind: RuleKind) -> Self {
        Rule {
            kind,
            ties: TieMode::Put,
            oracle: false,
        }
    }

    pub fn with_ties(mut self, ties: TieMode) -> Self {
        self.ties = ties;
        self
    }

    pub fn with_oracle(mut self, oracle: bool) -> Self {
        self.oracle = oracle;
        self
    }

    /// Parses a rule identifier such as `pav`, `seqphragmen` or
    /// `counting:sav`.
    pub fn parse(id: &str) -> Result<Rule, UnknownRule> {
        let kind = match id {
            "av" => RuleKind::Av,
            "sav" => RuleKind::Sav,
            "mav" => RuleKind::Mav,
            "cc" => RuleKind::Cc,
            "cc-prties" => RuleKind::CcPrTies,
            "monroe" => RuleKind::Monroe,
            "pav" => RuleKind::Pav,
            "seqpav" => RuleKind::SeqPav,
            "maxphragmen" => RuleKind::MaxPhragmen,
            "seqphragmen" => RuleKind::SeqPhragmen,
            "not-weak-smwpi" => RuleKind::NotWeakSmwpi,
            "av-not-weak-smwopi" => RuleKind::AvNotWeakSmwopi,
            other => match other.strip_prefix("counting:") {
                Some(name) => RuleKind::Counting(
                    CountingFunction::builtin(name).ok_or_else(|| UnknownRule(id.to_string()))?,
                ),
                None => return Err(UnknownRule(id.to_string())),
            },
        };
        Ok(Rule::new(kind))
    }

    /// Identifier accepted by [`Rule::parse`].
    pub fn id(&self) -> String {
        match &self.kind {
            RuleKind::Av => "av".into(),
            RuleKind::Sav => "sav".into(),
            RuleKind::Mav => "mav".into(),
            RuleKind::Cc => "cc".into(),
            RuleKind::CcPrTies => "cc-prties".into(),
            RuleKind::Monroe => "monroe".into(),
            RuleKind::Pav => "pav".into(),
            RuleKind::SeqPav => "seqpav".into(),
            RuleKind::MaxPhragmen => "maxphragmen".into(),
            RuleKind::SeqPhragmen => "seqphragmen".into(),
            RuleKind::Counting(f) => format!("counting:{}", f.name()),
            RuleKind::NotWeakSmwpi => "not-weak-smwpi".into(),
            RuleKind::AvNotWeakSmwopi => "av-not-weak-smwopi".into(),
        }
    }

    pub fn is_sequential(&self) -> bool {
        matches!(self.kind, RuleKind::SeqPav | RuleKind::SeqPhragmen)
    }

    /// What the objective measures, e.g. `score` or `maxload`.
    pub fn objective_label(&self) -> Option<&'static str> {
        match self.kind {
            RuleKind::Av
            | RuleKind::Sav
            | RuleKind::Pav
            | RuleKind::Counting(_)
            | RuleKind::NotWeakSmwpi => Some("score"),
            RuleKind::Mav => Some("maxdist"),
            RuleKind::Cc | RuleKind::CcPrTies | RuleKind::Monroe => Some("misrep"),
            RuleKind::MaxPhragmen => Some("maxload"),
            RuleKind::SeqPav | RuleKind::SeqPhragmen | RuleKind::AvNotWeakSmwopi => None,
        }
    }

    pub fn evaluate(&self, e: &Election) -> Result<ScoredOutcome, RuleError> {
        let mode = if self.oracle {
            SolverMode::BruteForce
        } else {
            SolverMode::Flow
        };
        let unscored = |outcome| ScoredOutcome {
            outcome,
            objective: None,
        };
        Ok(match &self.kind {
            RuleKind::Av => approval_voting(e),
            RuleKind::Sav => satisfaction_av(e),
            RuleKind::Mav => minimax_av(e),
            RuleKind::Cc => chamberlin_courant(e),
            RuleKind::CcPrTies => cc_with_pr_ties(e),
            RuleKind::Monroe => monroe(e, mode),
            RuleKind::Pav => pav(e),
            RuleKind::SeqPav => unscored(seq_pav(e, self.ties)),
            RuleKind::MaxPhragmen => max_phragmen(e, mode)?,
            RuleKind::SeqPhragmen => unscored(seq_phragmen(e, self.ties)?),
            RuleKind::Counting(f) => counting_rule(f, e)?,
            RuleKind::NotWeakSmwpi => rule_not_weak_smwpi(e),
            RuleKind::AvNotWeakSmwopi => unscored(av_not_weak_smwopi(e)),
        })
    }

    pub fn outcome(&self, e: &Election) -> Result<RuleOutcome, RuleError> {
        self.evaluate(e).map(|s| s.outcome)
    }

    /// The nine classic rules, sequential ones in PUT mode.
    pub fn standard() -> Vec<Rule> {
        [
            RuleKind::Av,
            RuleKind::Sav,
            RuleKind::Mav,
            RuleKind::Cc,
            RuleKind::Monroe,
            RuleKind::Pav,
            RuleKind::SeqPav,
            RuleKind::MaxPhragmen,
            RuleKind::SeqPhragmen,
        ]
        .into_iter()
        .map(Rule::new)
        .collect()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())?;
        if self.is_sequential() && self.ties != TieMode::Put {
            write!(f, " (ties: {})", self.ties.as_str())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Max,
    Min,
}

/// All committees attaining the best score, with that score.
pub(crate) fn argbest<I, F>(committees: I, direction: Direction, mut score: F) -> ScoredOutcome
where
    I: IntoIterator<Item = Committee>,
    F: FnMut(Committee) -> Rational,
{
    let mut best: Option<Rational> = None;
    let mut winners = Vec::new();
    for w in committees {
        let s = score(w);
        let ord = match &best {
            None => std::cmp::Ordering::Greater,
            Some(b) => match direction {
                Direction::Max => s.cmp(b),
                Direction::Min => b.cmp(&s),
            },
        };
        match ord {
            std::cmp::Ordering::Greater => {
                best = Some(s);
                winners.clear();
                winners.push(w);
            }
            std::cmp::Ordering::Equal => winners.push(w),
            std::cmp::Ordering::Less => {}
        }
    }
    ScoredOutcome {
        outcome: RuleOutcome::new(winners),
        objective: best,
    }
}
