use super::enumerate::enumerate_elections;
use super::random::random_election;
use super::shrink::shrink;
use super::GenerationBounds;
use crate::election::{Committee, Election};
use crate::monotonicity::{self, MonotonicityWitness, Property};
use crate::representation::{self, Axiom, RepresentationVerdict};
use crate::rules::{Rule, RuleError};
use rayon::prelude::*;
use std::fmt;
use std::time::{Duration, Instant};

/// What a hunt looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Monotonicity(Property),
    /// An output committee breaking JR, PJR or EJR, or, when `k | n`, a
    /// non-PR output although a PR committee exists.
    Representation(Axiom),
}

impl Target {
    pub fn parse(s: &str) -> Option<Target> {
        Axiom::parse(s)
            .map(Target::Representation)
            .or_else(|| Property::parse(s).map(Target::Monotonicity))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Monotonicity(p) => write!(f, "{p}"),
            Target::Representation(a) => f.write_str(a.as_str()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HuntMode {
    /// Canonical enumeration of the bounds, small layers first.
    Exhaustive,
    /// Instances `0..instances` of the seeded generator.
    Random { instances: u64 },
}

#[derive(Debug, Clone)]
pub struct HuntConfig {
    pub rule: Rule,
    pub target: Target,
    pub bounds: GenerationBounds,
    pub mode: HuntMode,
    /// Stop after this many rule evaluations on mutated elections (or
    /// committees checked, for representation targets).
    pub budget: Option<u64>,
    /// Minimize a monotonicity witness before reporting it.
    pub shrink: bool,
}

impl HuntConfig {
    pub fn new(rule: Rule, target: Target, bounds: GenerationBounds) -> Self {
        HuntConfig {
            rule,
            target,
            bounds,
            mode: HuntMode::Exhaustive,
            budget: None,
            shrink: false,
        }
    }

    pub fn random(mut self, instances: u64) -> Self {
        self.mode = HuntMode::Random { instances };
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_shrink(mut self, shrink: bool) -> Self {
        self.shrink = shrink;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    Monotonicity(MonotonicityWitness),
    Representation {
        election: Election,
        committee: Committee,
        verdict: RepresentationVerdict,
    },
}

impl Finding {
    pub fn election(&self) -> &Election {
        match self {
            Finding::Monotonicity(w) => &w.base,
            Finding::Representation { election, .. } => election,
        }
    }

    /// Re-derives the violation from scratch through the public checkers.
    pub fn revalidate(&self, rule: &Rule) -> bool {
        match self {
            Finding::Monotonicity(w) => w.revalidate(rule),
            Finding::Representation {
                election,
                committee,
                verdict,
            } => {
                let Ok(outcome) = rule.outcome(election) else {
                    return false;
                };
                outcome.contains(*committee)
                    && match verdict.axiom {
                        Axiom::Pr => matches!(
                            representation::rule_respects_pr_on(election, rule),
                            Ok(v) if !v.holds && v.committee == Some(*committee)
                        ),
                        axiom => verdict
                            .witness
                            .as_ref()
                            .is_some_and(|g| g.violates(election, *committee, axiom)),
                    }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct HuntResult {
    pub found: Option<Finding>,
    /// Position of the violating instance in the instance stream.
    pub found_at: Option<u64>,
    pub instances_checked: u64,
    pub evaluations: u64,
    /// The whole instance stream was checked without finding a violation.
    pub exhausted: bool,
    pub elapsed: Duration,
}

impl PartialEq for HuntResult {
    /// Equality ignores timing.
    fn eq(&self, other: &Self) -> bool {
        self.found == other.found
            && self.found_at == other.found_at
            && self.instances_checked == other.instances_checked
            && self.evaluations == other.evaluations
            && self.exhausted == other.exhausted
    }
}

/// Checks one instance; returns its cost and a violation, if any.
fn examine(rule: &Rule, target: Target, e: &Election) -> Result<(u64, Option<Finding>), RuleError> {
    match target {
        Target::Monotonicity(p) => {
            let v = monotonicity::check(rule, e, p)?;
            Ok((v.mutations_checked as u64, v.witness.map(Finding::Monotonicity)))
        }
        Target::Representation(Axiom::Pr) => {
            if !e.n().is_multiple_of(e.k()) {
                return Ok((0, None));
            }
            let v = match representation::rule_respects_pr_on(e, rule) {
                Ok(v) => v,
                Err(representation::RepresentationError::Rule(_)) => return Ok((0, None)),
                Err(representation::RepresentationError::Pr(_)) => unreachable!("k divides n"),
            };
            Ok((
                1,
                v.committee.map(|committee| Finding::Representation {
                    election: e.clone(),
                    committee,
                    verdict: v,
                }),
            ))
        }
        Target::Representation(axiom) => {
            let Ok(outcome) = rule.outcome(e) else {
                return Ok((0, None));
            };
            let mut cost = 0;
            for &w in outcome.winners() {
                cost += 1;
                let v = representation::check(e, w, axiom).expect("not PR");
                if !v.holds {
                    return Ok((
                        cost,
                        Some(Finding::Representation {
                            election: e.clone(),
                            committee: w,
                            verdict: v,
                        }),
                    ));
                }
            }
            Ok((cost, None))
        }
    }
}

const CHUNK: usize = 64;

/// Searches the configured instance stream for the first violation.
///
/// Instances are evaluated in parallel chunks and merged in stream order, so
/// the result (apart from `elapsed`) does not depend on the thread count.
pub fn hunt(config: &HuntConfig) -> Result<HuntResult, RuleError> {
    let start = Instant::now();
    let mut stream: Box<dyn Iterator<Item = Election> + '_> = match config.mode {
        HuntMode::Exhaustive => Box::new(enumerate_elections(&config.bounds)),
        HuntMode::Random { instances } => {
            Box::new((0..instances).map(|i| random_election(&config.bounds, i)))
        }
    };
    let mut result = HuntResult {
        found: None,
        found_at: None,
        instances_checked: 0,
        evaluations: 0,
        exhausted: false,
        elapsed: Duration::ZERO,
    };
    loop {
        let chunk: Vec<Election> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            result.exhausted = true;
            break;
        }
        let outcomes: Vec<Result<(u64, Option<Finding>), RuleError>> = chunk
            .par_iter()
            .map(|e| examine(&config.rule, config.target, e))
            .collect();
        let mut stop = false;
        for outcome in outcomes {
            let (cost, finding) = outcome?;
            result.evaluations += cost;
            result.instances_checked += 1;
            if let Some(f) = finding {
                result.found_at = Some(result.instances_checked - 1);
                result.found = Some(match (f, config.shrink) {
                    (Finding::Monotonicity(w), true) => Finding::Monotonicity(shrink(&config.rule, &w)),
                    (f, _) => f,
                });
                stop = true;
                break;
            }
            if config.budget.is_some_and(|b| result.evaluations >= b) {
                stop = true;
                break;
            }
        }
        if stop {
            break;
        }
    }
    result.elapsed = start.elapsed();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotonicity::Strength;

    #[test]
    fn av_strong_smwopi_small_sweep_is_clean() {
        let cfg = HuntConfig::new(
            Rule::parse("av").unwrap(),
            Target::Monotonicity(Property::Smwopi(Strength::Strong)),
            GenerationBounds::up_to(3, 3),
        );
        let r = hunt(&cfg).unwrap();
        assert!(r.found.is_none());
        assert!(r.exhausted);
        assert!(r.instances_checked > 0);
    }

    #[test]
    fn mav_committee_monotonicity_found_and_revalidated() {
        let rule = Rule::parse("mav").unwrap();
        let cfg = HuntConfig::new(
            rule.clone(),
            Target::Monotonicity(Property::Committee),
            GenerationBounds::up_to(4, 3),
        )
        .with_shrink(true);
        let r = hunt(&cfg).unwrap();
        let f = r.found.expect("MAV is not committee monotone");
        assert!(f.revalidate(&rule));
    }

    #[test]
    fn av_jr_failure_found() {
        let rule = Rule::parse("av").unwrap();
        let cfg = HuntConfig::new(rule.clone(), Target::parse("jr").unwrap(), GenerationBounds::up_to(3, 3));
        let f = hunt(&cfg).unwrap().found.expect("AV fails JR");
        assert!(f.revalidate(&rule));
    }

    #[test]
    fn budget_stops_early_and_deterministically() {
        let cfg = HuntConfig::new(
            Rule::parse("pav").unwrap(),
            Target::Monotonicity(Property::Smwpi(Strength::Strong)),
            GenerationBounds::up_to(6, 4).with_seed(3),
        )
        .random(500)
        .with_budget(200);
        let a = hunt(&cfg).unwrap();
        assert!(!a.exhausted);
        assert!(a.evaluations >= 200);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| hunt(&cfg).unwrap());
        assert_eq!(a, b);
    }
}
