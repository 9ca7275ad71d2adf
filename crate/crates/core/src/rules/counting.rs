//! Counting rules: committees scored by `Σ_i f(|A_i ∩ W|, |A_i|)`.

use super::{argbest, Direction, RuleError, ScoredOutcome};
use crate::election::Election;
use crate::rational::Rational;
use std::fmt;
use std::sync::Arc;

type CountingFn = dyn Fn(usize, usize) -> Rational + Send + Sync;

/// A per-voter score `f(x, y)` for a voter approving `x` committee members
/// out of `y` approved candidates. Must be non-decreasing in `x`.
#[derive(Clone)]
pub struct CountingFunction {
    name: String,
    f: Arc<CountingFn>,
}

impl CountingFunction {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(usize, usize) -> Rational + Send + Sync + 'static,
    {
        CountingFunction {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn evaluate(&self, x: usize, y: usize) -> Rational {
        (self.f)(x, y)
    }

    /// `f(x, y) = x`
    pub fn av() -> Self {
        CountingFunction::new("av", |x, _| Rational::from(x))
    }

    /// `f(x, y) = x / y`
    pub fn sav() -> Self {
        CountingFunction::new("sav", |x, y| Rational::new(x as i64, y.max(1) as i64))
    }

    /// `f(x, y) = [x > 0]`: coverage, the complement of CC misrepresentation.
    pub fn cc() -> Self {
        CountingFunction::new("cc", |x, _| Rational::from(usize::from(x > 0)))
    }

    /// `f(x, y) = 1 + 1/2 + ... + 1/x`
    pub fn pav() -> Self {
        CountingFunction::new("pav", |x, _| Rational::harmonic(x))
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "av" => Some(Self::av()),
            "sav" => Some(Self::sav()),
            "cc" => Some(Self::cc()),
            "pav" => Some(Self::pav()),
            _ => None,
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["av", "sav", "cc", "pav"]
    }

    /// First grid cell with `f(x + 1, y) < f(x, y)`, for `0 ≤ x < x_max`,
    /// `1 ≤ y ≤ y_max`.
    pub fn monotonicity_violation(&self, x_max: usize, y_max: usize) -> Option<(usize, usize)> {
        (1..=y_max).find_map(|y| {
            (0..x_max).find_map(|x| (self.evaluate(x + 1, y) < self.evaluate(x, y)).then_some((x, y)))
        })
    }
}

impl fmt::Debug for CountingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CountingFunction({})", self.name)
    }
}

impl PartialEq for CountingFunction {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for CountingFunction {}

/// Argmax of `s_f(W, E)` over all committees.
pub fn counting_rule(f: &CountingFunction, e: &Election) -> Result<ScoredOutcome, RuleError> {
    let (k, m) = (e.k(), e.m());
    if let Some((x, y)) = f.monotonicity_violation(k, m) {
        return Err(RuleError::NonMonotoneCounting {
            name: f.name().to_string(),
            x,
            y,
        });
    }
    // table[x][y] = f(x, y); voters are tallied per (x, y) cell so that each
    // committee costs O(n) integer work plus one product per occupied cell.
    let table: Vec<Vec<Rational>> = (0..=k)
        .map(|x| (0..=m).map(|y| f.evaluate(x, y.max(x).max(1))).collect())
        .collect();
    let sizes: Vec<usize> = e.ballots().iter().map(|b| b.len()).collect();
    let mut cells = vec![0usize; (k + 1) * (m + 1)];
    let score = |w| {
        cells.iter_mut().for_each(|c| *c = 0);
        for (b, &y) in e.ballots().iter().zip(&sizes) {
            let x = (*b & w).len();
            cells[x * (m + 1) + y] += 1;
        }
        let mut total = Rational::zero();
        for (idx, &count) in cells.iter().enumerate() {
            if count > 0 {
                total += &table[idx / (m + 1)][idx % (m + 1)] * &Rational::from(count);
            }
        }
        total
    };
    Ok(argbest(e.committees(), Direction::Max, score))
}

/// Outcome of checking the two sufficient conditions for weak SMWOPI on a
/// finite grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingProperties {
    /// `f(x, y) ≥ f(x, y')` whenever `y ≤ y'`; first failing `(x, y, y')`.
    pub nonincreasing_in_y: Result<(), (usize, usize, usize)>,
    /// `f(x + z, y + z) ≥ f(x, y)` for positive `z`; first failing `(x, y, z)`.
    pub diagonal_nondecreasing: Result<(), (usize, usize, usize)>,
}

impl CountingProperties {
    pub fn both_hold(&self) -> bool {
        self.nonincreasing_in_y.is_ok() && self.diagonal_nondecreasing.is_ok()
    }
}

/// Checks both hypotheses on cells `0 ≤ x ≤ x_max`, `max(x, 1) ≤ y ≤ y_max`
/// (a voter never approves more winners than candidates).
pub fn counting_function_properties(
    f: &CountingFunction,
    x_max: usize,
    y_max: usize,
) -> CountingProperties {
    let cells = || {
        (0..=x_max).flat_map(move |x| (x.max(1)..=y_max).map(move |y| (x, y)))
    };
    let nonincreasing_in_y = cells()
        .find_map(|(x, y)| {
            (y + 1..=y_max)
                .find(|&y2| f.evaluate(x, y) < f.evaluate(x, y2))
                .map(|y2| (x, y, y2))
        })
        .map_or(Ok(()), Err);
    let diagonal_nondecreasing = cells()
        .find_map(|(x, y)| {
            (1..)
                .take_while(|z| x + z <= x_max && y + z <= y_max)
                .find(|&z| f.evaluate(x + z, y + z) < f.evaluate(x, y))
                .map(|z| (x, y, z))
        })
        .map_or(Ok(()), Err);
    CountingProperties {
        nonincreasing_in_y,
        diagonal_nondecreasing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abme::parse_election;

    #[test]
    fn builtin_functions_satisfy_both_hypotheses() {
        for f in [CountingFunction::av(), CountingFunction::cc(), CountingFunction::pav()] {
            assert!(counting_function_properties(&f, 8, 8).both_hold(), "{}", f.name());
        }
        assert!(counting_function_properties(&CountingFunction::sav(), 8, 8).both_hold());
    }

    // Independent check for f = x/y on x ≤ y ≤ 8 with cross-multiplied
    // integers.
    #[test]
    fn sav_hypotheses_by_integer_arithmetic() {
        for y in 1..=8i64 {
            for x in 0..=y {
                for y2 in y..=8 {
                    assert!(x * y2 >= x * y, "x/y >= x/y'");
                }
                for z in 1..=8 - y {
                    assert!((x + z) * y >= x * (y + z));
                }
            }
        }
    }

    #[test]
    fn increasing_in_y_fails_first_hypothesis() {
        let f = CountingFunction::new("y", |_, y| Rational::from(y));
        let props = counting_function_properties(&f, 4, 4);
        let (x, y, y2) = props.nonincreasing_in_y.unwrap_err();
        assert!(f.evaluate(x, y) < f.evaluate(x, y2));
        assert!(f.evaluate(1, 1) < f.evaluate(1, 2));
    }

    #[test]
    fn negative_y_fails_only_the_diagonal_hypothesis() {
        let f = CountingFunction::new("-y", |_, y| -Rational::from(y));
        let props = counting_function_properties(&f, 4, 4);
        assert!(props.nonincreasing_in_y.is_ok());
        assert_eq!(props.diagonal_nondecreasing, Err((0, 1, 1)));
    }

    #[test]
    fn constant_function_ties_everything() {
        let e = parse_election("candidates: a b c\nk: 2\n1: a\n1: b").unwrap();
        let f = CountingFunction::new("one", |_, _| Rational::one());
        let out = counting_rule(&f, &e).unwrap();
        assert_eq!(out.outcome.len(), 3);
        assert_eq!(out.objective, Some(Rational::from(2i64)));
    }

    #[test]
    fn non_monotone_function_is_rejected() {
        let e = parse_election("candidates: a b\nk: 1\n1: a").unwrap();
        let f = CountingFunction::new("neg", |x, _| -Rational::from(x));
        assert_eq!(
            counting_rule(&f, &e).unwrap_err(),
            RuleError::NonMonotoneCounting {
                name: "neg".into(),
                x: 0,
                y: 1
            }
        );
    }
}
