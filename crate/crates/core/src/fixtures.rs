//! A regression corpus of published worked examples: elections, mutation
//! chains and the exact outcomes they are known to produce.
//!
//! Every fixture is a list of expectations comparing an exact expected
//! value (a committee set, a rational objective, a verdict) with what this
//! crate computes. Elections live in `fixtures/*.abme`; the steps of
//! mutation chains are stored as separate files, and each fixture also
//! checks that consecutive steps differ by exactly the stated mutation.

use crate::abme::parse_election;
use crate::election::{CandidateSet, Committee, Election, RuleOutcome};
use crate::monotonicity::{
    check_committee_monotonicity, check_smwopi, check_smwopi_at, check_smwpi, check_smwpi_at,
    committee_clause_failure, support_clause_failure, MonotonicityVerdict, Strength,
};
use crate::representation::{check_jr, pr_committees, rule_respects_pr_on};
use crate::rules::{sequential_runs, Rule, SequentialMethod, TieMode};
use crate::solvers::min_max_load;
use rayon::prelude::*;
use std::fmt::{self, Display};

static FILES: &[(&str, &str)] = &[
    ("f01_pav", include_str!("../fixtures/f01_pav.abme")),
    ("f01_pav_after", include_str!("../fixtures/f01_pav_after.abme")),
    ("f02_cc_0", include_str!("../fixtures/f02_cc_0.abme")),
    ("f02_cc_1", include_str!("../fixtures/f02_cc_1.abme")),
    ("f02_cc_2", include_str!("../fixtures/f02_cc_2.abme")),
    ("f03_mav", include_str!("../fixtures/f03_mav.abme")),
    ("f04_monroe_0", include_str!("../fixtures/f04_monroe_0.abme")),
    ("f04_monroe_1", include_str!("../fixtures/f04_monroe_1.abme")),
    ("f04_monroe_2", include_str!("../fixtures/f04_monroe_2.abme")),
    ("f05_monroe_0", include_str!("../fixtures/f05_monroe_0.abme")),
    ("f05_monroe_1", include_str!("../fixtures/f05_monroe_1.abme")),
    ("f05_monroe_2", include_str!("../fixtures/f05_monroe_2.abme")),
    ("f06_seq", include_str!("../fixtures/f06_seq.abme")),
    ("f06_seq_f", include_str!("../fixtures/f06_seq_f.abme")),
    ("f07_maxphragmen", include_str!("../fixtures/f07_maxphragmen.abme")),
    ("f07_maxphragmen_d", include_str!("../fixtures/f07_maxphragmen_d.abme")),
    ("f08_mav_cm", include_str!("../fixtures/f08_mav_cm.abme")),
    ("f09_cc_monroe_cm", include_str!("../fixtures/f09_cc_monroe_cm.abme")),
    ("f10_av_sav_pr", include_str!("../fixtures/f10_av_sav_pr.abme")),
    ("f11_mav_pr", include_str!("../fixtures/f11_mav_pr.abme")),
    ("f12_seqpav_pr", include_str!("../fixtures/f12_seqpav_pr.abme")),
    ("f13_pr_smwpi", include_str!("../fixtures/f13_pr_smwpi.abme")),
    ("f13_pr_smwpi_after", include_str!("../fixtures/f13_pr_smwpi_after.abme")),
    ("f14_pr_cm", include_str!("../fixtures/f14_pr_cm.abme")),
    ("f15_e1", include_str!("../fixtures/f15_e1.abme")),
    ("f15_e2", include_str!("../fixtures/f15_e2.abme")),
    ("f15_singletons", include_str!("../fixtures/f15_singletons.abme")),
];

/// The embedded `.abme` text of a fixture election, by file stem.
pub fn election_text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Names of all embedded fixture elections.
pub fn election_names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

fn load(name: &str) -> Election {
    parse_election(election_text(name).expect("known fixture file")).expect("fixture parses")
}

/// Catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixtureInfo {
    pub id: &'static str,
    pub title: &'static str,
    /// Where the example comes from.
    pub citation: &'static str,
    /// Topic tags, used by the coverage test.
    pub topics: &'static [&'static str],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub info: FixtureInfo,
    pub expectations: Vec<Expectation>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.expectations.iter().all(|x| x.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Expectation> {
        self.expectations.iter().filter(|x| !x.passed)
    }
}

impl Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.expectations.iter().filter(|x| x.passed).count();
        writeln!(
            f,
            "{} {}  {}/{}  {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.info.id,
            ok,
            self.expectations.len(),
            self.info.title
        )?;
        for x in &self.expectations {
            write!(f, "  [{}] {}: {}", if x.passed { "ok" } else { "XX" }, x.description, x.actual)?;
            if !x.passed {
                write!(f, " (expected {})", x.expected)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown fixture `{0}`")]
pub struct UnknownFixture(pub String);

#[derive(Default)]
struct Recorder {
    items: Vec<Expectation>,
}

impl Recorder {
    fn eq(&mut self, description: impl Into<String>, expected: impl Display, actual: impl Display) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        self.items.push(Expectation {
            description: description.into(),
            passed: expected == actual,
            expected,
            actual,
        });
    }

    fn outcome(&mut self, what: &str, rule: &str, e: &Election, expected: &str) {
        self.scored(what, rule, e, expected, None);
    }

    fn scored(&mut self, what: &str, rule: &str, e: &Election, expected: &str, objective: Option<&str>) {
        let r = Rule::parse(rule).expect("known rule");
        match r.evaluate(e) {
            Ok(s) => {
                self.eq(format!("{rule} on {what}"), expected, s.outcome.format(e));
                if let Some(obj) = objective {
                    let actual = s.objective.map_or("none".to_string(), |o| o.to_string());
                    let label = r.objective_label().unwrap_or("objective");
                    self.eq(format!("{rule} {label} on {what}"), obj, actual);
                }
            }
            Err(err) => self.eq(format!("{rule} on {what}"), expected, format!("error: {err}")),
        }
    }

    fn verdict(&mut self, description: impl Into<String>, expected: &str, v: Result<MonotonicityVerdict, impl Display>, e: &Election) {
        self.eq(description, expected, describe_verdict(v, e));
    }
}

fn describe_verdict(v: Result<MonotonicityVerdict, impl Display>, e: &Election) -> String {
    match v {
        Err(err) => format!("error: {err}"),
        Ok(v) => match v.witness {
            None => "holds".into(),
            Some(w) => {
                let voter = w.voter.map_or(String::new(), |i| format!(" voter {i}"));
                format!(
                    "fails clause {} with G={}{}",
                    w.clause,
                    e.format_set(w.g),
                    voter
                )
            }
        },
    }
}

fn set(e: &Election, names: &[&str]) -> CandidateSet {
    e.set_of(names).expect("fixture candidate names")
}

fn format_committees(e: &Election, ws: &[Committee]) -> String {
    if ws.is_empty() {
        "{}".into()
    } else {
        RuleOutcome::new(ws.to_vec()).format(e)
    }
}

fn rule(id: &str) -> Rule {
    Rule::parse(id).expect("known rule")
}

fn runs_summary(method: SequentialMethod, e: &Election, ties: TieMode) -> String {
    match sequential_runs(method, e, ties) {
        Err(err) => format!("error: {err}"),
        Ok(runs) => runs
            .iter()
            .map(|r| r.order.iter().map(|&c| e.name(c)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(" | "),
    }
}

fn same_election(a: &Election, b: &Election) -> String {
    if a == b { "identical".into() } else { "different".into() }
}

fn f01() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f01_pav");
    let after = load("f01_pav_after");
    r.eq("voters", 131, e.n());
    r.scored("base", "pav", &e, "{{c1,c2,c3,c4}}", Some("391/3"));
    let g = set(&e, &["c3", "c4"]);
    r.eq("mutation: voter 127 adds {c3,c4}", "identical", same_election(&e.extend_ballot(127, g).unwrap(), &after));
    r.scored("mutated", "pav", &after, "{{c4,c5,c6,c7}}", Some("131"));
    let pav = rule("pav");
    r.verdict("strong SMWOPI at G={c3,c4}, voter 127", "fails clause (i) with G={c3,c4} voter 127", check_smwopi_at(&pav, &e, g, 127, Strength::Strong), &e);
    r.eq("strong SMWOPI over all mutations", "fails", holds_word(check_smwopi(&pav, &e, Strength::Strong)));
    r
}

fn holds_word<E>(v: Result<MonotonicityVerdict, E>) -> &'static str {
    match v {
        Ok(v) if v.holds => "holds",
        Ok(_) => "fails",
        Err(_) => "error",
    }
}

fn f02() -> Recorder {
    let mut r = Recorder::default();
    let steps: Vec<Election> = (0..3).map(|i| load(&format!("f02_cc_{i}"))).collect();
    let g = set(&steps[0], &["b", "c"]);
    r.eq("step 1 = voter 10 adds {b,c}", "identical", same_election(&steps[0].extend_ballot(10, g).unwrap(), &steps[1]));
    r.eq("step 2 = voter 11 adds {b,c}", "identical", same_election(&steps[1].extend_ballot(11, g).unwrap(), &steps[2]));
    r.scored("base", "cc", &steps[0], "{{a,b,c}}", Some("1"));
    r.scored("step 1", "cc", &steps[1], "{{a,b,c}, {b,d,e}}", Some("1"));
    r.scored("step 2", "cc", &steps[2], "{{b,d,e}}", Some("0"));
    let cc = rule("cc");
    let e0 = &steps[0];
    r.verdict("strong SMWOPI, first increase", "fails clause (ii) with G={b,c} voter 10", check_smwopi_at(&cc, e0, g, 10, Strength::Strong), e0);
    r.verdict("strong SMWOPI, second increase", "fails clause (i) with G={b,c} voter 11", check_smwopi_at(&cc, &steps[1], g, 11, Strength::Strong), e0);
    r.verdict("weak SMWOPI, second increase", "holds", check_smwopi_at(&cc, &steps[1], g, 11, Strength::Weak), e0);
    r
}

fn f03() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f03_mav");
    r.scored("base", "mav", &e, "{{c1,c2,c3,c4,c5}}", Some("5"));
    let g = set(&e, &["c1", "c2", "c3", "c4"]);
    let after = e.extend_ballot(3, g).unwrap();
    r.eq("voter 3 ballot after", "{c1,c2,c3,c4,c5}", after.format_set(after.ballot(3)));
    r.scored("mutated", "mav", &after, "{{c1,c2,c3,c6,c7}}", Some("4"));
    let mav = rule("mav");
    r.verdict("strong SMWOPI at G={c1,c2,c3,c4}, voter 3", "fails clause (i) with G={c1,c2,c3,c4} voter 3", check_smwopi_at(&mav, &e, g, 3, Strength::Strong), &e);
    r.verdict("weak SMWOPI at the same mutation", "holds", check_smwopi_at(&mav, &e, g, 3, Strength::Weak), &e);
    r
}

fn f04() -> Recorder {
    let mut r = Recorder::default();
    let steps: Vec<Election> = (0..3).map(|i| load(&format!("f04_monroe_{i}"))).collect();
    let g = set(&steps[0], &["e"]);
    r.eq("step 1 = new {e} voter", "identical", same_election(&steps[0].add_new_voter(g).unwrap(), &steps[1]));
    r.eq("step 2 = new {e} voter", "identical", same_election(&steps[1].add_new_voter(g).unwrap(), &steps[2]));
    r.scored("base", "monroe", &steps[0], "{{e,f,g,h}}", Some("1"));
    r.scored("step 1", "monroe", &steps[1], "{{a,b,c,d}, {e,f,g,h}}", Some("2"));
    r.scored("step 2", "monroe", &steps[2], "{{a,b,c,d}}", Some("2"));
    let monroe = rule("monroe");
    r.verdict("weak SMWPI, second new voter", "fails clause (i) with G={e}", check_smwpi_at(&monroe, &steps[1], g, Strength::Weak), &steps[0]);
    r.verdict("weak SMWPI, first new voter", "fails clause (ii) with G={e}", check_smwpi_at(&monroe, &steps[0], g, Strength::Weak), &steps[0]);
    r
}

fn f05() -> Recorder {
    let mut r = Recorder::default();
    let steps: Vec<Election> = (0..3).map(|i| load(&format!("f05_monroe_{i}"))).collect();
    let g = set(&steps[0], &["b", "c"]);
    r.eq("step 1 = voter 0 adds {b,c}", "identical", same_election(&steps[0].extend_ballot(0, g).unwrap(), &steps[1]));
    r.eq("step 2 = voter 1 adds {b,c}", "identical", same_election(&steps[1].extend_ballot(1, g).unwrap(), &steps[2]));
    r.scored("base", "monroe", &steps[0], "{{a,b,c}}", Some("1"));
    r.scored("step 1", "monroe", &steps[1], "{{a,b,c}, {b,d,e}}", Some("1"));
    r.scored("step 2", "monroe", &steps[2], "{{b,d,e}}", Some("0"));
    let monroe = rule("monroe");
    r.verdict("strong SMWOPI, first increase", "fails clause (ii) with G={b,c} voter 0", check_smwopi_at(&monroe, &steps[0], g, 0, Strength::Strong), &steps[0]);
    r.verdict("strong SMWOPI, second increase", "fails clause (i) with G={b,c} voter 1", check_smwopi_at(&monroe, &steps[1], g, 1, Strength::Strong), &steps[0]);
    r.verdict("weak SMWOPI, second increase", "holds", check_smwopi_at(&monroe, &steps[1], g, 1, Strength::Weak), &steps[0]);
    r
}

fn f06() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f06_seq");
    let g = set(&e, &["c", "d"]);
    let grown = e.add_new_voter(g).unwrap();
    let ef = load("f06_seq_f");
    let extended = ef.extend_ballot(19, set(&ef, &["c", "d"])).unwrap();
    for (id, method) in [("seqpav", SequentialMethod::Pav), ("seqphragmen", SequentialMethod::Phragmen)] {
        let rl = rule(id);
        r.outcome("base", id, &e, "{{a,b,c,d}}");
        r.eq(format!("{id} runs on base (PUT)"), "a,b,c,d", runs_summary(method, &e, TieMode::Put));
        r.eq(format!("{id} runs on base (LEX)"), "a,b,c,d", runs_summary(method, &e, TieMode::Lex));
        r.outcome("base + {c,d} voter", id, &grown, "{{a,b,d,e}}");
        r.eq(format!("{id} runs after new voter (PUT)"), "a,d,e,b", runs_summary(method, &grown, TieMode::Put));
        r.verdict(format!("{id} strong SMWPI at G={{c,d}}"), "fails clause (i) with G={c,d}", check_smwpi_at(&rl, &e, g, Strength::Strong), &e);
        r.outcome("variant with f", id, &ef, "{{a,b,c,d}}");
        r.outcome("variant, {f} voter adds {c,d}", id, &extended, "{{a,b,d,e}}");
        r.eq(format!("{id} runs on variant after extension"), "a,d,e,b", runs_summary(method, &extended, TieMode::Put));
        r.verdict(format!("{id} strong SMWOPI at G={{c,d}}, voter 19"), "fails clause (i) with G={c,d} voter 19", check_smwopi_at(&rl, &ef, set(&ef, &["c", "d"]), 19, Strength::Strong), &ef);
    }
    r
}

fn f07() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f07_maxphragmen");
    let w = set(&e, &["a", "c1", "c2", "c3", "c4", "c5"]);
    r.scored("base", "maxphragmen", &e, "{{a,c1,c2,c3,c4,c5}}", Some("5/13"));
    let grown = e.add_new_voter(w).unwrap();
    r.scored(
        "base + voter approving the winners",
        "maxphragmen",
        &grown,
        "{{a,b,c1,c2,c3,c4}, {a,b,c1,c2,c3,c5}, {a,b,c1,c2,c4,c5}, {a,b,c1,c3,c4,c5}, {a,b,c2,c3,c4,c5}}",
        Some("1/3"),
    );
    match min_max_load(&grown, w) {
        Ok(m) => {
            r.eq("old winners' load after the new voter", "5/14", &m.value);
            r.eq("load distribution satisfies the load constraints", "ok", m.distribution.verify(&grown).map(|_| "ok").unwrap_or_else(|x| Box::leak(x.into_boxed_str())));
        }
        Err(err) => r.eq("old winners' load after the new voter", "5/14", format!("error: {err}")),
    }
    let mp = rule("maxphragmen");
    r.verdict("strong SMWPI at G = winners", "fails clause (i) with G={a,c1,c2,c3,c4,c5}", check_smwpi_at(&mp, &e, w, Strength::Strong), &e);
    let ed = load("f07_maxphragmen_d");
    let wd = set(&ed, &["a", "c1", "c2", "c3", "c4", "c5"]);
    r.scored("variant with d", "maxphragmen", &ed, "{{a,c1,c2,c3,c4,c5}}", Some("5/13"));
    r.outcome(
        "variant, {d} voter adds the winners",
        "maxphragmen",
        &ed.extend_ballot(18, wd).unwrap(),
        "{{a,b,c1,c2,c3,c4}, {a,b,c1,c2,c3,c5}, {a,b,c1,c2,c4,c5}, {a,b,c1,c3,c4,c5}, {a,b,c2,c3,c4,c5}}",
    );
    r.verdict("strong SMWOPI at G = winners, voter 18", "fails clause (i) with G={a,c1,c2,c3,c4,c5} voter 18", check_smwopi_at(&mp, &ed, wd, 18, Strength::Strong), &ed);
    r
}

fn committee_monotonicity_case(r: &mut Recorder, id: &str, e: &Election, k1: (&str, &str), k2: (&str, &str)) {
    r.scored("k = 1", id, e, k1.0, Some(k1.1));
    r.scored("k = 2", id, &e.with_k(2).unwrap(), k2.0, Some(k2.1));
    r.verdict(
        format!("{id} committee monotonicity, k 1 -> 2"),
        &format!("fails clause (i) with G={}", &k1.0[1..k1.0.len() - 1]),
        check_committee_monotonicity(&rule(id), e, 1, 2),
        e,
    );
}

fn f08() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f08_mav_cm");
    committee_monotonicity_case(&mut r, "mav", &e, ("{{a}}", "2"), ("{{b,c}}", "2"));
    r
}

fn f09() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f09_cc_monroe_cm");
    committee_monotonicity_case(&mut r, "cc", &e, ("{{a}}", "4"), ("{{b,c}}", "0"));
    r.outcome("k = 1", "monroe", &e, "{{a}}");
    r.outcome("k = 2", "monroe", &e.with_k(2).unwrap(), "{{b,c}}");
    r.verdict("monroe committee monotonicity, k 1 -> 2", "fails clause (i) with G={a}", check_committee_monotonicity(&rule("monroe"), &e, 1, 2), &e);
    r
}

fn pr_set(r: &mut Recorder, what: &str, e: &Election, expected: &str) {
    let actual = match pr_committees(e) {
        Ok(ws) => format_committees(e, &ws),
        Err(err) => format!("error: {err}"),
    };
    r.eq(format!("PR committees of {what}"), expected, actual);
}

fn respects_pr(r: &mut Recorder, id: &str, e: &Election, expected: &str) {
    let actual = match rule_respects_pr_on(e, &rule(id)) {
        Ok(v) if v.holds => "holds".to_string(),
        Ok(v) => format!("fails via {}", e.format_set(v.committee.expect("offender"))),
        Err(err) => format!("error: {err}"),
    };
    r.eq(format!("{id} respects PR"), expected, actual);
}

const F10_PR: &str = "{{a1,a2,b1}, {a1,a2,b2}, {a1,a2,b3}, {a1,a3,b1}, {a1,a3,b2}, {a1,a3,b3}, {a2,a3,b1}, {a2,a3,b2}, {a2,a3,b3}}";

fn f10() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f10_av_sav_pr");
    r.scored("election", "av", &e, "{{a1,a2,a3}}", Some("6"));
    r.scored("election", "sav", &e, "{{a1,a2,a3}}", Some("2"));
    pr_set(&mut r, "the election", &e, F10_PR);
    respects_pr(&mut r, "av", &e, "fails via {a1,a2,a3}");
    respects_pr(&mut r, "sav", &e, "fails via {a1,a2,a3}");
    let jr = check_jr(&e, set(&e, &["a1", "a2", "a3"]));
    r.eq("JR for {a1,a2,a3}", "fails, group [2]", if jr.holds { "holds".into() } else { format!("fails, group {:?}", jr.witness.unwrap().voters) });
    r
}

fn f11() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f11_mav_pr");
    r.scored(
        "election",
        "mav",
        &e,
        "{{a1,b1,b2}, {a1,b1,b3}, {a1,b2,b3}, {a2,b1,b2}, {a2,b1,b3}, {a2,b2,b3}}",
        Some("3"),
    );
    pr_set(&mut r, "the election", &e, "{{a1,a2,b1}, {a1,a2,b2}, {a1,a2,b3}}");
    respects_pr(&mut r, "mav", &e, "fails via {a1,b1,b2}");
    r
}

fn f12() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f12_seqpav_pr");
    pr_set(&mut r, "the election", &e, "{{b,c}}");
    let first: Vec<String> = sequential_runs(SequentialMethod::Pav, &e, TieMode::Put)
        .map(|runs| runs.iter().map(|run| e.name(run.order[0]).to_string()).collect())
        .unwrap_or_default();
    r.eq("first SeqPAV pick on every branch", "a", first.iter().map(String::as_str).collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>().join(","));
    r.outcome("election", "seqpav", &e, "{{a,b}, {a,c}}");
    respects_pr(&mut r, "seqpav", &e, "fails via {a,b}");
    r
}

/// All non-empty sets of committees over the given committees.
fn all_outcomes(committees: &[Committee]) -> Vec<RuleOutcome> {
    (1u32..1 << committees.len())
        .map(|mask| {
            RuleOutcome::new(
                (0..committees.len())
                    .filter(|j| mask >> j & 1 == 1)
                    .map(|j| committees[j])
                    .collect(),
            )
        })
        .collect()
}

/// Outcomes `after` that pass both strong-SMWPI clauses for `g` against
/// some outcome in `befores`.
fn strong_smwpi_successors(befores: &[RuleOutcome], candidates: &[RuleOutcome], g: CandidateSet) -> Vec<RuleOutcome> {
    candidates
        .iter()
        .filter(|after| {
            befores
                .iter()
                .any(|b| support_clause_failure(Strength::Strong, g, b, after).is_none())
        })
        .cloned()
        .collect()
}

fn f13() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f13_pr_smwpi");
    let after = load("f13_pr_smwpi_after");
    let g = set(&e, &["c1", "c3"]);
    let chain = [&e]
        .into_iter()
        .cloned()
        .chain((1..=3).scan(e.clone(), |cur, _| {
            *cur = cur.add_new_voter(g).unwrap();
            Some(cur.clone())
        }))
        .collect::<Vec<_>>();
    r.eq("three new {c1,c3} voters", "identical", same_election(&chain[3], &after));
    pr_set(&mut r, "the 12-voter election", &e, "{{c1,c2,c3}}");
    pr_set(&mut r, "the 15-voter election", &after, "{{c3,c4,c5}}");
    r.scored("12 voters", "cc", &e, "{{c1,c2,c3}, {c3,c4,c5}}", Some("0"));
    r.outcome("12 voters", "cc-prties", &e, "{{c1,c2,c3}}");
    r.outcome("15 voters", "cc-prties", &after, "{{c3,c4,c5}}");

    // Any PR rule must output exactly the PR committee at 12 voters. Follow
    // every outcome that strong SMWPI still allows through the three single
    // additions and intersect with what PR allows at 15 voters.
    let committees: Vec<Committee> = e.committees().collect();
    let outcomes = all_outcomes(&committees);
    let mut allowed = vec![RuleOutcome::new(pr_committees(&e).unwrap_or_default())];
    for step in 1..=3 {
        allowed = strong_smwpi_successors(&allowed, &outcomes, g);
        r.eq(
            format!("outcomes allowed after {step} additions all contain {{c1,c3}}"),
            "true",
            !allowed.is_empty() && allowed.iter().all(|o| o.all_contain(g)),
        );
    }
    let pr_allowed = pr_committees(&after).unwrap_or_default();
    let compatible = allowed
        .iter()
        .filter(|o| o.winners().iter().all(|w| pr_allowed.contains(w)))
        .count();
    r.eq("outcomes at 15 voters allowed by both PR and strong SMWPI", 0, compatible);
    r
}

fn f14() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f14_pr_cm");
    let e3 = e.with_k(3).unwrap();
    pr_set(&mut r, "k = 2", &e, "{{c4,c5}}");
    pr_set(&mut r, "k = 3", &e3, "{{c1,c2,c3}}");
    let (Ok(p2), Ok(p3)) = (pr_committees(&e), pr_committees(&e3)) else {
        r.eq("PR committees exist", "true", "false");
        return r;
    };
    // A PR rule outputs a non-empty subset of the PR committees at each
    // size. Both clauses can hold only if some pair of single committees
    // passes them, so list every such pair.
    let compatible: Vec<String> = p2
        .iter()
        .flat_map(|&w2| p3.iter().map(move |&w3| (w2, w3)))
        .filter(|&(w2, w3)| {
            committee_clause_failure(&RuleOutcome::new(vec![w2]), &RuleOutcome::new(vec![w3])).is_none()
        })
        .map(|(w2, w3)| format!("{} with {}", e.format_set(w2), e.format_set(w3)))
        .collect();
    r.eq(
        "PR outputs at k = 2 and k = 3 passing committee monotonicity",
        "none",
        if compatible.is_empty() { "none".into() } else { compatible.join("; ") },
    );
    let forced = committee_clause_failure(&RuleOutcome::new(p2), &RuleOutcome::new(vec![set(&e, &["c1", "c2", "c3"])]));
    r.eq(
        "committee monotonicity from {c4,c5} to {c1,c2,c3}",
        "fails clause (i) with G={c4,c5}",
        forced.map_or("holds".into(), |(c, w)| format!("fails clause {c} with G={}", e.format_set(w))),
    );
    r.outcome("k = 2", "cc-prties", &e, "{{c4,c5}}");
    r.outcome("k = 3", "cc-prties", &e3, "{{c1,c2,c3}}");
    r
}

fn f15() -> Recorder {
    let mut r = Recorder::default();
    let e1 = load("f15_e1");
    let e2 = load("f15_e2");
    let g = set(&e1, &["c1", "c2"]);
    r.outcome("first profile", "av-not-weak-smwopi", &e1, "{{c1,c2}, {c3,c4}}");
    r.outcome("second profile", "av-not-weak-smwopi", &e2, "{{c3,c4}}");
    r.eq("second = voter 1 adds {c1,c2}", "identical", same_election(&e1.extend_ballot(1, g).unwrap(), &e2));
    let tweaked = rule("av-not-weak-smwopi");
    r.verdict("weak SMWOPI at G={c1,c2}, voter 1", "fails clause (i) with G={c1,c2} voter 1", check_smwopi_at(&tweaked, &e1, g, 1, Strength::Weak), &e1);
    r.eq("weak SMWOPI over all mutations", "fails", holds_word(check_smwopi(&tweaked, &e1, Strength::Weak)));

    let s = load("f15_singletons");
    let single = rule("not-weak-smwpi");
    r.scored("singleton profile", "not-weak-smwpi", &s, "{{a,b}}", Some("2"));
    r.verdict("weak SMWPI at G={a,b}", "fails clause (ii) with G={a,b}", check_smwpi_at(&single, &s, set(&s, &["a", "b"]), Strength::Weak), &s);
    r.verdict("weak SMWPI at G={a}", "holds", check_smwpi_at(&single, &s, set(&s, &["a"]), Strength::Weak), &s);
    r.eq("weak SMWPI over all mutations", "fails", holds_word(check_smwpi(&single, &s, Strength::Weak)));
    r
}

fn f16() -> Recorder {
    let mut r = Recorder::default();
    let e = load("f10_av_sav_pr");
    let cc = rule("cc").outcome(&e);
    r.eq(
        "CC outputs {a1,b1,b2}",
        "true",
        cc.as_ref().is_ok_and(|o| o.contains(set(&e, &["a1", "b1", "b2"]))),
    );
    r.eq("number of CC winners", 18, cc.map_or(0, |o| o.len()));
    respects_pr(&mut r, "cc", &e, "fails via {a1,b1,b2}");
    respects_pr(&mut r, "cc-prties", &e, "holds");
    r.outcome("election", "cc-prties", &e, F10_PR);
    r
}

struct Entry {
    info: FixtureInfo,
    run: fn() -> Recorder,
}

macro_rules! entry {
    ($id:literal, $title:literal, $citation:literal, [$($topic:literal),*], $run:ident) => {
        Entry {
            info: FixtureInfo { id: $id, title: $title, citation: $citation, topics: &[$($topic),*] },
            run: $run,
        }
    };
}

static CATALOG: &[Entry] = &[
    entry!("F1", "PAV fails strong SMWOPI", "support monotonicity counterexamples: PAV", ["pav-strong-smwopi"], f01),
    entry!("F2", "CC fails strong SMWOPI under any tie-breaking", "support monotonicity counterexamples: CC, chained", ["cc-strong-smwopi"], f02),
    entry!("F3", "MAV fails strong SMWOPI", "support monotonicity counterexamples: MAV", ["mav-strong-smwopi"], f03),
    entry!("F4", "Monroe fails weak SMWPI", "support monotonicity counterexamples: Monroe, new voters", ["monroe-weak-smwpi"], f04),
    entry!("F5", "Monroe fails strong SMWOPI", "support monotonicity counterexamples: Monroe, extended ballots", ["monroe-strong-smwopi"], f05),
    entry!("F6", "SeqPAV and seq-Phragmen fail strong SMWPI and SMWOPI", "support monotonicity counterexamples: sequential rules", ["seq-strong-smwpi", "seq-strong-smwopi"], f06),
    entry!("F7", "max-Phragmen fails strong SMWPI and SMWOPI", "support monotonicity counterexamples: max-Phragmen loads", ["maxphragmen-strong-smwpi", "maxphragmen-strong-smwopi"], f07),
    entry!("F8", "MAV fails committee monotonicity", "committee monotonicity counterexamples: MAV", ["mav-committee-monotonicity"], f08),
    entry!("F9", "CC and Monroe fail committee monotonicity", "committee monotonicity counterexamples: CC and Monroe", ["cc-committee-monotonicity", "monroe-committee-monotonicity"], f09),
    entry!("F10", "AV and SAV fail PR", "perfect representation counterexamples: AV and SAV", ["av-pr", "sav-pr"], f10),
    entry!("F11", "MAV fails PR", "perfect representation counterexamples: MAV", ["mav-pr"], f11),
    entry!("F12", "SeqPAV fails PR", "perfect representation counterexamples: SeqPAV", ["seqpav-pr"], f12),
    entry!("F13", "PR is incompatible with strong SMWPI", "impossibility: PR and strong SMWPI", ["pr-vs-strong-smwpi"], f13),
    entry!("F14", "PR is incompatible with committee monotonicity", "impossibility: PR and committee monotonicity", ["pr-vs-committee-monotonicity"], f14),
    entry!("F15", "Rules failing weak monotonicity yet monotone for single candidates", "artificial rules for the weak axioms", ["not-weak-smwpi-rule", "av-not-weak-smwopi-rule"], f15),
    entry!("F16", "CC satisfies PR only with PR-favouring tie-breaking", "perfect representation: CC tie-breaking", ["cc-pr"], f16),
];

pub fn list_fixtures() -> Vec<FixtureInfo> {
    CATALOG.iter().map(|e| e.info).collect()
}

pub fn run_fixture(id: &str) -> Result<FixtureReport, UnknownFixture> {
    let entry = CATALOG
        .iter()
        .find(|e| e.info.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| UnknownFixture(id.to_string()))?;
    Ok(FixtureReport {
        info: entry.info,
        expectations: (entry.run)().items,
    })
}

/// Runs every fixture in parallel; reports come back in catalog order.
pub fn run_all() -> Vec<FixtureReport> {
    CATALOG
        .par_iter()
        .map(|e| FixtureReport {
            info: e.info,
            expectations: (e.run)().items,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::Combinations;

    #[test]
    fn catalog_shape() {
        let list = list_fixtures();
        assert_eq!(list.len(), 16);
        for (i, f) in list.iter().enumerate() {
            assert_eq!(f.id, format!("F{}", i + 1));
            assert!(!f.citation.is_empty() && !f.topics.is_empty());
        }
        assert!(run_fixture("F99").is_err());
    }

    #[test]
    fn every_file_parses() {
        for name in election_names() {
            let _ = load(name);
        }
    }

    #[test]
    fn all_outcome_enumeration() {
        let cs: Vec<Committee> = Combinations::new(5, 3).collect();
        assert_eq!(all_outcomes(&cs).len(), 1023);
    }
}
