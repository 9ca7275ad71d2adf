use amw_core::abme::parse_election;
use amw_core::election::{Committee, Election};
use amw_core::fixtures::{list_fixtures, run_all, run_fixture};
use amw_core::monotonicity::{self, Property};
use amw_core::representation::{self, Axiom, RepresentationError};
use amw_core::rules::{Rule, TieMode};
use amw_core::search::{hunt, GenerationBounds, HuntConfig, Target};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

mod render;

use render::Output;

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "amw", version, about = "Approval-based multiwinner voting: rules, axioms and counterexample search")]
struct Cli {
    /// Worker threads for parallel evaluation.
    #[arg(long, global = true, env = "AMW_JOBS")]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Tie handling for the sequential rules.
    #[arg(long, global = true, value_enum, default_value_t = Ties::Put)]
    ties: Ties,

    /// Use the brute-force solvers instead of the flow-based ones.
    #[arg(long, global = true)]
    oracle_mode: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ties {
    Put,
    Lex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every winning committee of a rule.
    Compute {
        #[arg(long)]
        rule: String,
        election: PathBuf,
    },
    /// Check JR, PJR, EJR or PR for a committee or for a rule's outputs.
    Axioms {
        #[arg(long)]
        election: PathBuf,
        /// Comma-separated candidate names.
        #[arg(long, conflicts_with = "rule", required_unless_present = "rule")]
        committee: Option<String>,
        #[arg(long)]
        rule: Option<String>,
        /// Comma-separated subset of jr,pjr,ejr,pr.
        #[arg(long, default_value = "jr,pjr,ejr,pr")]
        check: String,
    },
    /// Check a monotonicity property over all single mutations.
    Monotonic {
        #[arg(long)]
        rule: String,
        /// strong-smwpi, weak-smwpi, strong-smwopi, weak-smwopi, candidate or committee.
        #[arg(long)]
        axiom: String,
        #[arg(long)]
        election: PathBuf,
    },
    /// Search generated elections for a violation.
    Hunt(HuntArgs),
    /// Re-run the worked-example fixtures.
    Reproduce {
        /// A fixture id such as F3, or `all`.
        #[arg(long, default_value = "all")]
        fixture: String,
    },
    /// List the fixture catalog.
    ListFixtures,
}

#[derive(Args, Debug)]
struct HuntArgs {
    #[arg(long)]
    rule: String,
    /// A monotonicity property or one of jr, pjr, ejr, pr.
    #[arg(long)]
    axiom: String,
    #[arg(long, default_value_t = 1)]
    min_voters: usize,
    #[arg(long, default_value_t = 6)]
    max_voters: usize,
    #[arg(long, default_value_t = 1)]
    min_candidates: usize,
    #[arg(long, default_value_t = 4)]
    max_candidates: usize,
    /// Committee sizes, `K` or `A..B`; defaults to every size.
    #[arg(long)]
    k: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Approval probability for random ballots, as `p/q`.
    #[arg(long, default_value = "1/2")]
    approval: String,
    /// Number of random elections to draw.
    #[arg(long, default_value_t = 10_000)]
    instances: u64,
    /// Stop after this many evaluations.
    #[arg(long)]
    budget: Option<u64>,
    /// Enumerate every election within the bounds instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    /// Keep isomorphic copies during exhaustive enumeration.
    #[arg(long)]
    no_dedup: bool,
    /// Minimize a found monotonicity witness.
    #[arg(long)]
    shrink: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
}

type Outcome = Result<(Output, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok((output, code)) => {
            print!("{}", output.render(cli.format == Format::Json));
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Compute { rule, election } => compute(&make_rule(cli, rule)?, &read_election(election)?),
        Command::Axioms {
            election,
            committee,
            rule,
            check,
        } => {
            let e = read_election(election)?;
            let axioms = parse_axioms(check)?;
            match (committee, rule) {
                (Some(names), _) => {
                    let w = parse_committee(&e, names)?;
                    axioms_for_committee(&e, w, &axioms)
                }
                (None, Some(rule)) => axioms_for_rule(&e, &make_rule(cli, rule)?, &axioms),
                (None, None) => Err(Failure::Usage("give --committee or --rule".into())),
            }
        }
        Command::Monotonic { rule, axiom, election } => {
            let property = Property::parse(axiom).ok_or_else(|| Failure::Usage(format!("unknown property `{axiom}`")))?;
            monotonic(&make_rule(cli, rule)?, property, &read_election(election)?)
        }
        Command::Hunt(args) => run_hunt(cli, args),
        Command::Reproduce { fixture } => reproduce(fixture),
        Command::ListFixtures => Ok((listing(), EXIT_OK)),
    }
}

fn make_rule(cli: &Cli, id: &str) -> Result<Rule, Failure> {
    let ties = match cli.ties {
        Ties::Put => TieMode::Put,
        Ties::Lex => TieMode::Lex,
    };
    Rule::parse(id)
        .map(|r| r.with_ties(ties).with_oracle(cli.oracle_mode))
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn read_election(path: &Path) -> Result<Election, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_election(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_committee(e: &Election, names: &str) -> Result<Committee, Failure> {
    let names: Vec<&str> = names.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let w = e.set_of(&names).map_err(|err| Failure::Input(err.to_string()))?;
    if w.len() != e.k() || names.len() != e.k() {
        return Err(Failure::Input(format!("committee must have k = {} distinct candidates", e.k())));
    }
    Ok(w)
}

fn parse_axioms(list: &str) -> Result<Vec<Axiom>, Failure> {
    list.split(',')
        .map(|s| Axiom::parse(s.trim()).ok_or_else(|| Failure::Usage(format!("unknown axiom `{s}`"))))
        .collect()
}

fn compute(rule: &Rule, e: &Election) -> Outcome {
    let scored = rule.evaluate(e).map_err(|err| Failure::Input(err.to_string()))?;
    let label = rule.objective_label();
    let suffix = match (&scored.objective, label) {
        (Some(v), Some(l)) => format!("  {l}={v}"),
        _ => String::new(),
    };
    let mut out = Output::default();
    for &w in scored.outcome.winners() {
        out.line(format!("{}{suffix}", e.format_set(w)));
    }
    out.json = json!({
        "rule": rule.id(),
        "committees": render::committees(e, scored.outcome.winners()),
        "objective": scored.objective.as_ref().map(|v| json!({"label": label, "value": v.to_string()})),
    });
    Ok((out, EXIT_OK))
}

fn axioms_for_committee(e: &Election, w: Committee, axioms: &[Axiom]) -> Outcome {
    let mut out = Output::default();
    let mut verdicts = Vec::new();
    let mut violated = false;
    for &axiom in axioms {
        match representation::check(e, w, axiom) {
            Ok(v) => {
                violated |= !v.holds;
                out.line(render::representation_line(e, &v));
                verdicts.push(render::representation_json(e, w, &v));
            }
            Err(err) => {
                out.line(format!("{axiom} undefined: {err}"));
                verdicts.push(json!({"axiom": axiom.as_str(), "error": err.to_string()}));
            }
        }
    }
    out.json = json!({"election": render::abme(e), "committee": e.set_names(w), "verdicts": verdicts});
    Ok((out, if violated { EXIT_VIOLATION } else { EXIT_OK }))
}

fn axioms_for_rule(e: &Election, rule: &Rule, axioms: &[Axiom]) -> Outcome {
    let outcome = rule.outcome(e).map_err(|err| Failure::Input(err.to_string()))?;
    let mut out = Output::default();
    let mut verdicts = Vec::new();
    let mut violated = false;
    for &axiom in axioms {
        if axiom == Axiom::Pr {
            match representation::rule_respects_pr_on(e, rule) {
                Ok(v) => {
                    violated |= !v.holds;
                    let text = match v.committee {
                        Some(w) => format!("PR fails: {} outputs {} although a PR committee exists", rule.id(), e.format_set(w)),
                        None => "PR holds".to_string(),
                    };
                    out.line(text);
                    verdicts.push(json!({
                        "axiom": "pr",
                        "holds": v.holds,
                        "committee": v.committee.map(|w| e.set_names(w)),
                    }));
                }
                Err(RepresentationError::Pr(err)) => {
                    out.line(format!("PR undefined: {err}"));
                    verdicts.push(json!({"axiom": "pr", "error": err.to_string()}));
                }
                Err(RepresentationError::Rule(err)) => return Err(Failure::Input(err.to_string())),
            }
            continue;
        }
        for &w in outcome.winners() {
            let v = representation::check(e, w, axiom).expect("JR, PJR and EJR are always defined");
            violated |= !v.holds;
            out.line(format!("{}: {}", e.format_set(w), render::representation_line(e, &v)));
            verdicts.push(render::representation_json(e, w, &v));
        }
    }
    out.json = json!({"election": render::abme(e), "rule": rule.id(), "verdicts": verdicts});
    Ok((out, if violated { EXIT_VIOLATION } else { EXIT_OK }))
}

fn monotonic(rule: &Rule, property: Property, e: &Election) -> Outcome {
    let v = monotonicity::check(rule, e, property).map_err(|err| Failure::Input(err.to_string()))?;
    let mut out = Output::default();
    match &v.witness {
        None => out.line(format!("{property} holds ({} mutations checked)", v.mutations_checked)),
        Some(w) => {
            out.line(format!("{property} fails ({} mutations checked)", v.mutations_checked));
            render::monotonicity_text(&mut out, w);
        }
    }
    out.json = json!({
        "rule": rule.id(),
        "property": property.id(),
        "holds": v.holds,
        "mutations_checked": v.mutations_checked,
        "witness": v.witness.as_ref().map(render::monotonicity_json),
    });
    Ok((out, if v.holds { EXIT_OK } else { EXIT_VIOLATION }))
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("bad range `{s}`, expected K or A..B"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
            Ok(a..=b)
        }
        None => {
            let k = s.trim().parse().map_err(|_| bad())?;
            Ok(k..=k)
        }
    }
}

fn parse_probability(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::Usage(format!("bad probability `{s}`, expected p/q"));
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

fn run_hunt(cli: &Cli, args: &HuntArgs) -> Outcome {
    let rule = make_rule(cli, &args.rule)?;
    let target = Target::parse(&args.axiom).ok_or_else(|| Failure::Usage(format!("unknown axiom `{}`", args.axiom)))?;
    let (num, den) = parse_probability(&args.approval)?;
    let sizes = match &args.k {
        Some(k) => parse_range(k)?,
        None => 1..=args.max_candidates,
    };
    let bounds = GenerationBounds::up_to(args.max_voters, args.max_candidates)
        .with_voters(args.min_voters..=args.max_voters)
        .with_candidates(args.min_candidates..=args.max_candidates)
        .with_committee_sizes(sizes)
        .with_seed(args.seed)
        .with_approval(num, den)
        .with_dedup(!args.no_dedup);
    bounds.validate().map_err(Failure::Usage)?;
    let mut config = HuntConfig::new(rule.clone(), target, bounds).with_shrink(args.shrink);
    if !args.exhaustive {
        config = config.random(args.instances);
    }
    if let Some(b) = args.budget {
        config = config.with_budget(b);
    }
    let result = hunt(&config).map_err(|err| Failure::Input(err.to_string()))?;
    let mut out = Output::default();
    match &result.found {
        Some(finding) => {
            out.line(format!(
                "violation of {target} by {} at instance {} ({} instances, {} evaluations)",
                rule.id(),
                result.found_at.unwrap_or(0),
                result.instances_checked,
                result.evaluations
            ));
            render::finding_text(&mut out, finding);
        }
        None => out.line(format!(
            "no violation of {target} by {} in {} instances ({} evaluations, {})",
            rule.id(),
            result.instances_checked,
            result.evaluations,
            if result.exhausted { "search space exhausted" } else { "budget reached" }
        )),
    }
    out.json = json!({
        "rule": rule.id(),
        "target": target.to_string(),
        "found": result.found.is_some(),
        "found_at": result.found_at,
        "instances_checked": result.instances_checked,
        "evaluations": result.evaluations,
        "exhausted": result.exhausted,
        "witness": result.found.as_ref().map(render::finding_json),
    });
    Ok((out, if result.found.is_some() { EXIT_VIOLATION } else { EXIT_OK }))
}

fn reproduce(which: &str) -> Outcome {
    let reports = if which.eq_ignore_ascii_case("all") {
        run_all()
    } else {
        vec![run_fixture(which).map_err(|e| Failure::Usage(e.to_string()))?]
    };
    let passed = reports.iter().filter(|r| r.passed()).count();
    let mut out = Output::default();
    for r in &reports {
        out.text.push_str(&r.to_string());
    }
    out.line(format!("{passed}/{} fixtures pass", reports.len()));
    out.json = json!({
        "passed": passed,
        "total": reports.len(),
        "fixtures": reports.iter().map(|r| json!({
            "id": r.info.id,
            "title": r.info.title,
            "citation": r.info.citation,
            "passed": r.passed(),
            "expectations": r.expectations.iter().map(|x| json!({
                "description": x.description,
                "expected": x.expected,
                "actual": x.actual,
                "passed": x.passed,
            })).collect::<Vec<Value>>(),
        })).collect::<Vec<Value>>(),
    });
    Ok((out, if passed == reports.len() { EXIT_OK } else { EXIT_VIOLATION }))
}

fn listing() -> Output {
    let mut out = Output::default();
    let list = list_fixtures();
    for f in &list {
        out.line(format!("{:<4} {}  [{}]", f.id, f.title, f.citation));
    }
    out.json = Value::Array(
        list.iter()
            .map(|f| json!({"id": f.id, "title": f.title, "citation": f.citation, "topics": f.topics}))
            .collect(),
    );
    out
}
