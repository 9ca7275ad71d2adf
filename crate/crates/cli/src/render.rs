//! Text and JSON rendering of verdicts and witnesses.

use amw_core::abme::serialize_election;
use amw_core::election::{Committee, Election, RuleOutcome};
use amw_core::monotonicity::MonotonicityWitness;
use amw_core::representation::RepresentationVerdict;
use amw_core::search::Finding;
use serde_json::{json, Value};

/// A command's result in both renderings.
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

impl Output {
    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub fn abme(e: &Election) -> Value {
    Value::String(serialize_election(e))
}

pub fn committees(e: &Election, ws: &[Committee]) -> Value {
    ws.iter().map(|&w| json!(e.set_names(w))).collect()
}

fn outcome(e: &Election, o: &RuleOutcome) -> Value {
    committees(e, o.winners())
}

pub fn representation_line(e: &Election, v: &RepresentationVerdict) -> String {
    let name = v.axiom.to_string();
    match &v.witness {
        Some(g) if !v.holds => {
            let ballots: Vec<String> = g.voters.iter().map(|&i| e.format_set(e.ballot(i))).collect();
            format!(
                "{name} fails: voters {:?} (ballots {}) are {}-cohesive on {}",
                g.voters,
                ballots.join(" "),
                g.level,
                e.format_set(g.common)
            )
        }
        _ if v.holds => format!("{name} holds"),
        _ => format!("{name} fails"),
    }
}

pub fn representation_json(e: &Election, w: Committee, v: &RepresentationVerdict) -> Value {
    json!({
        "axiom": v.axiom.as_str(),
        "committee": e.set_names(w),
        "holds": v.holds,
        "witness": v.witness.as_ref().map(|g| json!({
            "level": g.level,
            "voters": g.voters,
            "common": e.set_names(g.common),
        })),
        "partition": v.partition.as_ref().map(|p| p.groups.iter().map(|(c, voters)| json!({
            "candidate": e.name(*c),
            "voters": voters,
        })).collect::<Vec<Value>>()),
    })
}

pub fn monotonicity_text(out: &mut super::Output, w: &MonotonicityWitness) {
    let e = &w.base;
    out.line(format!("  G = {}", e.format_set(w.g)));
    if let Some(i) = w.voter {
        out.line(format!("  voter {i} with ballot {}", e.format_set(e.ballot(i))));
    }
    out.line(format!("  clause {} fails", w.clause));
    out.line(format!("  before: {}", w.before.format(e)));
    out.line(format!("  after:  {}", w.after.format(&w.mutated)));
    out.line("  base election:");
    for l in serialize_election(e).lines() {
        out.line(format!("    {l}"));
    }
}

pub fn monotonicity_json(w: &MonotonicityWitness) -> Value {
    let e = &w.base;
    json!({
        "property": w.property.id(),
        "g": e.set_names(w.g),
        "voter": w.voter,
        "clause": w.clause.to_string(),
        "before": outcome(e, &w.before),
        "after": outcome(&w.mutated, &w.after),
        "base": abme(e),
        "mutated": abme(&w.mutated),
    })
}

pub fn finding_text(out: &mut super::Output, f: &Finding) {
    match f {
        Finding::Monotonicity(w) => monotonicity_text(out, w),
        Finding::Representation { election, committee, verdict } => {
            out.line(format!("  committee {}: {}", election.format_set(*committee), representation_line(election, verdict)));
            out.line("  election:");
            for l in serialize_election(election).lines() {
                out.line(format!("    {l}"));
            }
        }
    }
}

pub fn finding_json(f: &Finding) -> Value {
    match f {
        Finding::Monotonicity(w) => monotonicity_json(w),
        Finding::Representation { election, committee, verdict } => {
            let mut v = representation_json(election, *committee, verdict);
            v["election"] = abme(election);
            v
        }
    }
}
