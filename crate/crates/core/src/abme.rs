//! The `.abme` election file format.
//!
//! ```text
//! # comment lines and blank lines ignored
//! candidates: a b c
//! k: 2
//! 3: a b
//! 1: c
//! ```
//!
//! Each ballot line `<multiplicity>: <names>` expands to that many
//! consecutive voters. A `#` starts a comment anywhere on a line.

use crate::election::{valid_name, CandidateSet, Election, ElectionError, MAX_CANDIDATES};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: unknown candidate `{name}`")]
    UnknownCandidate { line: usize, name: String },
    #[error("line {line}: empty ballot")]
    EmptyBallot { line: usize },
    #[error("line {line}: multiplicity must be positive")]
    ZeroMultiplicity { line: usize },
    #[error("line {line}: candidate `{name}` listed twice")]
    DuplicateName { line: usize, name: String },
    #[error("k = {k} out of range 1..={m}")]
    KOutOfRange { k: usize, m: usize },
    #[error("missing `{0}:` line")]
    Missing(&'static str),
    #[error("no ballot lines")]
    NoBallots,
    #[error(transparent)]
    Invalid(#[from] ElectionError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct BallotLine<'a> {
    line: usize,
    multiplicity: usize,
    names: Vec<(usize, &'a str)>,
}

/// Splits `text` into whitespace-separated tokens with 1-based columns.
fn tokens(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((offset + s + 1, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &text[s..]));
    }
    out
}

pub fn parse_election(text: &str) -> Result<Election, ParseError> {
    let mut candidates: Option<(usize, Vec<String>)> = None;
    let mut k: Option<usize> = None;
    let mut ballot_lines = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(syntax(line, col, "expected `<key>: <values>`"));
        };
        let key = content[..colon].trim();
        let key_col = content.len() - content.trim_start().len() + 1;
        let rest = &content[colon + 1..];
        let values = tokens(rest, colon + 1);

        match key {
            "candidates" => {
                if candidates.is_some() {
                    return Err(syntax(line, key_col, "duplicate `candidates:` line"));
                }
                if values.is_empty() {
                    return Err(syntax(line, colon + 2, "expected at least one candidate"));
                }
                let mut names: Vec<String> = Vec::new();
                for (col, name) in values {
                    if !valid_name(name) {
                        return Err(syntax(line, col, format!("invalid candidate name `{name}`")));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(ParseError::DuplicateName {
                            line,
                            name: name.to_string(),
                        });
                    }
                    names.push(name.to_string());
                }
                if names.len() > MAX_CANDIDATES {
                    return Err(ElectionError::TooManyCandidates(names.len()).into());
                }
                candidates = Some((line, names));
            }
            "k" => {
                if k.is_some() {
                    return Err(syntax(line, key_col, "duplicate `k:` line"));
                }
                match values.as_slice() {
                    [(col, v)] => {
                        let value: usize = v
                            .parse()
                            .map_err(|_| syntax(line, *col, format!("invalid integer `{v}`")))?;
                        k = Some(value);
                    }
                    _ => return Err(syntax(line, colon + 2, "expected exactly one integer")),
                }
            }
            _ => {
                let multiplicity: usize = if !key.is_empty() && key.chars().all(|c| c.is_ascii_digit()) {
                    key.parse()
                        .map_err(|_| syntax(line, key_col, "multiplicity too large"))?
                } else {
                    return Err(syntax(
                        line,
                        key_col,
                        format!("unknown key `{key}` (expected `candidates`, `k` or a multiplicity)"),
                    ));
                };
                if multiplicity == 0 {
                    return Err(ParseError::ZeroMultiplicity { line });
                }
                ballot_lines.push(BallotLine {
                    line,
                    multiplicity,
                    names: values,
                });
            }
        }
    }

    let (_, names) = candidates.ok_or(ParseError::Missing("candidates"))?;
    let k = k.ok_or(ParseError::Missing("k"))?;
    if k == 0 || k > names.len() {
        return Err(ParseError::KOutOfRange { k, m: names.len() });
    }
    if ballot_lines.is_empty() {
        return Err(ParseError::NoBallots);
    }

    let mut ballots = Vec::new();
    for bl in ballot_lines {
        if bl.names.is_empty() {
            return Err(ParseError::EmptyBallot { line: bl.line });
        }
        let mut set = CandidateSet::empty();
        for (_, name) in &bl.names {
            let Some(c) = names.iter().position(|n| n == name) else {
                return Err(ParseError::UnknownCandidate {
                    line: bl.line,
                    name: name.to_string(),
                });
            };
            if set.contains(c) {
                return Err(ParseError::DuplicateName {
                    line: bl.line,
                    name: name.to_string(),
                });
            }
            set = set.with(c);
        }
        ballots.extend(std::iter::repeat_n(set, bl.multiplicity));
    }

    Ok(Election::new(names, ballots, k)?)
}

/// Renders an election; consecutive identical ballots share one line.
pub fn serialize_election(e: &Election) -> String {
    let mut out = String::new();
    writeln!(out, "candidates: {}", e.candidates().join(" ")).unwrap();
    writeln!(out, "k: {}", e.k()).unwrap();
    let ballots = e.ballots();
    let mut i = 0;
    while i < ballots.len() {
        let mut j = i;
        while j < ballots.len() && ballots[j] == ballots[i] {
            j += 1;
        }
        writeln!(out, "{}: {}", j - i, e.set_names(ballots[i]).join(" ")).unwrap();
        i = j;
    }
    out
}
