//! The `ba` text format: initial-state lines `[q]`, transition lines
//! `label,[p]->[q]`, then accepting-state lines `[q]`.
//!
//! If no initial line precedes the transitions, the source of the first
//! transition is initial. Without transitions every `[q]` line names an
//! initial state. When all state names are non-negative integers they are
//! used as indices; otherwise states are numbered by first appearance and
//! the names are kept. Letters are numbered by first appearance unless an
//! alphabet is supplied.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::{Alphabet, AutomatonParts, BuchiAutomaton, State};
use crate::error::{Error, Result};

enum Line<'t> {
    State(&'t str),
    Edge(&'t str, &'t str, &'t str),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn bracketed(s: &str, line: usize, column: usize) -> Result<&str> {
    let s = s.trim();
    s.strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .filter(|r| !r.is_empty())
        .ok_or_else(|| syntax(line, column, format!("expected `[state]`, found `{s}`")))
}

fn parse_line(text: &str, line: usize) -> Result<Line<'_>> {
    if !text.contains("->") {
        return Ok(Line::State(bracketed(text, line, 1)?));
    }
    let Some(comma) = text.find(',') else {
        return Err(syntax(line, 1, "expected `label,[src]->[dst]`"));
    };
    let label = text[..comma].trim();
    if label.is_empty() {
        return Err(syntax(line, 1, "empty transition label"));
    }
    let rest = &text[comma + 1..];
    let Some(arrow) = rest.find("->") else {
        return Err(syntax(line, comma + 2, "expected `->`"));
    };
    let src = bracketed(&rest[..arrow], line, comma + 2)?;
    let dst = bracketed(&rest[arrow + 2..], line, comma + arrow + 4)?;
    Ok(Line::Edge(label, src, dst))
}

pub fn parse_ba(text: &str) -> Result<BuchiAutomaton> {
    parse(text, None)
}

/// Parses with letters resolved against `alphabet`, so that letters missing
/// from the text keep their index.
pub fn parse_ba_with_alphabet(text: &str, alphabet: &Alphabet) -> Result<BuchiAutomaton> {
    parse(text, Some(alphabet))
}

fn parse(text: &str, alphabet: Option<&Alphabet>) -> Result<BuchiAutomaton> {
    let text = text.replace("\r\n", "\n");
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if !trimmed.is_empty() {
            lines.push((i + 1, parse_line(trimmed, i + 1)?));
        }
    }

    let first_edge = lines.iter().position(|(_, l)| matches!(l, Line::Edge(..)));
    let last_edge = lines.iter().rposition(|(_, l)| matches!(l, Line::Edge(..)));
    if let (Some(f), Some(l)) = (first_edge, last_edge) {
        if let Some((line, _)) = lines[f..l]
            .iter()
            .find(|(_, l)| matches!(l, Line::State(_)))
        {
            return Err(syntax(*line, 1, "state line between transitions"));
        }
    }

    let names: Vec<&str> = {
        let mut seen = Vec::new();
        for (_, l) in &lines {
            match l {
                Line::State(q) => seen.push(*q),
                Line::Edge(_, p, q) => {
                    seen.push(*p);
                    seen.push(*q);
                }
            }
        }
        seen
    };
    let numeric: Option<Vec<usize>> = names.iter().map(|s| s.parse().ok()).collect();
    let mut index: HashMap<&str, State> = HashMap::new();
    let mut state_names = Vec::new();
    let num_states = match &numeric {
        Some(ids) => {
            for (s, &id) in names.iter().zip(ids) {
                index.insert(s, id);
            }
            ids.iter().max().map_or(0, |m| m + 1)
        }
        None => {
            for s in &names {
                if !index.contains_key(s) {
                    index.insert(s, state_names.len());
                    state_names.push(s.to_string());
                }
            }
            state_names.len()
        }
    };

    let mut symbols: Vec<String> = alphabet.map(|a| a.names().to_vec()).unwrap_or_default();
    let mut initial = Vec::new();
    let mut acc_states = Vec::new();
    let mut transitions = Vec::new();
    for (pos, (line, l)) in lines.iter().enumerate() {
        match l {
            Line::State(q) => {
                let q = index[q];
                if first_edge.is_none_or(|f| pos < f) {
                    initial.push(q);
                } else {
                    acc_states.push(q);
                }
            }
            Line::Edge(label, p, q) => {
                let sym = match symbols.iter().position(|s| s == label) {
                    Some(s) => s,
                    None if alphabet.is_some() => {
                        return Err(syntax(*line, 1, format!("unknown letter `{label}`")));
                    }
                    None => {
                        symbols.push(label.to_string());
                        symbols.len() - 1
                    }
                };
                transitions.push((index[p], sym, index[q]));
            }
        }
    }
    if initial.is_empty() {
        if let Some(&(p, _, _)) = transitions.first() {
            initial.push(p);
        }
    }
    if symbols.is_empty() {
        symbols.push("a".to_string());
    }

    let parts = AutomatonParts {
        symbols,
        aps: alphabet.and_then(|a| a.aps().map(|x| x.to_vec())),
        num_states,
        state_names: numeric.is_none().then_some(state_names),
        transitions,
        initial,
        acc_states,
        acc_transitions: Vec::new(),
    };
    BuchiAutomaton::from_parts(parts).map_err(|errs| {
        Error::Invalid(
            errs.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        )
    })
}

pub fn serialize_ba(a: &BuchiAutomaton) -> Result<String> {
    if !a.accepting_transitions().is_empty() {
        return Err(Error::BaStateBased);
    }
    if a.initial().is_empty() && a.num_transitions() > 0 {
        return Err(Error::BaNoInitial);
    }
    let name = |q: State| match a.state_names() {
        Some(names) => names[q].clone(),
        None => q.to_string(),
    };
    let mut out = String::new();
    for q in a.initial().iter() {
        let _ = writeln!(out, "[{}]", name(q));
    }
    for (p, sym, q) in a.transitions() {
        let _ = writeln!(
            out,
            "{},[{}]->[{}]",
            a.alphabet().name(sym),
            name(p),
            name(q)
        );
    }
    if a.num_transitions() > 0 {
        for q in a.accepting_states().iter() {
            let _ = writeln!(out, "[{}]", name(q));
        }
    }
    Ok(out)
}
