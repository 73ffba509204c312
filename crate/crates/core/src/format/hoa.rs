//! A subset of the HOA v1 format.
//!
//! Supported: a single automaton per text, `Start:` lines naming one state
//! each, `Acceptance: 1 Inf(0)` (Büchi) or `1 Fin(0)` (co-Büchi), explicit
//! edge labels over atomic propositions, state and edge acceptance marks.
//! Aliases, implicit labels, state labels and universal branching are
//! rejected.
//!
//! Propositional labels are expanded eagerly into an explicit alphabet of
//! `2^|AP|` letters. The lowercase extension header `alphabet:` lists letter
//! names for automata whose alphabet did not come from propositions; letter
//! `i` is then valuation `i` of the declared propositions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::automaton::{Alphabet, AutomatonParts, BuchiAutomaton, CoBuchiAutomaton, Symbol};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_APS: usize = 16;

#[derive(Clone, Debug)]
pub struct HoaOptions {
    pub max_aps: usize,
}

impl Default for HoaOptions {
    fn default() -> Self {
        HoaOptions {
            max_aps: DEFAULT_MAX_APS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HoaAutomaton {
    Buchi(BuchiAutomaton),
    CoBuchi(CoBuchiAutomaton),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Header(String),
    Ident(String),
    Int(usize),
    Str(String),
    Punct(char),
    Body,
    End,
    Abort,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, c: char| {
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, c);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            let mut depth = 0;
            loop {
                if i >= chars.len() {
                    return Err(syntax(tl, tc, "unterminated comment"));
                }
                if chars[i] == '/' && chars.get(i + 1) == Some(&'*') {
                    depth += 1;
                    advance(&mut i, &mut line, &mut col, '/');
                    advance(&mut i, &mut line, &mut col, '*');
                } else if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    depth -= 1;
                    advance(&mut i, &mut line, &mut col, '*');
                    advance(&mut i, &mut line, &mut col, '/');
                    if depth == 0 {
                        break;
                    }
                } else {
                    let ch = chars[i];
                    advance(&mut i, &mut line, &mut col, ch);
                }
            }
            continue;
        }
        let tok = if c == '"' {
            advance(&mut i, &mut line, &mut col, c);
            let mut s = String::new();
            loop {
                let Some(&ch) = chars.get(i) else {
                    return Err(syntax(tl, tc, "unterminated string"));
                };
                advance(&mut i, &mut line, &mut col, ch);
                match ch {
                    '"' => break,
                    '\\' => {
                        let Some(&esc) = chars.get(i) else {
                            return Err(syntax(tl, tc, "unterminated string"));
                        };
                        advance(&mut i, &mut line, &mut col, esc);
                        s.push(esc);
                    }
                    _ => s.push(ch),
                }
            }
            Tok::Str(s)
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(
                digits
                    .parse()
                    .map_err(|_| syntax(tl, tc, "integer out of range"))?,
            )
        } else if c.is_ascii_alphabetic() || c == '_' || c == '@' {
            let start = i;
            advance(&mut i, &mut line, &mut col, c);
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '-')
            {
                let ch = chars[i];
                advance(&mut i, &mut line, &mut col, ch);
            }
            let word: String = chars[start..i].iter().collect();
            if chars.get(i) == Some(&':') {
                advance(&mut i, &mut line, &mut col, ':');
                Tok::Header(word)
            } else {
                Tok::Ident(word)
            }
        } else if c == '-' {
            let rest: String = chars[i..].iter().take(9).collect();
            let (tok, len) = if rest.starts_with("--BODY--") {
                (Tok::Body, 8)
            } else if rest.starts_with("--END--") {
                (Tok::End, 7)
            } else if rest.starts_with("--ABORT--") {
                (Tok::Abort, 9)
            } else {
                return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
            };
            for _ in 0..len {
                advance(&mut i, &mut line, &mut col, '-');
            }
            tok
        } else if "!&|(){}[]".contains(c) {
            advance(&mut i, &mut line, &mut col, c);
            Tok::Punct(c)
        } else {
            return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
        };
        tokens.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    Ok(tokens)
}

struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
    last: (usize, usize),
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos)?;
        self.last = (t.line, t.column);
        self.pos += 1;
        Some(t.tok.clone())
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.last)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn int(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Int(_)) => match self.next() {
                Some(Tok::Int(v)) => Ok(v),
                _ => unreachable!(),
            },
            _ => Err(self.error("expected an integer")),
        }
    }

    fn string(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Str(_)) => match self.next() {
                Some(Tok::Str(s)) => Ok(s),
                _ => unreachable!(),
            },
            _ => Err(self.error("expected a string")),
        }
    }

    fn punct(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Punct(c))
    }
}

/// Label formulas over proposition indices.
#[derive(Debug)]
enum Label {
    True,
    False,
    Ap(usize),
    Not(Box<Label>),
    And(Box<Label>, Box<Label>),
    Or(Box<Label>, Box<Label>),
}

impl Label {
    fn eval(&self, valuation: usize) -> bool {
        match self {
            Label::True => true,
            Label::False => false,
            Label::Ap(j) => valuation >> j & 1 == 1,
            Label::Not(l) => !l.eval(valuation),
            Label::And(l, r) => l.eval(valuation) && r.eval(valuation),
            Label::Or(l, r) => l.eval(valuation) || r.eval(valuation),
        }
    }
}

fn parse_label(cur: &mut Cursor, num_aps: usize) -> Result<Label> {
    let mut left = parse_conj(cur, num_aps)?;
    while cur.at_punct('|') {
        cur.next();
        left = Label::Or(Box::new(left), Box::new(parse_conj(cur, num_aps)?));
    }
    Ok(left)
}

fn parse_conj(cur: &mut Cursor, num_aps: usize) -> Result<Label> {
    let mut left = parse_atom(cur, num_aps)?;
    while cur.at_punct('&') {
        cur.next();
        left = Label::And(Box::new(left), Box::new(parse_atom(cur, num_aps)?));
    }
    Ok(left)
}

fn parse_atom(cur: &mut Cursor, num_aps: usize) -> Result<Label> {
    match cur.peek().cloned() {
        Some(Tok::Punct('!')) => {
            cur.next();
            Ok(Label::Not(Box::new(parse_atom(cur, num_aps)?)))
        }
        Some(Tok::Punct('(')) => {
            cur.next();
            let inner = parse_label(cur, num_aps)?;
            cur.punct(')')?;
            Ok(inner)
        }
        Some(Tok::Ident(id)) if id == "t" => {
            cur.next();
            Ok(Label::True)
        }
        Some(Tok::Ident(id)) if id == "f" => {
            cur.next();
            Ok(Label::False)
        }
        Some(Tok::Ident(id)) if id.starts_with('@') => {
            Err(Error::UnsupportedFeature(format!("alias `{id}`")))
        }
        Some(Tok::Int(j)) => {
            if j >= num_aps {
                return Err(cur.error(format!("proposition {j} not declared")));
            }
            cur.next();
            Ok(Label::Ap(j))
        }
        _ => Err(cur.error("expected a label expression")),
    }
}

fn parse_acc_sig(cur: &mut Cursor) -> Result<Vec<usize>> {
    let mut sets = Vec::new();
    if cur.at_punct('{') {
        cur.next();
        while !cur.at_punct('}') {
            sets.push(cur.int()?);
        }
        cur.next();
    }
    Ok(sets)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum AccKind {
    Buchi,
    CoBuchi,
}

/// Reads `Acceptance:` values: `1 Inf(0)` or `1 Fin(0)`.
fn parse_acceptance(cur: &mut Cursor) -> Result<AccKind> {
    let mut text = Vec::new();
    while let Some(t) = cur.peek() {
        if matches!(t, Tok::Header(_) | Tok::Body) {
            break;
        }
        text.push(cur.next().unwrap());
    }
    let rendered: String = text
        .iter()
        .map(|t| match t {
            Tok::Int(v) => format!("{v} "),
            Tok::Ident(s) => s.clone(),
            Tok::Punct(c) => c.to_string(),
            Tok::Str(s) => format!("\"{s}\""),
            _ => String::new(),
        })
        .collect::<String>()
        .trim()
        .replace(' ', "");
    match rendered.as_str() {
        "1Inf(0)" => Ok(AccKind::Buchi),
        "1Fin(0)" => Ok(AccKind::CoBuchi),
        _ => Err(Error::UnsupportedAcceptance(rendered)),
    }
}

pub fn parse_hoa(text: &str) -> Result<BuchiAutomaton> {
    match parse_hoa_with(text, &HoaOptions::default())? {
        HoaAutomaton::Buchi(a) => Ok(a),
        HoaAutomaton::CoBuchi(_) => Err(Error::UnsupportedAcceptance(
            "co-Büchi where Büchi was expected".into(),
        )),
    }
}

pub fn parse_hoa_with(text: &str, options: &HoaOptions) -> Result<HoaAutomaton> {
    let text = text.replace("\r\n", "\n");
    let mut cur = Cursor {
        tokens: lex(&text)?,
        pos: 0,
        last: (1, 1),
    };

    match cur.next() {
        Some(Tok::Header(h)) if h == "HOA" => {}
        _ => return Err(syntax(1, 1, "expected `HOA:` header")),
    }
    match cur.next() {
        Some(Tok::Ident(v)) if v == "v1" => {}
        _ => return Err(cur.error("only HOA v1 is supported")),
    }

    let mut num_states: Option<usize> = None;
    let mut start = Vec::new();
    let mut aps: Option<Vec<String>> = None;
    let mut letter_names: Option<Vec<String>> = None;
    let mut acc: Option<AccKind> = None;

    loop {
        let Some(tok) = cur.next() else {
            return Err(Error::MissingBody);
        };
        let name = match tok {
            Tok::Body => break,
            Tok::Header(h) => h,
            _ => return Err(syntax(cur.last.0, cur.last.1, "expected a header item")),
        };
        match name.as_str() {
            "States" => num_states = Some(cur.int()?),
            "Start" => {
                start.push(cur.int()?);
                if cur.at_punct('&') {
                    return Err(Error::UnsupportedFeature("conjunctive start states".into()));
                }
            }
            "AP" => {
                let count = cur.int()?;
                if count > options.max_aps {
                    return Err(Error::TooManyAps {
                        count,
                        cap: options.max_aps,
                    });
                }
                let names = (0..count).map(|_| cur.string()).collect::<Result<_>>()?;
                aps = Some(names);
            }
            "alphabet" => {
                let count = cur.int()?;
                let names = (0..count).map(|_| cur.string()).collect::<Result<_>>()?;
                letter_names = Some(names);
            }
            "Acceptance" => acc = Some(parse_acceptance(&mut cur)?),
            "Alias" => return Err(Error::UnsupportedFeature("aliases".into())),
            other => {
                if other.starts_with(|c: char| c.is_ascii_uppercase())
                    && !matches!(other, "HOA" | "States" | "Start" | "AP" | "Acceptance")
                {
                    return Err(Error::UnsupportedFeature(format!("header `{other}:`")));
                }
                // Ignorable header: skip its values.
                while let Some(t) = cur.peek() {
                    if matches!(t, Tok::Header(_) | Tok::Body) {
                        break;
                    }
                    cur.next();
                }
            }
        }
    }

    let acc = acc.ok_or_else(|| cur.error("missing `Acceptance:` header"))?;
    let aps = aps.unwrap_or_default();
    let m = aps.len();
    let (alphabet_names, alphabet_aps) = match letter_names {
        Some(names) => {
            if names.len() > 1usize << m || names.is_empty() {
                return Err(cur.error(format!(
                    "{} letters cannot be encoded with {m} propositions",
                    names.len()
                )));
            }
            (names, None)
        }
        None => {
            let alpha = Alphabet::from_aps(aps.clone());
            (alpha.names().to_vec(), Some(aps.clone()))
        }
    };
    let k = alphabet_names.len();

    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    let mut marked_states = Vec::new();
    let mut transitions = Vec::new();
    let mut marked_transitions = Vec::new();
    let mut max_state = start.iter().copied().max();
    let mut current: Option<usize> = None;

    loop {
        match cur.peek().cloned() {
            None => return Err(cur.error("missing --END--")),
            Some(Tok::End) => {
                cur.next();
                break;
            }
            Some(Tok::Abort) => return Err(cur.error("automaton aborted")),
            Some(Tok::Header(h)) if h == "State" => {
                cur.next();
                if cur.at_punct('[') {
                    return Err(Error::UnsupportedFeature("state labels".into()));
                }
                let q = cur.int()?;
                if let Some(Tok::Str(_)) = cur.peek() {
                    names.insert(q, cur.string()?);
                }
                let sets = parse_acc_sig(&mut cur)?;
                check_sets(&cur, &sets)?;
                if !sets.is_empty() {
                    marked_states.push(q);
                }
                max_state = max_state.max(Some(q));
                current = Some(q);
            }
            Some(Tok::Punct('[')) => {
                let Some(src) = current else {
                    return Err(cur.error("edge before any `State:`"));
                };
                cur.next();
                let label = parse_label(&mut cur, m)?;
                cur.punct(']')?;
                let dst = cur.int()?;
                if cur.at_punct('&') {
                    return Err(Error::UnsupportedFeature("universal branching".into()));
                }
                let sets = parse_acc_sig(&mut cur)?;
                check_sets(&cur, &sets)?;
                max_state = max_state.max(Some(dst));
                for letter in (0..k).filter(|&v| label.eval(v)) {
                    transitions.push((src, letter as Symbol, dst));
                    if !sets.is_empty() {
                        marked_transitions.push((src, letter as Symbol, dst));
                    }
                }
            }
            Some(Tok::Int(_)) => {
                return Err(Error::UnsupportedFeature("implicit labels".into()));
            }
            Some(_) => return Err(cur.error("unexpected token in body")),
        }
    }

    let n = match num_states {
        Some(n) => n,
        None => max_state.map_or(0, |q| q + 1),
    };
    if let Some(q) = max_state.filter(|&q| q >= n) {
        return Err(cur.error(format!("state {q} exceeds `States: {n}`")));
    }
    let state_names = if names.is_empty() {
        None
    } else {
        Some(
            (0..n)
                .map(|q| names.get(&q).cloned().unwrap_or_else(|| q.to_string()))
                .collect(),
        )
    };

    let parts = AutomatonParts {
        symbols: alphabet_names,
        aps: alphabet_aps,
        num_states: n,
        state_names,
        transitions,
        initial: start,
        acc_states: marked_states,
        acc_transitions: marked_transitions.clone(),
    };
    let automaton = BuchiAutomaton::from_parts(parts).map_err(|errs| {
        Error::Invalid(
            errs.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        )
    })?;
    match acc {
        AccKind::Buchi => Ok(HoaAutomaton::Buchi(automaton)),
        AccKind::CoBuchi => {
            if !marked_transitions.is_empty() {
                return Err(Error::UnsupportedAcceptance(
                    "transition-based co-Büchi marks".into(),
                ));
            }
            Ok(HoaAutomaton::CoBuchi(CoBuchiAutomaton::from_marked(
                automaton,
            )?))
        }
    }
}

fn check_sets(cur: &Cursor, sets: &[usize]) -> Result<()> {
    match sets.iter().find(|&&s| s != 0) {
        Some(s) => Err(cur.error(format!("acceptance set {s} not declared"))),
        None => Ok(()),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Propositions and the valuation encoding used to write `alphabet`.
fn encoding(alphabet: &Alphabet) -> (Vec<String>, bool) {
    if let Some(aps) = alphabet.aps() {
        return (aps.to_vec(), false);
    }
    let k = alphabet.len();
    let mut m = 0;
    while (1usize << m) < k {
        m += 1;
    }
    ((0..m).map(|j| format!("p{j}")).collect(), true)
}

fn cube(num_aps: usize, valuation: usize) -> String {
    if num_aps == 0 {
        return "t".into();
    }
    (0..num_aps)
        .map(|j| {
            if valuation >> j & 1 == 1 {
                j.to_string()
            } else {
                format!("!{j}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

fn write_hoa(a: &BuchiAutomaton, acc_name: &str, acceptance: &str) -> String {
    let (aps, explicit) = encoding(a.alphabet());
    let mut out = String::new();
    out.push_str("HOA: v1\n");
    let _ = writeln!(out, "States: {}", a.num_states());
    for q in a.initial().iter() {
        let _ = writeln!(out, "Start: {q}");
    }
    let _ = write!(out, "AP: {}", aps.len());
    for ap in &aps {
        let _ = write!(out, " {}", quote(ap));
    }
    out.push('\n');
    if explicit {
        let _ = write!(out, "alphabet: {}", a.num_symbols());
        for name in a.alphabet().names() {
            let _ = write!(out, " {}", quote(name));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "acc-name: {acc_name}");
    let _ = writeln!(out, "Acceptance: {acceptance}");
    let mut props = vec!["trans-labels", "explicit-labels"];
    if !a.accepting_states().is_empty() {
        props.push("state-acc");
    }
    if !a.accepting_transitions().is_empty() {
        props.push("trans-acc");
    }
    if a.is_deterministic() {
        props.push("deterministic");
    }
    let _ = writeln!(out, "properties: {}", props.join(" "));
    out.push_str("--BODY--\n");
    for q in a.states() {
        let _ = write!(out, "State: {q}");
        if let Some(names) = a.state_names() {
            let _ = write!(out, " {}", quote(&names[q]));
        }
        if a.is_accepting(q) {
            out.push_str(" {0}");
        }
        out.push('\n');
        let mut grouped: BTreeMap<(usize, bool), Vec<Symbol>> = BTreeMap::new();
        for sym in a.alphabet().symbols() {
            for &t in a.succ(q, sym) {
                grouped
                    .entry((t, a.is_accepting_transition(q, sym, t)))
                    .or_default()
                    .push(sym);
            }
        }
        for ((t, acc), letters) in grouped {
            let label = if letters.len() == 1 << aps.len() {
                "t".to_string()
            } else {
                letters
                    .iter()
                    .map(|&l| cube(aps.len(), l))
                    .collect::<Vec<_>>()
                    .join(" | ")
            };
            let _ = write!(out, "[{label}] {t}");
            if acc {
                out.push_str(" {0}");
            }
            out.push('\n');
        }
    }
    out.push_str("--END--\n");
    out
}

pub fn serialize_hoa(a: &BuchiAutomaton) -> String {
    write_hoa(a, "Buchi", "1 Inf(0)")
}

pub fn serialize_coba_hoa(c: &CoBuchiAutomaton) -> String {
    write_hoa(c.structure(), "co-Buchi", "1 Fin(0)")
}
