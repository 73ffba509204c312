//! Transition/state-based Büchi and co-Büchi automata over an explicit alphabet.
//!
//! States and symbols are dense indices. Transitions are stored as sorted
//! successor lists per `(state, symbol)`; accepting transitions are kept as a
//! separate set of triples, each of which is also an ordinary transition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::set::StateSet;

pub type State = usize;
pub type Symbol = usize;

/// A transition `p --a--> q`.
pub type Transition = (State, Symbol, State);

/// A finite nonempty alphabet.
///
/// Alphabets expanded from atomic propositions remember the proposition
/// names; letter `i` is then the valuation in which proposition `j` holds iff
/// bit `j` of `i` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
    aps: Option<Vec<String>>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = names.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidParameters("alphabet must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidParameters(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols, aps: None })
    }

    /// All `2^|aps|` valuations of the propositions, named as cubes such as
    /// `p&!q`. With no propositions the single letter is named `t`.
    pub fn from_aps(aps: Vec<String>) -> Self {
        let m = aps.len();
        let symbols = (0..1usize << m).map(|i| cube_name(&aps, i)).collect();
        Alphabet {
            symbols,
            aps: Some(aps),
        }
    }

    pub fn aps(&self) -> Option<&[String]> {
        self.aps.as_deref()
    }

    /// `a`, `b`, ... for the first 26 symbols, `s26`, `s27`, ... afterwards.
    pub fn of_size(size: usize) -> Self {
        assert!(size > 0, "alphabet must be nonempty");
        let symbols = (0..size)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("s{i}")
                }
            })
            .collect();
        Alphabet { symbols, aps: None }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, symbol: Symbol) -> &str {
        &self.symbols[symbol]
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<Symbol> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn symbols(&self) -> std::ops::Range<Symbol> {
        0..self.symbols.len()
    }
}

fn cube_name(aps: &[String], valuation: usize) -> String {
    if aps.is_empty() {
        return "t".to_string();
    }
    aps.iter()
        .enumerate()
        .map(|(j, ap)| {
            if valuation >> j & 1 == 1 {
                ap.clone()
            } else {
                format!("!{ap}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcceptanceMode {
    StateBased,
    TransitionBased,
    Mixed,
}

/// Unchecked automaton data, as produced by parsers or assembled by hand.
/// Turn it into a [`BuchiAutomaton`] with [`BuchiAutomaton::from_parts`].
#[derive(Clone, Debug, Default)]
pub struct AutomatonParts {
    pub symbols: Vec<String>,
    /// Proposition names when `symbols` are their valuations.
    pub aps: Option<Vec<String>>,
    pub num_states: usize,
    pub state_names: Option<Vec<String>>,
    pub transitions: Vec<Transition>,
    pub initial: Vec<State>,
    pub acc_states: Vec<State>,
    pub acc_transitions: Vec<Transition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationError {
    EmptyAlphabet,
    DuplicateSymbol(String),
    StateOutOfRange { what: &'static str, state: State },
    SymbolOutOfRange { symbol: Symbol },
    AcceptingTransitionNotInDelta(Transition),
    StateNamesLength { expected: usize, actual: usize },
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::EmptyAlphabet => write!(f, "alphabet is empty"),
            ValidationError::DuplicateSymbol(s) => write!(f, "duplicate symbol `{s}`"),
            ValidationError::StateOutOfRange { what, state } => {
                write!(f, "state out of range: {what} refers to state {state}")
            }
            ValidationError::SymbolOutOfRange { symbol } => {
                write!(f, "symbol out of range: {symbol}")
            }
            ValidationError::AcceptingTransitionNotInDelta((p, a, q)) => {
                write!(f, "accepting transition not in δ: {p} -{a}-> {q}")
            }
            ValidationError::StateNamesLength { expected, actual } => {
                write!(f, "expected {expected} state names, got {actual}")
            }
        }
    }
}

impl AutomatonParts {
    /// Every violated structural invariant, in a stable order.
    pub fn validate(&self) -> Vec<ValidationError> {
        let mut errors = Vec::new();
        if self.symbols.is_empty() {
            errors.push(ValidationError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for s in &self.symbols {
            if !seen.insert(s) {
                errors.push(ValidationError::DuplicateSymbol(s.clone()));
            }
        }
        let n = self.num_states;
        let k = self.symbols.len();
        let check_state = |what, q: State, errors: &mut Vec<_>| {
            if q >= n {
                errors.push(ValidationError::StateOutOfRange { what, state: q });
            }
        };
        for &q in &self.initial {
            check_state("initial state", q, &mut errors);
        }
        for &q in &self.acc_states {
            check_state("accepting state", q, &mut errors);
        }
        for &(p, a, q) in self.transitions.iter().chain(&self.acc_transitions) {
            check_state("transition", p, &mut errors);
            check_state("transition", q, &mut errors);
            if a >= k {
                errors.push(ValidationError::SymbolOutOfRange { symbol: a });
            }
        }
        let delta: BTreeSet<&Transition> = self.transitions.iter().collect();
        for t in &self.acc_transitions {
            if !delta.contains(t) {
                errors.push(ValidationError::AcceptingTransitionNotInDelta(*t));
            }
        }
        if let Some(names) = &self.state_names {
            if names.len() != n {
                errors.push(ValidationError::StateNamesLength {
                    expected: n,
                    actual: names.len(),
                });
            }
        }
        errors
    }
}

/// A Büchi automaton `(Q, δ, I, Q_F, δ_F)`.
///
/// Missing `(state, symbol)` entries have no successors. The builder methods
/// panic on out-of-range indices; use [`AutomatonParts`] for unchecked input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton {
    alphabet: Alphabet,
    num_states: usize,
    state_names: Option<Vec<String>>,
    succ: Vec<Vec<State>>,
    initial: StateSet,
    acc_states: StateSet,
    acc_transitions: BTreeSet<Transition>,
}

impl BuchiAutomaton {
    pub fn new(alphabet: Alphabet, num_states: usize) -> Self {
        let k = alphabet.len();
        BuchiAutomaton {
            alphabet,
            num_states,
            state_names: None,
            succ: vec![Vec::new(); num_states * k],
            initial: StateSet::empty(num_states),
            acc_states: StateSet::empty(num_states),
            acc_transitions: BTreeSet::new(),
        }
    }

    pub fn from_parts(parts: AutomatonParts) -> Result<Self, Vec<ValidationError>> {
        let errors = parts.validate();
        if !errors.is_empty() {
            return Err(errors);
        }
        let alphabet = Alphabet {
            symbols: parts.symbols,
            aps: parts.aps,
        };
        let mut a = BuchiAutomaton::new(alphabet, parts.num_states);
        a.state_names = parts.state_names;
        for (p, s, q) in parts.transitions {
            a.add_transition(p, s, q);
        }
        for (p, s, q) in parts.acc_transitions {
            a.add_accepting_transition(p, s, q);
        }
        for q in parts.initial {
            a.set_initial(q);
        }
        for q in parts.acc_states {
            a.set_accepting(q, true);
        }
        Ok(a)
    }

    pub fn to_parts(&self) -> AutomatonParts {
        AutomatonParts {
            symbols: self.alphabet.symbols.clone(),
            aps: self.alphabet.aps.clone(),
            num_states: self.num_states,
            state_names: self.state_names.clone(),
            transitions: self.transitions().collect(),
            initial: self.initial.to_vec(),
            acc_states: self.acc_states.to_vec(),
            acc_transitions: self.acc_transitions.iter().copied().collect(),
        }
    }

    /// Re-checks the structural invariants. Automata built through the typed
    /// API always pass; this exists for parity with [`AutomatonParts::validate`].
    pub fn validate(&self) -> Vec<ValidationError> {
        self.to_parts().validate()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> std::ops::Range<State> {
        0..self.num_states
    }

    pub fn add_state(&mut self) -> State {
        let q = self.num_states;
        self.num_states += 1;
        self.succ
            .extend(std::iter::repeat_with(Vec::new).take(self.alphabet.len()));
        self.initial.grow(self.num_states);
        self.acc_states.grow(self.num_states);
        if let Some(names) = &mut self.state_names {
            names.push(q.to_string());
        }
        q
    }

    fn slot(&self, q: State, a: Symbol) -> usize {
        assert!(q < self.num_states, "state {q} out of range");
        assert!(a < self.alphabet.len(), "symbol {a} out of range");
        q * self.alphabet.len() + a
    }

    pub fn add_transition(&mut self, p: State, a: Symbol, q: State) {
        assert!(q < self.num_states, "state {q} out of range");
        let slot = self.slot(p, a);
        let targets = &mut self.succ[slot];
        if let Err(pos) = targets.binary_search(&q) {
            targets.insert(pos, q);
        }
    }

    /// Adds `p --a--> q` (if absent) and marks it accepting.
    pub fn add_accepting_transition(&mut self, p: State, a: Symbol, q: State) {
        self.add_transition(p, a, q);
        self.acc_transitions.insert((p, a, q));
    }

    pub fn set_transition_accepting(&mut self, p: State, a: Symbol, q: State, accepting: bool) {
        if accepting {
            self.add_accepting_transition(p, a, q);
        } else {
            self.acc_transitions.remove(&(p, a, q));
        }
    }

    pub fn clear_accepting_transitions(&mut self) {
        self.acc_transitions.clear();
    }

    pub fn set_initial(&mut self, q: State) {
        assert!(q < self.num_states, "state {q} out of range");
        self.initial.insert(q);
    }

    pub fn set_accepting(&mut self, q: State, accepting: bool) {
        assert!(q < self.num_states, "state {q} out of range");
        if accepting {
            self.acc_states.insert(q);
        } else {
            self.acc_states.remove(q);
        }
    }

    pub fn set_accepting_states(&mut self, states: StateSet) {
        assert_eq!(states.universe(), self.num_states);
        self.acc_states = states;
    }

    pub fn set_state_names(&mut self, names: Option<Vec<String>>) {
        if let Some(names) = &names {
            assert_eq!(names.len(), self.num_states);
        }
        self.state_names = names;
    }

    pub fn state_names(&self) -> Option<&[String]> {
        self.state_names.as_deref()
    }

    /// The state's name if one was recorded, its index otherwise.
    pub fn state_name(&self, q: State) -> String {
        match &self.state_names {
            Some(names) => names[q].clone(),
            None => q.to_string(),
        }
    }

    pub fn succ(&self, q: State, a: Symbol) -> &[State] {
        &self.succ[self.slot(q, a)]
    }

    /// `δ(S, a)`.
    pub fn post(&self, states: &StateSet, a: Symbol) -> StateSet {
        let mut out = StateSet::empty(self.num_states);
        for p in states.iter() {
            for &q in self.succ(p, a) {
                out.insert(q);
            }
        }
        out
    }

    /// Successors over all symbols.
    pub fn successors(&self, q: State) -> impl Iterator<Item = State> + '_ {
        self.alphabet
            .symbols()
            .flat_map(move |a| self.succ(q, a).iter().copied())
    }

    /// All transitions in `(source, symbol, target)` order.
    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.states().flat_map(move |p| {
            self.alphabet
                .symbols()
                .flat_map(move |a| self.succ(p, a).iter().map(move |&q| (p, a, q)))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn accepting_states(&self) -> &StateSet {
        &self.acc_states
    }

    pub fn accepting_transitions(&self) -> &BTreeSet<Transition> {
        &self.acc_transitions
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.acc_states.contains(q)
    }

    pub fn is_accepting_transition(&self, p: State, a: Symbol, q: State) -> bool {
        !self.acc_transitions.is_empty() && self.acc_transitions.contains(&(p, a, q))
    }

    pub fn has_acceptance(&self) -> bool {
        !self.acc_states.is_empty() || !self.acc_transitions.is_empty()
    }

    pub fn is_state_based(&self) -> bool {
        self.acc_transitions.is_empty()
    }

    pub fn is_transition_based(&self) -> bool {
        self.acc_states.is_empty()
    }

    /// Automata with no acceptance at all count as state-based.
    pub fn acceptance_mode(&self) -> AcceptanceMode {
        match (self.acc_states.is_empty(), self.acc_transitions.is_empty()) {
            (_, true) => AcceptanceMode::StateBased,
            (true, false) => AcceptanceMode::TransitionBased,
            (false, false) => AcceptanceMode::Mixed,
        }
    }

    /// `|I| ≤ 1` and `|δ(q, a)| ≤ 1` everywhere.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1 && self.succ.iter().all(|t| t.len() <= 1)
    }

    /// States reachable from `from` (inclusive).
    pub fn reachable_from(&self, from: &StateSet) -> StateSet {
        let mut seen = from.clone();
        let mut stack: Vec<State> = from.to_vec();
        while let Some(p) = stack.pop() {
            for q in self.successors(p) {
                if seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// Keeps the states in `keep`, renumbered in ascending index order.
    /// Returns the new automaton and the old→new index map.
    pub fn restrict(&self, keep: &StateSet) -> (BuchiAutomaton, Vec<Option<State>>) {
        let mut map = vec![None; self.num_states];
        for (new, old) in keep.iter().enumerate() {
            map[old] = Some(new);
        }
        let mut out = BuchiAutomaton::new(self.alphabet.clone(), keep.len());
        if let Some(names) = &self.state_names {
            out.state_names = Some(keep.iter().map(|q| names[q].clone()).collect());
        }
        for (p, a, q) in self.transitions() {
            if let (Some(np), Some(nq)) = (map[p], map[q]) {
                out.add_transition(np, a, nq);
                if self.is_accepting_transition(p, a, q) {
                    out.acc_transitions.insert((np, a, nq));
                }
            }
        }
        for q in keep.iter() {
            let nq = map[q].unwrap();
            if self.initial.contains(q) {
                out.initial.insert(nq);
            }
            if self.acc_states.contains(q) {
                out.acc_states.insert(nq);
            }
        }
        (out, map)
    }

    /// Restriction to the states reachable from `I`.
    pub fn trim_unreachable(&self) -> BuchiAutomaton {
        self.restrict(&self.reachable_from(&self.initial)).0
    }

    /// Merges states by `class_of`, where classes are `0..num_classes`.
    /// A merged state is initial/accepting iff some member is; a merged
    /// transition is accepting iff some member transition is.
    pub fn quotient(&self, class_of: &[usize], num_classes: usize) -> BuchiAutomaton {
        assert_eq!(class_of.len(), self.num_states);
        let mut out = BuchiAutomaton::new(self.alphabet.clone(), num_classes);
        if let Some(names) = &self.state_names {
            let mut merged: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
            for (q, &c) in class_of.iter().enumerate() {
                merged.entry(c).or_default().push(&names[q]);
            }
            out.state_names = Some(
                (0..num_classes)
                    .map(|c| merged.get(&c).map(|v| v.join("+")).unwrap_or_default())
                    .collect(),
            );
        }
        for (p, a, q) in self.transitions() {
            let (cp, cq) = (class_of[p], class_of[q]);
            out.add_transition(cp, a, cq);
            if self.is_accepting_transition(p, a, q) {
                out.acc_transitions.insert((cp, a, cq));
            }
        }
        for q in self.initial.iter() {
            out.initial.insert(class_of[q]);
        }
        for q in self.acc_states.iter() {
            out.acc_states.insert(class_of[q]);
        }
        out
    }
}

/// A co-Büchi automaton: a run is accepting iff it visits the marked
/// (rejecting) states only finitely often. Only state-based marks are used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoBuchiAutomaton {
    inner: BuchiAutomaton,
}

impl CoBuchiAutomaton {
    /// Reinterprets a state-based automaton's accepting states as the
    /// rejecting set.
    pub fn from_marked(structure: BuchiAutomaton) -> Result<Self> {
        if !structure.is_state_based() {
            return Err(Error::NotStateBased);
        }
        Ok(CoBuchiAutomaton { inner: structure })
    }

    /// The underlying graph with the rejecting set stored as `Q_F`.
    pub fn structure(&self) -> &BuchiAutomaton {
        &self.inner
    }

    pub fn into_structure(self) -> BuchiAutomaton {
        self.inner
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.inner.alphabet()
    }

    pub fn num_states(&self) -> usize {
        self.inner.num_states()
    }

    pub fn initial(&self) -> &StateSet {
        self.inner.initial()
    }

    pub fn rejecting(&self) -> &StateSet {
        self.inner.accepting_states()
    }

    pub fn is_rejecting(&self, q: State) -> bool {
        self.inner.is_accepting(q)
    }

    pub fn succ(&self, q: State, a: Symbol) -> &[State] {
        self.inner.succ(q, a)
    }

    pub fn post(&self, states: &StateSet, a: Symbol) -> StateSet {
        self.inner.post(states, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w1() -> BuchiAutomaton {
        let mut a = BuchiAutomaton::new(Alphabet::of_size(2), 1);
        a.add_transition(0, 0, 0);
        a.set_initial(0);
        a.set_accepting(0, true);
        a
    }

    #[test]
    fn single_state_is_valid() {
        assert!(w1().validate().is_empty());
        let parts = AutomatonParts {
            symbols: vec!["a".into()],
            num_states: 1,
            transitions: vec![(0, 0, 0)],
            initial: vec![0],
            acc_states: vec![0],
            ..Default::default()
        };
        assert!(parts.validate().is_empty());
    }

    #[test]
    fn accepting_transition_outside_delta_is_reported() {
        let parts = AutomatonParts {
            symbols: vec!["a".into()],
            num_states: 2,
            transitions: vec![(0, 0, 0)],
            initial: vec![0],
            acc_transitions: vec![(0, 0, 1)],
            ..Default::default()
        };
        let errs = parts.validate();
        assert_eq!(
            errs,
            vec![ValidationError::AcceptingTransitionNotInDelta((0, 0, 1))]
        );
        assert!(errs[0]
            .to_string()
            .starts_with("accepting transition not in δ"));
    }

    #[test]
    fn initial_out_of_range_is_reported() {
        let parts = AutomatonParts {
            symbols: vec!["a".into()],
            num_states: 1,
            initial: vec![1],
            ..Default::default()
        };
        let errs = parts.validate();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].to_string().starts_with("state out of range"));
        assert!(BuchiAutomaton::from_parts(parts).is_err());
    }

    #[test]
    fn determinism() {
        assert!(w1().is_deterministic());
        let mut w2 = BuchiAutomaton::new(Alphabet::of_size(2), 2);
        w2.add_transition(0, 0, 0);
        w2.add_transition(0, 0, 1);
        w2.add_transition(1, 0, 1);
        w2.set_initial(0);
        assert!(!w2.is_deterministic());
        assert!(BuchiAutomaton::new(Alphabet::of_size(1), 3).is_deterministic());
    }

    #[test]
    fn acceptance_modes() {
        let mut a = w1();
        assert_eq!(a.acceptance_mode(), AcceptanceMode::StateBased);
        a.add_accepting_transition(0, 0, 0);
        assert_eq!(a.acceptance_mode(), AcceptanceMode::Mixed);
        a.set_accepting(0, false);
        assert_eq!(a.acceptance_mode(), AcceptanceMode::TransitionBased);
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert_eq!(Alphabet::new(["x", "y"]).unwrap().index_of("y"), Some(1));
    }

    #[test]
    fn restrict_and_quotient() {
        let mut a = BuchiAutomaton::new(Alphabet::of_size(1), 3);
        a.add_transition(0, 0, 1);
        a.add_accepting_transition(1, 0, 1);
        a.set_initial(0);
        let trimmed = a.trim_unreachable();
        assert_eq!(trimmed.num_states(), 2);
        assert!(trimmed.is_accepting_transition(1, 0, 1));
        let q = a.quotient(&[0, 0, 1], 2);
        assert_eq!(q.succ(0, 0), &[0]);
        assert!(q.is_accepting_transition(0, 0, 0));
    }
}
