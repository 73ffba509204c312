//! Membership of ultimately periodic words `u·v^ω`.
//!
//! Membership is decided on the product of the automaton with the lasso's
//! position structure. The prefix part of the product is a plain subset
//! simulation; the period part is a graph on `(state, offset)` pairs in which
//! we look for a reachable cycle carrying acceptance (Büchi) or avoiding the
//! rejecting states (co-Büchi).

use std::fmt;

use crate::automaton::{Alphabet, BuchiAutomaton, CoBuchiAutomaton, Symbol};
use crate::error::{Error, Result};
use crate::graph;
use crate::set::StateSet;

/// An ultimately periodic word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    pub prefix: Vec<Symbol>,
    pub period: Vec<Symbol>,
}

impl Lasso {
    pub fn new(prefix: Vec<Symbol>, period: Vec<Symbol>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParameters(
                "lasso period must be nonempty".into(),
            ));
        }
        Ok(Lasso { prefix, period })
    }

    /// Parses whitespace- or comma-free symbol strings where every symbol
    /// name is one character, or space-separated names otherwise.
    pub fn parse(alphabet: &Alphabet, prefix: &str, period: &str) -> Result<Self> {
        let word = |s: &str| -> Result<Vec<Symbol>> {
            let single_char = alphabet.names().iter().all(|n| n.chars().count() == 1);
            let tokens: Vec<String> = if single_char && !s.contains(' ') {
                s.chars().map(|c| c.to_string()).collect()
            } else {
                s.split_whitespace().map(str::to_string).collect()
            };
            tokens
                .iter()
                .map(|t| {
                    alphabet
                        .index_of(t)
                        .ok_or_else(|| Error::UnknownSymbol(t.clone()))
                })
                .collect()
        };
        Lasso::new(word(prefix)?, word(period)?)
    }

    /// `(u·v, v)`: same word, longer prefix.
    pub fn unroll_prefix(&self) -> Lasso {
        let mut prefix = self.prefix.clone();
        prefix.extend_from_slice(&self.period);
        Lasso {
            prefix,
            period: self.period.clone(),
        }
    }

    /// `(u, v·v)`: same word, doubled period.
    pub fn double_period(&self) -> Lasso {
        let mut period = self.period.clone();
        period.extend_from_slice(&self.period);
        Lasso {
            prefix: self.prefix.clone(),
            period,
        }
    }

    /// The `i`-th letter of the infinite word.
    pub fn letter(&self, i: usize) -> Symbol {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> LassoDisplay<'a> {
        LassoDisplay {
            lasso: self,
            alphabet,
        }
    }

    fn check(&self, alphabet: &Alphabet) -> Result<()> {
        if self.period.is_empty() {
            return Err(Error::InvalidParameters(
                "lasso period must be nonempty".into(),
            ));
        }
        match self
            .prefix
            .iter()
            .chain(&self.period)
            .find(|&&a| a >= alphabet.len())
        {
            Some(&a) => Err(Error::SymbolNotInAlphabet(a)),
            None => Ok(()),
        }
    }
}

pub struct LassoDisplay<'a> {
    lasso: &'a Lasso,
    alphabet: &'a Alphabet,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.alphabet.names().iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            " "
        };
        let word = |w: &[Symbol]| {
            w.iter()
                .map(|&a| self.alphabet.name(a))
                .collect::<Vec<_>>()
                .join(sep)
        };
        let u = word(&self.lasso.prefix);
        let u = if u.is_empty() { "ε".to_string() } else { u };
        write!(f, "{} ({})^ω", u, word(&self.lasso.period))
    }
}

/// `δ(S, u)` for a finite word.
pub fn post_word(a: &BuchiAutomaton, from: &StateSet, word: &[Symbol]) -> StateSet {
    word.iter().fold(from.clone(), |s, &sym| a.post(&s, sym))
}

/// Product of the automaton with the period positions: node `i·n + q` is
/// state `q` about to read `period[i]`.
struct PeriodProduct {
    adj: Vec<Vec<usize>>,
    accepting_edge: Vec<Vec<bool>>,
}

fn period_product(a: &BuchiAutomaton, period: &[Symbol]) -> PeriodProduct {
    let n = a.num_states();
    let m = period.len();
    let mut adj = vec![Vec::new(); n * m];
    let mut accepting_edge = vec![Vec::new(); n * m];
    for (i, &sym) in period.iter().enumerate() {
        let next = (i + 1) % m;
        for q in a.states() {
            let node = i * n + q;
            let state_acc = a.is_accepting(q);
            for &t in a.succ(q, sym) {
                adj[node].push(next * n + t);
                accepting_edge[node].push(state_acc || a.is_accepting_transition(q, sym, t));
            }
        }
    }
    PeriodProduct {
        adj,
        accepting_edge,
    }
}

/// Nodes that can reach any node in `targets`, over the reversed graph.
fn backward_closure(adj: &[Vec<usize>], targets: &[bool]) -> Vec<bool> {
    let mut radj = vec![Vec::new(); adj.len()];
    for (v, succs) in adj.iter().enumerate() {
        for &w in succs {
            radj[w].push(v);
        }
    }
    let mut seen = targets.to_vec();
    let mut stack: Vec<usize> = (0..adj.len()).filter(|&v| targets[v]).collect();
    while let Some(w) = stack.pop() {
        for &v in &radj[w] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// States `q` such that the automaton accepts `period^ω` from `q`.
pub fn period_winners(a: &BuchiAutomaton, period: &[Symbol]) -> StateSet {
    let n = a.num_states();
    let product = period_product(a, period);
    let sccs = graph::tarjan(&product.adj);
    let mut good_comp = vec![false; sccs.components.len()];
    for (v, succs) in product.adj.iter().enumerate() {
        let c = sccs.component_of[v];
        for (j, &w) in succs.iter().enumerate() {
            if sccs.component_of[w] == c && product.accepting_edge[v][j] {
                good_comp[c] = true;
            }
        }
    }
    let targets: Vec<bool> = (0..product.adj.len())
        .map(|v| good_comp[sccs.component_of[v]])
        .collect();
    let winners = backward_closure(&product.adj, &targets);
    StateSet::from_states(n, (0..n).filter(|&q| winners[q]))
}

/// States `q` from which the co-Büchi automaton has a run on `period^ω`
/// visiting rejecting states only finitely often.
pub fn coba_period_winners(c: &CoBuchiAutomaton, period: &[Symbol]) -> StateSet {
    let a = c.structure();
    let n = a.num_states();
    let product = period_product(a, period);
    let allowed: Vec<bool> = (0..product.adj.len())
        .map(|v| !c.is_rejecting(v % n))
        .collect();
    let safe_adj: Vec<Vec<usize>> = product
        .adj
        .iter()
        .enumerate()
        .map(|(v, succs)| {
            if allowed[v] {
                succs.iter().copied().filter(|&w| allowed[w]).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let sccs = graph::tarjan(&safe_adj);
    let targets: Vec<bool> = (0..safe_adj.len())
        .map(|v| allowed[v] && sccs.is_nontrivial(sccs.component_of[v], &safe_adj))
        .collect();
    let winners = backward_closure(&product.adj, &targets);
    StateSet::from_states(n, (0..n).filter(|&q| winners[q]))
}

/// Does `a` have an accepting run on `w`?
pub fn accepts_lasso(a: &BuchiAutomaton, w: &Lasso) -> Result<bool> {
    w.check(a.alphabet())?;
    let after_prefix = post_word(a, a.initial(), &w.prefix);
    if after_prefix.is_empty() {
        return Ok(false);
    }
    Ok(after_prefix.intersects(&period_winners(a, &w.period)))
}

/// Does the co-Büchi automaton `c` have an accepting run on `w`?
pub fn accepts_lasso_coba(c: &CoBuchiAutomaton, w: &Lasso) -> Result<bool> {
    w.check(c.alphabet())?;
    let after_prefix = post_word(c.structure(), c.initial(), &w.prefix);
    if after_prefix.is_empty() {
        return Ok(false);
    }
    Ok(after_prefix.intersects(&coba_period_winners(c, &w.period)))
}
