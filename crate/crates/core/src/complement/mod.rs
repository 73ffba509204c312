//! Complementation constructions for inherently weak and semi-deterministic
//! automata, both built by on-the-fly exploration of reachable macrostates.

pub mod iw;
pub mod sdba;

use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;

use crate::automaton::{Alphabet, BuchiAutomaton, Symbol};
use crate::error::{Error, Result};

pub use iw::{
    adjust_prune, adjust_saturate, complement_iw, complement_iw_with_budget, mihay_complement,
    mihay_complement_with_budget, subsume_relation, Adjustment, MihayMacrostate, SubsumeRelation,
    Theta,
};
pub use sdba::{
    complement_sdba, complement_sdba_with_budget, ncsb_maxrank, ncsb_maxrank_with_budget,
    NcsbMacrostate,
};

/// `--best` runs every applicable construction and keeps the smallest result;
/// `--light` runs only the optimized one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Best,
    Light,
}

/// Cap on macrostate expansions, used as a reproducible timeout.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget(Option<u64>);

impl Budget {
    pub fn unlimited() -> Self {
        Budget(None)
    }

    pub fn steps(max_expansions: u64) -> Self {
        Budget(Some(max_expansions))
    }

    pub fn limit(&self) -> Option<u64> {
        self.0
    }
}

/// The automaton produced by a construction together with the macrostate
/// labelling each of its states.
#[derive(Clone, Debug)]
pub struct Complement<M> {
    pub automaton: BuchiAutomaton,
    pub macrostates: Vec<M>,
    /// Largest number of distinct successors of one macrostate over one
    /// symbol.
    pub max_successors: usize,
}

/// Breadth-first exploration from `initial`. States are numbered in
/// discovery order and symbols are processed in index order, so the result
/// is deterministic.
pub(crate) fn explore<M, F, A>(
    alphabet: &Alphabet,
    initial: Vec<M>,
    budget: Budget,
    mut successors: F,
    is_accepting: A,
) -> Result<Complement<M>>
where
    M: Clone + Eq + Hash + Display,
    F: FnMut(&M, Symbol) -> Vec<M>,
    A: Fn(&M) -> bool,
{
    let mut index: HashMap<M, usize> = HashMap::new();
    let mut macrostates: Vec<M> = Vec::new();
    let mut edges: Vec<(usize, Symbol, usize)> = Vec::new();
    let mut initial_ids = Vec::new();
    for m in initial {
        let id = *index.entry(m.clone()).or_insert_with(|| {
            macrostates.push(m);
            macrostates.len() - 1
        });
        initial_ids.push(id);
    }

    let mut max_successors = 0;
    let mut next = 0;
    let mut expansions = 0u64;
    while next < macrostates.len() {
        if let Some(limit) = budget.limit() {
            if expansions >= limit {
                return Err(Error::BudgetExceeded(limit));
            }
        }
        expansions += 1;
        let current = macrostates[next].clone();
        for sym in alphabet.symbols() {
            let mut succs: Vec<M> = Vec::new();
            for m in successors(&current, sym) {
                if !succs.contains(&m) {
                    succs.push(m);
                }
            }
            max_successors = max_successors.max(succs.len());
            for m in succs {
                let target = match index.get(&m) {
                    Some(&id) => id,
                    None => {
                        macrostates.push(m.clone());
                        index.insert(m, macrostates.len() - 1);
                        macrostates.len() - 1
                    }
                };
                edges.push((next, sym, target));
            }
        }
        next += 1;
    }

    let mut automaton = BuchiAutomaton::new(alphabet.clone(), macrostates.len());
    for (p, sym, q) in edges {
        automaton.add_transition(p, sym, q);
    }
    for id in initial_ids {
        automaton.set_initial(id);
    }
    for (id, m) in macrostates.iter().enumerate() {
        automaton.set_accepting(id, is_accepting(m));
    }
    automaton.set_state_names(Some(macrostates.iter().map(|m| m.to_string()).collect()));
    Ok(Complement {
        automaton,
        macrostates,
        max_successors,
    })
}
