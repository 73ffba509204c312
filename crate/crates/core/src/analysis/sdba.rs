use crate::analysis::scc::acceptance_seeds;
use crate::automaton::{BuchiAutomaton, State, Symbol};
use crate::error::{Error, Result};
use crate::set::StateSet;

/// Split of a semi-deterministic automaton into the nondeterministic part
/// `Q1` and the deterministic accepting part `Q2`.
///
/// `Q2` is the forward closure of the accepting states and accepting
/// transition targets, so no transition leads from `Q2` back to `Q1`.
#[derive(Clone, Debug)]
pub struct SdbaPartition {
    pub q1: StateSet,
    pub q2: StateSet,
}

impl SdbaPartition {
    /// `δ1(S, a)`: successors inside `Q1`.
    pub fn delta1(&self, a: &BuchiAutomaton, states: &StateSet, sym: Symbol) -> StateSet {
        a.post(states, sym).intersection(&self.q1)
    }

    /// `δ2(S, a)` for `S ⊆ Q2`.
    pub fn delta2(&self, a: &BuchiAutomaton, states: &StateSet, sym: Symbol) -> StateSet {
        debug_assert!(states.is_subset(&self.q2));
        a.post(states, sym)
    }

    /// `δt(S, a)`: jumps from `Q1` into `Q2`.
    pub fn delta_t(&self, a: &BuchiAutomaton, states: &StateSet, sym: Symbol) -> StateSet {
        a.post(&states.intersection(&self.q1), sym)
            .intersection(&self.q2)
    }

    pub fn jump_transitions<'a>(
        &'a self,
        a: &'a BuchiAutomaton,
    ) -> impl Iterator<Item = (State, Symbol, State)> + 'a {
        a.transitions()
            .filter(|&(p, _, q)| self.q1.contains(p) && self.q2.contains(q))
    }
}

pub fn sdba_partition(a: &BuchiAutomaton) -> Result<SdbaPartition> {
    let q2 = a.reachable_from(&acceptance_seeds(a));
    for q in q2.iter() {
        for sym in a.alphabet().symbols() {
            let successors = a.succ(q, sym).len();
            if successors > 1 {
                return Err(Error::NotSemiDeterministic {
                    state: q,
                    symbol: sym,
                    successors,
                });
            }
        }
    }
    let q1 = StateSet::full(a.num_states()).difference(&q2);
    debug_assert!(a
        .transitions()
        .all(|(p, _, q)| !(q2.contains(p) && q1.contains(q))));
    Ok(SdbaPartition { q1, q2 })
}
