//! Small named automata used throughout the tests and the demo.
//!
//! All of them are over the alphabet `{a, b}`.

use crate::automaton::{Alphabet, BuchiAutomaton};

fn ab(num_states: usize) -> BuchiAutomaton {
    BuchiAutomaton::new(Alphabet::of_size(2), num_states)
}

/// One accepting state with an `a` self-loop: `L = {a^ω}`.
pub fn w1() -> BuchiAutomaton {
    let mut a = ab(1);
    a.add_transition(0, 0, 0);
    a.set_initial(0);
    a.set_accepting(0, true);
    a
}

/// `p -a-> p`, `p -a-> q`, `q -a-> q`, both accepting, `I = {p}`.
pub fn w2() -> BuchiAutomaton {
    let mut a = ab(2);
    a.add_transition(0, 0, 0);
    a.add_transition(0, 0, 1);
    a.add_transition(1, 0, 1);
    a.set_initial(0);
    a.set_accepting(0, true);
    a.set_accepting(1, true);
    a
}

/// `p -a-> p`, `p -a-> q`, `q -a-> q`, only `q` accepting, `I = {p}`.
pub fn sd1() -> BuchiAutomaton {
    let mut a = ab(2);
    a.add_transition(0, 0, 0);
    a.add_transition(0, 0, 1);
    a.add_transition(1, 0, 1);
    a.set_initial(0);
    a.set_accepting(1, true);
    a
}

/// `p -a-> p`, `p -a-> q`, `q -a-> r`, `r -a-> q`, `r -b-> r`;
/// `Q_F = {q}`, `I = {p}`. The `b`-loop on `r` avoids acceptance.
pub fn sd3() -> BuchiAutomaton {
    let mut a = ab(3);
    a.add_transition(0, 0, 0);
    a.add_transition(0, 0, 1);
    a.add_transition(1, 0, 2);
    a.add_transition(2, 0, 1);
    a.add_transition(2, 1, 2);
    a.set_initial(0);
    a.set_accepting(1, true);
    a
}

/// Two states, every transition present, `q` accepting: neither inherently
/// weak nor semi-deterministic.
pub fn nondet_other() -> BuchiAutomaton {
    let mut a = ab(2);
    for p in 0..2 {
        for s in 0..2 {
            for q in 0..2 {
                a.add_transition(p, s, q);
            }
        }
    }
    a.set_initial(0);
    a.set_accepting(1, true);
    a
}

/// No states at all.
pub fn empty() -> BuchiAutomaton {
    ab(0)
}
