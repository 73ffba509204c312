//! NCSB-MaxRank complementation of semi-deterministic automata.
//!
//! Macrostates are `(N, C, S, B)`: `N` tracks runs in the nondeterministic
//! part, `C` runs in the deterministic part that may still accept, `S` runs
//! guessed to never see acceptance again, and `B ⊆ C` the breakpoint. Each
//! macrostate has at most two successors per symbol: keep `B`, or move all
//! of `B` into `S` when `B` holds no accepting state.

use std::fmt;

use crate::analysis::{sdba_partition, SdbaPartition};
use crate::automaton::{BuchiAutomaton, Symbol};
use crate::complement::{explore, Budget, Complement, Mode};
use crate::error::Result;
use crate::set::StateSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcsbMacrostate {
    pub n: StateSet,
    pub c: StateSet,
    pub s: StateSet,
    pub b: StateSet,
}

impl fmt::Display for NcsbMacrostate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.c, self.s, self.b)
    }
}

/// Does some accepting transition leave `states` on `sym`?
fn leaves_accepting(a: &BuchiAutomaton, states: &StateSet, sym: Symbol) -> bool {
    !a.accepting_transitions().is_empty()
        && states.iter().any(|p| {
            a.succ(p, sym)
                .iter()
                .any(|&q| a.is_accepting_transition(p, sym, q))
        })
}

fn successors(
    a: &BuchiAutomaton,
    part: &SdbaPartition,
    m: &NcsbMacrostate,
    sym: Symbol,
) -> Vec<NcsbMacrostate> {
    let acc = a.accepting_states();
    if leaves_accepting(a, &m.s, sym) {
        return Vec::new();
    }
    let n = part.delta1(a, &m.n, sym);
    let s = part.delta2(a, &m.s, sym);
    // S ranges over Q2 \ Q_F only; a run guessed safe that hits an accepting
    // state has no successor.
    if s.intersects(acc) {
        return Vec::new();
    }
    let mut c = part.delta_t(a, &m.n, sym);
    c.union_with(&part.delta2(a, &m.c, sym));
    c.difference_with(&s);
    let b = if m.b.is_empty() {
        c.clone()
    } else {
        part.delta2(a, &m.b, sym).intersection(&c)
    };

    let mut out = Vec::with_capacity(2);
    if b.is_disjoint(acc) {
        let s2 = s.union(&b);
        let c2 = c.difference(&s2);
        let b2 = StateSet::empty(a.num_states());
        out.push(NcsbMacrostate {
            n: n.clone(),
            c: c2,
            s: s2,
            b: b2,
        });
    }
    out.insert(0, NcsbMacrostate { n, c, s, b });
    out
}

pub fn ncsb_maxrank(a: &BuchiAutomaton) -> Result<Complement<NcsbMacrostate>> {
    ncsb_maxrank_with_budget(a, Budget::unlimited())
}

pub fn ncsb_maxrank_with_budget(
    a: &BuchiAutomaton,
    budget: Budget,
) -> Result<Complement<NcsbMacrostate>> {
    let part = sdba_partition(a)?;
    let init = a.initial();
    let initial = NcsbMacrostate {
        n: init.intersection(&part.q1),
        c: init.intersection(&part.q2),
        s: StateSet::empty(a.num_states()),
        b: init.intersection(&part.q2),
    };
    explore(
        a.alphabet(),
        vec![initial],
        budget,
        |m, sym| successors(a, &part, m, sym),
        |m| m.b.is_empty(),
    )
}

/// Both modes run NCSB-MaxRank; the rank-based alternative that `Best` would
/// race against is not part of this crate.
pub fn complement_sdba(a: &BuchiAutomaton, mode: Mode) -> Result<BuchiAutomaton> {
    complement_sdba_with_budget(a, mode, Budget::unlimited())
}

pub fn complement_sdba_with_budget(
    a: &BuchiAutomaton,
    _mode: Mode,
    budget: Budget,
) -> Result<BuchiAutomaton> {
    Ok(ncsb_maxrank_with_budget(a, budget)?.automaton)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::error::Error;
    use crate::fixtures::*;
    use crate::product::intersection_empty;

    fn set(n: usize, states: &[usize]) -> StateSet {
        StateSet::from_states(n, states.iter().copied())
    }

    #[test]
    fn sd1_three_macrostates() {
        let c = ncsb_maxrank(&sd1()).unwrap();
        let aut = &c.automaton;
        assert_eq!(aut.num_states(), 3);
        let e = set(2, &[]);
        assert_eq!(
            c.macrostates[0],
            NcsbMacrostate {
                n: set(2, &[0]),
                c: e.clone(),
                s: e.clone(),
                b: e.clone()
            }
        );
        assert_eq!(
            c.macrostates[1],
            NcsbMacrostate {
                n: set(2, &[0]),
                c: set(2, &[1]),
                s: e.clone(),
                b: set(2, &[1])
            }
        );
        assert_eq!(
            c.macrostates[2],
            NcsbMacrostate {
                n: e.clone(),
                c: e.clone(),
                s: e.clone(),
                b: e
            }
        );
        assert!(aut.is_accepting(0) && !aut.is_accepting(1) && aut.is_accepting(2));
        assert_eq!(aut.succ(0, 0), &[1]);
        assert_eq!(aut.succ(1, 0), &[1]);
        assert_eq!(aut.succ(0, 1), &[2]);
        assert_eq!(aut.succ(1, 1), &[2]);
        assert_eq!(aut.succ(2, 0), &[2]);
        assert!(intersection_empty(&sd1(), aut).unwrap().is_empty());
    }

    #[test]
    fn no_acceptance_gives_universal_complement() {
        let mut a = BuchiAutomaton::new(Alphabet::of_size(2), 2);
        a.add_transition(0, 0, 1);
        a.add_transition(1, 1, 0);
        a.add_transition(1, 1, 1);
        a.set_initial(0);
        let c = ncsb_maxrank(&a).unwrap();
        assert!(c
            .macrostates
            .iter()
            .all(|m| m.c.is_empty() && m.s.is_empty() && m.b.is_empty()));
        assert!(c.automaton.accepting_states().len() == c.automaton.num_states());
    }

    #[test]
    fn sd3_successor_bound() {
        let c = ncsb_maxrank(&sd3()).unwrap();
        assert!(c.max_successors <= 2);
        assert!(intersection_empty(&sd3(), &c.automaton).unwrap().is_empty());
    }

    #[test]
    fn modes_alias() {
        assert_eq!(
            complement_sdba(&sd1(), Mode::Best).unwrap(),
            complement_sdba(&sd1(), Mode::Light).unwrap()
        );
        assert!(complement_sdba(&sd3(), Mode::Light).is_ok());
        assert!(matches!(
            complement_sdba(&nondet_other(), Mode::Best),
            Err(Error::NotSemiDeterministic { .. })
        ));
    }
}
