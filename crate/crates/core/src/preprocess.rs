//! Language-preserving transformations applied before complementation.

use std::collections::BTreeMap;

use crate::analysis::{classify_with, direct_simulation, is_weak, scc_decompose};
use crate::automaton::{BuchiAutomaton, CoBuchiAutomaton, State, Symbol};
use crate::error::{Error, Result};
use crate::set::StateSet;

/// Quotient by direct-simulation equivalence.
pub fn reduce_direct_sim(a: &BuchiAutomaton) -> BuchiAutomaton {
    let sim = direct_simulation(a);
    let (class_of, count) = sim.equivalence_classes();
    if count == a.num_states() {
        return a.clone();
    }
    a.quotient(&class_of, count)
}

/// Marks every state and internal transition of each inherently weak
/// accepting component as accepting.
pub fn saturate_acceptance(a: &BuchiAutomaton) -> BuchiAutomaton {
    let sccs = scc_decompose(a);
    let mut out = a.clone();
    for (c, kind) in sccs.kinds.iter().enumerate() {
        if !kind.iwa || kind.trivial {
            continue;
        }
        let comp = &sccs.components[c];
        for p in comp.iter() {
            out.set_accepting(p, true);
            for sym in a.alphabet().symbols() {
                for &q in a.succ(p, sym) {
                    if comp.contains(q) {
                        out.add_accepting_transition(p, sym, q);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeelevationStrategy {
    /// Every component carrying acceptance.
    CopyAll,
    /// Only inherently weak accepting components.
    CopyIwa,
}

/// Gives each selected accepting component a terminal copy that keeps the
/// acceptance marks, and strips the marks from the original. Runs enter the
/// copy through duplicates of the component's internal transitions.
pub fn deelevate(a: &BuchiAutomaton, strategy: DeelevationStrategy) -> BuchiAutomaton {
    let sccs = scc_decompose(a);
    let selected: Vec<usize> = sccs
        .accepting_components()
        .filter(|&c| strategy == DeelevationStrategy::CopyAll || sccs.kinds[c].iwa)
        .collect();
    if selected.is_empty() {
        return a.clone();
    }

    let mut out = a.clone();
    if out.state_names().is_none() {
        out.set_state_names(Some(a.states().map(|q| q.to_string()).collect()));
    }
    for c in selected {
        let comp = &sccs.components[c];
        let mut copy_of = BTreeMap::new();
        for q in comp.iter() {
            let copy = out.add_state();
            let mut names: Vec<String> = out.state_names().unwrap().to_vec();
            names[copy] = format!("{}^", a.state_name(q));
            out.set_state_names(Some(names));
            out.set_accepting(copy, a.is_accepting(q));
            copy_of.insert(q, copy);
        }
        for p in comp.iter() {
            out.set_accepting(p, false);
            for sym in a.alphabet().symbols() {
                for &q in a.succ(p, sym) {
                    if !comp.contains(q) {
                        continue;
                    }
                    let acc = a.is_accepting_transition(p, sym, q);
                    out.set_transition_accepting(p, sym, q, false);
                    out.set_transition_accepting(copy_of[&p], sym, copy_of[&q], acc);
                    out.add_transition(copy_of[&p], sym, copy_of[&q]);
                    out.add_transition(p, sym, copy_of[&q]);
                }
            }
        }
    }
    out
}

/// Moves acceptance from states onto the transitions entering them, then
/// merges states with identical outgoing behaviour until nothing changes.
pub fn to_transition_based(a: &BuchiAutomaton) -> BuchiAutomaton {
    let mut out = a.clone();
    for (p, sym, q) in a.transitions() {
        if a.is_accepting(q) {
            out.add_accepting_transition(p, sym, q);
        }
    }
    out.set_accepting_states(StateSet::empty(a.num_states()));

    loop {
        type Signature = (bool, Vec<(Symbol, State, bool)>);
        let mut groups: BTreeMap<Signature, Vec<State>> = BTreeMap::new();
        let cur = &out;
        for p in cur.states() {
            let edges = cur
                .alphabet()
                .symbols()
                .flat_map(|sym| {
                    cur.succ(p, sym)
                        .iter()
                        .map(move |&q| (sym, q, cur.is_accepting_transition(p, sym, q)))
                })
                .collect();
            groups
                .entry((out.initial().contains(p), edges))
                .or_default()
                .push(p);
        }
        if groups.len() == out.num_states() {
            return out;
        }
        let mut class_of = vec![0; out.num_states()];
        let mut reps: Vec<State> = groups.values().map(|g| g[0]).collect();
        reps.sort_unstable();
        for members in groups.values() {
            let class = reps.binary_search(&members[0]).unwrap();
            for &q in members {
                class_of[q] = class;
            }
        }
        out = out.quotient(&class_of, reps.len());
    }
}

/// Accepting states := states of the inherently weak accepting components;
/// accepting transitions are dropped. The result is weak.
pub fn iw_to_weak(a: &BuchiAutomaton) -> Result<BuchiAutomaton> {
    let sccs = scc_decompose(a);
    if let Some(c) =
        (0..sccs.num_components()).find(|&c| !sccs.kinds[c].iwa && !sccs.kinds[c].non_accepting)
    {
        return Err(Error::NotInherentlyWeak(
            sccs.components[c].first().unwrap(),
        ));
    }
    let mut accepting = StateSet::empty(a.num_states());
    for c in sccs.accepting_components() {
        accepting.union_with(&sccs.components[c]);
    }
    let mut out = a.clone();
    out.clear_accepting_transitions();
    out.set_accepting_states(accepting);
    Ok(out)
}

/// Swaps accepting and non-accepting states of a weak, state-based automaton.
pub fn weak_to_coba(aw: &BuchiAutomaton) -> Result<CoBuchiAutomaton> {
    if !aw.is_state_based() {
        return Err(Error::NotStateBased);
    }
    let sccs = scc_decompose(aw);
    if !is_weak(aw, &sccs) {
        let q = aw
            .states()
            .find(|&q| {
                let rep = sccs.components[sccs.component_of[q]].first().unwrap();
                aw.is_accepting(q) != aw.is_accepting(rep)
            })
            .unwrap();
        let rep = sccs.components[sccs.component_of[q]].first().unwrap();
        return Err(Error::NotWeak(rep, q));
    }
    let mut structure = aw.clone();
    let rejecting = StateSet::full(aw.num_states()).difference(aw.accepting_states());
    structure.set_accepting_states(rejecting);
    CoBuchiAutomaton::from_marked(structure)
}

/// Applies the transition-based conversion only where it is meant to be used:
/// on inherently weak or semi-deterministic inputs.
pub fn to_transition_based_if_specialized(a: &BuchiAutomaton) -> BuchiAutomaton {
    let class = classify_with(a, &scc_decompose(a));
    if class.inherently_weak || class.semi_deterministic {
        to_transition_based(a)
    } else {
        a.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::classify;
    use crate::automaton::Alphabet;
    use crate::fixtures::*;

    #[test]
    fn reduce_w2_to_one_state() {
        let r = reduce_direct_sim(&w2());
        assert_eq!(r.num_states(), 1);
        assert_eq!(r.succ(0, 0), &[0]);
        assert!(r.is_accepting(0));
        assert!(r.initial().contains(0));
    }

    #[test]
    fn reduce_keeps_identity_only_automata() {
        let a = sd3();
        assert_eq!(reduce_direct_sim(&a), a);
        assert_eq!(reduce_direct_sim(&empty()), empty());
    }

    #[test]
    fn saturate_sd1_marks_loop() {
        let s = saturate_acceptance(&sd1());
        assert!(s.is_accepting(1));
        assert!(!s.is_accepting(0));
        assert_eq!(
            s.accepting_transitions()
                .iter()
                .copied()
                .collect::<Vec<_>>(),
            vec![(1, 0, 1)]
        );
    }

    #[test]
    fn saturate_leaves_non_iwa_alone() {
        assert_eq!(saturate_acceptance(&sd3()), sd3());
    }

    #[test]
    fn saturate_w1() {
        let s = saturate_acceptance(&w1());
        assert!(s.is_accepting(0));
        assert!(s.is_accepting_transition(0, 0, 0));
    }

    #[test]
    fn deelevate_w1_copyall() {
        let d = deelevate(&w1(), DeelevationStrategy::CopyAll);
        assert_eq!(d.num_states(), 2);
        assert!(!d.is_accepting(0));
        assert!(d.is_accepting(1));
        assert_eq!(d.succ(0, 0), &[0, 1]);
        assert_eq!(d.succ(1, 0), &[1]);
    }

    #[test]
    fn deelevate_without_acceptance_is_identity() {
        let mut a = w1();
        a.set_accepting(0, false);
        assert_eq!(deelevate(&a, DeelevationStrategy::CopyAll), a);
    }

    #[test]
    fn deelevate_sd3_copyiwa_unchanged() {
        assert_eq!(deelevate(&sd3(), DeelevationStrategy::CopyIwa), sd3());
    }

    #[test]
    fn transition_based_w1() {
        let t = to_transition_based(&w1());
        assert!(t.accepting_states().is_empty());
        assert!(t.is_accepting_transition(0, 0, 0));
    }

    #[test]
    fn transition_based_sd1_no_merge() {
        let t = to_transition_based(&sd1());
        assert_eq!(t.num_states(), 2);
        let acc: Vec<_> = t.accepting_transitions().iter().copied().collect();
        assert_eq!(acc, vec![(0, 0, 1), (1, 0, 1)]);
    }

    #[test]
    fn transition_based_merges_twins() {
        let mut a = BuchiAutomaton::new(Alphabet::of_size(1), 3);
        a.add_transition(0, 0, 1);
        a.add_transition(0, 0, 2);
        a.add_transition(1, 0, 0);
        a.add_transition(2, 0, 0);
        a.set_initial(0);
        let t = to_transition_based(&a);
        assert_eq!(t.num_states(), 2);
    }

    #[test]
    fn iw_to_weak_variants() {
        assert_eq!(iw_to_weak(&w1()).unwrap(), w1());
        let w = iw_to_weak(&sd1()).unwrap();
        assert_eq!(w.accepting_states().to_vec(), vec![1]);
        assert!(w.accepting_transitions().is_empty());

        let mut t = BuchiAutomaton::new(Alphabet::of_size(1), 1);
        t.add_accepting_transition(0, 0, 0);
        t.set_initial(0);
        let w = iw_to_weak(&t).unwrap();
        assert!(w.is_accepting(0) && w.is_state_based());

        assert!(matches!(
            iw_to_weak(&sd3()),
            Err(Error::NotInherentlyWeak(_))
        ));
    }

    #[test]
    fn weak_to_coba_variants() {
        let c = weak_to_coba(&w1()).unwrap();
        assert!(c.rejecting().is_empty());
        let mut none = w1();
        none.set_accepting(0, false);
        assert_eq!(weak_to_coba(&none).unwrap().rejecting().len(), 1);
        let c = weak_to_coba(&iw_to_weak(&sd1()).unwrap()).unwrap();
        assert_eq!(c.rejecting().to_vec(), vec![0]);
        assert!(classify(&sd1()).inherently_weak);
    }

    #[test]
    fn weak_to_coba_rejects_non_weak() {
        let mut a = BuchiAutomaton::new(Alphabet::of_size(1), 2);
        a.add_transition(0, 0, 1);
        a.add_transition(1, 0, 0);
        a.set_accepting(0, true);
        assert!(matches!(weak_to_coba(&a), Err(Error::NotWeak(..))));
    }
}
