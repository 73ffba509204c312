use crate::automaton::{BuchiAutomaton, State};
use crate::graph::{self, Sccs};
use crate::set::StateSet;

/// Per-component flags. They are independent of each other.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComponentKind {
    /// No accepting state and no accepting internal transition.
    pub non_accepting: bool,
    /// Every cycle inside the component carries acceptance. Vacuously true
    /// for trivial components.
    pub iwa: bool,
    /// At most one internal successor per state and symbol.
    pub deterministic: bool,
    /// A single state without a self-loop.
    pub trivial: bool,
}

/// MSCC decomposition with per-component classification.
#[derive(Clone, Debug)]
pub struct SccAnalysis {
    pub component_of: Vec<usize>,
    /// Reverse topological order: transitions lead to the same or an
    /// earlier component.
    pub components: Vec<StateSet>,
    pub kinds: Vec<ComponentKind>,
}

impl SccAnalysis {
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn same_component(&self, p: State, q: State) -> bool {
        self.component_of[p] == self.component_of[q]
    }

    /// Components that contain a cycle and carry acceptance.
    pub fn accepting_components(&self) -> impl Iterator<Item = usize> + '_ {
        self.kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| !k.non_accepting && !k.trivial)
            .map(|(i, _)| i)
    }
}

fn state_graph(a: &BuchiAutomaton) -> Vec<Vec<usize>> {
    a.states()
        .map(|p| {
            let mut succ: Vec<usize> = a.successors(p).collect();
            succ.sort_unstable();
            succ.dedup();
            succ
        })
        .collect()
}

fn has_cycle(adj: &[Vec<usize>]) -> bool {
    let sccs: Sccs = graph::tarjan(adj);
    (0..sccs.components.len()).any(|c| sccs.is_nontrivial(c, adj))
}

pub fn scc_decompose(a: &BuchiAutomaton) -> SccAnalysis {
    let n = a.num_states();
    let adj = state_graph(a);
    let sccs = graph::tarjan(&adj);
    let mut components = Vec::with_capacity(sccs.components.len());
    let mut kinds = Vec::with_capacity(sccs.components.len());

    for (c, members) in sccs.components.iter().enumerate() {
        let set = StateSet::from_states(n, members.iter().copied());
        let trivial = !sccs.is_nontrivial(c, &adj);

        let mut non_accepting = !members.iter().any(|&q| a.is_accepting(q));
        let mut deterministic = true;
        // Restriction to non-accepting states and non-accepting transitions;
        // local indices into `members`.
        let mut rejecting_adj = vec![Vec::new(); members.len()];
        for (i, &p) in members.iter().enumerate() {
            for sym in a.alphabet().symbols() {
                let mut internal = 0;
                for &q in a.succ(p, sym) {
                    if sccs.component_of[q] != c {
                        continue;
                    }
                    internal += 1;
                    let acc_t = a.is_accepting_transition(p, sym, q);
                    if acc_t {
                        non_accepting = false;
                    }
                    if !acc_t && !a.is_accepting(p) && !a.is_accepting(q) {
                        let j = members.binary_search(&q).unwrap();
                        rejecting_adj[i].push(j);
                    }
                }
                if internal > 1 {
                    deterministic = false;
                }
            }
        }
        let iwa = !has_cycle(&rejecting_adj);
        components.push(set);
        kinds.push(ComponentKind {
            non_accepting,
            iwa,
            deterministic,
            trivial,
        });
    }

    SccAnalysis {
        component_of: sccs.component_of,
        components,
        kinds,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DispatchClass {
    InherentlyWeak,
    SemiDeterministic,
    Other,
}

impl DispatchClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            DispatchClass::InherentlyWeak => "IW",
            DispatchClass::SemiDeterministic => "SDBA",
            DispatchClass::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub inherently_weak: bool,
    pub weak: bool,
    pub semi_deterministic: bool,
    pub elevator: bool,
    pub deterministic: bool,
    pub dispatch: DispatchClass,
}

impl Classification {
    /// Stable `key=value` lines.
    pub fn to_key_values(&self) -> Vec<(&'static str, String)> {
        vec![
            ("inherently_weak", self.inherently_weak.to_string()),
            ("weak", self.weak.to_string()),
            ("semi_deterministic", self.semi_deterministic.to_string()),
            ("elevator", self.elevator.to_string()),
            ("deterministic", self.deterministic.to_string()),
            ("class", self.dispatch.as_str().to_string()),
        ]
    }
}

/// States seeding the accepting part: `Q_F` plus targets of `δ_F`.
pub(crate) fn acceptance_seeds(a: &BuchiAutomaton) -> StateSet {
    let mut seeds = a.accepting_states().clone();
    for &(_, _, q) in a.accepting_transitions() {
        seeds.insert(q);
    }
    seeds
}

/// Every state reachable from an accepting state or accepting-transition
/// target is deterministic.
pub fn is_semi_deterministic(a: &BuchiAutomaton) -> bool {
    let part = a.reachable_from(&acceptance_seeds(a));
    let deterministic = part
        .iter()
        .all(|q| a.alphabet().symbols().all(|sym| a.succ(q, sym).len() <= 1));
    deterministic
}

pub fn is_weak(a: &BuchiAutomaton, sccs: &SccAnalysis) -> bool {
    a.states().all(|q| {
        let rep = sccs.components[sccs.component_of[q]].first().unwrap();
        a.is_accepting(q) == a.is_accepting(rep)
    })
}

pub fn classify(a: &BuchiAutomaton) -> Classification {
    let sccs = scc_decompose(a);
    classify_with(a, &sccs)
}

pub fn classify_with(a: &BuchiAutomaton, sccs: &SccAnalysis) -> Classification {
    let inherently_weak = sccs.kinds.iter().all(|k| k.iwa || k.non_accepting);
    let elevator = sccs
        .kinds
        .iter()
        .all(|k| k.iwa || k.deterministic || k.non_accepting);
    let semi_deterministic = is_semi_deterministic(a);
    let dispatch = if inherently_weak {
        DispatchClass::InherentlyWeak
    } else if semi_deterministic {
        DispatchClass::SemiDeterministic
    } else {
        DispatchClass::Other
    };
    Classification {
        inherently_weak,
        weak: is_weak(a, sccs),
        semi_deterministic,
        elevator,
        deterministic: a.is_deterministic(),
        dispatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn w2_components() {
        let s = scc_decompose(&w2());
        assert_eq!(s.num_components(), 2);
        assert!(s
            .kinds
            .iter()
            .all(|k| k.iwa && !k.non_accepting && !k.trivial));
    }

    #[test]
    fn sd1_components() {
        let a = sd1();
        let s = scc_decompose(&a);
        let kp = s.kinds[s.component_of[0]];
        let kq = s.kinds[s.component_of[1]];
        assert!(kp.non_accepting && !kp.iwa);
        assert!(kq.iwa && !kq.non_accepting);
    }

    #[test]
    fn trivial_component_flags() {
        let mut a = BuchiAutomaton::new(crate::automaton::Alphabet::of_size(1), 2);
        a.add_transition(0, 0, 1);
        a.add_transition(1, 0, 1);
        let s = scc_decompose(&a);
        let k = s.kinds[s.component_of[0]];
        assert!(k.trivial && k.non_accepting && k.iwa && k.deterministic);
    }

    #[test]
    fn edges_respect_component_order() {
        let a = sd3();
        let s = scc_decompose(&a);
        for (p, _, q) in a.transitions() {
            assert!(s.component_of[q] <= s.component_of[p]);
        }
    }

    #[test]
    fn classify_sd1() {
        let c = classify(&sd1());
        assert!(c.inherently_weak && c.semi_deterministic && c.elevator);
        assert_eq!(c.dispatch, DispatchClass::InherentlyWeak);
    }

    #[test]
    fn classify_sd3() {
        let c = classify(&sd3());
        assert!(!c.inherently_weak && c.semi_deterministic && c.elevator);
        assert_eq!(c.dispatch, DispatchClass::SemiDeterministic);
    }

    #[test]
    fn classify_other() {
        let c = classify(&nondet_other());
        assert!(!c.inherently_weak && !c.semi_deterministic);
        assert_eq!(c.dispatch, DispatchClass::Other);
    }

    #[test]
    fn transition_accepting_component_is_iwa() {
        let mut a = BuchiAutomaton::new(crate::automaton::Alphabet::of_size(1), 1);
        a.add_accepting_transition(0, 0, 0);
        a.set_initial(0);
        let s = scc_decompose(&a);
        assert!(s.kinds[0].iwa && !s.kinds[0].non_accepting);
    }
}
