use crate::automaton::{BuchiAutomaton, State};
use crate::set::StateSet;

/// A binary relation on states stored as bit-set rows: `row(p)` holds every
/// `q` with `p R q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    rows: Vec<StateSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: vec![StateSet::empty(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            rows: (0..n).map(|q| StateSet::singleton(n, q)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, p: State, q: State) -> bool {
        self.rows[p].contains(q)
    }

    pub fn insert(&mut self, p: State, q: State) {
        self.rows[p].insert(q);
    }

    pub fn remove(&mut self, p: State, q: State) {
        self.rows[p].remove(q);
    }

    pub fn row(&self, p: State) -> &StateSet {
        &self.rows[p]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (State, State)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().map(move |q| (p, q)))
    }

    pub fn transpose(&self) -> Relation {
        let n = self.size();
        let mut out = Relation::empty(n);
        for (p, q) in self.pairs() {
            out.insert(q, p);
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|p| self.contains(p, p))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(p, q)| self.rows[q].is_subset(&self.rows[p]))
    }
}

/// Direct simulation preorder: `p ⪯ q` iff `q` simulates `p` step by step,
/// matching acceptance immediately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimPreorder(pub Relation);

impl SimPreorder {
    /// The identity relation, a trivially valid simulation.
    pub fn identity(n: usize) -> Self {
        SimPreorder(Relation::identity(n))
    }

    pub fn simulates(&self, smaller: State, larger: State) -> bool {
        self.0.contains(smaller, larger)
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    /// Classes of the equivalence `⪯ ∩ ⪰`, numbered by smallest member.
    pub fn equivalence_classes(&self) -> (Vec<usize>, usize) {
        let n = self.0.size();
        let mut class_of = vec![usize::MAX; n];
        let mut count = 0;
        for p in 0..n {
            if class_of[p] != usize::MAX {
                continue;
            }
            for (q, class) in class_of.iter_mut().enumerate().skip(p) {
                if *class == usize::MAX && self.simulates(p, q) && self.simulates(q, p) {
                    *class = count;
                }
            }
            count += 1;
        }
        (class_of, count)
    }
}

/// Reflexive-transitive reachability over all symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachability(pub Relation);

impl Reachability {
    pub fn reaches(&self, from: State, to: State) -> bool {
        self.0.contains(from, to)
    }
}

pub fn reachability(a: &BuchiAutomaton) -> Reachability {
    let n = a.num_states();
    let rows = (0..n)
        .map(|q| a.reachable_from(&StateSet::singleton(n, q)))
        .collect();
    Reachability(Relation { rows })
}

/// The greatest direct simulation, by naive refinement from the
/// acceptance-compatible relation.
///
/// `p ⪯ q` requires `p ∈ Q_F ⇒ q ∈ Q_F`, and every `p -a-> p'` must be
/// matched by some `q -a-> q'` with `p' ⪯ q'` that is accepting whenever
/// the matched transition is.
pub fn direct_simulation(a: &BuchiAutomaton) -> SimPreorder {
    let n = a.num_states();
    let mut rel = Relation::empty(n);
    for p in 0..n {
        for q in 0..n {
            if !a.is_accepting(p) || a.is_accepting(q) {
                rel.insert(p, q);
            }
        }
    }

    let mut changed = true;
    while changed {
        changed = false;
        for p in 0..n {
            for q in rel.row(p).to_vec() {
                if p == q {
                    continue;
                }
                let matched = a.alphabet().symbols().all(|sym| {
                    a.succ(p, sym).iter().all(|&p2| {
                        let acc = a.is_accepting_transition(p, sym, p2);
                        a.succ(q, sym).iter().any(|&q2| {
                            rel.contains(p2, q2) && (!acc || a.is_accepting_transition(q, sym, q2))
                        })
                    })
                });
                if !matched {
                    rel.remove(p, q);
                    changed = true;
                }
            }
        }
    }
    SimPreorder(rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::fixtures::*;

    #[test]
    fn w2_states_simulate_each_other() {
        let sim = direct_simulation(&w2());
        assert!(sim.simulates(0, 1));
        assert!(sim.simulates(1, 0));
        assert_eq!(sim.equivalence_classes(), (vec![0, 0], 1));
    }

    #[test]
    fn accepting_not_simulated_by_non_accepting() {
        let sim = direct_simulation(&sd1());
        assert!(!sim.simulates(1, 0));
        assert!(sim.relation().is_reflexive());
        assert!(sim.relation().is_transitive());
    }

    #[test]
    fn accepting_transitions_must_be_matched() {
        let mut a = BuchiAutomaton::new(Alphabet::of_size(1), 2);
        a.add_accepting_transition(0, 0, 0);
        a.add_transition(1, 0, 1);
        let sim = direct_simulation(&a);
        assert!(!sim.simulates(0, 1));
        assert!(sim.simulates(1, 0));
    }

    #[test]
    fn reachability_basics() {
        let r = reachability(&w2());
        assert!(r.reaches(0, 1));
        assert!(!r.reaches(1, 0));
        assert!(r.reaches(0, 0) && r.reaches(1, 1));

        let isolated = BuchiAutomaton::new(Alphabet::of_size(1), 2);
        let r = reachability(&isolated);
        assert!(!r.reaches(0, 1) && !r.reaches(1, 0));
    }
}
