//! Dense bit sets over state indices.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::automaton::State;

/// A set of states of one automaton, stored as a bit set sized to the
/// automaton's state count.
///
/// All sets that are compared or combined must share the same universe size;
/// the constructions in this crate always allocate with the size of the
/// automaton they work on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(FixedBitSet);

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        StateSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        StateSet(bits)
    }

    pub fn singleton(universe: usize, state: State) -> Self {
        let mut set = Self::empty(universe);
        set.insert(state);
        set
    }

    pub fn from_states<I: IntoIterator<Item = State>>(universe: usize, states: I) -> Self {
        let mut set = Self::empty(universe);
        for q in states {
            set.insert(q);
        }
        set
    }

    /// Size of the universe the set lives in (not the cardinality).
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    /// Extends the universe to `universe` elements, keeping the members.
    pub fn grow(&mut self, universe: usize) {
        self.0.grow(universe);
    }

    pub fn insert(&mut self, state: State) -> bool {
        let fresh = !self.0.contains(state);
        self.0.insert(state);
        fresh
    }

    pub fn remove(&mut self, state: State) {
        self.0.set(state, false);
    }

    pub fn contains(&self, state: State) -> bool {
        self.0.contains(state)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<State> {
        self.0.minimum()
    }

    pub fn union_with(&mut self, other: &StateSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &StateSet) {
        self.0.difference_with(&other.0);
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn to_vec(&self) -> Vec<State> {
        self.iter().collect()
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = StateSet::from_states(5, [0, 2, 4]);
        let b = StateSet::from_states(5, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 4]);
        assert!(StateSet::from_states(5, [2]).is_subset(&a));
        assert!(!a.is_disjoint(&b));
        assert_eq!(StateSet::full(3).len(), 3);
        assert_eq!(format!("{a}"), "{0,2,4}");
    }
}
