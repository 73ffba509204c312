//! Miyano-Hayashi complementation of co-Büchi automata with macrostate
//! adjustment, and the inherently-weak pipeline built on it.
//!
//! Macrostates are pairs `(S, B)`: `S` tracks every run, `B` is the
//! breakpoint set of runs that still owe a visit to a rejecting state. A
//! macrostate is accepting iff `B = ∅`. An adjustment function `θ` is applied
//! to every `S` produced; pruning drops states that are subsumed by another
//! state of the macrostate, saturation adds all simulation-smaller states.

use std::fmt;

use crate::analysis::{direct_simulation, reachability, Reachability, Relation, SimPreorder};
use crate::automaton::{BuchiAutomaton, CoBuchiAutomaton, State};
use crate::complement::{explore, Budget, Complement, Mode};
use crate::error::{Error, Result};
use crate::preprocess::{iw_to_weak, weak_to_coba};
use crate::set::StateSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MihayMacrostate {
    pub s: StateSet,
    pub b: StateSet,
}

impl fmt::Display for MihayMacrostate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.b)
    }
}

/// `p ⊑ q` iff `p ⪯ q`, `q` is reachable from `p`, and `p` is not
/// reachable from `q` unless `p = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsumeRelation(pub Relation);

impl SubsumeRelation {
    pub fn subsumes(&self, smaller: State, larger: State) -> bool {
        self.0.contains(smaller, larger)
    }
}

pub fn subsume_relation(
    coba: &CoBuchiAutomaton,
    sim: &SimPreorder,
    reach: &Reachability,
) -> Result<SubsumeRelation> {
    let n = coba.num_states();
    for size in [sim.relation().size(), reach.0.size()] {
        if size != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: size,
            });
        }
    }
    let mut rel = Relation::empty(n);
    for (p, q) in sim.relation().pairs() {
        if reach.reaches(p, q) && (p == q || !reach.reaches(q, p)) {
            rel.insert(p, q);
        }
    }
    Ok(SubsumeRelation(rel))
}

/// Keeps the `⊑`-maximal states of `S`.
///
/// `⊑` is a partial order, so every state of `S` lies below some maximal one
/// and any covering subset must contain all maximal ones: the maximal states
/// are the unique smallest cover, whatever fixed state order is used to break
/// ties.
pub fn adjust_prune(s: &StateSet, sub: &SubsumeRelation) -> StateSet {
    let mut kept = s.clone();
    for q in s.iter() {
        let mut above = sub.0.row(q).intersection(s);
        above.remove(q);
        if !above.is_empty() {
            kept.remove(q);
        }
    }
    debug_assert!(s.iter().all(|q| kept.iter().any(|k| sub.subsumes(q, k))));
    kept
}

/// `{p | ∃q ∈ S: p ⪯ q}`.
pub fn adjust_saturate(s: &StateSet, sim: &SimPreorder) -> StateSet {
    let n = sim.relation().size();
    let mut out = s.clone();
    for p in 0..n {
        if !out.contains(p) && sim.relation().row(p).intersects(s) {
            out.insert(p);
        }
    }
    out
}

/// The adjustment `θ` applied to each freshly computed `S` component.
#[derive(Clone, Debug)]
pub enum Adjustment {
    Identity,
    Prune(SubsumeRelation),
    Saturate(SimPreorder),
}

impl Adjustment {
    pub fn apply(&self, s: &StateSet) -> StateSet {
        match self {
            Adjustment::Identity => s.clone(),
            Adjustment::Prune(sub) => adjust_prune(s, sub),
            Adjustment::Saturate(sim) => adjust_saturate(s, sim),
        }
    }
}

pub fn mihay_complement(
    coba: &CoBuchiAutomaton,
    theta: &Adjustment,
) -> Complement<MihayMacrostate> {
    mihay_complement_with_budget(coba, theta, Budget::unlimited())
        .expect("unlimited budget cannot be exhausted")
}

pub fn mihay_complement_with_budget(
    coba: &CoBuchiAutomaton,
    theta: &Adjustment,
    budget: Budget,
) -> Result<Complement<MihayMacrostate>> {
    let rejecting = coba.rejecting();
    let s0 = theta.apply(coba.initial());
    let b0 = s0.difference(rejecting);
    let initial = MihayMacrostate { s: s0, b: b0 };

    explore(
        coba.alphabet(),
        vec![initial],
        budget,
        |m, sym| {
            let s = theta.apply(&coba.post(&m.s, sym));
            let b = if m.b.is_empty() {
                s.difference(rejecting)
            } else {
                coba.post(&m.b, sym).intersection(&s).difference(rejecting)
            };
            debug_assert!(b.is_subset(&s) && b.is_disjoint(rejecting));
            vec![MihayMacrostate { s, b }]
        },
        |m| m.b.is_empty(),
    )
}

/// Which adjustment the inherently-weak construction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theta {
    Identity,
    Prune,
    Saturate,
}

impl Theta {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theta::Identity => "id",
            Theta::Prune => "prune",
            Theta::Saturate => "sat",
        }
    }
}

/// The co-Büchi automaton and relations the inherently-weak pipeline works
/// on, computed once and shared by every adjustment.
pub struct IwPipeline {
    pub coba: CoBuchiAutomaton,
    pub sim: SimPreorder,
    pub subsume: SubsumeRelation,
}

impl IwPipeline {
    pub fn new(a: &BuchiAutomaton) -> Result<Self> {
        let weak = iw_to_weak(a)?;
        let coba = weak_to_coba(&weak)?;
        // Direct simulation on the weak automaton under-approximates fair
        // simulation on its co-Büchi dual.
        let sim = direct_simulation(&weak);
        let reach = reachability(coba.structure());
        let subsume = subsume_relation(&coba, &sim, &reach)?;
        Ok(IwPipeline { coba, sim, subsume })
    }

    pub fn adjustment(&self, theta: Theta) -> Adjustment {
        match theta {
            Theta::Identity => Adjustment::Identity,
            Theta::Prune => Adjustment::Prune(self.subsume.clone()),
            Theta::Saturate => Adjustment::Saturate(self.sim.clone()),
        }
    }

    pub fn run(&self, theta: Theta, budget: Budget) -> Result<Complement<MihayMacrostate>> {
        mihay_complement_with_budget(&self.coba, &self.adjustment(theta), budget)
    }
}

pub fn complement_iw(
    a: &BuchiAutomaton,
    mode: Mode,
    theta: Option<Theta>,
) -> Result<BuchiAutomaton> {
    complement_iw_with_budget(a, mode, theta, Budget::unlimited())
}

/// With `theta` set, only that adjustment runs. Otherwise `Best` runs the
/// identity and pruning variants and keeps the smaller (pruning on ties),
/// and `Light` runs pruning alone.
pub fn complement_iw_with_budget(
    a: &BuchiAutomaton,
    mode: Mode,
    theta: Option<Theta>,
    budget: Budget,
) -> Result<BuchiAutomaton> {
    let pipeline = IwPipeline::new(a)?;
    if let Some(theta) = theta {
        return Ok(pipeline.run(theta, budget)?.automaton);
    }
    let pruned = pipeline.run(Theta::Prune, budget)?.automaton;
    if mode == Mode::Light {
        return Ok(pruned);
    }
    let plain = pipeline.run(Theta::Identity, budget)?.automaton;
    if plain.num_states() < pruned.num_states() {
        Ok(plain)
    } else {
        Ok(pruned)
    }
}
