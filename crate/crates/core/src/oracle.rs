//! Seeded random automata and exhaustive lasso enumeration.
//!
//! These feed the property tests, the acceptance suite and
//! `bench --generate`.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{classify, is_semi_deterministic, scc_decompose};
use crate::automaton::{Alphabet, BuchiAutomaton, Symbol};
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::preprocess::saturate_acceptance;

/// Parameters shared by the generators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomParams {
    pub num_states: usize,
    pub num_symbols: usize,
    /// Expected number of transitions per `(state, symbol)` pair.
    pub transition_density: f64,
    /// Fraction of accepting states.
    pub acceptance_density: f64,
}

impl RandomParams {
    pub fn new(num_states: usize, num_symbols: usize, td: f64, ad: f64) -> Self {
        RandomParams {
            num_states,
            num_symbols,
            transition_density: td,
            acceptance_density: ad,
        }
    }

    fn validate(&self) -> Result<()> {
        let (n, k, td, ad) = (
            self.num_states,
            self.num_symbols,
            self.transition_density,
            self.acceptance_density,
        );
        if n == 0 || k == 0 {
            return Err(Error::InvalidParameters(
                "need at least one state and one symbol".into(),
            ));
        }
        if !(td > 0.0 && td <= n as f64) {
            return Err(Error::InvalidParameters(format!(
                "transition density {td} outside (0, {n}]"
            )));
        }
        if !(ad > 0.0 && ad <= 1.0) {
            return Err(Error::InvalidParameters(format!(
                "acceptance density {ad} outside (0, 1]"
            )));
        }
        Ok(())
    }

    fn accepting_count(&self, n: usize) -> usize {
        ((self.acceptance_density * n as f64).floor() as usize).clamp(1, n)
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tabakov-Vardi style random automaton: `⌊td·n·k⌋` distinct transitions
/// drawn uniformly from all `n·k·n` triples, `max(1, ⌊ad·n⌋)` accepting
/// states drawn uniformly, state 0 initial.
pub fn gen_random_ba(seed: u64, params: RandomParams) -> Result<BuchiAutomaton> {
    params.validate()?;
    let mut rng = rng(seed);
    Ok(random_ba(&mut rng, params))
}

fn random_ba(rng: &mut ChaCha8Rng, params: RandomParams) -> BuchiAutomaton {
    let (n, k) = (params.num_states, params.num_symbols);
    let total = n * k * n;
    let count = ((params.transition_density * (n * k) as f64).floor() as usize).min(total);
    let mut a = BuchiAutomaton::new(Alphabet::of_size(k), n);
    for t in sample(rng, total, count).into_iter() {
        let (p, rest) = (t / (k * n), t % (k * n));
        a.add_transition(p, rest / n, rest % n);
    }
    for q in sample(rng, n, params.accepting_count(n)).into_iter() {
        a.set_accepting(q, true);
    }
    a.set_initial(0);
    a
}

/// A random inherently weak automaton. Each accepting component that is
/// not inherently weak either loses its acceptance or has all of its states
/// marked, the latter with probability 0.8. Accepting components are then saturated,
/// and finally accepting states are unmarked at random as long as their
/// component stays accepting and inherently weak.
pub fn gen_random_iw(seed: u64, params: RandomParams) -> Result<BuchiAutomaton> {
    params.validate()?;
    let mut rng = rng(seed);
    let mut a = random_ba(&mut rng, params);

    let sccs = scc_decompose(&a);
    for (c, kind) in sccs.kinds.iter().enumerate() {
        if !kind.iwa && !kind.non_accepting {
            let keep = rng.gen_bool(0.8);
            for q in sccs.components[c].iter() {
                a.set_accepting(q, keep);
            }
        }
    }
    let mut a = saturate_acceptance(&a);
    a.clear_accepting_transitions();

    let mut order: Vec<usize> = a.accepting_states().iter().collect();
    order.shuffle(&mut rng);
    for q in order {
        if rng.gen_bool(0.5) {
            a.set_accepting(q, false);
            let sccs = scc_decompose(&a);
            let kind = sccs.kinds[sccs.component_of[q]];
            if !kind.iwa || kind.non_accepting {
                a.set_accepting(q, true);
            }
        }
    }
    debug_assert!(classify(&a).inherently_weak);
    Ok(a)
}

/// Draws made by [`gen_random_sdba`] before settling for an automaton that
/// is also inherently weak.
const SDBA_ATTEMPTS: usize = 64;

/// A random semi-deterministic automaton on states `Q1 = 0..⌊n/2⌋` and
/// `Q2 = ⌊n/2⌋..n`. `Q2` is deterministic, closed under transitions and
/// holds every accepting state; `Q1` is random and jumps into `Q2`.
///
/// Draws are repeated until the result is not inherently weak, so that it
/// dispatches to the semi-deterministic construction. Small automata may
/// never leave the inherently weak class; after a fixed number of draws
/// the last one is returned.
pub fn gen_random_sdba(seed: u64, params: RandomParams) -> Result<BuchiAutomaton> {
    params.validate()?;
    let mut rng = rng(seed);
    let mut a = random_sdba(&mut rng, params);
    for _ in 1..SDBA_ATTEMPTS {
        if !classify(&a).inherently_weak {
            break;
        }
        a = random_sdba(&mut rng, params);
    }
    Ok(a)
}

fn random_sdba(rng: &mut ChaCha8Rng, params: RandomParams) -> BuchiAutomaton {
    let (n, k) = (params.num_states, params.num_symbols);
    let n1 = n / 2;
    let n2 = n - n1;
    let td = params.transition_density;
    let mut a = BuchiAutomaton::new(Alphabet::of_size(k), n);

    let fill = td.clamp(0.5, 1.0);
    for q in n1..n {
        for sym in 0..k {
            if rng.gen_bool(fill) {
                a.add_transition(q, sym, n1 + rng.gen_range(0..n2));
            }
        }
    }
    if n1 > 0 {
        let total = n1 * k * n1;
        let count = ((td * (n1 * k) as f64).floor() as usize).min(total);
        for t in sample(rng, total, count).into_iter() {
            let (p, rest) = (t / (k * n1), t % (k * n1));
            a.add_transition(p, rest / n1, rest % n1);
        }
        let forced = rng.gen_range(0..n1);
        for p in 0..n1 {
            if p == forced || rng.gen_bool(0.5) {
                a.add_transition(p, rng.gen_range(0..k), n1 + rng.gen_range(0..n2));
            }
        }
    }
    for i in sample(rng, n2, params.accepting_count(n2)).into_iter() {
        a.set_accepting(n1 + i, true);
    }
    a.set_initial(0);
    debug_assert!(is_semi_deterministic(&a));
    a
}

/// All words over `0..k` of length `min_len..=max_len`, shortest first and
/// lexicographic within a length.
pub fn words(k: usize, min_len: usize, max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Symbol>> = vec![Vec::new()];
    for len in 0..=max_len {
        if len >= min_len {
            out.extend(layer.iter().cloned());
        }
        if len == max_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |s| {
                    let mut w2 = w.clone();
                    w2.push(s);
                    w2
                })
            })
            .collect();
    }
    out
}

/// Every lasso `(u, v)` with `|u| ≤ max_u` and `1 ≤ |v| ≤ max_v`, prefixes
/// in the outer loop.
pub fn lasso_grid(alphabet: &Alphabet, max_u: usize, max_v: usize) -> impl Iterator<Item = Lasso> {
    let k = alphabet.len();
    let prefixes = words(k, 0, max_u);
    let periods = words(k, 1, max_v);
    prefixes.into_iter().flat_map(move |u| {
        periods.clone().into_iter().map(move |v| Lasso {
            prefix: u.clone(),
            period: v,
        })
    })
}

/// `(Σ_{i≤max_u} k^i)·(Σ_{1≤j≤max_v} k^j)`.
pub fn lasso_grid_count(k: usize, max_u: usize, max_v: usize) -> usize {
    let sum = |lo: u32, hi: usize| (lo..=hi as u32).map(|i| k.pow(i)).sum::<usize>();
    sum(0, max_u) * sum(1, max_v)
}
