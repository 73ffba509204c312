//! Test-side language oracle, written against the public getters only.
//!
//! Membership of `u·v^ω` is decided with period profiles: one step of the
//! profile graph reads all of `v` and remembers whether acceptance was seen.
//! A state wins if it reaches, by profile steps, a state lying on a profile
//! cycle that carries acceptance. Nothing here calls the library's lasso or
//! product code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use bacomp::{BuchiAutomaton, Symbol};

pub type Bits = Vec<bool>;

fn post(a: &BuchiAutomaton, from: &Bits, sym: Symbol) -> Bits {
    let mut out = vec![false; a.num_states()];
    for (p, _) in from.iter().enumerate().filter(|(_, &x)| x) {
        for &q in a.succ(p, sym) {
            out[q] = true;
        }
    }
    out
}

/// `(reach, reach_acc)` rows: states reachable from `p` by reading `v`, and
/// those reachable along a path that saw an accepting state or transition.
fn profile(a: &BuchiAutomaton, v: &[Symbol]) -> (Vec<Bits>, Vec<Bits>) {
    let n = a.num_states();
    let mut reach = Vec::with_capacity(n);
    let mut reach_acc = Vec::with_capacity(n);
    for p in 0..n {
        let mut plain = vec![false; n];
        let mut marked = vec![false; n];
        plain[p] = true;
        for &sym in v {
            let mut next_plain = vec![false; n];
            let mut next_marked = vec![false; n];
            for q in 0..n {
                if !plain[q] && !marked[q] {
                    continue;
                }
                for &t in a.succ(q, sym) {
                    let seen =
                        marked[q] || a.is_accepting(q) || a.is_accepting_transition(q, sym, t);
                    if seen {
                        next_marked[t] = true;
                    } else if plain[q] {
                        next_plain[t] = true;
                    }
                }
            }
            plain = next_plain;
            marked = next_marked;
        }
        let any: Bits = plain.iter().zip(&marked).map(|(x, y)| *x || *y).collect();
        reach.push(any);
        reach_acc.push(marked);
    }
    (reach, reach_acc)
}

/// Reflexive-transitive closure, Warshall style.
fn star(rel: &[Bits]) -> Vec<Bits> {
    let n = rel.len();
    let mut m = rel.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                let row_k = m[k].clone();
                for (j, x) in row_k.into_iter().enumerate() {
                    if x {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    m
}

/// States from which `v^ω` is accepted.
pub fn period_winners(a: &BuchiAutomaton, v: &[Symbol]) -> Bits {
    let n = a.num_states();
    let (reach, reach_acc) = profile(a, v);
    let closure = star(&reach);
    let on_acc_cycle: Bits = (0..n)
        .map(|r| (0..n).any(|s| reach_acc[r][s] && closure[s][r]))
        .collect();
    (0..n)
        .map(|p| (0..n).any(|r| closure[p][r] && on_acc_cycle[r]))
        .collect()
}

pub fn after(a: &BuchiAutomaton, u: &[Symbol]) -> Bits {
    let mut s: Bits = (0..a.num_states())
        .map(|q| a.initial().contains(q))
        .collect();
    for &sym in u {
        s = post(a, &s, sym);
    }
    s
}

pub fn accepts(a: &BuchiAutomaton, u: &[Symbol], v: &[Symbol]) -> bool {
    let s = after(a, u);
    let w = period_winners(a, v);
    s.iter().zip(&w).any(|(x, y)| *x && *y)
}

/// All words of length `lo..=hi`, shortest first, lexicographic.
pub fn words(k: usize, lo: usize, hi: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for len in 0..=hi {
        if len >= lo {
            out.extend(layer.iter().cloned());
        }
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..k {
                let mut w2: Vec<Symbol> = w.clone();
                w2.push(s);
                next.push(w2);
            }
        }
        layer = next;
    }
    out
}

/// Membership of every lasso with `|u| ≤ max_u`, `1 ≤ |v| ≤ max_v`, indexed
/// `[u][v]` in the order of [`words`].
pub fn grid_language(a: &BuchiAutomaton, max_u: usize, max_v: usize) -> Vec<Vec<bool>> {
    let k = a.num_symbols();
    let prefixes: Vec<Bits> = words(k, 0, max_u).iter().map(|u| after(a, u)).collect();
    let winners: Vec<Bits> = words(k, 1, max_v)
        .iter()
        .map(|v| period_winners(a, v))
        .collect();
    prefixes
        .iter()
        .map(|s| {
            winners
                .iter()
                .map(|w| s.iter().zip(w).any(|(x, y)| *x && *y))
                .collect()
        })
        .collect()
}

/// First lasso `(u, v)` on which two grid languages disagree.
pub fn first_difference(
    k: usize,
    max_u: usize,
    max_v: usize,
    x: &[Vec<bool>],
    y: &[Vec<bool>],
) -> Option<(Vec<Symbol>, Vec<Symbol>)> {
    let us = words(k, 0, max_u);
    let vs = words(k, 1, max_v);
    for (i, u) in us.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            if x[i][j] != y[i][j] {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}

/// First lasso accepted by both or by neither.
pub fn first_non_complement(
    k: usize,
    max_u: usize,
    max_v: usize,
    x: &[Vec<bool>],
    y: &[Vec<bool>],
) -> Option<(Vec<Symbol>, Vec<Symbol>)> {
    let flipped: Vec<Vec<bool>> = y
        .iter()
        .map(|row| row.iter().map(|b| !b).collect())
        .collect();
    first_difference(k, max_u, max_v, x, &flipped)
}

/// The reachable part of `a` keyed by state names, for comparing automata
/// up to renumbering.
pub type Shape = (
    BTreeSet<String>,
    BTreeSet<String>,
    BTreeSet<(String, String, String, bool)>,
);

pub fn shape(a: &BuchiAutomaton) -> Shape {
    let reachable = a.reachable_from(a.initial());
    let name = |q| a.state_name(q);
    let initial = a.initial().iter().map(name).collect();
    let accepting = reachable
        .iter()
        .filter(|&q| a.is_accepting(q))
        .map(name)
        .collect();
    let edges = a
        .transitions()
        .filter(|&(p, _, _)| reachable.contains(p))
        .map(|(p, s, q)| {
            (
                name(p),
                a.alphabet().name(s).to_string(),
                name(q),
                a.is_accepting_transition(p, s, q),
            )
        })
        .collect();
    (initial, accepting, edges)
}
