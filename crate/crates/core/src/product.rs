//! Emptiness of `L(A) ∩ L(B)` via the synchronous product.
//!
//! The product carries two acceptance marks, one per factor, so it is a
//! generalized Büchi graph. The intersection is nonempty iff some reachable
//! SCC of the product contains an internal edge carrying `A`-acceptance and
//! one carrying `B`-acceptance. State acceptance is attributed to the
//! outgoing edges of the state, which is exact for infinite runs.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{BuchiAutomaton, State, Symbol};
use crate::error::{Error, Result};
use crate::graph;
use crate::lasso::Lasso;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    /// A lasso accepted by both automata.
    NonEmpty(Lasso),
}

impl Intersection {
    pub fn is_empty(&self) -> bool {
        matches!(self, Intersection::Empty)
    }
}

struct Edge {
    to: usize,
    symbol: Symbol,
    acc_a: bool,
    acc_b: bool,
}

pub fn intersection_empty(a: &BuchiAutomaton, b: &BuchiAutomaton) -> Result<Intersection> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            a.alphabet().names(),
            b.alphabet().names()
        )));
    }

    // Explore reachable product pairs.
    let mut index: HashMap<(State, State), usize> = HashMap::new();
    let mut nodes: Vec<(State, State)> = Vec::new();
    let mut edges: Vec<Vec<Edge>> = Vec::new();
    let mut queue = VecDeque::new();
    for p in a.initial().iter() {
        for q in b.initial().iter() {
            index.insert((p, q), nodes.len());
            nodes.push((p, q));
            edges.push(Vec::new());
            queue.push_back(nodes.len() - 1);
        }
    }
    let initial_count = nodes.len();
    while let Some(v) = queue.pop_front() {
        let (p, q) = nodes[v];
        for sym in a.alphabet().symbols() {
            for &p2 in a.succ(p, sym) {
                let acc_a = a.is_accepting(p) || a.is_accepting_transition(p, sym, p2);
                for &q2 in b.succ(q, sym) {
                    let acc_b = b.is_accepting(q) || b.is_accepting_transition(q, sym, q2);
                    let to = *index.entry((p2, q2)).or_insert_with(|| {
                        nodes.push((p2, q2));
                        edges.push(Vec::new());
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    });
                    edges[v].push(Edge {
                        to,
                        symbol: sym,
                        acc_a,
                        acc_b,
                    });
                }
            }
        }
    }

    let adj: Vec<Vec<usize>> = edges
        .iter()
        .map(|es| es.iter().map(|e| e.to).collect())
        .collect();
    let sccs = graph::tarjan(&adj);
    for (c, comp) in sccs.components.iter().enumerate() {
        let internal = |pred: fn(&Edge) -> bool| {
            comp.iter().find_map(|&v| {
                edges[v]
                    .iter()
                    .position(|e| sccs.component_of[e.to] == c && pred(e))
                    .map(|j| (v, j))
            })
        };
        let (Some(ea), Some(eb)) = (internal(|e| e.acc_a), internal(|e| e.acc_b)) else {
            continue;
        };
        let in_comp = |v: usize| sccs.component_of[v] == c;
        let both = internal(|e| e.acc_a && e.acc_b);
        let start = both.unwrap_or(ea).0;
        let prefix = bfs_path(&edges, 0..initial_count, start, |_| true)
            .expect("component nodes are reachable");
        // start --ea--> ... --eb--> ... start, all within the component.
        let mut period = Vec::new();
        let mut at = start;
        let hops = match both {
            Some(e) => vec![e],
            None => vec![ea, eb],
        };
        for (v, j) in hops {
            period.extend(bfs_path(&edges, [at], v, in_comp).expect("strongly connected"));
            period.push(edges[v][j].symbol);
            at = edges[v][j].to;
        }
        period.extend(bfs_path(&edges, [at], start, in_comp).expect("strongly connected"));
        return Ok(Intersection::NonEmpty(Lasso { prefix, period }));
    }
    Ok(Intersection::Empty)
}

/// Labels of a shortest path from any of `sources` to `target`, staying on
/// nodes accepted by `allowed`.
fn bfs_path(
    edges: &[Vec<Edge>],
    sources: impl IntoIterator<Item = usize>,
    target: usize,
    allowed: impl Fn(usize) -> bool,
) -> Option<Vec<Symbol>> {
    let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; edges.len()];
    let mut seen = vec![false; edges.len()];
    let mut queue = VecDeque::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == target {
            let mut word = Vec::new();
            let mut cur = v;
            while let Some((prev, sym)) = parent[cur] {
                word.push(sym);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for e in &edges[v] {
            if !seen[e.to] && allowed(e.to) {
                seen[e.to] = true;
                parent[e.to] = Some((v, e.symbol));
                queue.push_back(e.to);
            }
        }
    }
    None
}
