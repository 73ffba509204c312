//! Iterative Tarjan SCC over adjacency lists.

/// Strongly connected components of a directed graph on `0..n`.
#[derive(Clone, Debug)]
pub struct Sccs {
    /// Components in reverse topological order: every edge goes from a
    /// component to itself or to one with a smaller index.
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
}

impl Sccs {
    /// A component is nontrivial if it contains a cycle: more than one node,
    /// or a single node with a self-loop.
    pub fn is_nontrivial(&self, comp: usize, adj: &[Vec<usize>]) -> bool {
        let nodes = &self.components[comp];
        nodes.len() > 1 || adj[nodes[0]].contains(&nodes[0])
    }
}

const UNVISITED: usize = usize::MAX;

pub fn tarjan(adj: &[Vec<usize>]) -> Sccs {
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut component_of = vec![UNVISITED; n];
    let mut components = Vec::new();
    let mut next_index = 0;
    // (node, position of the next edge to explore)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[v]);
            }
            if lowlink[v] == index[v] {
                let id = components.len();
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    component_of[w] = id;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }

    Sccs {
        components,
        component_of,
    }
}
