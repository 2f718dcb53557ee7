use serde::{Deserialize, Serialize};

use crate::tangency::TangencyGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    /// Vertices of the best clique found, ascending.
    pub vertices: Vec<usize>,
    /// True when the search finished, so `vertices` is a maximum clique.
    pub complete: bool,
    pub nodes: u64,
}

impl CliqueResult {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn budget_exhausted(&self) -> bool {
        !self.complete
    }
}

/// Branch-and-bound maximum clique search with a greedy-colouring bound.
///
/// Each vertex is expanded together with its neighbours that come later in a
/// smallest-last (degeneracy) order, so candidate sets stay small on sparse
/// contact graphs. `budget` caps the number of search nodes; when it runs out
/// the best clique so far is returned with `complete == false`.
pub fn max_clique(graph: &TangencyGraph, budget: u64) -> CliqueResult {
    let n = graph.vertex_count();
    if n == 0 {
        return CliqueResult {
            vertices: Vec::new(),
            complete: true,
            nodes: 0,
        };
    }
    let order = smallest_last_order(graph);
    let mut rank = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }

    let mut search = Search {
        graph,
        best: vec![order[0]],
        nodes: 0,
        budget,
        exhausted: false,
    };
    // Process high-core vertices first so a large clique is found early.
    for &v in order.iter().rev() {
        let candidates: Vec<usize> = graph
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&w| rank[w] > rank[v])
            .collect();
        if candidates.len() < search.best.len() {
            continue;
        }
        let mut current = vec![v];
        search.expand(&mut current, candidates);
        if search.exhausted {
            break;
        }
    }

    let mut vertices = search.best;
    vertices.sort_unstable();
    CliqueResult {
        vertices,
        complete: !search.exhausted,
        nodes: search.nodes,
    }
}

struct Search<'g> {
    graph: &'g TangencyGraph,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, candidates: Vec<usize>) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        if candidates.is_empty() {
            return;
        }
        let (sorted, bounds) = colour_sort(self.graph, &candidates);
        for idx in (0..sorted.len()).rev() {
            if current.len() + bounds[idx] <= self.best.len() {
                return;
            }
            let v = sorted[idx];
            let next: Vec<usize> = sorted[..idx]
                .iter()
                .copied()
                .filter(|&w| self.graph.has_edge(v, w))
                .collect();
            current.push(v);
            self.expand(current, next);
            current.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

/// Greedy sequential colouring of the candidate set. Returns the candidates
/// sorted by colour class and, for each position, the number of colours used
/// up to it, which bounds the clique size within that prefix.
fn colour_sort(graph: &TangencyGraph, candidates: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in candidates {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&w| !graph.has_edge(v, w)))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut sorted = Vec::with_capacity(candidates.len());
    let mut bounds = Vec::with_capacity(candidates.len());
    for (k, class) in classes.into_iter().enumerate() {
        for v in class {
            sorted.push(v);
            bounds.push(k + 1);
        }
    }
    (sorted, bounds)
}

/// Repeatedly removes a minimum-degree vertex (lowest index on ties).
fn smallest_last_order(graph: &TangencyGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut buckets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); graph.max_degree() + 1];
    for v in 0..n {
        buckets[degree[v]].insert(v);
    }
    let mut order = Vec::with_capacity(n);
    let mut low: usize = 0;
    for _ in 0..n {
        low = low.saturating_sub(1);
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().expect("non-empty bucket");
        removed[v] = true;
        order.push(v);
        for &w in graph.neighbours(v) {
            if !removed[w] {
                buckets[degree[w]].remove(&w);
                degree[w] -= 1;
                buckets[degree[w]].insert(w);
            }
        }
    }
    order
}
