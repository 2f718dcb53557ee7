use serde::{Deserialize, Serialize};

use super::{dsatur, max_clique, Colouring};
use crate::tangency::TangencyGraph;

/// Bracketing bounds on the chromatic number of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// A proper colouring with `upper` colours.
    pub witness: Colouring,
    /// A clique; its size is a lower bound (equal to `lower` unless the
    /// search proved more by exhausting smaller palettes).
    pub clique_witness: Vec<usize>,
    /// Whether the clique search finished within budget.
    pub clique_complete: bool,
    /// Search nodes spent by the clique and colouring searches together.
    pub nodes: u64,
}

impl ChromaticResult {
    pub fn budget_exhausted(&self) -> bool {
        !self.exact
    }
}

enum Outcome {
    Coloured(Vec<usize>),
    Infeasible,
    Exhausted,
}

/// Branch-and-bound chromatic number.
///
/// The lower bound starts at a maximum clique, the upper bound at the DSATUR
/// palette. Palettes `k = lower, lower + 1, ...` are then tested for
/// colourability in turn: the first feasible `k` is the chromatic number,
/// every infeasible one raises the lower bound. The clique search and the
/// colouring search each get `budget` node expansions.
pub fn chromatic_number(graph: &TangencyGraph, budget: u64) -> ChromaticResult {
    let n = graph.vertex_count();
    let clique = max_clique(graph, budget);
    let heuristic = dsatur(graph);
    let mut lower = clique.size().max(usize::from(n > 0));
    let mut upper = heuristic.palette_size();
    let mut witness = heuristic;
    let mut nodes = clique.nodes;
    let mut remaining = budget;

    while lower < upper {
        let mut search = KColouring::new(graph, lower, &clique.vertices, remaining);
        let outcome = search.run();
        nodes += search.nodes;
        remaining = remaining.saturating_sub(search.nodes);
        match outcome {
            Outcome::Coloured(colours) => {
                witness = Colouring::new(colours);
                upper = lower;
            }
            Outcome::Infeasible => lower += 1,
            Outcome::Exhausted => break,
        }
    }

    ChromaticResult {
        lower,
        upper,
        exact: lower == upper,
        witness,
        clique_witness: clique.vertices,
        clique_complete: clique.complete,
        nodes,
    }
}

/// Exhaustive search for a proper colouring with at most `k` colours.
///
/// Vertices with fewer than `k` neighbours are peeled first (they can always
/// be coloured last), then the remaining core is searched with DSATUR
/// branching. Clique vertices in the core are fixed to colours `0..q`, and a
/// vertex may open at most one colour beyond the highest used so far.
struct KColouring<'g> {
    graph: &'g TangencyGraph,
    k: usize,
    budget: u64,
    nodes: u64,
    peeled: Vec<usize>,
    core: Vec<usize>,
    local_adj: Vec<Vec<usize>>,
    colour: Vec<usize>,
    counts: Vec<u32>,
    saturation: Vec<usize>,
    coloured: usize,
    highest: usize,
}

const NONE: usize = usize::MAX;

impl<'g> KColouring<'g> {
    fn new(graph: &'g TangencyGraph, k: usize, clique: &[usize], budget: u64) -> Self {
        let n = graph.vertex_count();
        let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut peeled = Vec::new();
        let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] < k).collect();
        while let Some(v) = stack.pop() {
            if removed[v] {
                continue;
            }
            removed[v] = true;
            peeled.push(v);
            for &w in graph.neighbours(v) {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] + 1 == k {
                        stack.push(w);
                    }
                }
            }
        }
        let core: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
        let mut local = vec![NONE; n];
        for (i, &v) in core.iter().enumerate() {
            local[v] = i;
        }
        let local_adj = core
            .iter()
            .map(|&v| {
                graph
                    .neighbours(v)
                    .iter()
                    .filter_map(|&w| (local[w] != NONE).then_some(local[w]))
                    .collect()
            })
            .collect();
        let m = core.len();
        let mut search = KColouring {
            graph,
            k,
            budget,
            nodes: 0,
            peeled,
            core,
            local_adj,
            colour: vec![NONE; m],
            counts: vec![0; m * k],
            saturation: vec![0; m],
            coloured: 0,
            highest: NONE,
        };
        let fixed: Vec<usize> = clique
            .iter()
            .filter_map(|&v| (local[v] != NONE).then_some(local[v]))
            .collect();
        for (c, &v) in fixed.iter().enumerate().take(k) {
            search.assign(v, c);
        }
        search.highest = fixed.len().min(k).checked_sub(1).unwrap_or(NONE);
        search
    }

    fn run(&mut self) -> Outcome {
        match self.search() {
            Outcome::Coloured(_) => Outcome::Coloured(self.extend_to_peeled()),
            other => other,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        self.coloured += 1;
        for idx in 0..self.local_adj[v].len() {
            let w = self.local_adj[v][idx];
            let slot = &mut self.counts[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colour[v];
        self.colour[v] = NONE;
        self.coloured -= 1;
        for idx in 0..self.local_adj[v].len() {
            let w = self.local_adj[v][idx];
            let slot = &mut self.counts[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn pick(&self) -> usize {
        let mut best = NONE;
        for v in 0..self.core.len() {
            if self.colour[v] != NONE {
                continue;
            }
            if best == NONE
                || (self.saturation[v], self.local_adj[v].len()) > (self.saturation[best], self.local_adj[best].len())
            {
                best = v;
            }
        }
        best
    }

    fn search(&mut self) -> Outcome {
        if self.coloured == self.core.len() {
            return Outcome::Coloured(Vec::new());
        }
        if self.nodes >= self.budget {
            return Outcome::Exhausted;
        }
        self.nodes += 1;
        let v = self.pick();
        if self.saturation[v] >= self.k {
            return Outcome::Infeasible;
        }
        let limit = match self.highest {
            NONE => 1,
            h => (h + 2).min(self.k),
        };
        for c in 0..limit {
            if self.counts[v * self.k + c] != 0 {
                continue;
            }
            let previous = self.highest;
            if previous == NONE || c > previous {
                self.highest = c;
            }
            self.assign(v, c);
            match self.search() {
                Outcome::Infeasible => {}
                done => return done,
            }
            self.unassign(v);
            self.highest = previous;
        }
        Outcome::Infeasible
    }

    /// Full colouring: the core's colours plus first-fit on peeled vertices in
    /// reverse peeling order, where each has fewer than `k` coloured
    /// neighbours.
    fn extend_to_peeled(&self) -> Vec<usize> {
        let mut colours = vec![NONE; self.graph.vertex_count()];
        for (i, &v) in self.core.iter().enumerate() {
            colours[v] = self.colour[i];
        }
        let mut taken = vec![false; self.k];
        for &v in self.peeled.iter().rev() {
            taken.iter_mut().for_each(|t| *t = false);
            for &w in self.graph.neighbours(v) {
                if colours[w] != NONE {
                    taken[colours[w]] = true;
                }
            }
            colours[v] = taken.iter().position(|&t| !t).expect("peeled vertex has a free colour");
        }
        colours
    }
}
