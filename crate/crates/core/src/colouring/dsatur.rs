use std::cmp::Reverse;
use std::collections::{BTreeSet, HashSet};

use super::Colouring;
use crate::tangency::TangencyGraph;

/// Maximum-saturation-first colouring. The next vertex is the uncoloured one
/// with the most distinct neighbour colours, ties broken by higher degree and
/// then lower index; it takes the smallest free colour.
pub fn dsatur(graph: &TangencyGraph) -> Colouring {
    let n = graph.vertex_count();
    let mut colours = vec![usize::MAX; n];
    let mut seen: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    let key = |v: usize, sat: usize| (Reverse(sat), Reverse(graph.degree(v)), v);
    let mut queue: BTreeSet<_> = (0..n).map(|v| key(v, 0)).collect();

    while let Some((_, _, v)) = queue.pop_first() {
        let c = (0..).find(|c| !seen[v].contains(c)).expect("unbounded range");
        colours[v] = c;
        for &w in graph.neighbours(v) {
            if colours[w] != usize::MAX {
                continue;
            }
            let before = seen[w].len();
            if seen[w].insert(c) {
                queue.remove(&key(w, before));
                queue.insert(key(w, before + 1));
            }
        }
    }
    Colouring::new(colours)
}
