//! Tangency graphs and the radius-ordered elimination used by the greedy
//! colouring bound.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{scan_pairs, Configuration, GeometryError, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TangencyError {
    #[error("invalid configuration: {}", describe_invalid(overlaps, failed_declared))]
    InvalidConfiguration {
        overlaps: Vec<(usize, usize)>,
        failed_declared: Vec<(usize, usize)>,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("edge ({0}, {1}) is a loop or out of range")]
    BadEdge(usize, usize),
    #[error("expected a {expected}-dimensional configuration, got dimension {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("configuration is not connected")]
    NotConnected,
    #[error("need at least {0} balls")]
    TooFewBalls(usize),
    #[error("no disc with at most five tangencies exists; geometry invariant violated")]
    NotFound,
    #[error("DIMACS line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("graph JSON: {0}")]
    GraphJson(String),
}

fn describe_invalid(overlaps: &[(usize, usize)], failed: &[(usize, usize)]) -> String {
    if let Some((i, j)) = overlaps.first() {
        format!("balls {i} and {j} overlap ({} overlapping pairs)", overlaps.len())
    } else if let Some((i, j)) = failed.first() {
        format!("declared tangency ({i}, {j}) does not hold ({} failing)", failed.len())
    } else {
        "unknown".to_string()
    }
}

/// Simple undirected graph on ball indices; `{i, j}` is an edge iff balls
/// `i` and `j` touch.
#[derive(Debug, Clone, PartialEq)]
pub struct TangencyGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    radii: Vec<Scalar>,
}

/// Builds the tangency graph of a valid configuration.
///
/// Fails with [`TangencyError::InvalidConfiguration`] if any pair overlaps or
/// a declared tangency does not classify as tangent.
pub fn build_graph(cfg: &Configuration) -> Result<TangencyGraph, TangencyError> {
    let scan = scan_pairs(cfg)?;
    let failed_declared: Vec<(usize, usize)> = cfg
        .declared_tangencies()
        .unwrap_or_default()
        .iter()
        .filter(|p| scan.tangent.binary_search(p).is_err())
        .copied()
        .collect();
    if !scan.overlaps.is_empty() || !failed_declared.is_empty() {
        return Err(TangencyError::InvalidConfiguration {
            overlaps: scan.overlaps,
            failed_declared,
        });
    }
    let mut graph = TangencyGraph::from_edges(cfg.len(), scan.tangent)?;
    graph.radii = cfg.radii();
    Ok(graph)
}

impl TangencyGraph {
    /// A graph from an explicit edge list. Pairs are normalised to `i < j`
    /// and deduplicated; every vertex gets a unit radius.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<TangencyGraph, TangencyError> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(TangencyError::BadEdge(a, b));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &list {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(TangencyGraph {
            n,
            edges: list,
            adjacency,
            radii: vec![Scalar::F64(1.0); n],
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(i, j)` pairs with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn radii(&self) -> &[Scalar] {
        &self.radii
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    /// The graph with vertex `v` renamed to `perm[v]`. Radii move with their
    /// vertices.
    pub fn relabel(&self, perm: &[usize]) -> TangencyGraph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut g = TangencyGraph::from_edges(self.n, self.edges.iter().map(|&(i, j)| (perm[i], perm[j])))
            .expect("relabelling preserves a simple graph");
        let mut radii = self.radii.clone();
        for (v, r) in self.radii.iter().enumerate() {
            radii[perm[v]] = r.clone();
        }
        g.radii = radii;
        g
    }

    /// Vertices sorted by radius, largest first, ties by ascending index.
    pub fn decreasing_radius_order(&self) -> EliminationOrder {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| {
            self.radii[b]
                .try_cmp(&self.radii[a])
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });
        EliminationOrder::new(self, order)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDoc {
            n: self.n,
            edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
        })
        .expect("graph documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<TangencyGraph, TangencyError> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| TangencyError::GraphJson(e.to_string()))?;
        TangencyGraph::from_edges(doc.n, doc.edges.into_iter().map(|[i, j]| (i, j)))
    }

    /// DIMACS `col` text: a `p edge n m` header and 1-based `e i j` lines.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "c tangency graph");
        let _ = writeln!(out, "p edge {} {}", self.n, self.edges.len());
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "e {} {}", i + 1, j + 1);
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<TangencyGraph, TangencyError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: &str| TangencyError::Dimacs {
                line,
                message: message.to_string(),
            };
            let mut fields = raw.split_whitespace();
            match fields.next() {
                None | Some("c") => {}
                Some("p") => {
                    let _format = fields.next().ok_or_else(|| err("missing format"))?;
                    let count = fields
                        .next()
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| err("bad vertex count"))?;
                    n = Some(count);
                }
                Some("e") => {
                    let mut endpoint = || {
                        fields
                            .next()
                            .and_then(|s| s.parse::<usize>().ok())
                            .filter(|&v| v >= 1)
                            .ok_or_else(|| err("bad edge endpoint"))
                    };
                    let a = endpoint()?;
                    let b = endpoint()?;
                    if n.is_none() {
                        return Err(err("edge before problem line"));
                    }
                    edges.push((a - 1, b - 1));
                }
                Some(_) => return Err(err("unknown line type")),
            }
        }
        let n = n.ok_or(TangencyError::Dimacs {
            line: 0,
            message: "missing problem line".to_string(),
        })?;
        TangencyGraph::from_edges(n, edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// A vertex order together with each vertex's count of earlier neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
    pub back_degrees: Vec<usize>,
}

impl EliminationOrder {
    /// Computes back degrees for an arbitrary permutation of the vertices.
    pub fn new(graph: &TangencyGraph, order: Vec<usize>) -> EliminationOrder {
        let mut position = vec![usize::MAX; graph.vertex_count()];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        debug_assert!(position.iter().all(|&p| p != usize::MAX), "order must be a permutation");
        let back_degrees = order
            .iter()
            .enumerate()
            .map(|(k, &v)| graph.neighbours(v).iter().filter(|&&w| position[w] < k).count())
            .collect();
        EliminationOrder { order, back_degrees }
    }

    pub fn max_back_degree(&self) -> usize {
        self.back_degrees.iter().copied().max().unwrap_or(0)
    }
}

pub fn decreasing_radius_order(cfg: &Configuration) -> Result<EliminationOrder, TangencyError> {
    Ok(build_graph(cfg)?.decreasing_radius_order())
}

/// Largest back degree along the decreasing-radius order. For a valid
/// configuration in dimension `d` this never exceeds the kissing number.
pub fn max_back_degree(cfg: &Configuration) -> Result<usize, TangencyError> {
    Ok(decreasing_radius_order(cfg)?.max_back_degree())
}

/// Index of a disc touching at most five others in a connected planar disc
/// configuration. Such a disc always exists; [`TangencyError::NotFound`]
/// means the geometry is broken.
pub fn low_degree_witness(cfg: &Configuration) -> Result<usize, TangencyError> {
    if cfg.dimension() != 2 {
        return Err(TangencyError::WrongDimension {
            expected: 2,
            actual: cfg.dimension(),
        });
    }
    if cfg.len() < 2 {
        return Err(TangencyError::TooFewBalls(2));
    }
    let graph = build_graph(cfg)?;
    if !graph.is_connected() {
        return Err(TangencyError::NotConnected);
    }
    (0..graph.vertex_count())
        .find(|&v| graph.degree(v) <= 5)
        .ok_or(TangencyError::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Ball, ScalarMode, TolerancePolicy};
    use proptest::prelude::*;

    fn discs(specs: &[(f64, f64, f64)]) -> Configuration {
        let balls = specs.iter().map(|&(x, y, r)| Ball::f64(vec![x, y], r).unwrap()).collect();
        Configuration::new(2, ScalarMode::F64, balls, TolerancePolicy::default(), None).unwrap()
    }

    fn hex_flower() -> Configuration {
        let mut specs = vec![(0.0, 0.0, 1.0)];
        for k in 0..6 {
            let t = k as f64 * std::f64::consts::FRAC_PI_3;
            specs.push((2.0 * t.cos(), 2.0 * t.sin(), 1.0));
        }
        discs(&specs)
    }

    #[test]
    fn far_apart_balls_have_no_edges() {
        let g = build_graph(&discs(&[(0.0, 0.0, 1.0), (3.0, 0.0, 1.0)])).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn overlapping_input_is_rejected() {
        let err = build_graph(&discs(&[(0.0, 0.0, 1.0), (1.0, 0.0, 1.0)])).unwrap_err();
        assert_eq!(
            err,
            TangencyError::InvalidConfiguration {
                overlaps: vec![(0, 1)],
                failed_declared: vec![]
            }
        );
        assert!(err.to_string().contains("balls 0 and 1 overlap"));
    }

    #[test]
    fn order_sorts_by_radius_then_index() {
        let cfg = discs(&[(0.0, 0.0, 1.0), (10.0, 0.0, 3.0), (20.0, 0.0, 2.0)]);
        assert_eq!(decreasing_radius_order(&cfg).unwrap().order, vec![1, 2, 0]);
        let cfg = discs(&[(0.0, 0.0, 1.0), (2.0, 0.0, 1.0), (4.0, 0.0, 1.0), (6.0, 0.0, 1.0)]);
        let order = decreasing_radius_order(&cfg).unwrap();
        assert_eq!(order.order, vec![0, 1, 2, 3]);
        assert_eq!(order.back_degrees, vec![0, 1, 1, 1]);
    }

    #[test]
    fn single_ball_has_zero_back_degree() {
        assert_eq!(max_back_degree(&discs(&[(0.0, 0.0, 1.0)])).unwrap(), 0);
    }

    #[test]
    fn flower_witness_is_a_ring_disc() {
        let cfg = hex_flower();
        let g = build_graph(&cfg).unwrap();
        assert_eq!(g.degree(0), 6);
        assert!((1..7).all(|v| g.degree(v) == 3));
        let w = low_degree_witness(&cfg).unwrap();
        assert!((1..7).contains(&w));
    }

    #[test]
    fn witness_preconditions() {
        let two = discs(&[(0.0, 0.0, 1.0), (2.0, 0.0, 1.0)]);
        assert!(low_degree_witness(&two).unwrap() <= 1);
        assert_eq!(
            low_degree_witness(&discs(&[(0.0, 0.0, 1.0), (3.0, 0.0, 1.0)])),
            Err(TangencyError::NotConnected)
        );
        assert_eq!(low_degree_witness(&discs(&[(0.0, 0.0, 1.0)])), Err(TangencyError::TooFewBalls(2)));
        let line = Configuration::new(
            1,
            ScalarMode::F64,
            vec![Ball::unit_f64(vec![0.0]).unwrap(), Ball::unit_f64(vec![2.0]).unwrap()],
            TolerancePolicy::default(),
            None,
        )
        .unwrap();
        assert!(matches!(low_degree_witness(&line), Err(TangencyError::WrongDimension { .. })));
    }

    #[test]
    fn exports_json_and_dimacs() {
        let g = TangencyGraph::from_edges(3, [(2, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.to_json(), r#"{"n":3,"edges":[[0,1],[0,2]]}"#);
        assert_eq!(g.to_dimacs(), "c tangency graph\np edge 3 2\ne 1 2\ne 1 3\n");
        assert_eq!(TangencyGraph::from_dimacs(&g.to_dimacs()).unwrap().edges(), g.edges());
        assert_eq!(TangencyGraph::from_json(&g.to_json()).unwrap().edges(), g.edges());
    }

    #[test]
    fn dimacs_errors_carry_line_numbers() {
        let err = TangencyGraph::from_dimacs("p edge 2 1\ne 1 x\n").unwrap_err();
        assert!(matches!(err, TangencyError::Dimacs { line: 2, .. }));
        assert!(TangencyGraph::from_dimacs("e 1 2\n").is_err());
        assert!(matches!(
            TangencyGraph::from_dimacs("p edge 2 1\ne 1 1\n"),
            Err(TangencyError::BadEdge(0, 0))
        ));
    }

    #[test]
    fn rejects_loops_and_out_of_range_edges() {
        assert_eq!(TangencyGraph::from_edges(2, [(1, 1)]), Err(TangencyError::BadEdge(1, 1)));
        assert_eq!(TangencyGraph::from_edges(2, [(0, 2)]), Err(TangencyError::BadEdge(0, 2)));
    }

    fn arb_graph() -> impl Strategy<Value = TangencyGraph> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..30).prop_map(move |pairs| {
                TangencyGraph::from_edges(n, pairs.into_iter().filter(|(a, b)| a != b)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn back_degrees_sum_to_edge_count(g in arb_graph(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut order: Vec<usize> = (0..g.vertex_count()).collect();
            order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let elim = EliminationOrder::new(&g, order);
            prop_assert_eq!(elim.back_degrees.iter().sum::<usize>(), g.edge_count());
        }

        #[test]
        fn graph_is_relabelling_equivariant(
            specs in proptest::collection::vec((0i32..6, 0i32..6), 1..10),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            // Unit discs on a grid of spacing 2: tangent iff grid-adjacent.
            let mut cells: Vec<(i32, i32)> = specs;
            cells.sort_unstable();
            cells.dedup();
            let n = cells.len();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let original = discs(&cells.iter().map(|&(x, y)| (2.0 * x as f64, 2.0 * y as f64, 1.0)).collect::<Vec<_>>());
            let mut shuffled = vec![(0.0, 0.0, 1.0); n];
            for (v, &(x, y)) in cells.iter().enumerate() {
                shuffled[perm[v]] = (2.0 * x as f64, 2.0 * y as f64, 1.0);
            }
            let g = build_graph(&original).unwrap();
            let h = build_graph(&discs(&shuffled)).unwrap();
            prop_assert_eq!(g.relabel(&perm), h);
        }
    }
}
