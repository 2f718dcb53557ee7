//! Proper colourings of tangency graphs.
//!
//! [`greedy_colour`] is the radius-ordered greedy colouring whose palette is
//! bounded by the largest back degree plus one. [`dsatur`] is a stronger
//! heuristic used to seed the exact search in [`chromatic_number`], which
//! closes the gap to the clique lower bound from [`max_clique`].

mod clique;
mod dsatur;
mod exact;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Configuration;
use crate::tangency::{build_graph, TangencyError, TangencyGraph};

pub use clique::{max_clique, CliqueResult};
pub use dsatur::dsatur;
pub use exact::{chromatic_number, ChromaticResult};

/// Default search budget in node expansions.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColouringError {
    #[error("colouring has {colours} entries but the graph has {vertices} vertices")]
    LengthMismatch { colours: usize, vertices: usize },
}

/// Dense 0-based colour indices, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Colouring {
    colours: Vec<usize>,
}

impl Colouring {
    pub fn new(colours: Vec<usize>) -> Colouring {
        Colouring { colours }
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Largest colour index plus one; zero for an empty colouring.
    pub fn palette_size(&self) -> usize {
        self.colours.iter().max().map_or(0, |&c| c + 1)
    }

    /// The interchange document `{"colours": [...], "palette_size": k, "proper": bool}`.
    pub fn to_document(&self, graph: &TangencyGraph) -> ColouringDocument {
        ColouringDocument {
            colours: self.colours.clone(),
            palette_size: self.palette_size(),
            proper: verify_colouring(graph, self).unwrap_or(false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouringDocument {
    pub colours: Vec<usize>,
    pub palette_size: usize,
    pub proper: bool,
}

/// True iff no edge joins two vertices of the same colour.
pub fn verify_colouring(graph: &TangencyGraph, colouring: &Colouring) -> Result<bool, ColouringError> {
    if colouring.len() != graph.vertex_count() {
        return Err(ColouringError::LengthMismatch {
            colours: colouring.len(),
            vertices: graph.vertex_count(),
        });
    }
    let c = colouring.colours();
    Ok(graph.edges().iter().all(|&(i, j)| c[i] != c[j]))
}

/// Colours a valid configuration greedily along the decreasing-radius order:
/// each ball takes the smallest colour unused by its already-coloured
/// neighbours.
pub fn greedy_colour(cfg: &Configuration) -> Result<Colouring, TangencyError> {
    Ok(greedy_colour_graph(&build_graph(cfg)?))
}

/// [`greedy_colour`] on a prebuilt graph, using the graph's radii.
pub fn greedy_colour_graph(graph: &TangencyGraph) -> Colouring {
    greedy_along(graph, &graph.decreasing_radius_order().order)
}

/// First-fit colouring along an arbitrary vertex order.
pub fn greedy_along(graph: &TangencyGraph, order: &[usize]) -> Colouring {
    const UNSET: usize = usize::MAX;
    let mut colours = vec![UNSET; graph.vertex_count()];
    let mut taken: Vec<bool> = Vec::new();
    for &v in order {
        taken.clear();
        taken.resize(graph.degree(v) + 1, false);
        for &w in graph.neighbours(v) {
            let c = colours[w];
            if c != UNSET && c < taken.len() {
                taken[c] = true;
            }
        }
        colours[v] = taken.iter().position(|&t| !t).expect("degree + 1 slots");
    }
    Colouring::new(colours)
}
