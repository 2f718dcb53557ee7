//! Builds the simplex clique in dimensions 2 to 6 and shows that its
//! tangency graph is complete, so d + 2 colours are needed.

use tangency_lab::colouring::{chromatic_number, DEFAULT_BUDGET};
use tangency_lab::constructions::{simplex_clique, simplex_inner_radius};
use tangency_lab::tangency::build_graph;

fn main() {
    println!("{:>2} {:>6} {:>6} {:>12} {:>4}", "d", "balls", "edges", "inner r", "chi");
    for d in 2..=6 {
        let cfg = simplex_clique(d).expect("d >= 2");
        let graph = build_graph(&cfg).expect("construction is valid");
        let chi = chromatic_number(&graph, DEFAULT_BUDGET);
        assert!(chi.exact);
        println!(
            "{d:>2} {:>6} {:>6} {:>12.9} {:>4}",
            cfg.len(),
            graph.edge_count(),
            simplex_inner_radius(d),
            chi.upper
        );
    }
}
