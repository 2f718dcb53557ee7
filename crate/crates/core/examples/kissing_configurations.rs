//! Kissing arrangements in dimensions 1, 2, 3, 4 and 8: the central ball's
//! degree and the structure of the outer shell. The 241-ball graph in
//! dimension 8 gets a small search budget, so only bounds are reported there.

use tangency_lab::colouring::{chromatic_number, DEFAULT_BUDGET};
use tangency_lab::constructions::kissing_configuration;
use tangency_lab::geometry::validate_configuration;
use tangency_lab::tangency::build_graph;

fn main() {
    for d in [1, 2, 3, 4, 8] {
        let cfg = kissing_configuration(d).expect("supported dimension");
        let report = validate_configuration(&cfg);
        let graph = build_graph(&cfg).expect("valid");
        let shell_edges = graph.edge_count() - graph.degree(0);
        let budget = if d == 8 { 100_000 } else { DEFAULT_BUDGET };
        let chi = chromatic_number(&graph, budget);
        println!(
            "d={d}: centre degree {:>3}, shell edges {:>5}, pairs scanned {:>6}, chi {}",
            graph.degree(0),
            shell_edges,
            report.pair_count,
            if chi.exact { chi.upper.to_string() } else { format!("between {} and {}", chi.lower, chi.upper) }
        );
    }
}
