//! Writes the tangency graph of the FCC kissing arrangement as DIMACS and
//! JSON, for use with external colouring tools, and reads it back.

use tangency_lab::constructions::kissing_configuration;
use tangency_lab::tangency::{build_graph, TangencyGraph};

fn main() {
    let graph = build_graph(&kissing_configuration(3).expect("d = 3 is supported")).expect("valid");
    let dimacs = graph.to_dimacs();
    print!("{dimacs}");
    let back = TangencyGraph::from_dimacs(&dimacs).expect("round trip");
    assert_eq!(back.edges(), graph.edges());
    println!("{}", graph.to_json());
}
