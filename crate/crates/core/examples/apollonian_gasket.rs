//! Grows the (-1, 2, 2, 3) Apollonian gasket in exact rationals and checks
//! the Descartes identity and the four-colour consistency at each depth.

use tangency_lab::colouring::{chromatic_number, DEFAULT_BUDGET};
use tangency_lab::geometry::validate_configuration;
use tangency_lab::packing_gen::{apollonian_gasket, descartes_fourth_curvature};
use tangency_lab::geometry::Scalar;
use tangency_lab::tangency::build_graph;

fn main() {
    let (a, b) = descartes_fourth_curvature(&Scalar::integer(-1), &Scalar::integer(2), &Scalar::integer(2)).unwrap();
    println!("circles tangent to (-1, 2, 2): curvatures {a} and {b}");

    for depth in 0..=5 {
        let gasket = apollonian_gasket([-1, 2, 2, 3], depth).expect("valid root");
        let identity = gasket.quadruples.iter().all(|q| q.satisfies_descartes());
        let valid = validate_configuration(&gasket.configuration).is_valid();
        let graph = build_graph(&gasket.configuration).expect("valid");
        let chi = chromatic_number(&graph, DEFAULT_BUDGET);
        let largest = gasket.curvatures.iter().max().expect("non-empty");
        println!(
            "depth {depth}: {:>4} circles, {:>4} contacts, max curvature {largest}, identity {identity}, valid {valid}, chi {}",
            graph.vertex_count(),
            graph.edge_count(),
            chi.upper
        );
    }
}
