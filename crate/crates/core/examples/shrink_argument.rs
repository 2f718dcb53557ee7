//! Shrinks every neighbour of the smallest ball down to its size, keeping
//! each contact point, and checks the result is still a packing. The shrunk
//! neighbours all touch one ball of the same size, so there are at most
//! kappa(d) of them.

use tangency_lab::constructions::{known_kissing_number, shrink_to_index};
use tangency_lab::geometry::validate_configuration;
use tangency_lab::packing_gen::{random_tangent_packing, GeneratorParams, RadiusLaw};
use tangency_lab::tangency::build_graph;

fn main() {
    for d in [2, 3, 4] {
        let mut worst = 0;
        for seed in 0..200 {
            let params = GeneratorParams::new(d, 60, seed, RadiusLaw::Uniform { lo: 0.5, hi: 3.0 });
            let cfg = random_tangent_packing(&params).expect("sparse packings do not stall");
            let smallest = (0..cfg.len())
                .min_by(|&a, &b| cfg.balls()[a].radius().to_f64().total_cmp(&cfg.balls()[b].radius().to_f64()))
                .expect("non-empty");
            let shrunk = shrink_to_index(&cfg, smallest).expect("shrinking keeps a packing");
            assert!(validate_configuration(&shrunk).is_valid());
            worst = worst.max(build_graph(&shrunk).expect("valid").max_degree());
        }
        println!(
            "d={d}: 200 packings shrunk, largest neighbourhood {worst}, kissing number {}",
            known_kissing_number(d).expect("known")
        );
    }
}
