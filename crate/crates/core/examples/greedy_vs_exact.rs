//! Compares the radius-ordered greedy colouring, DSATUR and the exact
//! chromatic number on seeded random packings.

use tangency_lab::harness::analyse_configuration;
use tangency_lab::packing_gen::{random_tangent_packing, GeneratorParams, RadiusLaw};

fn main() {
    println!("{:>2} {:>5} {:>4} {:>6} {:>5} {:>6} {:>6} {:>4}", "d", "seed", "n", "edges", "back", "greedy", "dsatur", "chi");
    for d in [2, 3, 4] {
        for seed in 0..4 {
            let params = GeneratorParams::new(d, 120, seed, RadiusLaw::Uniform { lo: 0.25, hi: 4.0 });
            let cfg = random_tangent_packing(&params).expect("sparse packings do not stall");
            let r = analyse_configuration(&cfg, "random", Some(seed), Some(params), 1_000_000).expect("valid");
            let chi = if r.chi_exact { r.chi_upper.to_string() } else { format!("{}..{}", r.chi_lower, r.chi_upper) };
            println!(
                "{d:>2} {seed:>5} {:>4} {:>6} {:>5} {:>6} {:>6} {chi:>4}",
                r.n, r.edges, r.max_back_degree, r.greedy, r.dsatur
            );
        }
    }
}
