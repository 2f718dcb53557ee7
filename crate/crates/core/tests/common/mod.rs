#![allow(dead_code)]

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tangency_lab::constructions::{kissing_configuration, simplex_clique};
use tangency_lab::geometry::Configuration;
use tangency_lab::packing_gen::{apollonian_gasket, random_tangent_packing, GeneratorParams, RadiusLaw};
use tangency_lab::tangency::{build_graph, TangencyGraph};

/// Smallest k admitting a proper colouring, by trying all k^n assignments.
pub fn brute_force_chromatic(g: &TangencyGraph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    (1..=n)
        .find(|&k| {
            let mut colours = vec![0usize; n];
            loop {
                if g.edges().iter().all(|&(a, b)| colours[a] != colours[b]) {
                    return true;
                }
                // odometer increment
                let mut i = 0;
                while i < n && colours[i] == k - 1 {
                    colours[i] = 0;
                    i += 1;
                }
                if i == n {
                    return false;
                }
                colours[i] += 1;
            }
        })
        .expect("n colours always suffice")
}

/// Largest clique by checking every vertex subset.
pub fn brute_force_clique(g: &TangencyGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|mask| {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// The balls at `indices`, without declared tangencies.
pub fn subset(cfg: &Configuration, indices: &[usize]) -> Configuration {
    let balls = indices.iter().map(|&i| cfg.balls()[i].clone()).collect();
    Configuration::new(cfg.dimension(), cfg.mode(), balls, cfg.policy(), None).unwrap()
}

pub fn structured_sources() -> Vec<Configuration> {
    let mut out: Vec<Configuration> = [1, 2, 3, 4, 8].iter().map(|&d| kissing_configuration(d).unwrap()).collect();
    out.extend((2..=6).map(|d| simplex_clique(d).unwrap()));
    out.push(apollonian_gasket([-1, 2, 2, 3], 3).unwrap().configuration);
    out.push(apollonian_gasket([-2, 3, 6, 7], 2).unwrap().configuration);
    out
}

/// `count` tangency graphs on at most `max_n` vertices: random subsets of
/// structured configurations and small random packings.
pub fn small_tangency_graphs(count: usize, max_n: usize, seed: u64) -> Vec<TangencyGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sources = structured_sources();
    (0..count)
        .map(|i| {
            let size = rng.random_range(1..=max_n);
            let cfg = if i % 4 == 3 {
                let d = rng.random_range(2..=3);
                let params = GeneratorParams::new(d, size, rng.random(), RadiusLaw::Constant { r: 1.0 });
                random_tangent_packing(&params).unwrap()
            } else {
                let source = &sources[rng.random_range(0..sources.len())];
                let take = size.min(source.len());
                let mut picked = sample(&mut rng, source.len(), take).into_vec();
                picked.sort();
                subset(source, &picked)
            };
            build_graph(&cfg).unwrap()
        })
        .collect()
}
