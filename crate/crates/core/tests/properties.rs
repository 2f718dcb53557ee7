mod common;

use proptest::prelude::*;

use tangency_lab::colouring::{chromatic_number, dsatur, greedy_colour_graph, max_clique, verify_colouring};
use tangency_lab::constructions::{bounds_for_dimension, shrink_to_index};
use tangency_lab::geometry::{is_connected, json, validate_configuration};
use tangency_lab::harness::analyse_configuration;
use tangency_lab::packing_gen::{apollonian_gasket, random_tangent_packing, GeneratorParams, RadiusLaw};
use tangency_lab::tangency::{build_graph, TangencyGraph};

fn radius_law() -> impl Strategy<Value = RadiusLaw> {
    prop_oneof![
        (0.1f64..5.0).prop_map(|r| RadiusLaw::Constant { r }),
        (0.1f64..2.0, 1.0f64..4.0).prop_map(|(lo, w)| RadiusLaw::Uniform { lo, hi: lo * w }),
    ]
}

fn params() -> impl Strategy<Value = GeneratorParams> {
    (1usize..=5, 1usize..40, any::<u64>(), radius_law()).prop_map(|(d, n, seed, law)| GeneratorParams::new(d, n, seed, law))
}

fn small_graph() -> impl Strategy<Value = TangencyGraph> {
    (1usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            TangencyGraph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_packings_are_valid_connected_and_reproducible(p in params()) {
        let a = random_tangent_packing(&p);
        let b = random_tangent_packing(&p);
        prop_assert_eq!(&a, &b);
        if let Ok(cfg) = a {
            prop_assert_eq!(cfg.len(), p.n);
            prop_assert!(validate_configuration(&cfg).is_valid());
            prop_assert!(is_connected(&cfg));
            let back = json::from_json(&json::to_json(&cfg)).unwrap();
            prop_assert_eq!(back, cfg);
        }
    }

    #[test]
    fn greedy_respects_back_degree(p in params()) {
        if let Ok(cfg) = random_tangent_packing(&p) {
            let g = build_graph(&cfg).unwrap();
            let c = greedy_colour_graph(&g);
            prop_assert!(verify_colouring(&g, &c).unwrap());
            prop_assert!(c.palette_size() <= g.decreasing_radius_order().max_back_degree() + 1);
            if let Some(kappa) = bounds_for_dimension(p.dimension).unwrap().kappa {
                prop_assert!(g.decreasing_radius_order().max_back_degree() as u128 <= kappa);
            }
        }
    }

    #[test]
    fn constant_discs_have_back_degree_at_most_six(seed in any::<u64>(), n in 2usize..120) {
        let cfg = random_tangent_packing(&GeneratorParams::new(2, n, seed, RadiusLaw::Constant { r: 1.0 })).unwrap();
        prop_assert!(build_graph(&cfg).unwrap().decreasing_radius_order().max_back_degree() <= 6);
    }

    #[test]
    fn exact_solver_matches_enumeration(g in small_graph()) {
        let r = chromatic_number(&g, 1_000_000);
        prop_assert!(r.exact);
        prop_assert_eq!(r.upper, common::brute_force_chromatic(&g));
        prop_assert!(verify_colouring(&g, &r.witness).unwrap());
        prop_assert!(r.upper <= dsatur(&g).palette_size());
    }

    #[test]
    fn clique_matches_enumeration(g in small_graph()) {
        prop_assert_eq!(max_clique(&g, 1_000_000).size(), common::brute_force_clique(&g));
    }

    #[test]
    fn shrinking_onto_the_smallest_ball_stays_valid(p in params()) {
        if let Ok(cfg) = random_tangent_packing(&p) {
            let smallest = (0..cfg.len())
                .min_by(|&a, &b| cfg.balls()[a].radius().to_f64().total_cmp(&cfg.balls()[b].radius().to_f64()))
                .unwrap();
            let shrunk = shrink_to_index(&cfg, smallest).unwrap();
            prop_assert!(validate_configuration(&shrunk).is_valid());
            let g = build_graph(&shrunk).unwrap();
            prop_assert!(g.edge_count() >= shrunk.len() - 1);
        }
    }

    #[test]
    fn gaskets_stay_exact(root in prop::sample::select(vec![[-1i64, 2, 2, 3], [-2, 3, 6, 7], [-3, 5, 8, 8], [-4, 8, 9, 9]]), depth in 0usize..=3) {
        let g = apollonian_gasket(root, depth).unwrap();
        prop_assert!(g.quadruples.iter().all(|q| q.satisfies_descartes() && q.satisfies_complex_descartes()));
        prop_assert!(validate_configuration(&g.configuration).is_valid());
        let chi = chromatic_number(&build_graph(&g.configuration).unwrap(), 1_000_000);
        prop_assert!(chi.exact && chi.upper <= 4);
    }
}

#[test]
fn dsatur_versus_greedy_on_random_packings() {
    // Not a theorem; tracked so regressions in either heuristic show up.
    let mut above = 0;
    for seed in 0..300 {
        let cfg = random_tangent_packing(&GeneratorParams::new(3, 80, seed, RadiusLaw::Uniform { lo: 0.3, hi: 3.0 })).unwrap();
        let r = analyse_configuration(&cfg, "random", Some(seed), None, 100_000).unwrap();
        if r.dsatur > r.greedy {
            above += 1;
        }
    }
    assert_eq!(above, 0);
}
