//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed; exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use tangency_lab::colouring::{chromatic_number, greedy_colour_graph, DEFAULT_BUDGET};
use tangency_lab::constructions::{bounds_table, kissing_configuration, simplex_clique};
use tangency_lab::geometry::{validate_configuration, TolerancePolicy};
use tangency_lab::harness::{self, summarise, ExperimentPlan, LogEntry, CHI3_CEILING};
use tangency_lab::packing_gen::{apollonian_gasket, random_tangent_packing, GeneratorParams, RadiusLaw};
use tangency_lab::tangency::{build_graph, low_degree_witness};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bound_chain() -> Outcome {
    let (rows, ok) = harness::verify_bounds(1, 30).map_err(|e| e.to_string())?;
    ensure(ok, || "a row violates its invariants".into())?;
    let kappa = [(1, 2u128), (2, 6), (3, 12), (4, 24), (8, 240), (24, 196_560)];
    for r in &rows {
        let d = r.dimension;
        let expected = match kappa.iter().find(|(k, _)| *k == d) {
            Some((_, k)) => k + 1,
            None => 3u128.pow(d as u32),
        };
        ensure(r.upper == expected, || format!("d={d}: upper {} != {expected}", r.upper))?;
        ensure(d as u128 + 2 <= r.upper, || format!("d={d}: d+2 > upper"))?;
        ensure(r.upper <= 3u128.pow(d as u32), || format!("d={d}: upper above 3^d"))?;
    }
    let d3 = &rows[2];
    ensure(d3.lower == 5 && d3.upper == 13, || format!("d=3 row is {}..{}", d3.lower, d3.upper))?;
    let table = bounds_table(&rows[2..3]);
    let printed: Vec<&str> = table.lines().nth(1).unwrap_or("").split_whitespace().collect();
    ensure(printed.get(1..3) == Some(&["5", "13"][..]), || format!("d=3 printed as {printed:?}"))?;
    Ok("d=1..30 rows match; d=3 prints lower 5, upper 13".into())
}

fn clique_lower_bound() -> Outcome {
    for d in 2..=6 {
        let g = build_graph(&simplex_clique(d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let r = chromatic_number(&g, DEFAULT_BUDGET);
        ensure(r.exact && r.upper == d + 2, || format!("d={d}: {}..{} exact={}", r.lower, r.upper, r.exact))?;
    }
    Ok("chi(simplex_clique(d)) = d+2 exactly for d=2..6".into())
}

fn kissing_realisations() -> Outcome {
    let mut d8_scan = Duration::ZERO;
    for (d, k) in [(1, 2), (2, 6), (3, 12), (4, 24), (8, 240)] {
        let cfg = kissing_configuration(d).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let report = validate_configuration(&cfg);
        if d == 8 {
            d8_scan = start.elapsed();
            ensure(report.pair_count == 28_920, || format!("d=8 scanned {} pairs", report.pair_count))?;
        }
        ensure(report.is_valid() && report.overlaps.is_empty(), || format!("d={d}: invalid"))?;
        let g = build_graph(&cfg).map_err(|e| e.to_string())?;
        ensure(g.degree(0) == k, || format!("d={d}: central degree {}", g.degree(0)))?;
    }
    ensure(d8_scan < Duration::from_secs(1), || format!("d=8 scan took {d8_scan:?}"))?;
    Ok(format!("central degrees 2,6,12,24,240; d=8 scan {:.1} ms", d8_scan.as_secs_f64() * 1e3))
}

fn greedy_guarantee() -> Outcome {
    let mut worst = [(0, 0); 2];
    for (slot, (d, cap)) in [(2usize, 6usize), (3, 12)].into_iter().enumerate() {
        for seed in 0..1000 {
            let params = GeneratorParams::new(d, 100, seed, RadiusLaw::Uniform { lo: 0.2, hi: 3.0 });
            let cfg = random_tangent_packing(&params).map_err(|e| format!("d={d} seed {seed}: {e}"))?;
            let g = build_graph(&cfg).map_err(|e| e.to_string())?;
            let back = g.decreasing_radius_order().max_back_degree();
            let palette = greedy_colour_graph(&g).palette_size();
            ensure(palette <= back + 1, || format!("d={d} seed {seed}: palette {palette} > back {back} + 1"))?;
            ensure(back <= cap, || format!("d={d} seed {seed}: back degree {back} > {cap}"))?;
            ensure(palette <= cap + 1, || format!("d={d} seed {seed}: palette {palette}"))?;
            worst[slot] = (worst[slot].0.max(back), worst[slot].1.max(palette));
        }
    }
    Ok(format!(
        "2000 packings; max back degree / palette: d=2 {}/{}, d=3 {}/{}",
        worst[0].0, worst[0].1, worst[1].0, worst[1].1
    ))
}

fn six_colour_witness() -> Outcome {
    for seed in 0..500u64 {
        let n = 2 + (seed as usize % 99);
        let params = GeneratorParams::new(2, n, 10_000 + seed, RadiusLaw::Uniform { lo: 0.1, hi: 5.0 });
        let cfg = random_tangent_packing(&params).map_err(|e| e.to_string())?;
        let v = low_degree_witness(&cfg).map_err(|e| format!("seed {seed}: {e}"))?;
        let g = build_graph(&cfg).map_err(|e| e.to_string())?;
        ensure(g.degree(v) <= 5, || format!("seed {seed}: witness has degree {}", g.degree(v)))?;
    }
    Ok("500 connected planar packings, each with a disc of degree <= 5".into())
}

fn oracle_equivalence() -> Outcome {
    let graphs = common::small_tangency_graphs(200, 9, 2024);
    let mut edges = 0;
    for (i, g) in graphs.iter().enumerate() {
        let r = chromatic_number(g, DEFAULT_BUDGET);
        let truth = common::brute_force_chromatic(g);
        ensure(r.exact && r.upper == truth, || format!("graph {i}: solver {}..{}, oracle {truth}", r.lower, r.upper))?;
        edges += g.edge_count();
    }
    Ok(format!("200 graphs (<= 9 vertices, {edges} edges total) agree with enumeration"))
}

fn descartes_exactness() -> Outcome {
    let g = apollonian_gasket([-1, 2, 2, 3], 6).map_err(|e| e.to_string())?;
    let bad = g.quadruples.iter().filter(|q| !q.satisfies_descartes()).count();
    ensure(bad == 0, || format!("{bad} quadruples break the identity"))?;
    ensure(g.configuration.policy() == TolerancePolicy::Exact, || "not in exact mode".into())?;
    let report = validate_configuration(&g.configuration);
    ensure(report.is_valid(), || format!("{} overlaps, {} failed declared", report.overlaps.len(), report.failed_declared.len()))?;
    Ok(format!("{} quadruples, {} circles valid in exact mode", g.quadruples.len(), g.configuration.len()))
}

fn planar_consistency() -> Outcome {
    let mut instances = 0;
    for root in [[-1, 2, 2, 3], [-2, 3, 6, 7], [-3, 4, 12, 13], [-6, 10, 15, 19]] {
        for depth in 0..=4 {
            let gasket = apollonian_gasket(root, depth).map_err(|e| e.to_string())?;
            let g = build_graph(&gasket.configuration).map_err(|e| e.to_string())?;
            let r = chromatic_number(&g, DEFAULT_BUDGET);
            ensure(r.exact && r.upper <= 4, || format!("{root:?} depth {depth}: {}..{}", r.lower, r.upper))?;
            instances += 1;
        }
    }
    Ok(format!("{instances} gaskets, all exactly <= 4-chromatic"))
}

fn experiment_records(dir: &std::path::Path, name: &str, plan: &ExperimentPlan) -> Result<Vec<LogEntry>, String> {
    let log = dir.join(name);
    harness::run_experiment(plan, &log, vec![]).map_err(|e| e.to_string())?;
    let text = std::fs::read_to_string(&log).map_err(|e| e.to_string())?;
    text.lines().map(|l| serde_json::from_str(l).map_err(|e| e.to_string())).collect()
}

fn normalised(mut entries: Vec<LogEntry>) -> Vec<LogEntry> {
    entries.sort_by_key(LogEntry::seed);
    entries
        .into_iter()
        .map(|e| match e {
            LogEntry::Record(r) => LogEntry::Record(r.without_timing()),
            LogEntry::Error(mut e) => {
                e.timestamp = 0;
                LogEntry::Error(e)
            }
        })
        .collect()
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let plan = ExperimentPlan {
        params: GeneratorParams::new(3, 60, 7, RadiusLaw::Uniform { lo: 0.5, hi: 2.0 }),
        count: 24,
        parallel: 4,
        budget: DEFAULT_BUDGET,
    };
    let a = normalised(experiment_records(dir.path(), "a.jsonl", &plan)?);
    let b = normalised(experiment_records(dir.path(), "b.jsonl", &ExperimentPlan { parallel: 1, ..plan })?);
    ensure(a.len() == 24, || format!("{} records", a.len()))?;
    let lines = |v: &[LogEntry]| v.iter().map(LogEntry::to_line).collect::<Vec<_>>();
    ensure(lines(&a) == lines(&b), || "runs differ".into())?;
    Ok("24 instances, 4 workers vs 1: identical digests and fields".into())
}

fn chi3_probe() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let plan = ExperimentPlan {
        params: GeneratorParams::new(3, 60, 1, RadiusLaw::Uniform { lo: 0.3, hi: 3.0 }),
        count: 100,
        parallel: 4,
        budget: DEFAULT_BUDGET,
    };
    let log = dir.path().join("chi3.jsonl");
    harness::run_experiment(&plan, &log, vec![]).map_err(|e| e.to_string())?;
    let mut text = std::fs::read_to_string(&log).map_err(|e| e.to_string())?;
    for (source, cfg) in [("simplex 3", simplex_clique(3)), ("kissing 3", kissing_configuration(3))] {
        let cfg = cfg.map_err(|e| e.to_string())?;
        let record = harness::analyse_configuration(&cfg, source, None, None, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        text.push_str(&LogEntry::Record(record).to_line());
        text.push('\n');
    }
    let report = summarise(&text);
    let s = &report.summary;
    ensure(s.records == 102 && s.errors == 0, || format!("{} records, {} errors", s.records, s.errors))?;
    ensure(s.above_chi3_ceiling == 0 && s.max_clique <= CHI3_CEILING, || "an instance exceeds 13".into())?;
    ensure(s.chain_violations == 0, || "bound chain violated".into())?;
    Ok(format!(
        "true chi(3) not reproducible; 100 random + 2 structured 3D instances: max clique {}, max exact chromatic {:?}, exhausted {}",
        s.max_clique, s.max_exact_chromatic, s.budget_exhausted
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("bound-chain reproduction", Duration::from_secs(1), bound_chain),
        ("clique lower bound", Duration::from_secs(5), clique_lower_bound),
        ("kissing realisations", Duration::from_secs(60), kissing_realisations),
        ("greedy guarantee", Duration::from_secs(120), greedy_guarantee),
        ("six-colour witness", Duration::from_secs(60), six_colour_witness),
        ("exact-solver oracle equivalence", Duration::from_secs(60), oracle_equivalence),
        ("Descartes exactness", Duration::from_secs(10), descartes_exactness),
        ("consistency with chi(2) = 4", Duration::from_secs(60), planar_consistency),
        ("determinism", Duration::from_secs(300), determinism),
        ("chi(3) empirical probe", Duration::from_secs(300), chi3_probe),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
