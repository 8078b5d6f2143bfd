//! Acceptance suite: one test per criterion, each asserting the stated
//! bounds and printing a PASS line (run with `--nocapture` to see them).

use kdjm::config::AlgorithmConfig;
use kdjm::exact::{brute_force_kdjm, BruteForceLimits};
use kdjm::graph::{build_graph, Weight, WeightedGraph};
use kdjm::instances::{
    gen_hypercube_pendant, gen_rmat, gen_triangle_pendant, DemandDist, InstanceSpec, RMAT_B,
    RMAT_ER, RMAT_G,
};
use kdjm::iter::{blossom_it, blossom_max_weight_matching, greedy_it, gpa_it};
use kdjm::kec::{k_ec, KecFlags};
use kdjm::node_centered::{node_centered, Rating, Theta};
use kdjm::postprocess::{roma, swaps};
use kdjm::solution::validate_solution;
use kdjm_bench::plan::ExperimentPlan;
use kdjm_bench::runner::{run_plan, RunStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Random graph with n <= 8, m <= 14, integer weights <= 20.
fn random_small(rng: &mut ChaCha8Rng) -> WeightedGraph {
    let n = rng.gen_range(1..=8usize);
    let mut pairs = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            pairs.push((u, v));
        }
    }
    let mut triples = Vec::new();
    for (u, v) in pairs {
        if rng.gen_bool(0.5) {
            triples.push((u, v, rng.gen_range(1..=20)));
        }
    }
    triples.truncate(14);
    build_graph(n, triples).unwrap()
}

/// The 50 RMAT scale-8 instances shared by criteria 5, 7, 8 and 9.
fn rmat_scale8(i: usize) -> WeightedGraph {
    let initiator = [RMAT_B, RMAT_G, RMAT_ER][i % 3];
    let dist = if i % 2 == 0 { DemandDist::Uniform } else { DemandDist::Exponential };
    gen_rmat(8, initiator, 16, dist, 500_000, i as u64).unwrap()
}

#[test]
fn criterion_01_triangle_pendant_gadget() {
    let start = Instant::now();
    let g = gen_triangle_pendant();
    let exact = brute_force_kdjm(&g, 3, BruteForceLimits::default()).unwrap();
    assert_eq!(exact.weight, 6);
    let blossom = blossom_it(&g, 3);
    validate_solution(&g, &blossom).unwrap();
    assert_eq!(blossom.total_weight(), 5);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 1: PASS - brute force k=3 = 6, iterated blossom k=3 = 5 ({elapsed:?})"
    );
}

#[test]
fn criterion_02_hypercube_pendant_gadget() {
    let start = Instant::now();
    let g = gen_hypercube_pendant(3).unwrap();
    let optimum: Weight = 24 * 1000; // all pendant edges, forced by the weights

    let greedy = greedy_it(&g, 3);
    validate_solution(&g, &greedy).unwrap();
    assert_eq!(greedy.total_weight(), 12012); // all 12 hypercube edges
    // ratio is exactly 0.5005: compare as integers
    assert_eq!(greedy.total_weight() * 10_000, 5005 * optimum);

    let mut reported = Vec::new();
    for (name, sol) in [
        ("k_ec(cc+rl)", k_ec(&g, 3, KecFlags::new(true, false, true, false))),
        ("gpa_it", gpa_it(&g, 3)),
        (
            "node_centered(ksum,0.2)",
            node_centered(&g, 3, Rating::KSum, Theta::parse("0.2").unwrap()),
        ),
    ] {
        validate_solution(&g, &sol).unwrap();
        assert!(sol.total_weight() <= optimum, "{name} exceeded the optimum");
        reported.push(format!(
            "{name} = {} (ratio {:.4})",
            sol.total_weight(),
            sol.total_weight() as f64 / optimum as f64
        ));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 2: PASS - greedy 12012 / 24000 = 0.5005 exactly; {} ({elapsed:?})",
        reported.join(", ")
    );
}

#[test]
fn criterion_03_oracle_equivalence_for_single_matchings() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(333);
    for trial in 0..200 {
        let g = random_small(&mut rng);
        let avail = vec![true; g.m()];
        let matching = blossom_max_weight_matching(&g, &avail);
        let exact = brute_force_kdjm(&g, 1, BruteForceLimits::default()).unwrap();
        assert_eq!(
            matching.weight, exact.weight,
            "trial {trial}: blossom disagrees with brute force"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("criterion 3: PASS - blossom = brute force on 200 random graphs ({elapsed:?})");
}

#[test]
fn criterion_04_greedy_half_approximation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(444);
    for trial in 0..200 {
        let g = random_small(&mut rng);
        for k in [1usize, 2, 3] {
            let opt = brute_force_kdjm(&g, k, BruteForceLimits::default())
                .unwrap()
                .weight;
            let greedy = greedy_it(&g, k);
            assert!(
                2 * greedy.total_weight() >= opt,
                "trial {trial} k={k}: greedy {} below half of {opt}",
                greedy.total_weight()
            );
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 4: PASS - 2*greedy >= OPT on 200 instances, k in {{1,2,3}} ({elapsed:?})");
}

#[test]
fn criterion_05_validity_across_the_full_grid() {
    let start = Instant::now();
    let configs = AlgorithmConfig::all_configurations();
    for i in 0..50 {
        let g = rmat_scale8(i);
        for &k in &[2usize, 4, 8] {
            for config in &configs {
                let s = config.run(&g, k, i as u64);
                assert_eq!(s.k(), k);
                validate_solution(&g, &s).unwrap_or_else(|v| {
                    panic!("instance {i} k={k} config {}: {v}", config.id())
                });
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 5: PASS - {} configs x 50 instances x 3 k-values all validate ({elapsed:?})",
        configs.len()
    );
}

#[test]
fn criterion_06_coloring_bounds() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(666);
    for trial in 0..200 {
        let n = rng.gen_range(2..=100usize);
        let mut triples = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.gen_bool(0.08) {
                    triples.push((u, v, rng.gen_range(1..=100)));
                }
            }
        }
        let g = build_graph(n, triples).unwrap();
        let all_edges: Vec<u32> = (0..g.m() as u32).collect();
        let coloring = kdjm::color::misra_gries_color(&g, &all_edges);
        assert!(
            coloring.colors <= g.max_degree() + 1,
            "trial {trial}: {} colors on max degree {}",
            coloring.colors,
            g.max_degree()
        );
        // properness, edge by edge
        for v in 0..g.n() as u32 {
            let mut seen = std::collections::HashSet::new();
            for &(_, e) in g.neighbors(v) {
                if let Some(c) = coloring.color_of[e as usize] {
                    assert!(seen.insert(c), "trial {trial}: color {c} repeats at vertex {v}");
                }
            }
        }
        // with k = max degree + 1 every edge gets colored
        let s = k_ec(&g, g.max_degree() + 1, KecFlags::new(true, false, true, false));
        validate_solution(&g, &s).unwrap();
        assert_eq!(
            s.total_weight(),
            g.total_weight(),
            "trial {trial}: some edge was skipped despite a full color budget"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("criterion 6: PASS - coloring bound and full-budget coverage on 200 graphs ({elapsed:?})");
}

#[test]
fn criterion_07_postprocessing_monotonicity() {
    let start = Instant::now();
    let configs = AlgorithmConfig::best_six();
    for i in 0..50 {
        let g = rmat_scale8(i);
        for &k in &[2usize, 4, 8] {
            for config in &configs {
                let base = config.run(&g, k, i as u64);
                // LocalSwaps/GlobalSwaps reduce to one weight-ordered swaps
                // pass per class; each call must never decrease the weight
                let mut swapped = base.clone();
                for c in 0..k {
                    let before = swapped.total_weight();
                    swaps(&g, &mut swapped, c);
                    assert!(swapped.total_weight() >= before, "{} k={k}", config.id());
                }
                validate_solution(&g, &swapped).unwrap();
                // ROMA(4): monotone per call and bit-reproducible per seed
                let mut a = base.clone();
                let mut b = base.clone();
                for c in 0..k {
                    let before = a.total_weight();
                    roma(&g, &mut a, c, 4, 97 + c as u64);
                    roma(&g, &mut b, c, 4, 97 + c as u64);
                    assert!(a.total_weight() >= before);
                }
                validate_solution(&g, &a).unwrap();
                assert_eq!(a, b, "ROMA must be bit-reproducible under a fixed seed");
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 7: PASS - swaps/ROMA(4) monotone per call, ROMA reproducible ({elapsed:?})"
    );
}

#[test]
fn criterion_08_greedy_monotone_in_k() {
    let start = Instant::now();
    for i in 0..50 {
        let g = rmat_scale8(i);
        for &k in &[2usize, 4, 8] {
            let a = greedy_it(&g, k);
            let b = greedy_it(&g, k + 1);
            assert!(b.total_weight() >= a.total_weight());
            for c in 0..k {
                assert_eq!(a.class(c), b.class(c), "instance {i} class {c} differs");
            }
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 8: PASS - greedy weight monotone, first k classes stable ({elapsed:?})");
}

#[test]
fn criterion_09_node_centered_k1_identity() {
    let start = Instant::now();
    for i in 0..50 {
        let g = rmat_scale8(i);
        let reference = greedy_it(&g, 1).total_weight();
        for rating in Rating::all() {
            for theta in ["0", "0.2", "0.5"] {
                let s = node_centered(&g, 1, rating, Theta::parse(theta).unwrap());
                assert_eq!(
                    s.total_weight(),
                    reference,
                    "instance {i} rating {} theta {theta}",
                    rating.label()
                );
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 9: PASS - k=1 weight identical to greedy for 5 ratings x 3 thetas ({elapsed:?})"
    );
}

#[test]
fn criterion_10_methodology_reproduction() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("acceptance.csv");
    let plan = ExperimentPlan {
        instances: vec![
            InstanceSpec::TrianglePendant,
            InstanceSpec::HypercubePendant { k: 3 },
            InstanceSpec::parse("kind=rmat,x=10,init=rmat_b,dist=uni,seed=1").unwrap(),
            InstanceSpec::parse("kind=rmat,x=10,init=rmat_g,dist=exp,seed=2").unwrap(),
            InstanceSpec::parse("kind=rmat,x=10,init=rmat_er,dist=uni,seed=3").unwrap(),
        ],
        algorithms: AlgorithmConfig::best_six(),
        ks: vec![2, 4, 8, 16],
        repetitions: 3,
        timeout: std::time::Duration::from_secs(4 * 3600),
        out: Some(csv_path.clone()),
        seed: 42,
        // BEST-relative quality everywhere, per the methodology check below
        use_oracle: false,
    };
    let records = run_plan(&plan).unwrap();
    assert_eq!(records.len(), 5 * 6 * 4);
    assert!(records.iter().all(|r| r.status == RunStatus::Ok));

    // schema-conformant CSV that parses back to the same records
    let parsed = kdjm_bench::csvio::read_csv(&csv_path).unwrap();
    let projected: Vec<_> = records.iter().map(|r| r.csv_projection()).collect();
    assert_eq!(parsed, projected);

    // per (instance, k): at least one algorithm sits exactly at BEST
    let mut cells: std::collections::BTreeMap<(&str, usize), Vec<f64>> = Default::default();
    for r in &records {
        cells
            .entry((r.instance.as_str(), r.k))
            .or_default()
            .push(r.rel_quality.unwrap());
    }
    assert_eq!(cells.len(), 5 * 4);
    for ((instance, k), rels) in &cells {
        let best = rels.iter().copied().fold(0.0f64, f64::max);
        assert_eq!(best, 1.0, "no BEST-relative 1.0 record in cell ({instance}, {k})");
        assert!(rels.iter().all(|&r| r > 0.0 && r <= 1.0));
    }

    // trend report: how the median runtime grows from k=2 to k=16 on the
    // RMAT instances, qualitatively comparing the coloring approach with
    // the iterative one (the tiny gadget cells are timing noise)
    let growth = |config: &str| -> f64 {
        let t = |k: usize| -> f64 {
            let ts: Vec<f64> = records
                .iter()
                .filter(|r| r.config == config && r.k == k && r.instance.contains("rmat"))
                .map(|r| r.median_ns.unwrap() as f64)
                .collect();
            ts.iter().sum::<f64>() / ts.len() as f64
        };
        t(16) / t(2)
    };
    println!(
        "criterion 10 trend: median-time growth k=2 -> k=16: k_ec {:.2}x, greedy_it {:.2}x",
        growth("kec,flags=cc+rl"),
        growth("greedy")
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 600.0, "took {elapsed:?}");
    println!(
        "criterion 10: PASS - full plan, schema CSV, BEST=1.0 per cell ({elapsed:?})"
    );
}
