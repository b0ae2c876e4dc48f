use bter::cli::run_generation;
use bter::prelude::*;

fn smooth_inputs(n: u64) -> ModelInputs {
    let fit = fit_dgln(12.0, 1000, 0.1 / n as f64).unwrap();
    let p = pmf(DegreeFamily::GenLogNormal { alpha: fit.alpha, beta: fit.beta }, 1000).unwrap();
    let dd = realize_degree_distribution(&p, n, Realization::Expected, 0).unwrap();
    let profile = CcdProfile { cmax: 0.6, xi: 0.1, decay: ClusteringDecay::Power, max_degree: dd.d_max(), noise: false };
    validate_inputs(dd, profile.means(), 1.0).unwrap()
}

#[test]
fn realized_degrees_track_targets() {
    let inputs = smooth_inputs(50_000);
    let tables = bter_setup(&inputs).unwrap();
    let plan = GenerationPlan::for_tables(&tables, 4).unwrap();
    let graph = dedup(generate(&tables, &plan, 1)).with_num_nodes(tables.num_nodes()).unwrap();
    let deg = graph.degrees();
    let dt = tables.degrees();
    for d in 2..=tables.d_max() {
        let n = dt.count(d);
        if n < 100 {
            continue;
        }
        let first = dt.first(d) as usize;
        let mean = deg[first..first + n as usize].iter().sum::<u64>() as f64 / n as f64;
        assert!((mean / d as f64 - 1.0).abs() <= 0.10, "degree {d}: mean {mean}");
    }
}

#[test]
fn cli_generation_matches_library() {
    let inputs = smooth_inputs(5_000);
    let tables = bter_setup(&inputs).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let dd = dir.path().join("dd.txt");
    let ccd = dir.path().join("ccd.txt");
    let edges = dir.path().join("edges.txt");
    bter::io::write_file(&dd, |w| bter::io::write_degree_distribution(w, inputs.degrees())).unwrap();
    bter::io::write_file(&ccd, |w| bter::io::write_clustering_profile(w, inputs.clustering())).unwrap();
    let mut log = Vec::new();
    bter::cli::run(
        [
            "bter", "generate", "--dd", dd.to_str().unwrap(), "--ccd", ccd.to_str().unwrap(), "--seed", "9",
            "--partitions", "5", "--out", edges.to_str().unwrap(),
        ],
        &mut log,
    )
    .unwrap();
    let from_cli = dedup(bter::io::read_edges(&edges, false).unwrap());

    let plan = GenerationPlan::for_tables(&tables, 5).unwrap();
    let direct = dedup(generate(&tables, &plan, 9));
    assert_eq!(from_cli.edges(), direct.edges());

    let (graph, ..) = run_generation(&tables, 9, 5, PhaseMode::Mixed, DedupStrategy::Hash, false).unwrap();
    assert_eq!(graph.edges(), direct.edges());
}

#[test]
fn partitions_change_the_stream_not_the_statistics() {
    let inputs = smooth_inputs(20_000);
    let tables = bter_setup(&inputs).unwrap();
    let gcc = |p: usize| {
        let plan = GenerationPlan::for_tables(&tables, p).unwrap();
        let g = dedup(generate(&tables, &plan, 4));
        (g.num_edges() as f64, ccd_exact(&g).gcc)
    };
    let (e1, g1) = gcc(1);
    let (e8, g8) = gcc(8);
    assert!((e1 / e8 - 1.0).abs() < 0.01);
    assert!((g1 - g8).abs() < 0.01);
}

#[test]
fn split_phases_match_mixed_in_distribution() {
    let inputs = smooth_inputs(20_000);
    let tables = bter_setup(&inputs).unwrap();
    let plan = GenerationPlan::for_tables(&tables, 4).unwrap();
    let mixed = dedup(generate_with(&tables, &plan, 6, PhaseMode::Mixed));
    let split = dedup(generate_with(&tables, &plan, 6, PhaseMode::Split));
    assert!((mixed.num_edges() as f64 / split.num_edges() as f64 - 1.0).abs() < 0.01);
    assert!((ccd_exact(&mixed).gcc - ccd_exact(&split).gcc).abs() < 0.01);
}
