// Fit, realize, set up, generate, deduplicate and measure a 20k-node graph.

use std::error::Error;
use std::time::Instant;

use bter::prelude::*;

pub fn run() -> Result<(f64, f64), Box<dyn Error>> {
    let n = 20_000;
    let fit = fit_dgln(16.0, 2_000, 0.1 / n as f64)?;
    let family = DegreeFamily::GenLogNormal { alpha: fit.alpha, beta: fit.beta };
    let dd = realize_degree_distribution(&pmf(family, 2_000)?, n, Realization::Expected, 0)?;
    let xi = fit_xi(0.5, 0.10, &dd, ClusteringDecay::Power)?;
    let profile = CcdProfile { cmax: 0.5, xi, decay: ClusteringDecay::Power, max_degree: dd.d_max(), noise: false };

    let inputs = validate_inputs(dd, profile.means(), 1.0)?;
    let tables = bter_setup(&inputs)?;
    let plan = GenerationPlan::for_tables(&tables, 4)?;

    let t = Instant::now();
    let raw = generate(&tables, &plan, 7);
    let gen_time = t.elapsed();
    let t = Instant::now();
    let graph = dedup(raw);
    let dedup_time = t.elapsed();

    let measured = degree_distribution(&graph).distribution;
    let gcc = ccd_exact(&graph).gcc;
    println!(
        "|V| {}  |E| {}  d_max {}  d_avg {:.2}  gcc {:.4} (target {:.4})  gen {gen_time:.2?}  dedup {dedup_time:.2?}",
        measured.num_nodes(),
        graph.num_edges(),
        measured.d_max(),
        measured.mean_degree(),
        gcc,
        target_gcc(inputs.degrees(), &profile)?
    );
    Ok((measured.mean_degree(), gcc))
}

fn main() -> Result<(), Box<dyn Error>> {
    run().map(|_| ())
}
