// Same degrees with and without Phase 1.

use std::error::Error;

use bter::prelude::*;

pub fn run() -> Result<(f64, f64), Box<dyn Error>> {
    let dd = DegreeDistribution::from_pairs((1..=100).map(|d| (d, 20_000 / (d as u64).pow(2) + 1)))?;
    let ccd = ClusteringProfile::from_values((1..=100).map(|d| 0.7 * (-(d as f64) / 40.0).exp()).collect());
    let inputs = validate_inputs(dd, ccd, 1.0)?;

    let mut gcc = [0.0; 2];
    for (i, tables) in [bter_setup(&inputs)?, SetupTables::chung_lu(&inputs)?].iter().enumerate() {
        let plan = GenerationPlan::for_tables(tables, 4)?;
        let graph = dedup(generate(tables, &plan, 2));
        gcc[i] = ccd_exact(&graph).gcc;
        let dd = degree_distribution(&graph).distribution;
        println!(
            "{}: |E| {}, d_avg {:.2}, gcc {:.4}",
            if i == 0 { "BTER" } else { "Chung-Lu" },
            graph.num_edges(),
            dd.mean_degree(),
            gcc[i]
        );
    }
    Ok((gcc[0], gcc[1]))
}

fn main() -> Result<(), Box<dyn Error>> {
    run().map(|_| ())
}
