// Edges straight from per-partition streams, without holding the raw
// multiset in memory.

use std::error::Error;
use std::io::{sink, Write};

use bter::edgegen::EdgeSampler;
use bter::io::write_edges;
use bter::prelude::*;

pub fn run() -> Result<(u64, u64), Box<dyn Error>> {
    let dd = DegreeDistribution::from_counts(vec![400, 300, 200, 120, 80, 50, 30, 20, 10, 5]);
    let ccd = ClusteringProfile::constant(0.4, dd.d_max());
    let tables = bter_setup(&validate_inputs(dd, ccd, 1.2)?)?;
    let sampler = EdgeSampler::new(&tables);
    let plan = GenerationPlan::for_tables(&tables, 3)?;

    let mut out = sink();
    let (mut phase1, mut phase2, mut comparisons) = (0u64, 0u64, 0u64);
    for (p, &quota) in plan.quotas().iter().enumerate() {
        let mut stream = sampler.stream(99, p, quota, PhaseMode::Split);
        let mut batch = Vec::with_capacity(256);
        for (phase, edge) in stream.by_ref() {
            match phase {
                Phase::One => phase1 += 1,
                Phase::Two => phase2 += 1,
            }
            batch.push(edge);
            if batch.len() == batch.capacity() {
                write_edges(&mut out, &batch, false)?;
                batch.clear();
            }
        }
        write_edges(&mut out, &batch, false)?;
        comparisons += stream.comparisons();
    }
    out.flush()?;
    println!(
        "{} draws: {phase1} phase 1, {phase2} phase 2 (expected share {:.3}), {:.2} comparisons per draw",
        plan.total_draws(),
        sampler.phase1_probability(),
        comparisons as f64 / plan.total_draws() as f64
    );
    Ok((phase1, phase2))
}

fn main() -> Result<(), Box<dyn Error>> {
    run().map(|_| ())
}
