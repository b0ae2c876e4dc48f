// Draws Poisson(w_b) Phase-1 edges into a single 10-node block with
// connectivity 0.5 and counts how many distinct edges survive.

use std::collections::HashSet;
use std::error::Error;

use bter::edgegen::sample_phase1;
use bter::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

pub fn run() -> Result<f64, Box<dyn Error>> {
    // ten degree-9 nodes with c = 0.125 form exactly one block with rho = 0.5
    let dd = DegreeDistribution::from_pairs([(9, 10)])?;
    let ccd = ClusteringProfile::constant(0.125, 9);
    let tables = bter_setup(&validate_inputs(dd, ccd, 1.0)?)?;
    let w = block_weight(10, block_connectivity(0.125));
    println!("block weight {w:.4}, target unique edges {:.1}", 0.5 * 45.0);

    let poisson = Poisson::new(w)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let trials = 2000;
    let mut total = 0usize;
    for _ in 0..trials {
        let draws = poisson.sample(&mut rng) as usize;
        let mut seen = HashSet::new();
        for _ in 0..draws {
            seen.insert(sample_phase1(&tables, &mut rng)?.canonical());
        }
        total += seen.len();
    }
    let mean = total as f64 / trials as f64;
    println!("mean unique edges over {trials} trials: {mean:.2}");
    Ok(mean)
}

fn main() -> Result<(), Box<dyn Error>> {
    run().map(|_| ())
}
