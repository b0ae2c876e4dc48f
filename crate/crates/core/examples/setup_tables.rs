// Affinity blocks for a 73-node toy distribution.

use std::error::Error;

use bter::io::write_tables;
use bter::prelude::*;

pub fn run() -> Result<SetupTables, Box<dyn Error>> {
    let dd = DegreeDistribution::from_counts(vec![26, 20, 10, 6, 4, 3, 2, 1, 1]);
    let ccd = ClusteringProfile::from_values(vec![0.0, 0.95, 0.9, 0.85, 0.8, 0.75, 0.7, 0.65, 0.6]);
    let tables = bter_setup(&validate_inputs(dd, ccd, 1.0)?)?;

    let g = tables.groups();
    println!("group  first  blocks  size  rho");
    for k in 0..g.len() {
        println!(
            "{k:>5}  {:>5}  {:>6}  {:>4}  {:.3}",
            g.first(k),
            g.blocks(k),
            g.block_size(k),
            g.connectivity(k)
        );
    }
    let d = tables.degrees();
    println!("degree  count  first  fill  fill ratio  weight");
    for k in 1..=tables.d_max() {
        println!(
            "{k:>6}  {:>5}  {:>5}  {:>4}  {:>10.3}  {:.3}",
            d.count(k),
            d.first(k),
            d.fill(k),
            d.fill_ratio(k),
            d.weight(k)
        );
    }
    println!(
        "w1 = {:.3}, w2 = {:.3}, {} stored values for d_max = {}",
        tables.phase1_weight(),
        tables.phase2_weight(),
        tables.stored_values(),
        tables.d_max()
    );
    let mut dump = Vec::new();
    write_tables(&mut dump, &tables)?;
    println!("{} bytes of table dump", dump.len());
    Ok(tables)
}

fn main() -> Result<(), Box<dyn Error>> {
    run().map(|_| ())
}
