// Idealized benchmark inputs: power law against generalized log-normal.

use std::error::Error;

use bter::prelude::*;

pub fn run() -> Result<(f64, f64), Box<dyn Error>> {
    let (dbar, dstar, n) = (16.0, 100_000, 1_000_000u64);

    let gamma = fit_dpl(dbar, dstar)?;
    let dpl = pmf(DegreeFamily::PowerLaw { gamma }, dstar)?;
    println!("power law: gamma {gamma:.4}, mean {:.3}, P(D = d*) {:.3e}", dpl.mean(), dpl.tail());

    let fit = fit_dgln(dbar, dstar, 0.1 / n as f64)?;
    let dgln = pmf(DegreeFamily::GenLogNormal { alpha: fit.alpha, beta: fit.beta }, dstar)?;
    println!(
        "log-normal: alpha {:.3}, beta {:.3}, mean {:.3}, P(D = d*) {:.3e}",
        fit.alpha,
        fit.beta,
        dgln.mean(),
        dgln.tail()
    );

    let dd = realize_degree_distribution(&dgln, n, Realization::Sample, 3)?;
    println!("realized {} nodes, d_max {}, mean {:.3}", dd.num_nodes(), dd.d_max(), dd.mean_degree());

    for decay in [ClusteringDecay::Power, ClusteringDecay::Linear] {
        let xi = fit_xi(0.5, 0.10, &dd, decay)?;
        let profile = CcdProfile { cmax: 0.5, xi, decay, max_degree: dd.d_max(), noise: true };
        let noisy = noisy_ccd(&profile, 4);
        println!(
            "{decay:?} decay: xi {xi:.4e}, c_2 {:.3}, c_100 {:.4}, noisy c_2 {:.3}",
            profile.mean(2),
            profile.mean(100),
            noisy.get(2).unwrap_or(0.0)
        );
    }
    Ok((gamma, dgln.mean()))
}

fn main() -> Result<(), Box<dyn Error>> {
    run().map(|_| ())
}
