//! Synthetic benchmark inputs: heavy-tailed degree distributions truncated
//! at a maximum degree `d*`, and a decaying clustering profile fitted to a
//! target global clustering coefficient.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Normal};
use rayon::prelude::*;

use crate::error::{BterError, Result};
use crate::model::{pairs, ClusteringProfile, DegreeDistribution};

/// Unnormalized shape `f(d)` of a degree distribution on `1..=d*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeFamily {
    /// Discrete power law, `f(d) = d^(−γ)`.
    PowerLaw { gamma: f64 },
    /// Discrete generalized log-normal, `f(d) = exp[−(ln d / α)^β]`.
    GenLogNormal { alpha: f64, beta: f64 },
}

impl DegreeFamily {
    fn check(&self) -> Result<()> {
        let ok = match *self {
            DegreeFamily::PowerLaw { gamma } => gamma > 0.0 && gamma.is_finite(),
            DegreeFamily::GenLogNormal { alpha, beta } => {
                alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(BterError::validation(format!("invalid distribution parameters {self:?}")))
        }
    }

    /// `ln f(d)`; uses precomputed `ln d` and `ln ln d`.
    #[inline]
    fn log_weight(&self, ln_d: f64, ln_ln_d: f64) -> f64 {
        match *self {
            DegreeFamily::PowerLaw { gamma } => -gamma * ln_d,
            DegreeFamily::GenLogNormal { alpha, beta } => {
                if ln_d == 0.0 {
                    0.0
                } else {
                    -(beta * (ln_ln_d - alpha.ln())).exp()
                }
            }
        }
    }
}

/// `ln d` and `ln ln d` for `d = 1..=d*`, shared across evaluations.
struct Support {
    ln_d: Vec<f64>,
    ln_ln_d: Vec<f64>,
}

const CHUNK: usize = 1 << 15;

impl Support {
    fn new(dstar: usize) -> Self {
        let ln_d: Vec<f64> = (1..=dstar).map(|d| (d as f64).ln()).collect();
        let ln_ln_d = ln_d.iter().map(|&l| if l > 0.0 { l.ln() } else { f64::NEG_INFINITY }).collect();
        Support { ln_d, ln_ln_d }
    }

    fn dstar(&self) -> usize {
        self.ln_d.len()
    }

    /// Normalizer, mean and log tail probability. Chunks are summed in a
    /// fixed order so results do not depend on the thread count.
    fn summary(&self, family: &DegreeFamily) -> Summary {
        let parts: Vec<(f64, f64)> = self
            .ln_d
            .par_chunks(CHUNK)
            .zip(self.ln_ln_d.par_chunks(CHUNK))
            .enumerate()
            .map(|(c, (ln_d, ln_ln_d))| {
                let mut z = Neumaier::default();
                let mut m = Neumaier::default();
                for (i, (&l, &ll)) in ln_d.iter().zip(ln_ln_d).enumerate() {
                    let f = family.log_weight(l, ll).exp();
                    z.add(f);
                    m.add(f * (c * CHUNK + i + 1) as f64);
                }
                (z.total(), m.total())
            })
            .collect();
        let mut z = Neumaier::default();
        let mut m = Neumaier::default();
        for (a, b) in parts {
            z.add(a);
            m.add(b);
        }
        let log_z = z.total().ln();
        let last = self.dstar() - 1;
        Summary {
            log_z,
            mean: m.total() / z.total(),
            log_tail: family.log_weight(self.ln_d[last], self.ln_ln_d[last]) - log_z,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Summary {
    log_z: f64,
    mean: f64,
    log_tail: f64,
}

/// Compensated summation.
#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.c
    }
}

/// Normalized `P(D = d)` for `d = 1..=d*`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreePmf {
    family: DegreeFamily,
    probs: Vec<f64>,
    mean: f64,
    log_tail: f64,
}

impl DegreePmf {
    pub fn family(&self) -> DegreeFamily {
        self.family
    }

    pub fn dstar(&self) -> usize {
        self.probs.len()
    }

    /// `probs[d - 1] = P(D = d)`.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, d: usize) -> f64 {
        if d == 0 {
            0.0
        } else {
            self.probs.get(d - 1).copied().unwrap_or(0.0)
        }
    }

    /// `Σ d·P(D = d)`.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// `P(D = d*)`, computed in log space so it stays meaningful far below
    /// the smallest normal double.
    pub fn tail(&self) -> f64 {
        self.log_tail.exp()
    }

    pub fn log10_tail(&self) -> f64 {
        self.log_tail / std::f64::consts::LN_10
    }
}

pub fn pmf(family: DegreeFamily, dstar: usize) -> Result<DegreePmf> {
    family.check()?;
    if dstar == 0 {
        return Err(BterError::validation("maximum degree must be at least 1"));
    }
    let support = Support::new(dstar);
    let s = support.summary(&family);
    let probs = support
        .ln_d
        .par_iter()
        .zip(&support.ln_ln_d)
        .map(|(&l, &ll)| (family.log_weight(l, ll) - s.log_z).exp())
        .collect();
    Ok(DegreePmf {
        family,
        probs,
        mean: s.mean,
        log_tail: s.log_tail,
    })
}

const GAMMA_RANGE: (f64, f64) = (0.1, 10.0);

fn check_targets(dbar: f64, dstar: usize) -> Result<()> {
    if !(dbar > 1.0 && dbar < dstar as f64) {
        return Err(BterError::Infeasible(format!(
            "average degree {dbar} must lie strictly between 1 and the maximum degree {dstar}"
        )));
    }
    Ok(())
}

/// Power-law exponent whose truncated mean equals `dbar`, by bisection on
/// `γ ∈ [0.1, 10]` (the mean is strictly decreasing in `γ`).
pub fn fit_dpl(dbar: f64, dstar: usize) -> Result<f64> {
    check_targets(dbar, dstar)?;
    let support = Support::new(dstar);
    let mean = |gamma: f64| support.summary(&DegreeFamily::PowerLaw { gamma }).mean;
    let (mut lo, mut hi) = GAMMA_RANGE;
    let (m_lo, m_hi) = (mean(lo), mean(hi));
    if !(m_hi <= dbar && dbar <= m_lo) {
        return Err(BterError::Infeasible(format!(
            "average degree {dbar} outside [{m_hi:.4}, {m_lo:.4}] reachable with gamma in [{lo}, {hi}]"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let m = mean(mid);
        if (m / dbar - 1.0).abs() < 1e-6 {
            return Ok(mid);
        }
        if m > dbar {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Result of a generalized log-normal fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DglnFit {
    pub alpha: f64,
    pub beta: f64,
    pub mean: f64,
    pub tail: f64,
    pub objective: f64,
}

/// Objective for the generalized log-normal search: squared relative mean
/// error plus a one-sided penalty once `log10 P(D = d*)` exceeds
/// `log10 eps_tol`.
pub fn dgln_objective(alpha: f64, beta: f64, dbar: f64, dstar: usize, eps_tol: f64) -> Result<f64> {
    let family = DegreeFamily::GenLogNormal { alpha, beta };
    family.check()?;
    let s = Support::new(dstar).summary(&family);
    Ok(objective(s, dbar, eps_tol.log10()))
}

fn objective(s: Summary, dbar: f64, log10_eps: f64) -> f64 {
    let mean_err = s.mean / dbar - 1.0;
    let excess = (s.log_tail / std::f64::consts::LN_10 - log10_eps).max(0.0);
    mean_err * mean_err + excess * excess
}

const DGLN_STARTS: [(f64, f64); 3] = [(2.0, 2.0), (1.2, 3.0), (3.5, 1.4)];
const MEAN_TOL: f64 = 0.005;

/// Fits `(α, β)` so the mean is within 0.5% of `dbar` and
/// `P(D = d*) ≤ eps_tol`.
///
/// Nelder-Mead over `(ln α, ln β)` from up to three starting points; later
/// starts only run if earlier ones end infeasible. Among feasible results
/// the smallest objective wins.
pub fn fit_dgln(dbar: f64, dstar: usize, eps_tol: f64) -> Result<DglnFit> {
    check_targets(dbar, dstar)?;
    if !(eps_tol > 0.0) {
        return Err(BterError::validation("tail tolerance must be positive"));
    }
    let support = Support::new(dstar);
    let log10_eps = eps_tol.log10();
    let eval = |x: [f64; 2]| {
        let family = DegreeFamily::GenLogNormal {
            alpha: x[0].exp(),
            beta: x[1].exp(),
        };
        let s = support.summary(&family);
        (objective(s, dbar, log10_eps), s)
    };
    let mut best: Option<DglnFit> = None;
    for (a0, b0) in DGLN_STARTS {
        let x = nelder_mead(|x| eval(x).0, [a0.ln(), b0.ln()], 0.25, 1e-14, 600);
        let (f, s) = eval(x);
        let fit = DglnFit {
            alpha: x[0].exp(),
            beta: x[1].exp(),
            mean: s.mean,
            tail: s.log_tail.exp(),
            objective: f,
        };
        let feasible = (s.mean / dbar - 1.0).abs() <= MEAN_TOL && s.log_tail <= eps_tol.ln();
        if feasible && best.is_none_or(|b| fit.objective < b.objective) {
            best = Some(fit);
        }
        if best.is_some() {
            break;
        }
    }
    best.ok_or_else(|| {
        BterError::Infeasible(format!(
            "no generalized log-normal with mean {dbar} and P(D={dstar}) <= {eps_tol:e}"
        ))
    })
}

/// Derivative-free simplex minimization in two dimensions.
fn nelder_mead<F: Fn([f64; 2]) -> f64>(f: F, x0: [f64; 2], step: f64, ftol: f64, max_iter: usize) -> [f64; 2] {
    let mut simplex = [x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]];
    let mut values = simplex.map(&f);
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for _ in 0..max_iter {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = idx.map(|i| simplex[i]);
        values = idx.map(|i| values[i]);
        if (values[2] - values[0]).abs() <= ftol * (1.0 + values[0].abs()) || values[0] < 1e-16 {
            break;
        }
        let centroid = lerp(simplex[0], simplex[1], 0.5);
        let reflected = lerp(centroid, simplex[2], -1.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = lerp(centroid, simplex[2], -2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let (target, ft) = if fr < values[2] { (reflected, fr) } else { (simplex[2], values[2]) };
            let contracted = lerp(centroid, target, 0.5);
            let fc = f(contracted);
            if fc < ft {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for k in 1..3 {
                    simplex[k] = lerp(simplex[0], simplex[k], 0.5);
                    values[k] = f(simplex[k]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
    simplex[best]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realization {
    /// `n` independent draws from the pmf.
    Sample,
    /// `round(n·P(D = d))` with largest-remainder correction to sum to `n`.
    Expected,
}

pub fn realize_degree_distribution(
    pmf: &DegreePmf,
    n: u64,
    mode: Realization,
    seed: u64,
) -> Result<DegreeDistribution> {
    if n == 0 {
        return Err(BterError::validation("number of nodes must be at least 1"));
    }
    let counts = match mode {
        Realization::Expected => expected_counts(pmf.probs(), n),
        Realization::Sample => multinomial_counts(pmf.probs(), n, seed),
    };
    Ok(DegreeDistribution::from_counts(counts))
}

fn expected_counts(probs: &[f64], n: u64) -> Vec<u64> {
    let scaled: Vec<f64> = probs.iter().map(|&p| p * n as f64).collect();
    let mut counts: Vec<u64> = scaled.iter().map(|&x| x.floor() as u64).collect();
    let assigned: u64 = counts.iter().sum();
    let mut order: Vec<usize> = (0..probs.len()).collect();
    order.sort_by(|&i, &j| {
        let (fi, fj) = (scaled[i] - scaled[i].floor(), scaled[j] - scaled[j].floor());
        fj.total_cmp(&fi).then(i.cmp(&j))
    });
    if assigned <= n {
        for &i in order.iter().take((n - assigned) as usize) {
            counts[i] += 1;
        }
    } else {
        // floors exceed n only through rounding in the probabilities
        for &i in order.iter().rev() {
            if counts.iter().sum::<u64>() == n {
                break;
            }
            if counts[i] > 0 {
                counts[i] -= 1;
            }
        }
    }
    counts
}

/// Multinomial via sequential conditional binomials.
fn multinomial_counts(probs: &[f64], n: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suffix = vec![0.0; probs.len() + 1];
    for i in (0..probs.len()).rev() {
        suffix[i] = suffix[i + 1] + probs[i];
    }
    let mut left = n;
    let mut counts = vec![0u64; probs.len()];
    for (i, &p) in probs.iter().enumerate() {
        if left == 0 {
            break;
        }
        let q = if suffix[i] > 0.0 { (p / suffix[i]).clamp(0.0, 1.0) } else { 1.0 };
        let k = if i + 1 == probs.len() || q >= 1.0 {
            left
        } else {
            Binomial::new(left, q).map(|b| b.sample(&mut rng)).unwrap_or(0)
        };
        counts[i] = k;
        left -= k;
    }
    counts
}

/// How the mean clustering curve decays with degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClusteringDecay {
    /// `c̄_d = c_max·exp(−(d − 1)^ξ)`.
    #[default]
    Power,
    /// `c̄_d = c_max·exp(−ξ·(d − 1))`.
    Linear,
}

/// Mean clustering curve over degrees `2..=max_degree`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcdProfile {
    pub cmax: f64,
    pub xi: f64,
    pub decay: ClusteringDecay,
    pub max_degree: usize,
    /// Perturb each degree with Gaussian noise in [`noisy_ccd`].
    pub noise: bool,
}

impl CcdProfile {
    pub fn mean(&self, d: usize) -> f64 {
        if d < 2 {
            return 0.0;
        }
        let x = (d - 1) as f64;
        let e = match self.decay {
            ClusteringDecay::Power => x.powf(self.xi),
            ClusteringDecay::Linear => self.xi * x,
        };
        self.cmax * (-e).exp()
    }

    /// The noise-free profile `c̄_d`.
    pub fn means(&self) -> ClusteringProfile {
        ClusteringProfile::from_values((1..=self.max_degree).map(|d| self.mean(d)).collect())
    }
}

/// Wedge-weighted mean of the profile under `dd`.
pub fn target_gcc(dd: &DegreeDistribution, profile: &CcdProfile) -> Result<f64> {
    weighted_mean(dd, |d| profile.mean(d))
}

fn weighted_mean(dd: &DegreeDistribution, c: impl Fn(usize) -> f64) -> Result<f64> {
    let mut num = Neumaier::default();
    let mut den = Neumaier::default();
    for (d, n) in dd.iter().filter(|&(d, _)| d >= 2) {
        let w = n as f64 * pairs(d as u64);
        num.add(w * c(d));
        den.add(w);
    }
    if den.total() == 0.0 {
        return Err(BterError::validation("degree distribution has no wedges"));
    }
    Ok(num.total() / den.total())
}

pub const XI_RANGE: (f64, f64) = (1e-6, 10.0);

/// Decay rate `ξ` whose profile hits `gcc_target` under `dd`, by bisection
/// on `ln ξ` over [`XI_RANGE`] to relative precision `1e-4`.
pub fn fit_xi(cmax: f64, gcc_target: f64, dd: &DegreeDistribution, decay: ClusteringDecay) -> Result<f64> {
    if !(cmax > 0.0 && cmax <= 1.0) {
        return Err(BterError::validation(format!("c_max must lie in (0, 1], got {cmax}")));
    }
    if !(gcc_target > 0.0 && gcc_target < cmax) {
        return Err(BterError::Infeasible(format!(
            "target clustering {gcc_target} must lie strictly between 0 and c_max = {cmax}"
        )));
    }
    let profile = |xi: f64| CcdProfile {
        cmax,
        xi,
        decay,
        max_degree: dd.d_max(),
        noise: false,
    };
    let gcc = |xi: f64| target_gcc(dd, &profile(xi));
    let (mut lo, mut hi) = XI_RANGE;
    let (g_lo, g_hi) = (gcc(lo)?, gcc(hi)?);
    if !(g_hi <= gcc_target && gcc_target <= g_lo) {
        return Err(BterError::Infeasible(format!(
            "target clustering {gcc_target} outside [{g_hi:.6}, {g_lo:.6}] reachable for xi in [{lo:e}, {hi}]"
        )));
    }
    while hi / lo - 1.0 > 1e-4 {
        let mid = (lo * hi).sqrt();
        if gcc(mid)? > gcc_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

/// Draws `c_d ~ N(c̄_d, σ = min(0.01, c̄_d / 2))` clamped to `[0, 1]`, or
/// returns the means when noise is off.
pub fn noisy_ccd(profile: &CcdProfile, seed: u64) -> ClusteringProfile {
    if !profile.noise {
        return profile.means();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (1..=profile.max_degree)
        .map(|d| {
            let mean = profile.mean(d);
            let sd = (0.01f64).min(mean / 2.0);
            if d < 2 || sd <= 0.0 {
                return mean;
            }
            Normal::new(mean, sd)
                .map(|n| n.sample(&mut rng))
                .unwrap_or(mean)
                .clamp(0.0, 1.0)
        })
        .collect();
    ClusteringProfile::from_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn direct(family: DegreeFamily, dstar: usize) -> (f64, f64, f64) {
        let f: Vec<f64> = (1..=dstar)
            .map(|d| match family {
                DegreeFamily::PowerLaw { gamma } => (d as f64).powf(-gamma),
                DegreeFamily::GenLogNormal { alpha, beta } => {
                    (-((d as f64).ln() / alpha).powf(beta)).exp()
                }
            })
            .collect();
        let z: f64 = f.iter().sum();
        let mean = f.iter().enumerate().map(|(i, x)| (i + 1) as f64 * x).sum::<f64>() / z;
        (z, mean, f[dstar - 1] / z)
    }

    #[test]
    fn single_support_point() {
        for fam in [DegreeFamily::PowerLaw { gamma: 2.0 }, DegreeFamily::GenLogNormal { alpha: 1.0, beta: 2.0 }] {
            let p = pmf(fam, 1).unwrap();
            assert_eq!(p.probs(), &[1.0]);
            assert_eq!(p.mean(), 1.0);
            assert_eq!(p.tail(), 1.0);
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(pmf(DegreeFamily::PowerLaw { gamma: 0.0 }, 10).is_err());
        assert!(pmf(DegreeFamily::GenLogNormal { alpha: -1.0, beta: 2.0 }, 10).is_err());
        assert!(pmf(DegreeFamily::PowerLaw { gamma: 1.0 }, 0).is_err());
    }

    #[test]
    fn reference_points() {
        let dpl = pmf(DegreeFamily::PowerLaw { gamma: 1.911 }, 1_000_000).unwrap();
        assert!((dpl.mean() / 16.0 - 1.0).abs() < 0.01, "{}", dpl.mean());
        let ratio = dpl.tail() / 1.97e-12;
        assert!((0.5..2.0).contains(&ratio), "{}", dpl.tail());

        let dgln = pmf(DegreeFamily::GenLogNormal { alpha: 1.988, beta: 2.079 }, 1_000_000).unwrap();
        assert!((dgln.mean() / 16.0 - 1.0).abs() < 0.01, "{}", dgln.mean());
        // order of magnitude of 4.14e-26
        assert!((dgln.log10_tail() - 4.14e-26f64.log10()).abs() < 1.0, "{}", dgln.tail());

        let s2 = pmf(DegreeFamily::GenLogNormal { alpha: 2.171, beta: 1.877 }, 100_000).unwrap();
        assert!((s2.mean() / 64.0 - 1.0).abs() < 0.01);
    }

    #[test]
    fn dpl_fits() {
        let g1 = fit_dpl(16.0, 1_000_000).unwrap();
        assert!((g1 - 1.911).abs() < 0.01, "{g1}");
        let m = pmf(DegreeFamily::PowerLaw { gamma: g1 }, 1_000_000).unwrap().mean();
        assert!((m / 16.0 - 1.0).abs() < 1e-6);
        let g2 = fit_dpl(64.0, 100_000).unwrap();
        assert!((g2 - 1.668).abs() < 0.01, "{g2}");
    }

    #[test]
    fn dpl_infeasible_targets() {
        // uniform mean is the gamma -> 0 limit, beyond the bracket
        assert!(matches!(fit_dpl(5000.5, 10_000), Err(BterError::Infeasible(_))));
        assert!(matches!(fit_dpl(20.0, 10), Err(BterError::Infeasible(_))));
        assert!(matches!(fit_dpl(1.0, 10), Err(BterError::Infeasible(_))));
    }

    #[test]
    fn dgln_scenario_one() {
        let f = dgln_objective(1.988, 2.079, 16.0, 1_000_000, 1e-8).unwrap();
        assert!(f <= 1e-4, "{f}");
        let fit = fit_dgln(16.0, 1_000_000, 1e-8).unwrap();
        assert!((fit.mean / 16.0 - 1.0).abs() <= 0.005);
        assert!(fit.tail <= 1e-8);
    }

    #[test]
    fn dgln_scenario_two_reference_is_admissible() {
        let s2 = pmf(DegreeFamily::GenLogNormal { alpha: 2.171, beta: 1.877 }, 100_000).unwrap();
        assert!((s2.mean() / 64.0 - 1.0).abs() < 0.005);
        assert!(s2.tail() <= 1e-7);
        let fit = fit_dgln(64.0, 100_000, 1e-7).unwrap();
        assert!((fit.mean / 64.0 - 1.0).abs() <= 0.005);
        assert!(fit.tail <= 1e-7);
    }

    #[test]
    fn dgln_round_trip() {
        let known = pmf(DegreeFamily::GenLogNormal { alpha: 1.7, beta: 2.3 }, 20_000).unwrap();
        let fit = fit_dgln(known.mean(), 20_000, 1e-3).unwrap();
        assert!((fit.mean / known.mean() - 1.0).abs() <= 0.005);
    }

    #[test]
    fn dgln_decays_faster_than_dpl() {
        for (dbar, dstar, alpha, beta) in [(16.0, 1_000_000, 1.988, 2.079), (64.0, 100_000, 2.171, 1.877)] {
            let gamma = fit_dpl(dbar, dstar).unwrap();
            let dpl = pmf(DegreeFamily::PowerLaw { gamma }, dstar).unwrap();
            let dgln = pmf(DegreeFamily::GenLogNormal { alpha, beta }, dstar).unwrap();
            assert!((dgln.mean() / dpl.mean() - 1.0).abs() < 0.01);
            assert!(dgln.tail() < dpl.tail());
        }
    }

    #[test]
    fn realize_expected_and_sampled() {
        let point = pmf(DegreeFamily::PowerLaw { gamma: 1.0 }, 3).unwrap();
        let one = DegreePmf {
            family: point.family,
            probs: vec![0.0, 0.0, 1.0],
            mean: 3.0,
            log_tail: 0.0,
        };
        for mode in [Realization::Expected, Realization::Sample] {
            let dd = realize_degree_distribution(&one, 1, mode, 5).unwrap();
            assert_eq!(dd.count(3), 1);
            assert_eq!(dd.num_nodes(), 1);
        }

        let p = pmf(DegreeFamily::GenLogNormal { alpha: 1.98, beta: 2.08 }, 10_000).unwrap();
        for n in [1, 7, 999, 123_457] {
            let dd = realize_degree_distribution(&p, n, Realization::Expected, 0).unwrap();
            assert_eq!(dd.num_nodes(), n);
            let dd = realize_degree_distribution(&p, n, Realization::Sample, 3).unwrap();
            assert_eq!(dd.num_nodes(), n);
        }
        assert!(realize_degree_distribution(&p, 0, Realization::Sample, 0).is_err());
    }

    #[test]
    fn realize_sample_mean_converges() {
        let p = pmf(DegreeFamily::GenLogNormal { alpha: 1.988, beta: 2.079 }, 1_000_000).unwrap();
        let dd = realize_degree_distribution(&p, 10_000_000, Realization::Sample, 42).unwrap();
        assert!((dd.mean_degree() / 16.0 - 1.0).abs() < 0.005, "{}", dd.mean_degree());
    }

    #[test]
    fn target_gcc_examples() {
        let dd = DegreeDistribution::from_counts(vec![3, 5, 2, 1]);
        let flat = CcdProfile {
            cmax: 0.4,
            xi: 0.0,
            decay: ClusteringDecay::Linear,
            max_degree: 4,
            noise: false,
        };
        assert!((target_gcc(&dd, &flat).unwrap() - 0.4).abs() < 1e-15);

        let only2 = DegreeDistribution::from_counts(vec![0, 7]);
        let p = CcdProfile { cmax: 0.4, xi: 0.0, decay: ClusteringDecay::Linear, max_degree: 2, noise: false };
        assert!((target_gcc(&only2, &p).unwrap() - 0.4).abs() < 1e-15);

        // n_2 = 2 (1 wedge each), n_3 = 1 (3 wedges): (2*c2 + 3*c3) / 5
        let two = DegreeDistribution::from_counts(vec![0, 2, 1]);
        let p = CcdProfile { cmax: 0.6, xi: 0.5, decay: ClusteringDecay::Linear, max_degree: 3, noise: false };
        let (c2, c3) = (0.6 * (-0.5f64).exp(), 0.6 * (-1.0f64).exp());
        assert!((target_gcc(&two, &p).unwrap() - (2.0 * c2 + 3.0 * c3) / 5.0).abs() < 1e-15);

        assert!(target_gcc(&DegreeDistribution::from_counts(vec![9]), &p).is_err());
    }

    fn scenario_dd(alpha: f64, beta: f64, dstar: usize, n: u64) -> DegreeDistribution {
        let p = pmf(DegreeFamily::GenLogNormal { alpha, beta }, dstar).unwrap();
        realize_degree_distribution(&p, n, Realization::Expected, 0).unwrap()
    }

    #[test]
    fn xi_scenario_two_linear_decay() {
        let dd = scenario_dd(1.98, 2.08, 10_000, 1_000_000);
        let xi = fit_xi(0.5, 0.10, &dd, ClusteringDecay::Linear).unwrap();
        assert!((0.005..0.02).contains(&xi), "{xi}");
    }

    #[test]
    fn xi_fit_hits_target() {
        let dd = scenario_dd(2.14, 1.83, 100_000, 1_000_000);
        for decay in [ClusteringDecay::Power, ClusteringDecay::Linear] {
            let xi = fit_xi(0.9, 0.15, &dd, decay).unwrap();
            let p = CcdProfile { cmax: 0.9, xi, decay, max_degree: dd.d_max(), noise: false };
            let g = target_gcc(&dd, &p).unwrap();
            assert!((g - 0.15).abs() < 1e-3, "{decay:?}: {g}");
        }
    }

    #[test]
    fn xi_limits() {
        let dd = scenario_dd(1.98, 2.08, 10_000, 100_000);
        assert!(matches!(fit_xi(0.5, 0.5, &dd, ClusteringDecay::Linear), Err(BterError::Infeasible(_))));
        assert!(matches!(fit_xi(0.5, 0.6, &dd, ClusteringDecay::Power), Err(BterError::Infeasible(_))));
        // approaching c_max drives xi toward zero
        let a = fit_xi(0.5, 0.45, &dd, ClusteringDecay::Linear).unwrap();
        let b = fit_xi(0.5, 0.499, &dd, ClusteringDecay::Linear).unwrap();
        assert!(b < a && b < 1e-4, "{a} {b}");
        // under power decay the reachable supremum is c_max / e
        let sup = 0.5 * (-1.0f64).exp();
        assert!(fit_xi(0.5, sup * 1.01, &dd, ClusteringDecay::Power).is_err());
        let c = fit_xi(0.5, sup * 0.999, &dd, ClusteringDecay::Power).unwrap();
        assert!(c < 1e-3, "{c}");
    }

    #[test]
    fn noise_behaviour() {
        let p = CcdProfile { cmax: 0.5, xi: 0.01, decay: ClusteringDecay::Linear, max_degree: 50, noise: false };
        assert_eq!(noisy_ccd(&p, 1), p.means());

        let zero = CcdProfile { cmax: 0.0, noise: true, ..p };
        assert!(noisy_ccd(&zero, 1).values().iter().all(|&c| c == 0.0));

        // c̄ = 0.5 at every degree: sd = min(0.01, 0.25) = 0.01
        let flat = CcdProfile { cmax: 0.5, xi: 0.0, decay: ClusteringDecay::Linear, max_degree: 10_001, noise: true };
        let draws: Vec<f64> = noisy_ccd(&flat, 7).iter().map(|(_, c)| c).collect();
        let n = draws.len() as f64;
        let mean = draws.iter().sum::<f64>() / n;
        let sd = (draws.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        assert!((mean - 0.5).abs() < 3.0 * 0.01 / 100.0, "{mean}");
        assert!((sd - 0.01).abs() < 0.0005, "{sd}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn normalized_and_matches_direct(
            gamma in 0.2f64..4.0,
            alpha in 0.5f64..4.0,
            beta in 0.5f64..4.0,
            dstar in 1usize..10_000,
        ) {
            for fam in [DegreeFamily::PowerLaw { gamma }, DegreeFamily::GenLogNormal { alpha, beta }] {
                let p = pmf(fam, dstar).unwrap();
                let total: f64 = p.probs().iter().sum();
                prop_assert!((total - 1.0).abs() < 1e-12);
                prop_assert!(p.probs().iter().all(|&x| x >= 0.0));
                let (_, mean, tail) = direct(fam, dstar);
                prop_assert!((p.mean() - mean).abs() / mean < 1e-10);
                if tail > 1e-300 {
                    prop_assert!((p.tail() - tail).abs() / tail < 1e-9);
                }
            }
        }

        #[test]
        fn profile_non_increasing(cmax in 0.01f64..1.0, xi in 1e-6f64..5.0) {
            for decay in [ClusteringDecay::Power, ClusteringDecay::Linear] {
                let p = CcdProfile { cmax, xi, decay, max_degree: 300, noise: false };
                let v = p.means();
                for w in v.values()[1..].windows(2) {
                    prop_assert!(w[1] <= w[0]);
                    prop_assert!((0.0..=cmax).contains(&w[1]));
                }
            }
        }
    }
}
