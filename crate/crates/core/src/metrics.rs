//! Degree distribution and clustering measurements.
//!
//! A wedge is a path of length two; it is centered at its middle node and
//! closed when its endpoints are adjacent. For a set of nodes, the
//! clustering coefficient is closed wedges over wedges, and the number of
//! closed wedges centered at a node equals the number of triangles through it.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use rayon::prelude::*;

use crate::assembly::{Adjacency, Graph};
use crate::edgegen::RngStream;
use crate::error::{BterError, Result};
use crate::model::{pairs, ClusteringProfile, DegreeDistribution, NodeId};
use crate::sampling::{cumulative, search};

/// Measured degrees: distribution over `d ≥ 1` plus the isolated count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservedDegrees {
    pub isolated: u64,
    pub distribution: DegreeDistribution,
}

pub fn degree_distribution(graph: &Graph) -> ObservedDegrees {
    let deg = graph.degrees();
    let d_max = deg.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; d_max];
    let mut isolated = 0;
    for d in deg {
        if d == 0 {
            isolated += 1;
        } else {
            counts[d as usize - 1] += 1;
        }
    }
    ObservedDegrees {
        isolated,
        distribution: DegreeDistribution::from_counts(counts),
    }
}

/// How nodes are grouped by degree before aggregating wedges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeBinning {
    /// One bin per degree.
    #[default]
    Exact,
    /// Bins `[2^k, 2^(k+1) - 1]`.
    Log2,
}

impl DegreeBinning {
    fn bin(self, d: u64) -> (u64, u64) {
        match self {
            DegreeBinning::Exact => (d, d),
            DegreeBinning::Log2 => {
                let k = 63 - d.leading_zeros();
                (1 << k, (1 << (k + 1)) - 1)
            }
        }
    }
}

/// Clustering for one degree bin.
#[derive(Debug, Clone, PartialEq)]
pub struct BinClustering {
    /// Inclusive degree range; equal for per-degree bins.
    pub degree_lo: u64,
    pub degree_hi: u64,
    pub nodes: u64,
    /// Total wedges centered at nodes of the bin.
    pub wedges: u64,
    /// `None` when the bin has no wedges.
    pub coefficient: Option<f64>,
    /// Confidence half-width of a sampled estimate; 0 for exact counts.
    pub half_width: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CcdReport {
    pub bins: Vec<BinClustering>,
    /// Global clustering coefficient: closed wedges over all wedges.
    pub gcc: f64,
}

impl CcdReport {
    pub fn bin_for_degree(&self, d: u64) -> Option<&BinClustering> {
        self.bins.iter().find(|b| b.degree_lo <= d && d <= b.degree_hi)
    }

    /// Coefficient per degree for use as generator input. Every degree in a
    /// bin takes the bin's value; bins without wedges give 0.
    pub fn to_profile(&self) -> ClusteringProfile {
        let d_max = self.bins.iter().map(|b| b.degree_hi).max().unwrap_or(0) as usize;
        let mut values = vec![0.0; d_max];
        for b in &self.bins {
            for d in b.degree_lo..=b.degree_hi {
                values[d as usize - 1] = b.coefficient.unwrap_or(0.0);
            }
        }
        ClusteringProfile::from_values(values)
    }
}

/// Triangles through each node, by degree-ordered intersection of sorted
/// forward neighbor lists. Each triangle is found once.
pub fn triangles_per_node(adj: &Adjacency) -> Vec<u64> {
    let n = adj.num_nodes();
    let rank = |u: NodeId| (adj.degree(u), u);
    let forward: Vec<Vec<NodeId>> = (0..n as NodeId)
        .into_par_iter()
        .map(|u| {
            adj.neighbors(u)
                .iter()
                .copied()
                .filter(|&v| rank(v) > rank(u))
                .collect()
        })
        .collect();
    let counts: Vec<AtomicU64> = (0..n).map(|_| AtomicU64::new(0)).collect();
    (0..n).into_par_iter().for_each(|u| {
        let fu = &forward[u];
        for &v in fu {
            let fv = &forward[v as usize];
            let (mut i, mut j) = (0, 0);
            while i < fu.len() && j < fv.len() {
                match fu[i].cmp(&fv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let w = fu[i];
                        counts[u].fetch_add(1, Ordering::Relaxed);
                        counts[v as usize].fetch_add(1, Ordering::Relaxed);
                        counts[w as usize].fetch_add(1, Ordering::Relaxed);
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    });
    counts.into_iter().map(AtomicU64::into_inner).collect()
}

struct Bin {
    lo: u64,
    hi: u64,
    nodes: Vec<NodeId>,
    wedges: u64,
}

fn bins(adj: &Adjacency, binning: DegreeBinning) -> Vec<Bin> {
    let mut out: Vec<Bin> = Vec::new();
    let mut order: Vec<NodeId> = (0..adj.num_nodes() as NodeId).filter(|&u| adj.degree(u) > 0).collect();
    order.sort_by_key(|&u| (adj.degree(u), u));
    for u in order {
        let d = adj.degree(u) as u64;
        let (lo, hi) = binning.bin(d);
        if out.last().is_none_or(|b| b.lo != lo) {
            out.push(Bin {
                lo,
                hi,
                nodes: Vec::new(),
                wedges: 0,
            });
        }
        let b = out.last_mut().unwrap();
        b.nodes.push(u);
        b.wedges += d * (d - 1) / 2;
    }
    out
}

pub fn ccd_exact(graph: &Graph) -> CcdReport {
    ccd_exact_binned(graph, DegreeBinning::Exact)
}

pub fn ccd_exact_binned(graph: &Graph, binning: DegreeBinning) -> CcdReport {
    let adj = graph.adjacency();
    let tri = triangles_per_node(&adj);
    let mut closed_total = 0u64;
    let mut wedge_total = 0u64;
    let bins = bins(&adj, binning)
        .into_iter()
        .map(|b| {
            let closed: u64 = b.nodes.iter().map(|&u| tri[u as usize]).sum();
            closed_total += closed;
            wedge_total += b.wedges;
            BinClustering {
                degree_lo: b.lo,
                degree_hi: b.hi,
                nodes: b.nodes.len() as u64,
                wedges: b.wedges,
                coefficient: (b.wedges > 0).then(|| closed as f64 / b.wedges as f64),
                half_width: (b.wedges > 0).then_some(0.0),
            }
        })
        .collect();
    CcdReport {
        bins,
        gcc: ratio(closed_total as f64, wedge_total as f64),
    }
}

fn ratio(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeSampling {
    pub samples_per_bin: u64,
    /// Two-sided confidence level for the reported half-width.
    pub confidence: f64,
    pub binning: DegreeBinning,
}

impl WedgeSampling {
    pub fn new(samples_per_bin: u64) -> Self {
        WedgeSampling {
            samples_per_bin,
            confidence: 0.999,
            binning: DegreeBinning::Exact,
        }
    }
}

/// Hoeffding half-width for the mean of `k` samples in `[0, 1]`:
/// `P(|mean − c| ≥ ε) ≤ 2·exp(−2kε²)` solved for `ε`.
pub fn hoeffding_half_width(samples: u64, confidence: f64) -> f64 {
    ((2.0 / (1.0 - confidence)).ln() / (2.0 * samples as f64)).sqrt()
}

/// Estimates per-bin clustering by checking uniformly random wedges.
///
/// A wedge is drawn by picking a node of the bin with probability
/// proportional to `C(d, 2)` and then a uniform pair of its neighbors.
/// Bins are independent and use `RngStream::new(seed, bin_index)`.
pub fn ccd_sampled(graph: &Graph, config: &WedgeSampling, seed: u64) -> Result<CcdReport> {
    if config.samples_per_bin == 0 {
        return Err(BterError::validation("samples per degree must be at least 1"));
    }
    if !(config.confidence > 0.0 && config.confidence < 1.0) {
        return Err(BterError::validation("confidence must lie in (0, 1)"));
    }
    let adj = graph.adjacency();
    let k = config.samples_per_bin;
    let half_width = hoeffding_half_width(k, config.confidence);
    let out: Vec<BinClustering> = bins(&adj, config.binning)
        .into_par_iter()
        .enumerate()
        .map(|(index, b)| {
            let mut result = BinClustering {
                degree_lo: b.lo,
                degree_hi: b.hi,
                nodes: b.nodes.len() as u64,
                wedges: b.wedges,
                coefficient: None,
                half_width: None,
            };
            if b.wedges == 0 {
                return result;
            }
            let mut rng = RngStream::new(seed, index as u64);
            let uniform_nodes = b.lo == b.hi;
            let cum = if uniform_nodes {
                Vec::new()
            } else {
                cumulative(b.nodes.iter().map(|&u| pairs(adj.degree(u) as u64)))
            };
            let mut closed = 0u64;
            for _ in 0..k {
                let r: f64 = rng.random();
                let center = if uniform_nodes {
                    b.nodes[((r * b.nodes.len() as f64) as usize).min(b.nodes.len() - 1)]
                } else {
                    b.nodes[search(&cum, r * cum[cum.len() - 1], &mut 0)]
                };
                let nbrs = adj.neighbors(center);
                let d = nbrs.len();
                let i = rng.random_range(0..d);
                let mut j = rng.random_range(0..d - 1);
                if j >= i {
                    j += 1;
                }
                if adj.has_edge(nbrs[i], nbrs[j]) {
                    closed += 1;
                }
            }
            result.coefficient = Some(closed as f64 / k as f64);
            result.half_width = Some(half_width);
            result
        })
        .collect();
    let wedges: f64 = out.iter().map(|b| b.wedges as f64).sum();
    let closed: f64 = out
        .iter()
        .filter_map(|b| b.coefficient.map(|c| c * b.wedges as f64))
        .sum();
    Ok(CcdReport {
        bins: out,
        gcc: ratio(closed, wedges),
    })
}

/// Per-degree differences between two measured or target profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileComparison {
    /// `(d, n_d in a, n_d in b)` for every degree present in either.
    pub degree_counts: Vec<(usize, u64, u64)>,
    /// `(d, c_d in a, c_d in b)` for degrees ≥ 2 covered by both profiles.
    pub clustering: Vec<(usize, f64, f64)>,
    pub mean_degree: (f64, f64),
    /// Wedge-weighted mean clustering under each pair's own distribution.
    pub gcc: (f64, f64),
    /// Largest `|c_a − c_b|` over degrees with at least `min_nodes` nodes in both.
    pub max_clustering_gap: f64,
    /// Total variation distance between the normalized degree distributions.
    pub degree_tv_distance: f64,
}

pub fn compare_profiles(
    dd_a: &DegreeDistribution,
    ccd_a: &ClusteringProfile,
    dd_b: &DegreeDistribution,
    ccd_b: &ClusteringProfile,
    min_nodes: u64,
) -> ProfileComparison {
    let d_max = dd_a.d_max().max(dd_b.d_max());
    let (na, nb) = (dd_a.num_nodes().max(1) as f64, dd_b.num_nodes().max(1) as f64);
    let mut degree_counts = Vec::new();
    let mut tv = 0.0;
    for d in 1..=d_max {
        let (a, b) = (dd_a.count(d), dd_b.count(d));
        if a > 0 || b > 0 {
            degree_counts.push((d, a, b));
            tv += (a as f64 / na - b as f64 / nb).abs();
        }
    }
    let mut clustering = Vec::new();
    let mut gap: f64 = 0.0;
    for d in 2..=d_max {
        if let (Some(a), Some(b)) = (ccd_a.get(d), ccd_b.get(d)) {
            if dd_a.count(d) == 0 && dd_b.count(d) == 0 {
                continue;
            }
            clustering.push((d, a, b));
            if dd_a.count(d) >= min_nodes && dd_b.count(d) >= min_nodes {
                gap = gap.max((a - b).abs());
            }
        }
    }
    ProfileComparison {
        degree_counts,
        clustering,
        mean_degree: (dd_a.mean_degree(), dd_b.mean_degree()),
        gcc: (weighted_gcc(dd_a, ccd_a), weighted_gcc(dd_b, ccd_b)),
        max_clustering_gap: gap,
        degree_tv_distance: tv / 2.0,
    }
}

fn weighted_gcc(dd: &DegreeDistribution, ccd: &ClusteringProfile) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (d, n) in dd.iter().filter(|&(d, _)| d >= 2) {
        let w = n as f64 * pairs(d as u64);
        num += w * ccd.get(d).unwrap_or(0.0);
        den += w;
    }
    ratio(num, den)
}
