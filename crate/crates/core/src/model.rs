//! Domain types shared by every stage of the pipeline.
//!
//! Degrees are 1-based everywhere in the public API (`count(3)` is the
//! number of degree-3 nodes); node ids are 0-based.

use crate::error::{BterError, Result};

pub type NodeId = u64;

/// Node counts `n_d` for degrees `d = 1..=d_max`.
///
/// Trailing zero counts are trimmed on construction so `d_max` is always
/// tight. An empty distribution (`d_max == 0`) is representable, e.g. as the
/// measurement of an edgeless graph, but is rejected by [`validate_inputs`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeDistribution {
    // counts[d - 1] = n_d
    counts: Vec<u64>,
}

impl DegreeDistribution {
    /// `counts[i]` is the number of nodes of degree `i + 1`.
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        DegreeDistribution { counts }
    }

    /// Builds a distribution from `(degree, count)` pairs; missing degrees
    /// have count zero. Degree 0 entries are rejected.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, u64)>,
    {
        let mut counts = Vec::new();
        for (d, n) in pairs {
            if d == 0 {
                return Err(BterError::validation("degree 0 is not part of a degree distribution"));
            }
            if counts.len() < d {
                counts.resize(d, 0);
            }
            counts[d - 1] += n;
        }
        Ok(Self::from_counts(counts))
    }

    pub fn d_max(&self) -> usize {
        self.counts.len()
    }

    /// `n_d`, zero outside `1..=d_max`.
    pub fn count(&self, d: usize) -> u64 {
        if d == 0 {
            return 0;
        }
        self.counts.get(d - 1).copied().unwrap_or(0)
    }

    /// Raw counts, index `d - 1`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Degrees with a nonzero count, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(i, &n)| (i + 1, n))
    }

    pub fn num_nodes(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn total_degree(&self) -> u64 {
        self.iter().map(|(d, n)| d as u64 * n).sum()
    }

    /// Implied edge count `m = ½ Σ d·n_d`; fractional when the degree sum is odd.
    pub fn num_edges(&self) -> f64 {
        self.total_degree() as f64 / 2.0
    }

    pub fn mean_degree(&self) -> f64 {
        let n = self.num_nodes();
        if n == 0 {
            0.0
        } else {
            self.total_degree() as f64 / n as f64
        }
    }

    /// Total wedges `Σ n_d·C(d,2)`.
    pub fn wedges(&self) -> f64 {
        self.iter().map(|(d, n)| n as f64 * pairs(d as u64)).sum()
    }
}

/// Target mean clustering coefficient `c_d` per degree.
///
/// Covers degrees `1..=max_degree()`; `c_1` is carried but never used.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClusteringProfile {
    // values[d - 1] = c_d
    values: Vec<f64>,
}

impl ClusteringProfile {
    /// `values[i]` is the target for degree `i + 1`.
    pub fn from_values(values: Vec<f64>) -> Self {
        ClusteringProfile { values }
    }

    /// Degrees omitted below the largest listed degree default to zero.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let mut values = Vec::new();
        for (d, c) in pairs {
            if d == 0 {
                return Err(BterError::validation("degree 0 has no clustering coefficient"));
            }
            if values.len() < d {
                values.resize(d, 0.0);
            }
            values[d - 1] = c;
        }
        Ok(ClusteringProfile { values })
    }

    /// A profile with the same coefficient for every degree up to `d_max`.
    pub fn constant(c: f64, d_max: usize) -> Self {
        ClusteringProfile {
            values: vec![c; d_max],
        }
    }

    pub fn max_degree(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, d: usize) -> Option<f64> {
        if d == 0 {
            return None;
        }
        self.values.get(d - 1).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(d, c_d)` for `d ≥ 2`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i + 1, c))
    }
}

/// Validated generator inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelInputs {
    dd: DegreeDistribution,
    ccd: ClusteringProfile,
    beta: f64,
}

impl ModelInputs {
    pub fn degrees(&self) -> &DegreeDistribution {
        &self.dd
    }

    pub fn clustering(&self) -> &ClusteringProfile {
        &self.ccd
    }

    /// Blowup factor for the degree-1 pool.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn num_nodes(&self) -> u64 {
        self.dd.num_nodes()
    }

    pub fn num_edges(&self) -> f64 {
        self.dd.num_edges()
    }

    pub fn d_max(&self) -> usize {
        self.dd.d_max()
    }

    /// Same degree distribution and blowup with every `c_d` set to zero,
    /// which removes all intra-block edges (the Chung-Lu special case).
    pub fn without_clustering(&self) -> ModelInputs {
        ModelInputs {
            dd: self.dd.clone(),
            ccd: ClusteringProfile::constant(0.0, self.dd.d_max()),
            beta: self.beta,
        }
    }
}

pub fn validate_inputs(
    dd: DegreeDistribution,
    ccd: ClusteringProfile,
    beta: f64,
) -> Result<ModelInputs> {
    if !(beta >= 1.0) || !beta.is_finite() {
        return Err(BterError::validation(format!("blowup factor must be >= 1, got {beta}")));
    }
    if dd.num_nodes() == 0 {
        return Err(BterError::validation("degree distribution has no nodes"));
    }
    for (d, c) in ccd.iter() {
        if !(0.0..=1.0).contains(&c) {
            return Err(BterError::validation(format!(
                "clustering coefficient for degree {d} is {c}, outside [0, 1]"
            )));
        }
    }
    if let Some((d, _)) = dd.iter().find(|&(d, _)| d >= 2 && ccd.get(d).is_none()) {
        return Err(BterError::validation(format!(
            "clustering profile has no value for degree {d}"
        )));
    }
    Ok(ModelInputs { dd, ccd, beta })
}

/// An undirected node pair. Raw generator output may hold `u > v` or
/// `u == v`; graphs only store the canonical form `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
}

impl Edge {
    pub fn new(u: NodeId, v: NodeId) -> Self {
        Edge { u, v }
    }

    pub fn canonical(self) -> Self {
        if self.u <= self.v {
            self
        } else {
            Edge { u: self.v, v: self.u }
        }
    }

    pub fn is_loop(self) -> bool {
        self.u == self.v
    }
}

impl From<(NodeId, NodeId)> for Edge {
    fn from((u, v): (NodeId, NodeId)) -> Self {
        Edge { u, v }
    }
}

/// `C(k, 2)` as a float.
pub(crate) fn pairs(k: u64) -> f64 {
    let k = k as f64;
    k * (k - 1.0) / 2.0
}
