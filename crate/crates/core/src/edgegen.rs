//! Independent edge generation.
//!
//! Every draw flips a coin weighted by `w^(1) : w^(2)`. Phase 1 picks an
//! affinity group by weight, a block uniformly inside it, and two distinct
//! nodes of that block. Phase 2 is Chung-Lu on excess degree: two endpoints
//! drawn independently, each by degree weight, then fill-or-bulk, then
//! uniformly within the pool. Draws share nothing but the read-only tables,
//! so the work splits into partitions with private random streams.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{BterError, Result};
use crate::model::{Edge, NodeId};
use crate::sampling::search;
use crate::setup::SetupTables;

/// Seeded random stream for one partition.
///
/// ChaCha with the partition index as stream id: streams with equal
/// `(seed, partition)` repeat exactly, distinct partitions never overlap.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, partition: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(partition);
        RngStream { rng }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    Two,
}

/// How partitions decide the phase of each draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseMode {
    /// A weighted coin per draw.
    #[default]
    Mixed,
    /// One binomial draw per partition fixes its Phase-1 count; Phase-1
    /// edges are emitted first.
    Split,
}

/// Number of draws and their split across partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationPlan {
    quotas: Vec<u64>,
}

impl GenerationPlan {
    /// Splits `total_draws` as evenly as possible; the first
    /// `total_draws % partitions` partitions take one extra draw.
    pub fn new(total_draws: u64, partitions: usize) -> Result<Self> {
        if partitions == 0 {
            return Err(BterError::validation("at least one partition is required"));
        }
        let p = partitions as u64;
        let (base, extra) = (total_draws / p, total_draws % p);
        let quotas = (0..p).map(|i| base + u64::from(i < extra)).collect();
        Ok(GenerationPlan { quotas })
    }

    /// `W = round(w^(1) + w^(2))` draws.
    pub fn for_tables(tables: &SetupTables, partitions: usize) -> Result<Self> {
        Self::new(tables.total_weight().round() as u64, partitions)
    }

    pub fn total_draws(&self) -> u64 {
        self.quotas.iter().sum()
    }

    pub fn partitions(&self) -> usize {
        self.quotas.len()
    }

    pub fn quota(&self, partition: usize) -> u64 {
        self.quotas[partition]
    }

    pub fn quotas(&self) -> &[u64] {
        &self.quotas
    }
}

/// Read-only view of the tables used by every draw.
#[derive(Debug, Clone, Copy)]
pub struct EdgeSampler<'a> {
    tables: &'a SetupTables,
    w1: f64,
    w2: f64,
}

impl<'a> EdgeSampler<'a> {
    pub fn new(tables: &'a SetupTables) -> Self {
        EdgeSampler {
            tables,
            w1: tables.phase1_weight(),
            w2: tables.phase2_weight(),
        }
    }

    pub fn tables(&self) -> &'a SetupTables {
        self.tables
    }

    /// Probability that a draw is a Phase-1 draw.
    pub fn phase1_probability(&self) -> f64 {
        let w = self.w1 + self.w2;
        if w > 0.0 {
            self.w1 / w
        } else {
            0.0
        }
    }

    pub fn sample_edge<R: Rng + ?Sized>(&self, rng: &mut R) -> (Phase, Edge) {
        let mut c = 0;
        self.sample_edge_counted(rng, &mut c)
    }

    /// Like [`sample_edge`](Self::sample_edge), adding the number of
    /// cumulative-weight comparisons performed to `comparisons`.
    pub fn sample_edge_counted<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        comparisons: &mut u32,
    ) -> (Phase, Edge) {
        let coin: f64 = rng.random();
        if coin * (self.w1 + self.w2) < self.w1 {
            (Phase::One, self.phase1(rng, comparisons))
        } else {
            (Phase::Two, self.phase2(rng, comparisons))
        }
    }

    fn phase1<R: Rng + ?Sized>(&self, rng: &mut R, comparisons: &mut u32) -> Edge {
        let groups = self.tables.groups();
        let g = search(groups.cumulative_weights(), rng.random::<f64>() * self.w1, comparisons);
        let blocks = groups.blocks(g);
        let size = groups.block_size(g);
        let block = uniform_below(rng.random(), blocks);
        let offset = groups.first(g) + block * size;
        let i = uniform_below(rng.random(), size);
        let mut j = uniform_below(rng.random(), size - 1);
        if j >= i {
            j += 1;
        }
        Edge::new(offset + i, offset + j)
    }

    fn phase2<R: Rng + ?Sized>(&self, rng: &mut R, comparisons: &mut u32) -> Edge {
        let u = self.phase2_node(rng, comparisons);
        let v = self.phase2_node(rng, comparisons);
        Edge::new(u, v)
    }

    fn phase2_node<R: Rng + ?Sized>(&self, rng: &mut R, comparisons: &mut u32) -> NodeId {
        let degrees = self.tables.degrees();
        let d = search(degrees.cumulative_weights(), rng.random::<f64>() * self.w2, comparisons) + 1;
        let r1: f64 = rng.random();
        let r2: f64 = rng.random();
        if r1 < degrees.fill_ratio(d) {
            degrees.first(d) + uniform_below(r2, degrees.fill(d))
        } else {
            degrees.first(d) + degrees.fill(d) + uniform_below(r2, degrees.bulk(d))
        }
    }

    /// Lazily emits `quota` draws of one partition.
    pub fn stream(&self, seed: u64, partition: usize, quota: u64, mode: PhaseMode) -> PartitionStream<'a> {
        let mut rng = RngStream::new(seed, partition as u64);
        let phase1_left = match mode {
            PhaseMode::Mixed => None,
            PhaseMode::Split => {
                let p = self.phase1_probability();
                Some(Binomial::new(quota, p).map(|b| b.sample(&mut rng)).unwrap_or(0))
            }
        };
        PartitionStream {
            sampler: *self,
            rng,
            remaining: quota,
            phase1_left,
            comparisons: 0,
        }
    }
}

/// `floor(r · k)` clamped below `k`, for `r ∈ [0, 1)`.
#[inline]
fn uniform_below(r: f64, k: u64) -> u64 {
    ((r * k as f64) as u64).min(k.saturating_sub(1))
}

/// Iterator over the draws of a single partition.
#[derive(Debug, Clone)]
pub struct PartitionStream<'a> {
    sampler: EdgeSampler<'a>,
    rng: RngStream,
    remaining: u64,
    phase1_left: Option<u64>,
    comparisons: u64,
}

impl PartitionStream<'_> {
    /// Cumulative-weight comparisons spent so far.
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }
}

impl Iterator for PartitionStream<'_> {
    type Item = (Phase, Edge);

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let mut c = 0;
        let out = match &mut self.phase1_left {
            None => self.sampler.sample_edge_counted(&mut self.rng, &mut c),
            Some(left) if *left > 0 => {
                *left -= 1;
                (Phase::One, self.sampler.phase1(&mut self.rng, &mut c))
            }
            Some(_) => (Phase::Two, self.sampler.phase2(&mut self.rng, &mut c)),
        };
        self.comparisons += u64::from(c);
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for PartitionStream<'_> {}

/// Picks a Phase-1 edge. Fails when the tables have no Phase-1 weight.
pub fn sample_phase1<R: Rng + ?Sized>(tables: &SetupTables, rng: &mut R) -> Result<Edge> {
    let sampler = EdgeSampler::new(tables);
    if !(sampler.w1 > 0.0) {
        return Err(BterError::validation("phase 1 has zero weight"));
    }
    Ok(sampler.phase1(rng, &mut 0))
}

/// Picks one Phase-2 endpoint. Fails when the tables have no Phase-2 weight.
pub fn sample_phase2_node<R: Rng + ?Sized>(tables: &SetupTables, rng: &mut R) -> Result<NodeId> {
    let sampler = EdgeSampler::new(tables);
    if !(sampler.w2 > 0.0) {
        return Err(BterError::validation("phase 2 has zero weight"));
    }
    Ok(sampler.phase2_node(rng, &mut 0))
}

pub fn sample_edge<R: Rng + ?Sized>(tables: &SetupTables, rng: &mut R) -> Result<(Phase, Edge)> {
    let sampler = EdgeSampler::new(tables);
    if !(sampler.w1 + sampler.w2 > 0.0) {
        return Err(BterError::validation("tables have zero total weight"));
    }
    Ok(sampler.sample_edge(rng))
}

/// Generates every draw of `plan` in parallel across partitions, with
/// mixed phase selection. Output is partition 0's edges, then partition 1's,
/// and so on; each partition uses `RngStream::new(seed, p)`.
pub fn generate(tables: &SetupTables, plan: &GenerationPlan, seed: u64) -> Vec<Edge> {
    generate_with(tables, plan, seed, PhaseMode::Mixed)
}

pub fn generate_with(
    tables: &SetupTables,
    plan: &GenerationPlan,
    seed: u64,
    mode: PhaseMode,
) -> Vec<Edge> {
    if plan.total_draws() == 0 || !(tables.total_weight() > 0.0) {
        return Vec::new();
    }
    let sampler = EdgeSampler::new(tables);
    let parts: Vec<Vec<Edge>> = plan
        .quotas()
        .par_iter()
        .enumerate()
        .map(|(p, &q)| sampler.stream(seed, p, q, mode).map(|(_, e)| e).collect())
        .collect();
    let mut out = Vec::with_capacity(plan.total_draws() as usize);
    for part in parts {
        out.extend(part);
    }
    out
}
