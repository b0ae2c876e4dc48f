//! Preprocessing: assigns nodes to affinity blocks and groups and builds the
//! `O(d_max)` tables that drive both sampling phases.
//!
//! Node layout: degree-2 nodes start at id 0, each degree follows the
//! previous one, and the (possibly blown-up) degree-1 pool comes last.
//! Within degree `d`, the first `n_d^fill` ids are fill nodes completing the
//! last block of the preceding group; the rest are bulk nodes.

use crate::error::{BterError, Result};
use crate::model::{pairs, ModelInputs, NodeId};
use crate::sampling::cumulative;

/// Upper clamp on block connectivity. `ρ = 1` would need infinitely many
/// draws to complete a block.
pub const RHO_CAP: f64 = 1.0 - 1e-6;

/// Erdős–Rényi connectivity `ρ = ∛c` that gives a block of degree-`d`
/// nodes the target clustering coefficient `c`.
pub fn block_connectivity(c: f64) -> f64 {
    c.cbrt().min(RHO_CAP)
}

/// Expected number of with-replacement draws, `C(n_b,2)·ln(1/(1−ρ))`,
/// needed to see `ρ·C(n_b,2)` distinct pairs in a block of `n_b` nodes.
pub fn block_weight(n_b: u64, rho: f64) -> f64 {
    pairs(n_b) * -(-rho).ln_1p()
}

/// One entry per affinity group. Blocks of group `g` occupy ids
/// `first[g] + k·block_size[g] .. first[g] + (k+1)·block_size[g]` for
/// `k < blocks[g]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GroupTable {
    first: Vec<NodeId>,
    blocks: Vec<u64>,
    block_size: Vec<u64>,
    cum_weight: Vec<f64>,
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    pub fn first(&self, g: usize) -> NodeId {
        self.first[g]
    }

    pub fn blocks(&self, g: usize) -> u64 {
        self.blocks[g]
    }

    pub fn block_size(&self, g: usize) -> u64 {
        self.block_size[g]
    }

    /// Total Phase-1 weight of the group, duplicate draws included.
    pub fn weight(&self, g: usize) -> f64 {
        diff(&self.cum_weight, g)
    }

    pub fn cumulative_weights(&self) -> &[f64] {
        &self.cum_weight
    }

    /// Connectivity implied by the stored weight.
    pub fn connectivity(&self, g: usize) -> f64 {
        let per_block = pairs(self.block_size[g]) * self.blocks[g] as f64;
        if per_block == 0.0 {
            return 0.0;
        }
        -(-self.weight(g) / per_block).exp_m1()
    }

    /// Expected intra-block degree `(n_g − 1)·ρ` of every node in the group.
    pub fn internal_degree(&self, g: usize) -> f64 {
        (self.block_size[g].saturating_sub(1)) as f64 * self.connectivity(g)
    }
}

/// Per-degree Phase-2 data, indexed by degree `d = 1..=d_max`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DegreeTable {
    count: Vec<u64>,
    first: Vec<NodeId>,
    fill: Vec<u64>,
    fill_ratio: Vec<f64>,
    cum_weight: Vec<f64>,
}

impl DegreeTable {
    pub fn d_max(&self) -> usize {
        self.count.len()
    }

    /// Desired number of degree-`d` nodes, `n_d`.
    pub fn count(&self, d: usize) -> u64 {
        self.count[d - 1]
    }

    /// First node id of degree `d`.
    pub fn first(&self, d: usize) -> NodeId {
        self.first[d - 1]
    }

    /// Fill-node count; for `d = 1` the size of the blown-up pool.
    pub fn fill(&self, d: usize) -> u64 {
        self.fill[d - 1]
    }

    pub fn bulk(&self, d: usize) -> u64 {
        self.count[d - 1].saturating_sub(self.fill[d - 1])
    }

    /// Share of `w_d` that belongs to fill nodes.
    pub fn fill_ratio(&self, d: usize) -> f64 {
        self.fill_ratio[d - 1]
    }

    /// Total Phase-2 weight `w_d` of degree-`d` nodes.
    pub fn weight(&self, d: usize) -> f64 {
        diff(&self.cum_weight, d - 1)
    }

    pub fn cumulative_weights(&self) -> &[f64] {
        &self.cum_weight
    }

    /// Number of ids reserved for degree `d`: `n_d`, or the blown-up pool for `d = 1`.
    pub fn pool_size(&self, d: usize) -> u64 {
        if d == 1 {
            self.fill[0]
        } else {
            self.count[d - 1]
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SetupTables {
    groups: GroupTable,
    degrees: DegreeTable,
    num_nodes: u64,
}

impl SetupTables {
    pub fn groups(&self) -> &GroupTable {
        &self.groups
    }

    pub fn degrees(&self) -> &DegreeTable {
        &self.degrees
    }

    pub fn d_max(&self) -> usize {
        self.degrees.d_max()
    }

    /// Size of the node id space, including the blown-up degree-1 pool.
    pub fn num_nodes(&self) -> u64 {
        self.num_nodes
    }

    /// Phase-1 weight `w^(1) = Σ_g w_g`.
    pub fn phase1_weight(&self) -> f64 {
        self.groups.cum_weight.last().copied().unwrap_or(0.0)
    }

    /// Phase-2 weight `w^(2) = Σ_d w_d`.
    pub fn phase2_weight(&self) -> f64 {
        self.degrees.cum_weight.last().copied().unwrap_or(0.0)
    }

    pub fn total_weight(&self) -> f64 {
        self.phase1_weight() + self.phase2_weight()
    }

    /// Number of array entries held by the tables.
    pub fn stored_values(&self) -> usize {
        let g = &self.groups;
        let d = &self.degrees;
        g.first.len() + g.blocks.len() + g.block_size.len() + g.cum_weight.len()
            + d.count.len()
            + d.first.len()
            + d.fill.len()
            + d.fill_ratio.len()
            + d.cum_weight.len()
    }

    /// Same layout with every Phase-1 weight dropped and each node's whole
    /// desired degree moved to Phase 2: plain Chung-Lu on the degree sequence.
    pub fn chung_lu(inputs: &ModelInputs) -> Result<SetupTables> {
        bter_setup(&inputs.without_clustering())
    }
}

#[cfg(test)]
impl SetupTables {
    /// Hand-built tables. Groups are `(first, blocks, size, weight)`,
    /// degrees `(count, first, fill, fill_ratio, weight)` for `d = 1..`.
    pub(crate) fn from_parts(
        groups: &[(NodeId, u64, u64, f64)],
        degrees: &[(u64, NodeId, u64, f64, f64)],
        num_nodes: u64,
    ) -> SetupTables {
        SetupTables {
            groups: GroupTable {
                first: groups.iter().map(|g| g.0).collect(),
                blocks: groups.iter().map(|g| g.1).collect(),
                block_size: groups.iter().map(|g| g.2).collect(),
                cum_weight: cumulative(groups.iter().map(|g| g.3)),
            },
            degrees: DegreeTable {
                count: degrees.iter().map(|d| d.0).collect(),
                first: degrees.iter().map(|d| d.1).collect(),
                fill: degrees.iter().map(|d| d.2).collect(),
                fill_ratio: degrees.iter().map(|d| d.3).collect(),
                cum_weight: cumulative(degrees.iter().map(|d| d.4)),
            },
            num_nodes,
        }
    }
}

fn diff(cum: &[f64], i: usize) -> f64 {
    if i == 0 {
        cum[0]
    } else {
        cum[i] - cum[i - 1]
    }
}

pub fn bter_setup(inputs: &ModelInputs) -> Result<SetupTables> {
    let dd = inputs.degrees();
    let ccd = inputs.clustering();
    let d_max = dd.d_max();
    let n = |d: usize| dd.count(d);

    let mut first = vec![0; d_max];
    let mut next: NodeId = 0;
    for d in 2..=d_max {
        first[d - 1] = next;
        next += n(d);
    }
    first[0] = next;

    let mut fill = vec![0u64; d_max];
    let mut fill_ratio = vec![0.0; d_max];
    let mut weight = vec![0.0; d_max];

    let n1 = n(1);
    fill[0] = (inputs.beta() * n1 as f64).round() as u64;
    weight[0] = 0.5 * n1 as f64;
    fill_ratio[0] = 1.0;

    let mut groups = GroupTable::default();
    let mut group_weight = Vec::new();

    // nodes of degree greater than d, maintained as a running suffix sum
    let mut above: u64 = (2..=d_max).map(n).sum();
    let mut open_slots: u64 = 0;
    let mut open_internal = 0.0;

    for d in 2..=d_max {
        let n_d = n(d);
        above -= n_d;

        let (fill_d, fill_w) = if open_slots > 0 {
            let f = open_slots.min(n_d);
            open_slots -= f;
            (f, 0.5 * f as f64 * (d as f64 - open_internal))
        } else {
            (0, 0.0)
        };
        let bulk = n_d - fill_d;

        let mut bulk_w = 0.0;
        if bulk > 0 {
            let mut blocks = bulk.div_ceil(d as u64 + 1);
            let mut size = d as u64 + 1;
            if blocks * size > above + bulk {
                if blocks != 1 {
                    return Err(BterError::LastGroup { degree: d, blocks });
                }
                size = above + bulk;
                blocks = 1;
            }
            let c = ccd.get(d).ok_or_else(|| {
                BterError::validation(format!("clustering profile has no value for degree {d}"))
            })?;
            let rho = block_connectivity(c);
            let internal = (size - 1) as f64 * rho;
            bulk_w = 0.5 * bulk as f64 * (d as f64 - internal);

            groups.first.push(first[d - 1] + fill_d);
            groups.blocks.push(blocks);
            groups.block_size.push(size);
            group_weight.push(blocks as f64 * block_weight(size, rho));

            open_slots = blocks * size - bulk;
            open_internal = internal;
        }

        fill[d - 1] = fill_d;
        weight[d - 1] = fill_w + bulk_w;
        fill_ratio[d - 1] = if weight[d - 1] > 0.0 {
            fill_w / weight[d - 1]
        } else {
            0.0
        };
    }
    debug_assert_eq!(open_slots, 0);

    groups.cum_weight = cumulative(group_weight);
    let num_nodes = if d_max == 0 { 0 } else { first[0] + fill[0] };
    Ok(SetupTables {
        groups,
        degrees: DegreeTable {
            count: dd.counts().to_vec(),
            first,
            fill,
            fill_ratio,
            cum_weight: cumulative(weight),
        },
        num_nodes,
    })
}
