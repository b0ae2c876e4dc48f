//! BTER (block two-level Erdős–Rényi) graph generation.
//!
//! Given a degree distribution and a clustering coefficient per degree,
//! [`setup::bter_setup`] builds compact sampling tables and
//! [`edgegen::generate`] draws edges independently across partitions.
//! [`assembly`] turns the raw draws into a simple graph and [`metrics`]
//! measures what came out. [`idealized`] fits synthetic target profiles.
//!
//! ```
//! use bter::prelude::*;
//!
//! let dd = DegreeDistribution::from_counts(vec![26, 20, 10, 6, 4, 3, 2, 1, 1]);
//! let ccd = ClusteringProfile::constant(0.5, dd.d_max());
//! let tables = bter_setup(&validate_inputs(dd, ccd, 1.0)?)?;
//! let plan = GenerationPlan::for_tables(&tables, 4)?;
//! let graph = dedup(generate(&tables, &plan, 42));
//! assert!(graph.num_edges() > 0);
//! # Ok::<(), bter::BterError>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod cli;
pub mod edgegen;
pub mod error;
pub mod idealized;
pub mod io;
pub mod metrics;
pub mod model;
pub mod sampling;
pub mod setup;

pub use error::{BterError, Result};

pub mod prelude {
    pub use crate::assembly::{compact, dedup, dedup_with, DedupStrategy, Graph};
    pub use crate::edgegen::{generate, generate_with, EdgeSampler, GenerationPlan, Phase, PhaseMode, RngStream};
    pub use crate::error::{BterError, Result};
    pub use crate::idealized::{
        fit_dgln, fit_dpl, fit_xi, noisy_ccd, pmf, realize_degree_distribution, target_gcc, CcdProfile,
        ClusteringDecay, DegreeFamily, Realization,
    };
    pub use crate::metrics::{ccd_exact, ccd_sampled, degree_distribution, CcdReport, WedgeSampling};
    pub use crate::model::{validate_inputs, ClusteringProfile, DegreeDistribution, Edge, ModelInputs, NodeId};
    pub use crate::setup::{block_connectivity, block_weight, bter_setup, SetupTables};
}
