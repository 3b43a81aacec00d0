//! Learning causal posets.
//!
//! * [`learn_poset_interventional`]: one experiment per target set; inside
//!   an experiment the targets are randomized, and a dependence between a
//!   target `e` and a non-target `f` places `e` above `f`.
//! * [`learn_dag_antichain`]: one experiment per level antichain of a known
//!   order, returning the transitive reduction of the detected pairs.
//! * [`learn_poset_genotypes`]: the largest order compatible with the
//!   observed genotypes.
//! * [`classify_intervention_topology`] and [`separability_check`] describe
//!   families of target sets and datasets.

mod antichain;
mod family;
mod genotype;
mod interventional;

pub use antichain::{learn_dag_antichain, AntichainResult};
pub use family::{classify_intervention_topology, FamilyClass, FamilyFlags, FamilyLabel};
pub use genotype::{learn_poset_genotypes, separability_check, GenotypeDataset, GenotypeError};
pub use interventional::{learn_poset_interventional, InterventionFamily};

use alloc::string::String;
use alloc::vec::Vec;

use crate::causal::{CausalError, DiscreteCausalModel};
use crate::space::FiniteSpace;

/// Default tolerance of the exact oracle (total variation).
pub const EXACT_TOL: f64 = 1e-9;

/// Outcome of one marginal dependence test.
#[derive(Debug, Clone, PartialEq)]
pub struct PairVerdict {
    pub dependent: bool,
    /// Total variation (exact) or G statistic (sampled).
    pub statistic: f64,
    pub p_value: Option<f64>,
    /// The test had too little data to be trusted.
    pub low_power: bool,
}

/// Answers marginal dependence questions about one post-intervention model.
pub trait DependenceOracle {
    /// Tests every pair in `pairs`. `planned` is the total number of tests
    /// the caller will run over the whole learning procedure, so sampled
    /// oracles can control the family-wise error.
    fn run_experiment(
        &mut self,
        model: &DiscreteCausalModel,
        pairs: &[(usize, usize)],
        planned: usize,
    ) -> Result<Vec<PairVerdict>, CausalError>;
}

/// Dependence read off the exact joint: a pair is dependent when the joint
/// is farther than `tol` from the product of its marginals.
#[derive(Debug, Clone, Copy)]
pub struct ExactOracle {
    pub tol: f64,
}

impl Default for ExactOracle {
    fn default() -> Self {
        Self { tol: EXACT_TOL }
    }
}

impl DependenceOracle for ExactOracle {
    fn run_experiment(
        &mut self,
        model: &DiscreteCausalModel,
        pairs: &[(usize, usize)],
        _planned: usize,
    ) -> Result<Vec<PairVerdict>, CausalError> {
        let joint = model.joint()?;
        Ok(pairs
            .iter()
            .map(|&(a, b)| {
                let gap = joint.independence_gap(&[a], &[b], &[]);
                PairVerdict {
                    dependent: gap > self.tol,
                    statistic: gap,
                    p_value: None,
                    low_power: false,
                }
            })
            .collect())
    }
}

/// Where a learned relation came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Index into the intervention family (or antichain levels).
    Intervention(usize),
    /// Number of support genotypes containing the lower event (all of which
    /// contain the upper one).
    Support(usize),
}

/// One directly observed relation: `above` is an ancestor of `below`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub above: String,
    pub below: String,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearnedPoset {
    /// Transitively closed result; `x <= y` when `y` is an ancestor of `x`.
    pub space: FiniteSpace,
    pub evidence: Vec<Evidence>,
    pub interventions: usize,
    pub tests: usize,
    /// Pairs whose tests were flagged as low power.
    pub low_power: Vec<(String, String)>,
    pub warnings: Vec<String>,
}
