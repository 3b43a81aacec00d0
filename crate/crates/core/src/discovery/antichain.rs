use alloc::vec::Vec;

use super::DependenceOracle;
use crate::causal::{CausalError, DiscreteCausalModel};
use crate::graphs::{antichain_partition, Dag};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntichainResult {
    /// Transitive reduction of the detected cause-effect pairs.
    pub dag: Dag,
    /// The level antichains that were intervened on, lowest first.
    pub levels: Vec<ElemSet>,
    pub interventions: usize,
    pub tests: usize,
}

/// Intervenes on each level antichain of the true order in turn; a
/// dependence between a member `x` and a non-member `y` records `x -> y`.
pub fn learn_dag_antichain<O: DependenceOracle + ?Sized>(
    truth: &DiscreteCausalModel,
    oracle: &mut O,
) -> Result<AntichainResult, CausalError> {
    let space = truth.space();
    let n = space.len();
    let levels = antichain_partition(space)?;
    let experiments: Vec<Vec<(usize, usize)>> = levels
        .iter()
        .map(|t| {
            t.iter()
                .flat_map(|x| (0..n).filter(|y| !t.contains(*y)).map(move |y| (x, y)))
                .collect()
        })
        .collect();
    let planned: usize = experiments.iter().map(Vec::len).sum();
    let mut edges = Vec::new();
    for (t, pairs) in levels.iter().zip(&experiments) {
        let post = truth.randomize_uniform(t);
        let verdicts = oracle.run_experiment(&post, pairs, planned)?;
        edges.extend(
            pairs
                .iter()
                .zip(&verdicts)
                .filter(|(_, v)| v.dependent)
                .map(|(&p, _)| p),
        );
    }
    let dag = Dag::from_indices(space.labels().to_vec(), edges)?.transitive_reduction();
    Ok(AntichainResult {
        dag,
        interventions: levels.len(),
        levels,
        tests: planned,
    })
}
