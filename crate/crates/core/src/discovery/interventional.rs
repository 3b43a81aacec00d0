use alloc::borrow::ToOwned;
use alloc::format;
use alloc::vec::Vec;

use super::{DependenceOracle, Evidence, LearnedPoset, Source};
use crate::causal::{CausalError, DiscreteCausalModel};
use crate::homotopy::t0_quotient;
use crate::set::ElemSet;
use crate::space::{separates, transitive_close, FiniteSpace, SpaceError};

/// Target sets of the experiments, over the model's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterventionFamily {
    pub sets: Vec<ElemSet>,
}

impl InterventionFamily {
    pub fn from_labels<S: AsRef<str>>(space: &FiniteSpace, sets: &[Vec<S>]) -> Result<Self, SpaceError> {
        let sets = sets.iter().map(|s| space.set_of(s)).collect::<Result<Vec<_>, _>>()?;
        if let Some(i) = sets.iter().position(ElemSet::is_empty) {
            return Err(SpaceError::InvalidPartition(format!("target set {i} is empty")));
        }
        Ok(Self { sets })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The minimal open sets of a space (rows of its topogenous matrix).
    pub fn topogenous_rows(space: &FiniteSpace) -> Self {
        Self {
            sets: space.min_opens().to_vec(),
        }
    }

    /// The minimal closed sets `F_x`, each variable with its ancestors.
    pub fn closed_sets(space: &FiniteSpace) -> Self {
        Self {
            sets: (0..space.len()).map(|x| space.min_closed(x)).collect(),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            sets: (0..n).map(|x| ElemSet::singleton(n, x)).collect(),
        }
    }
}

/// Runs one experiment per target set and closes the detected relation.
pub fn learn_poset_interventional<O: DependenceOracle + ?Sized>(
    truth: &DiscreteCausalModel,
    family: &InterventionFamily,
    oracle: &mut O,
) -> Result<LearnedPoset, CausalError> {
    let space = truth.space();
    let n = space.len();
    let mut warnings = Vec::new();
    if !separates(&family.sets, n) {
        warnings.push("family is not a separating system; recovery may be partial".to_owned());
    }
    let experiments: Vec<Vec<(usize, usize)>> = family
        .sets
        .iter()
        .map(|g| {
            g.iter()
                .flat_map(|e| (0..n).filter(|f| !g.contains(*f)).map(move |f| (e, f)))
                .collect()
        })
        .collect();
    let planned: usize = experiments.iter().map(Vec::len).sum();
    // above[f] collects the variables detected above f.
    let mut down: Vec<ElemSet> = (0..n).map(|x| ElemSet::singleton(n, x)).collect();
    let mut evidence = Vec::new();
    let mut low_power = Vec::new();
    for (i, (g, pairs)) in family.sets.iter().zip(&experiments).enumerate() {
        let post = truth.randomize_uniform(g);
        let verdicts = oracle.run_experiment(&post, pairs, planned)?;
        for (&(e, f), v) in pairs.iter().zip(&verdicts) {
            if v.low_power {
                low_power.push((space.label(e).to_owned(), space.label(f).to_owned()));
            }
            if v.dependent {
                down[e].insert(f);
                evidence.push(Evidence {
                    above: space.label(e).to_owned(),
                    below: space.label(f).to_owned(),
                    source: Source::Intervention(i),
                });
            }
        }
    }
    let closed = FiniteSpace::from_down_sets(space.labels().to_vec(), transitive_close(down));
    let result = if closed.is_t0() {
        closed
    } else {
        warnings.push("detected relation has cycles; equivalent variables were merged".to_owned());
        t0_quotient(&closed).0
    };
    Ok(LearnedPoset {
        space: result,
        evidence,
        interventions: family.len(),
        tests: planned,
        low_power,
        warnings,
    })
}
