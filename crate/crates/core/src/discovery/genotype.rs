use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Evidence, LearnedPoset, Source};
use crate::homotopy::t0_quotient;
use crate::set::ElemSet;
use crate::space::FiniteSpace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenotypeError {
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("duplicate event `{0}`")]
    DuplicateEvent(String),
    #[error("genotype counts must be positive")]
    ZeroCount,
    #[error("the dataset has no genotypes")]
    EmptySupport,
}

/// Observed genotypes (sets of events) with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenotypeDataset {
    events: Vec<String>,
    genotypes: Vec<(ElemSet, u64)>,
}

impl GenotypeDataset {
    /// Identical genotypes are merged and their counts added.
    pub fn new<S: AsRef<str>>(events: &[S], genotypes: &[(Vec<S>, u64)]) -> Result<Self, GenotypeError> {
        let mut index = BTreeMap::new();
        for (i, e) in events.iter().enumerate() {
            if index.insert(e.as_ref().to_owned(), i).is_some() {
                return Err(GenotypeError::DuplicateEvent(e.as_ref().to_owned()));
            }
        }
        let n = events.len();
        let mut counts: BTreeMap<ElemSet, u64> = BTreeMap::new();
        let mut order: Vec<ElemSet> = Vec::new();
        for (g, c) in genotypes {
            if *c == 0 {
                return Err(GenotypeError::ZeroCount);
            }
            let mut s = ElemSet::empty(n);
            for e in g {
                let i = index
                    .get(e.as_ref())
                    .ok_or_else(|| GenotypeError::UnknownEvent(e.as_ref().to_owned()))?;
                s.insert(*i);
            }
            let slot = counts.entry(s.clone()).or_insert_with(|| {
                order.push(s);
                0
            });
            *slot += c;
        }
        let genotypes = order
            .into_iter()
            .map(|s| {
                let c = counts[&s];
                (s, c)
            })
            .collect();
        Ok(Self {
            events: events.iter().map(|e| e.as_ref().to_owned()).collect(),
            genotypes,
        })
    }

    pub fn events(&self) -> &[String] {
        &self.events
    }

    /// Distinct genotypes with counts, in order of first appearance.
    pub fn genotypes(&self) -> &[(ElemSet, u64)] {
        &self.genotypes
    }

    pub fn genotype_labels(&self) -> Vec<(Vec<&str>, u64)> {
        self.genotypes
            .iter()
            .map(|(g, c)| (g.iter().map(|i| self.events[i].as_str()).collect(), *c))
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.genotypes.iter().map(|g| g.1).sum()
    }
}

/// Event pairs that no support genotype tells apart (contains exactly one of
/// them).
pub fn separability_check(data: &GenotypeDataset) -> Vec<(String, String)> {
    let n = data.events.len();
    let mut out = Vec::new();
    for e in 0..n {
        for f in e + 1..n {
            if !data.genotypes.iter().any(|(g, _)| g.contains(e) != g.contains(f)) {
                let (a, b) = (&data.events[e], &data.events[f]);
                out.push(if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) });
            }
        }
    }
    out.sort();
    out
}

/// `e` sits above `f` when every support genotype containing `f` also
/// contains `e`. Events with identical occurrence patterns are merged, each
/// class named by its smallest member.
pub fn learn_poset_genotypes(data: &GenotypeDataset) -> Result<LearnedPoset, GenotypeError> {
    if data.genotypes.is_empty() {
        return Err(GenotypeError::EmptySupport);
    }
    let n = data.events.len();
    let holding: Vec<ElemSet> = (0..n)
        .map(|e| ElemSet::from_indices(data.genotypes.len(), (0..data.genotypes.len()).filter(|&g| data.genotypes[g].0.contains(e))))
        .collect();
    // U_e: events f whose genotypes all contain e.
    let down: Vec<ElemSet> = (0..n)
        .map(|e| ElemSet::from_indices(n, (0..n).filter(|&f| holding[f].is_subset(&holding[e]))))
        .collect();
    let mut evidence = Vec::new();
    for e in 0..n {
        for f in down[e].iter().filter(|&f| f != e) {
            evidence.push(Evidence {
                above: data.events[e].clone(),
                below: data.events[f].clone(),
                source: Source::Support(holding[f].len()),
            });
        }
    }
    let space = FiniteSpace::from_down_sets(data.events.clone(), down);
    let mut warnings = Vec::new();
    let space = if space.is_t0() {
        space
    } else {
        let (q, classes) = t0_quotient(&space);
        for c in classes.iter().filter(|c| c.len() > 1) {
            warnings.push(alloc::format!("merged events with identical patterns: {}", c.join(", ")));
        }
        q
    };
    Ok(LearnedPoset {
        space,
        evidence,
        interventions: 0,
        tests: n * n.saturating_sub(1),
        low_power: Vec::new(),
        warnings,
    })
}
