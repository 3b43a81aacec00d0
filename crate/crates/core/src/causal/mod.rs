//! Discrete causal models over a finite T0 space.
//!
//! Variables are the points of the space. The mechanism of a variable is a
//! conditional probability table over some of its direct causes, the points
//! covering it. Joints are exact products over the full assignment space,
//! indexed lexicographically with variable 0 most significant.

mod dsep;
mod faithful;
mod joint;
mod solve;

pub use dsep::{active_fence, d_separated, tci, tci_fence};
pub use faithful::{is_faithful, FaithfulnessReport, Violation};
pub use joint::{ci_exact, ci_exact_labels, JointDistribution, JOINT_CAP};
pub use solve::{Mechanism, Solution, StructuralSystem, SOLVE_CAP};

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::graphs::{dag_to_space, Dag, GraphError};
use crate::random::unit_f64;
use crate::set::ElemSet;
use crate::space::{FiniteSpace, SpaceError};

/// Tolerance on the row sums of a conditional probability table.
pub const ROW_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CausalError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("variable `{0}` has an empty domain")]
    EmptyDomain(String),
    #[error("expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("`{parent}` is not a direct cause of `{variable}`")]
    NotAParent { variable: String, parent: String },
    #[error("invalid table for `{variable}`: {reason}")]
    InvalidCpt { variable: String, reason: String },
    #[error("value `{value}` is not in the domain of `{variable}`")]
    UnknownValue { variable: String, value: String },
    #[error("{what} has {size} entries, above the cap of {cap}")]
    SizeCap { what: &'static str, size: u128, cap: u128 },
    #[error("U, V and Z must be pairwise disjoint (`{0}` repeats)")]
    Overlap(String),
    #[error("no mechanism for `{0}`")]
    MissingMechanism(String),
}

/// `P(variable | parents)`. Row `r` is the distribution for the `r`-th
/// parent assignment in lexicographic order, first parent most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Cpt {
    pub parents: Vec<usize>,
    pub table: Vec<Vec<f64>>,
}

impl Cpt {
    pub fn root(dist: Vec<f64>) -> Self {
        Self {
            parents: Vec::new(),
            table: vec![dist],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCausalModel {
    space: FiniteSpace,
    domains: Vec<Vec<String>>,
    cpts: Vec<Cpt>,
    order: Vec<usize>,
}

/// What an intervention does to one variable.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Value(String),
    Distribution(Vec<f64>),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Intervention {
    pub targets: Vec<(String, Target)>,
}

impl Intervention {
    pub fn new() -> Self {
        Self::default()
    }

    /// `do(variable = value)`.
    pub fn set(mut self, variable: &str, value: &str) -> Self {
        self.targets.push((variable.to_owned(), Target::Value(value.to_owned())));
        self
    }

    pub fn randomize(mut self, variable: &str, dist: Vec<f64>) -> Self {
        self.targets.push((variable.to_owned(), Target::Distribution(dist)));
        self
    }
}

/// Causes before effects: a cause's minimal open set strictly contains its
/// effect's.
fn causal_order(space: &FiniteSpace) -> Vec<usize> {
    let mut order: Vec<usize> = (0..space.len()).collect();
    order.sort_by_key(|&x| (core::cmp::Reverse(space.min_open(x).len()), x));
    order
}

fn check_row(variable: &str, row: &[f64], width: usize) -> Result<(), CausalError> {
    let bad = |reason: String| CausalError::InvalidCpt {
        variable: variable.to_owned(),
        reason,
    };
    if row.len() != width {
        return Err(bad(format!("row has {} entries, domain has {width}", row.len())));
    }
    if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(bad("negative or non-finite probability".to_owned()));
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > ROW_TOL {
        return Err(bad(format!("row sums to {sum}")));
    }
    Ok(())
}

impl DiscreteCausalModel {
    /// Validates the model: the space is T0, every parent is a direct cause
    /// and every row is a distribution over the domain.
    pub fn new(space: FiniteSpace, domains: Vec<Vec<String>>, cpts: Vec<Cpt>) -> Result<Self, CausalError> {
        let n = space.len();
        space.require_t0()?;
        for got in [domains.len(), cpts.len()] {
            if got != n {
                return Err(CausalError::Arity { expected: n, got });
            }
        }
        for (x, d) in domains.iter().enumerate() {
            if d.is_empty() {
                return Err(CausalError::EmptyDomain(space.label(x).to_owned()));
            }
        }
        for (x, cpt) in cpts.iter().enumerate() {
            let name = space.label(x);
            let covers = space.upper_covers(x);
            let mut seen = ElemSet::empty(n);
            for &p in &cpt.parents {
                if p >= n || !covers.contains(p) || !seen.insert(p) {
                    return Err(CausalError::NotAParent {
                        variable: name.to_owned(),
                        parent: if p < n { space.label(p).to_owned() } else { format!("#{p}") },
                    });
                }
            }
            let rows: usize = cpt.parents.iter().map(|&p| domains[p].len()).product();
            if cpt.table.len() != rows {
                return Err(CausalError::InvalidCpt {
                    variable: name.to_owned(),
                    reason: format!("{} rows, expected {rows}", cpt.table.len()),
                });
            }
            for row in &cpt.table {
                check_row(name, row, domains[x].len())?;
            }
        }
        let order = causal_order(&space);
        Ok(Self {
            space,
            domains,
            cpts,
            order,
        })
    }

    /// Binary-valued model over a DAG (domains `["0","1"]`), with CPT rows
    /// given as `P(x = 1)`.
    pub fn binary(dag: &Dag, p_one: impl Fn(usize, &[usize], &[usize]) -> f64) -> Result<Self, CausalError> {
        let space = dag_to_space(dag);
        let n = space.len();
        let domains = vec![vec!["0".to_owned(), "1".to_owned()]; n];
        let cpts = (0..n)
            .map(|x| {
                let parents: Vec<usize> = space.upper_covers(x).iter().collect();
                let table = (0..1usize << parents.len())
                    .map(|r| {
                        let values: Vec<usize> = (0..parents.len())
                            .map(|i| r >> (parents.len() - 1 - i) & 1)
                            .collect();
                        let p = p_one(x, &parents, &values);
                        vec![1.0 - p, p]
                    })
                    .collect();
                Cpt { parents, table }
            })
            .collect();
        Self::new(space, domains, cpts)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn domains(&self) -> &[Vec<String>] {
        &self.domains
    }

    pub fn cpts(&self) -> &[Cpt] {
        &self.cpts
    }

    /// Causes before effects.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn value_index(&self, x: usize, value: &str) -> Result<usize, CausalError> {
        self.domains[x]
            .iter()
            .position(|v| v == value)
            .ok_or_else(|| CausalError::UnknownValue {
                variable: self.space.label(x).to_owned(),
                value: value.to_owned(),
            })
    }

    /// Row of `x`'s table selected by a full assignment.
    #[inline]
    pub fn row_index(&self, x: usize, assignment: &[usize]) -> usize {
        self.cpts[x]
            .parents
            .iter()
            .fold(0, |r, &p| r * self.domains[p].len() + assignment[p])
    }

    #[inline]
    pub fn prob(&self, x: usize, assignment: &[usize]) -> f64 {
        self.cpts[x].table[self.row_index(x, assignment)][assignment[x]]
    }

    /// Every variable's CPT conditions on strict ancestors only, so an
    /// ancestral evaluation order exists.
    pub fn is_recursive(&self) -> bool {
        let n = self.len();
        let mut placed = ElemSet::empty(n);
        let mut progress = true;
        while progress {
            progress = false;
            for x in 0..n {
                if !placed.contains(x) && self.cpts[x].parents.iter().all(|&p| placed.contains(p)) {
                    placed.insert(x);
                    progress = true;
                }
            }
        }
        placed.len() == n
    }

    /// Submodel after an intervention: targets lose their incoming edges and
    /// get the given constant or distribution as mechanism.
    pub fn intervene(&self, intervention: &Intervention) -> Result<Self, CausalError> {
        let mut targets = Vec::with_capacity(intervention.targets.len());
        for (name, t) in &intervention.targets {
            let x = self.space.require(name)?;
            let k = self.domains[x].len();
            let dist = match t {
                Target::Value(v) => {
                    let i = self.value_index(x, v)?;
                    (0..k).map(|j| if j == i { 1.0 } else { 0.0 }).collect()
                }
                Target::Distribution(d) => {
                    check_row(name, d, k)?;
                    d.clone()
                }
            };
            targets.push((x, dist));
        }
        Ok(self.intervene_indices(&targets))
    }

    /// Index-level intervention; distributions must already be valid.
    pub fn intervene_indices(&self, targets: &[(usize, Vec<f64>)]) -> Self {
        let n = self.len();
        let hit = ElemSet::from_indices(n, targets.iter().map(|t| t.0));
        let mut edges = Vec::new();
        for x in 0..n {
            for y in self.space.lower_covers(x).iter() {
                if !hit.contains(y) {
                    edges.push((x, y));
                }
            }
        }
        let dag = Dag::from_indices(self.space.labels().to_vec(), edges).expect("a subgraph of a DAG is acyclic");
        let space = dag_to_space(&dag);
        let mut cpts = self.cpts.clone();
        for (x, dist) in targets {
            cpts[*x] = Cpt::root(dist.clone());
        }
        let order = causal_order(&space);
        Self {
            space,
            domains: self.domains.clone(),
            cpts,
            order,
        }
    }

    /// Randomizes every listed variable uniformly and independently.
    pub fn randomize_uniform(&self, targets: &ElemSet) -> Self {
        let t: Vec<(usize, Vec<f64>)> = targets
            .iter()
            .map(|x| {
                let k = self.domains[x].len();
                (x, vec![1.0 / k as f64; k])
            })
            .collect();
        self.intervene_indices(&t)
    }

    pub fn joint_size(&self) -> u128 {
        self.domains.iter().map(|d| d.len() as u128).product()
    }

    /// Exact joint distribution, multiplying CPT entries in causal order.
    pub fn joint(&self) -> Result<JointDistribution, CausalError> {
        JointDistribution::of_model(self)
    }

    /// One draw by ancestral sampling.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let mut a = vec![0usize; self.len()];
        self.sample_into(rng, &mut a);
        a
    }

    pub fn sample_into<R: RngCore + ?Sized>(&self, rng: &mut R, out: &mut [usize]) {
        for &x in &self.order {
            let row = &self.cpts[x].table[self.row_index(x, out)];
            let u = unit_f64(rng);
            let mut acc = 0.0;
            let mut pick = row.iter().rposition(|&p| p > 0.0).unwrap_or(0);
            for (i, p) in row.iter().enumerate() {
                acc += p;
                if u < acc {
                    pick = i;
                    break;
                }
            }
            out[x] = pick;
        }
    }
}

#[cfg(test)]
mod tests;
