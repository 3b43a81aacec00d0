use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{FiniteSpace, SpaceError};
use crate::set::ElemSet;

/// Binary matrix with `A(i, j) = 1` iff `x_j ∈ U_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopogenousMatrix {
    rows: Vec<ElemSet>,
}

impl TopogenousMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Row `i` as a set: the minimal open set of element `i`.
    pub fn row(&self, i: usize) -> &ElemSet {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[ElemSet] {
        &self.rows
    }

    pub fn to_bits(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        self.rows
            .iter()
            .map(|r| (0..n).map(|j| r.contains(j) as u8).collect())
            .collect()
    }
}

impl FiniteSpace {
    pub fn topogenous(&self) -> TopogenousMatrix {
        TopogenousMatrix {
            rows: self.down.clone(),
        }
    }
}

/// Every pair of distinct points is split by some set (contains exactly one).
pub fn separates(sets: &[ElemSet], n: usize) -> bool {
    (0..n).all(|x| (x + 1..n).all(|y| sets.iter().any(|s| s.contains(x) != s.contains(y))))
}

/// Every ordered pair `(x, y)` has a set containing `x` but not `y`.
pub fn strongly_separates(sets: &[ElemSet], n: usize) -> bool {
    (0..n).all(|x| {
        (0..n)
            .filter(|&y| y != x)
            .all(|y| sets.iter().any(|s| s.contains(x) && !s.contains(y)))
    })
}

pub fn sets_over<S, O>(sets: &[O], universe: &[S]) -> Result<Vec<ElemSet>, SpaceError>
where
    S: AsRef<str>,
    O: AsRef<[S]>,
{
    let mut index = BTreeMap::new();
    for (i, u) in universe.iter().enumerate() {
        if index.insert(u.as_ref(), i).is_some() {
            return Err(SpaceError::DuplicateElement(u.as_ref().to_owned()));
        }
    }
    let n = universe.len();
    sets.iter()
        .map(|s| {
            let mut out = ElemSet::empty(n);
            for e in s.as_ref() {
                let i = index
                    .get(e.as_ref())
                    .ok_or_else(|| SpaceError::UnknownElement(e.as_ref().to_owned()))?;
                out.insert(*i);
            }
            Ok(out)
        })
        .collect()
}

pub fn is_separating_system<S, O>(sets: &[O], universe: &[S]) -> Result<bool, SpaceError>
where
    S: AsRef<str>,
    O: AsRef<[S]>,
{
    Ok(separates(&sets_over(sets, universe)?, universe.len()))
}

pub fn is_strongly_separating<S, O>(sets: &[O], universe: &[S]) -> Result<bool, SpaceError>
where
    S: AsRef<str>,
    O: AsRef<[S]>,
{
    Ok(strongly_separates(&sets_over(sets, universe)?, universe.len()))
}
