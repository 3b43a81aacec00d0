//! Finite Alexandroff spaces.
//!
//! A finite space is stored through its minimal basis: for every element `x`
//! the smallest open set `U_x` containing it. The induced preorder is
//! `x <= y` iff `x ∈ U_y`, so `U_x` is exactly the down-set of `x`.
//!
//! The module is neutral about whether opens model descendants or ancestors
//! of a causal graph; [`FiniteSpace::opposite`] switches between the two
//! readings.

mod combine;
mod separating;

pub use separating::{
    is_separating_system, is_strongly_separating, separates, sets_over, strongly_separates, TopogenousMatrix,
};

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("element `{0}` has no minimal open set")]
    MissingBasis(String),
    #[error("minimal open set of `{element}` is invalid: {reason}")]
    InvalidBasis { element: String, reason: &'static str },
    #[error("space is not T0: `{0}` and `{1}` have the same minimal open set")]
    NotT0(String, String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// A finite topological space given by its minimal open sets.
#[derive(Clone)]
pub struct FiniteSpace {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    down: Vec<ElemSet>,
}

/// Minimal closed sets `F_x = { y | y >= x }`, the order dual of the minimal
/// open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedBasis {
    pub min_closed: Vec<ElemSet>,
}

fn index_labels<S: AsRef<str>>(elements: &[S]) -> Result<(Vec<String>, BTreeMap<String, usize>), SpaceError> {
    let mut labels = Vec::with_capacity(elements.len());
    let mut index = BTreeMap::new();
    for (i, e) in elements.iter().enumerate() {
        let e = e.as_ref();
        if index.insert(e.to_owned(), i).is_some() {
            return Err(SpaceError::DuplicateElement(e.to_owned()));
        }
        labels.push(e.to_owned());
    }
    Ok((labels, index))
}

impl FiniteSpace {
    /// The empty space.
    pub fn empty() -> Self {
        Self {
            labels: Vec::new(),
            index: BTreeMap::new(),
            down: Vec::new(),
        }
    }

    /// Builds the space generated by `opens`, used as a subbasis: the
    /// topology is their closure under unions and intersections together
    /// with `∅` and the whole set.
    pub fn from_open_sets<S, O>(elements: &[S], opens: &[O]) -> Result<Self, SpaceError>
    where
        S: AsRef<str>,
        O: AsRef<[S]>,
    {
        let (labels, index) = index_labels(elements)?;
        let n = labels.len();
        let mut sets = Vec::with_capacity(opens.len());
        for open in opens {
            let mut s = ElemSet::empty(n);
            for e in open.as_ref() {
                let e = e.as_ref();
                let i = *index.get(e).ok_or_else(|| SpaceError::UnknownElement(e.to_owned()))?;
                s.insert(i);
            }
            sets.push(s);
        }
        // Unions never shrink a minimal neighbourhood, so U_x is the
        // intersection of the subbasis members that contain x.
        let down = (0..n)
            .map(|x| {
                let mut u = ElemSet::full(n);
                for s in sets.iter().filter(|s| s.contains(x)) {
                    u.intersect_with(s);
                }
                u
            })
            .collect();
        Ok(Self { labels, index, down })
    }

    /// Builds a space from an explicit minimal basis, validating that every
    /// `U_x` contains `x` and is closed downwards.
    pub fn from_min_open<S, O>(elements: &[S], min_open: &[(S, O)]) -> Result<Self, SpaceError>
    where
        S: AsRef<str>,
        O: AsRef<[S]>,
    {
        let (labels, index) = index_labels(elements)?;
        let n = labels.len();
        let mut down: Vec<Option<ElemSet>> = alloc::vec![None; n];
        for (x, members) in min_open {
            let x = x.as_ref();
            let xi = *index.get(x).ok_or_else(|| SpaceError::UnknownElement(x.to_owned()))?;
            let mut s = ElemSet::empty(n);
            for m in members.as_ref() {
                let m = m.as_ref();
                let mi = *index.get(m).ok_or_else(|| SpaceError::UnknownElement(m.to_owned()))?;
                s.insert(mi);
            }
            if down[xi].replace(s).is_some() {
                return Err(SpaceError::DuplicateElement(x.to_owned()));
            }
        }
        let down: Vec<ElemSet> = down
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| SpaceError::MissingBasis(labels[i].clone())))
            .collect::<Result<_, _>>()?;
        for (x, ux) in down.iter().enumerate() {
            if !ux.contains(x) {
                return Err(SpaceError::InvalidBasis {
                    element: labels[x].clone(),
                    reason: "does not contain the element itself",
                });
            }
            if ux.iter().any(|y| !down[y].is_subset(ux)) {
                return Err(SpaceError::InvalidBasis {
                    element: labels[x].clone(),
                    reason: "not closed downwards (transitivity fails)",
                });
            }
        }
        Ok(Self { labels, index, down })
    }

    /// Builds the order topology of the reflexive-transitive closure of the
    /// given `x <= y` pairs.
    pub fn from_preorder<S: AsRef<str>>(elements: &[S], leq: &[(S, S)]) -> Result<Self, SpaceError> {
        let (labels, index) = index_labels(elements)?;
        let n = labels.len();
        let mut down: Vec<ElemSet> = (0..n).map(|i| ElemSet::singleton(n, i)).collect();
        for (x, y) in leq {
            let lookup = |e: &S| {
                index
                    .get(e.as_ref())
                    .copied()
                    .ok_or_else(|| SpaceError::UnknownElement(e.as_ref().to_owned()))
            };
            let (xi, yi) = (lookup(x)?, lookup(y)?);
            down[yi].insert(xi);
        }
        Ok(Self::from_down_sets(labels, transitive_close(down)))
    }

    /// The discrete space `D_n` on the given labels.
    pub fn discrete<S: AsRef<str>>(elements: &[S]) -> Result<Self, SpaceError> {
        Self::from_preorder(elements, &[])
    }

    /// The chain `elements[0] < elements[1] < ...`.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Self, SpaceError> {
        let (labels, _) = index_labels(elements)?;
        let n = labels.len();
        let down = (0..n).map(|i| ElemSet::from_indices(n, 0..=i)).collect();
        Ok(Self::from_down_sets(labels, down))
    }

    /// Internal constructor from already valid down-sets.
    pub(crate) fn from_down_sets(labels: Vec<String>, down: Vec<ElemSet>) -> Self {
        debug_assert_eq!(labels.len(), down.len());
        debug_assert!(down
            .iter()
            .enumerate()
            .all(|(x, u)| u.contains(x) && u.iter().all(|y| down[y].is_subset(u))));
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        debug_assert_eq!(BTreeMap::len(&index), labels.len(), "labels must be distinct");
        Self { labels, index, down }
    }

    pub(crate) fn from_leq_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let down = (0..n)
            .map(|y| ElemSet::from_indices(n, (0..n).filter(|&x| leq(x, y))))
            .collect();
        Self::from_down_sets(labels, down)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Index lookup that reports unknown labels as errors.
    pub fn require(&self, label: &str) -> Result<usize, SpaceError> {
        self.index_of(label).ok_or_else(|| SpaceError::UnknownElement(label.to_owned()))
    }

    /// Converts labels into an index set.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElemSet, SpaceError> {
        let mut s = ElemSet::empty(self.len());
        for l in labels {
            s.insert(self.require(l.as_ref())?);
        }
        Ok(s)
    }

    /// Labels of the members of an index set, in index order.
    pub fn labels_of(&self, set: &ElemSet) -> Vec<&str> {
        set.iter().map(|i| self.label(i)).collect()
    }

    /// The minimal open set `U_x`.
    pub fn min_open(&self, x: usize) -> &ElemSet {
        &self.down[x]
    }

    pub fn min_opens(&self) -> &[ElemSet] {
        &self.down
    }

    /// The minimal closed set `F_x`.
    pub fn min_closed(&self, x: usize) -> ElemSet {
        ElemSet::from_indices(self.len(), (0..self.len()).filter(|&y| self.down[y].contains(x)))
    }

    pub fn closed_basis(&self) -> ClosedBasis {
        ClosedBasis {
            min_closed: (0..self.len()).map(|x| self.min_closed(x)).collect(),
        }
    }

    /// `x <= y`, i.e. `x ∈ U_y`.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// Strict part of the preorder: `x <= y` but not `y <= x`.
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Label-level preorder query.
    pub fn preorder_leq(&self, x: &str, y: &str) -> Result<bool, SpaceError> {
        Ok(self.leq(self.require(x)?, self.require(y)?))
    }

    /// A set is open iff it is a down-set.
    pub fn is_open(&self, set: &ElemSet) -> bool {
        set.iter().all(|x| self.down[x].is_subset(set))
    }

    /// A set is closed iff it is an up-set.
    pub fn is_closed(&self, set: &ElemSet) -> bool {
        self.is_open(&set.complement())
    }

    pub fn down_closure(&self, set: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.len());
        for x in set.iter() {
            out.union_with(&self.down[x]);
        }
        out
    }

    pub fn up_closure(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.len(), (0..self.len()).filter(|&y| self.down[y].intersects(set)))
    }

    /// Elements covered by `x`: the maximal elements of `U_x ∖ [x]`, where
    /// `[x]` is the class of points equivalent to `x`.
    pub fn lower_covers(&self, x: usize) -> ElemSet {
        let strict: Vec<usize> = self.down[x].iter().filter(|&y| self.lt(y, x)).collect();
        ElemSet::from_indices(
            self.len(),
            strict
                .iter()
                .copied()
                .filter(|&y| !strict.iter().any(|&z| self.lt(y, z))),
        )
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> ElemSet {
        let strict: Vec<usize> = (0..self.len()).filter(|&y| self.lt(x, y)).collect();
        ElemSet::from_indices(
            self.len(),
            strict
                .iter()
                .copied()
                .filter(|&y| !strict.iter().any(|&z| self.lt(z, y))),
        )
    }

    /// Two distinct points with the same minimal open set, if any.
    pub fn t0_violation(&self) -> Option<(usize, usize)> {
        let mut seen: BTreeMap<&ElemSet, usize> = BTreeMap::new();
        for (x, u) in self.down.iter().enumerate() {
            if let Some(&y) = seen.get(u) {
                return Some((y, x));
            }
            seen.insert(u, x);
        }
        None
    }

    pub fn is_t0(&self) -> bool {
        self.t0_violation().is_none()
    }

    pub(crate) fn require_t0(&self) -> Result<(), SpaceError> {
        match self.t0_violation() {
            Some((x, y)) => Err(SpaceError::NotT0(self.labels[x].clone(), self.labels[y].clone())),
            None => Ok(()),
        }
    }

    /// Every singleton is closed: every complement `X ∖ {x}` is open.
    pub fn is_t1(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| self.is_open(&ElemSet::singleton(n, x).complement()))
    }

    /// Any two distinct points have disjoint neighbourhoods. The smallest
    /// neighbourhoods are the minimal open sets.
    pub fn is_t2(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| !self.down[x].intersects(&self.down[y])))
    }

    /// Connected components of the comparability graph.
    pub fn components(&self) -> Vec<ElemSet> {
        let n = self.len();
        let mut seen = ElemSet::empty(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = ElemSet::singleton(n, start);
            seen.insert(start);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for y in 0..n {
                    if !seen.contains(y) && self.comparable(x, y) {
                        seen.insert(y);
                        comp.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Order-connectedness: every pair is joined by a fence.
    pub fn is_connected(&self) -> bool {
        let connected = self.components().len() <= 1;
        debug_assert_eq!(connected, self.is_connected_clopen());
        connected
    }

    /// Topological connectedness: no clopen set other than `∅` and `X`.
    ///
    /// Grows the smallest clopen set containing the first point by
    /// alternating down- and up-closures until it stabilises.
    pub fn is_connected_clopen(&self) -> bool {
        if self.len() <= 1 {
            return true;
        }
        let mut s = ElemSet::singleton(self.len(), 0);
        loop {
            let next = self.up_closure(&self.down_closure(&s));
            if next == s {
                break;
            }
            s = next;
        }
        debug_assert!(self.is_open(&s) && self.is_closed(&s));
        s.len() == self.len()
    }

    /// Sorted copy of the labels; used for canonical serialisation.
    pub fn sorted_labels(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        v.sort_unstable();
        v
    }

    pub(crate) fn label_set(&self) -> BTreeSet<&str> {
        self.labels.iter().map(String::as_str).collect()
    }
}

/// Floyd–Warshall style closure of reflexive down-set rows.
pub fn transitive_close(mut down: Vec<ElemSet>) -> Vec<ElemSet> {
    let n = down.len();
    for k in 0..n {
        let dk = down[k].clone();
        for row in down.iter_mut() {
            if row.contains(k) {
                row.union_with(&dk);
            }
        }
    }
    down
}

/// Labeled equality: same element labels and identical minimal open sets,
/// regardless of the order the elements were listed in.
impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        if self.len() != other.len() || self.label_set() != other.label_set() {
            return false;
        }
        (0..self.len()).all(|x| {
            let ox = other.index[&self.labels[x]];
            let mine: BTreeSet<&str> = self.down[x].iter().map(|i| self.label(i)).collect();
            let theirs: BTreeSet<&str> = other.down[ox].iter().map(|i| other.label(i)).collect();
            mine == theirs
        })
    }
}

impl Eq for FiniteSpace {}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (x, u) in self.down.iter().enumerate() {
            m.entry(&self.labels[x], &self.labels_of(u));
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests;
