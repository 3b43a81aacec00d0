//! Constructions that build new spaces from old ones.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{FiniteSpace, SpaceError};
use crate::set::ElemSet;

impl FiniteSpace {
    /// The order dual: `x <= y` in the result iff `y <= x` here.
    pub fn opposite(&self) -> FiniteSpace {
        FiniteSpace::from_down_sets(self.labels.clone(), self.closed_basis().min_closed)
    }

    /// Disjoint sum. Labels of the two spaces must not overlap.
    pub fn disjoint_union(&self, other: &FiniteSpace) -> Result<FiniteSpace, SpaceError> {
        if let Some(dup) = other.labels.iter().find(|l| self.index.contains_key(*l)) {
            return Err(SpaceError::DuplicateElement(dup.clone()));
        }
        let n = self.len() + other.len();
        let shift = self.len();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut down: Vec<ElemSet> = self.down.iter().map(|u| u.resized(n)).collect();
        down.extend(
            other
                .down
                .iter()
                .map(|u| ElemSet::from_indices(n, u.iter().map(|i| i + shift))),
        );
        Ok(FiniteSpace::from_down_sets(labels, down))
    }

    /// Product space with componentwise order. The pair `(x, y)` is labeled
    /// `"(x,y)"` and sits at index `i * other.len() + j`.
    pub fn product(&self, other: &FiniteSpace) -> FiniteSpace {
        let m = other.len();
        let labels: Vec<String> = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("({a},{b})")))
            .collect();
        FiniteSpace::from_leq_fn(labels, |p, q| {
            self.leq(p / m, q / m) && other.leq(p % m, q % m)
        })
    }

    /// Subspace topology on the listed elements (kept in this space's order).
    pub fn subspace<S: AsRef<str>>(&self, elements: &[S]) -> Result<FiniteSpace, SpaceError> {
        let keep = self.set_of(elements)?;
        Ok(self.subspace_indices(&keep))
    }

    pub fn subspace_indices(&self, keep: &ElemSet) -> FiniteSpace {
        let idx: Vec<usize> = keep.iter().collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        FiniteSpace::from_leq_fn(labels, |a, b| self.leq(idx[a], idx[b]))
    }

    /// Quotient topology for a partition of the elements into blocks. Each
    /// block is labeled by its lexicographically smallest member.
    pub fn quotient<S, B>(&self, partition: &[B]) -> Result<FiniteSpace, SpaceError>
    where
        S: AsRef<str>,
        B: AsRef<[S]>,
    {
        let n = self.len();
        let mut covered = ElemSet::empty(n);
        let mut blocks = Vec::with_capacity(partition.len());
        for block in partition {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(SpaceError::InvalidPartition("empty block".to_owned()));
            }
            let s = self.set_of(block)?;
            if s.intersects(&covered) || s.len() != block.len() {
                return Err(SpaceError::InvalidPartition(format!(
                    "element listed twice near `{}`",
                    block[0].as_ref()
                )));
            }
            covered.union_with(&s);
            blocks.push(s);
        }
        if covered.len() != n {
            let missing = covered.complement().first().map(|i| self.labels[i].clone());
            return Err(SpaceError::InvalidPartition(format!(
                "element `{}` is not covered",
                missing.unwrap_or_default()
            )));
        }
        Ok(self.quotient_blocks(&blocks))
    }

    /// Quotient by index blocks that already form a partition.
    pub(crate) fn quotient_blocks(&self, blocks: &[ElemSet]) -> FiniteSpace {
        let n = self.len();
        let mut block_of = alloc::vec![0usize; n];
        for (b, s) in blocks.iter().enumerate() {
            for x in s.iter() {
                block_of[x] = b;
            }
        }
        let k = blocks.len();
        let down: Vec<ElemSet> = (0..k)
            .map(|b| {
                // Smallest saturated open set containing the block.
                let mut pre = blocks[b].clone();
                loop {
                    let mut next = self.down_closure(&pre);
                    for x in next.clone().iter() {
                        next.union_with(&blocks[block_of[x]]);
                    }
                    if next == pre {
                        break;
                    }
                    pre = next;
                }
                ElemSet::from_indices(k, pre.iter().map(|x| block_of[x]))
            })
            .collect();
        let labels = blocks
            .iter()
            .map(|s| {
                s.iter()
                    .map(|i| self.labels[i].as_str())
                    .min()
                    .expect("blocks are nonempty")
                    .to_owned()
            })
            .collect();
        FiniteSpace::from_down_sets(labels, down)
    }

    /// Non-Hausdorff cone: adjoins `apex`, whose only open neighbourhood is
    /// the whole space. The apex becomes the maximum.
    pub fn cone(&self, apex: &str) -> Result<FiniteSpace, SpaceError> {
        self.adjoin_tops(&[apex])
    }

    /// Non-Hausdorff suspension: adjoins two incomparable points whose only
    /// open neighbourhoods are `X ∪ {+}` and `X ∪ {−}`.
    pub fn suspension(&self, plus: &str, minus: &str) -> Result<FiniteSpace, SpaceError> {
        if plus == minus {
            return Err(SpaceError::DuplicateElement(plus.to_owned()));
        }
        self.adjoin_tops(&[plus, minus])
    }

    fn adjoin_tops(&self, tops: &[&str]) -> Result<FiniteSpace, SpaceError> {
        if let Some(t) = tops.iter().find(|t| self.index.contains_key(**t)) {
            return Err(SpaceError::DuplicateElement((*t).to_owned()));
        }
        let base = self.len();
        let n = base + tops.len();
        let mut labels = self.labels.clone();
        labels.extend(tops.iter().map(|t| (*t).to_owned()));
        let mut down: Vec<ElemSet> = self.down.iter().map(|u| u.resized(n)).collect();
        for t in 0..tops.len() {
            let mut u = ElemSet::from_indices(n, 0..base);
            u.insert(base + t);
            down.push(u);
        }
        Ok(FiniteSpace::from_down_sets(labels, down))
    }
}
