//! Enumeration of finite topologies (preorders) and T0 topologies (posets),
//! labeled and up to homeomorphism or homotopy.
//!
//! Posets are grown one element at a time. Labeled streams add element `k`
//! with every compatible (down-set, up-set) pair; unlabeled classes add a new
//! maximal element per down-set and keep it only when it is canonical, so no
//! global table of labeled objects is ever stored. Preorders are posets on
//! the classes of a set partition.

pub mod labeled;
pub mod small;
pub mod unlabeled;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::space::FiniteSpace;
pub use labeled::{branches, count_from_prefix, LabeledPosets, LabeledPreorders};
pub use small::{CanonKey, SmallOrder, KERNEL_MAX};

/// Default cap for poset enumeration.
pub const MAX_POSET_N: usize = 7;
/// Default cap for preorder enumeration.
pub const MAX_PREORDER_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("n = {n} is out of range (at most {max})")]
    OutOfRange { n: usize, max: usize },
}

/// Size caps; raise them to go further at the cost of runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_poset_n: usize,
    pub max_preorder_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_poset_n: MAX_POSET_N,
            max_preorder_n: MAX_PREORDER_N,
        }
    }
}

impl Limits {
    /// Fails when `n` is above the cap for posets (`t0`) or preorders.
    pub fn check(&self, n: usize, t0: bool) -> Result<(), EnumerateError> {
        let max = if t0 { self.max_poset_n } else { self.max_preorder_n }.min(KERNEL_MAX);
        if n > max {
            Err(EnumerateError::OutOfRange { n, max })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpTo {
    Labeled,
    Homeomorphism,
    Homotopy,
}

/// Counts for one size. Fields not requested are `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumerationResult {
    pub n: usize,
    /// Labeled topologies.
    pub distinct: Option<u64>,
    /// Labeled T0 topologies.
    pub distinct_t0: Option<u64>,
    /// Topologies up to homeomorphism.
    pub inequivalent: Option<u64>,
    /// T0 topologies up to homeomorphism.
    pub inequivalent_t0: Option<u64>,
    /// Homeomorphism classes of beat-point free T0 topologies.
    pub minimal_t0: Option<u64>,
    /// Homotopy types of the spaces counted.
    pub homotopy_classes: Option<u64>,
}

pub fn enumerate_posets(n: usize) -> Result<impl Iterator<Item = FiniteSpace>, EnumerateError> {
    enumerate_posets_with(n, Limits::default())
}

pub fn enumerate_posets_with(
    n: usize,
    limits: Limits,
) -> Result<impl Iterator<Item = FiniteSpace>, EnumerateError> {
    limits.check(n, true)?;
    Ok(LabeledPosets::new(n).map(|o| o.to_space()))
}

pub fn enumerate_preorders(n: usize) -> Result<impl Iterator<Item = FiniteSpace>, EnumerateError> {
    enumerate_preorders_with(n, Limits::default())
}

pub fn enumerate_preorders_with(
    n: usize,
    limits: Limits,
) -> Result<impl Iterator<Item = FiniteSpace>, EnumerateError> {
    limits.check(n, false)?;
    Ok(LabeledPreorders::new(n).map(|o| o.to_space()))
}

pub fn enumerate_minimal_posets(n: usize) -> Result<impl Iterator<Item = FiniteSpace>, EnumerateError> {
    enumerate_minimal_posets_with(n, Limits::default())
}

pub fn enumerate_minimal_posets_with(
    n: usize,
    limits: Limits,
) -> Result<impl Iterator<Item = FiniteSpace>, EnumerateError> {
    limits.check(n, true)?;
    Ok(unlabeled::minimal_posets(n).into_iter().map(|o| o.to_space()))
}

/// One representative per homeomorphism class.
pub fn enumerate_unlabeled(
    n: usize,
    t0_only: bool,
    limits: Limits,
) -> Result<impl Iterator<Item = FiniteSpace>, EnumerateError> {
    limits.check(n, t0_only)?;
    let reps = if t0_only {
        unlabeled::unlabeled_posets(n)
    } else {
        unlabeled::unlabeled_preorders(n)
    };
    Ok(reps.into_iter().map(|o| o.to_space()))
}

pub fn count_classes(n: usize, t0_only: bool, up_to: UpTo) -> Result<EnumerationResult, EnumerateError> {
    count_classes_with(n, t0_only, up_to, Limits::default())
}

pub fn count_classes_with(
    n: usize,
    t0_only: bool,
    up_to: UpTo,
    limits: Limits,
) -> Result<EnumerationResult, EnumerateError> {
    limits.check(n, t0_only)?;
    let mut r = EnumerationResult {
        n,
        ..Default::default()
    };
    match (up_to, t0_only) {
        (UpTo::Labeled, true) => r.distinct_t0 = Some(labeled::count_labeled_posets(n)),
        (UpTo::Labeled, false) => r.distinct = Some(count_labeled_preorders(n)),
        (UpTo::Homeomorphism, true) => {
            let reps = unlabeled::unlabeled_posets(n);
            r.inequivalent_t0 = Some(reps.len() as u64);
            r.minimal_t0 = Some(reps.iter().filter(|p| !p.has_beat_point()).count() as u64);
        }
        (UpTo::Homeomorphism, false) => {
            r.inequivalent = Some(unlabeled::unlabeled_preorders(n).len() as u64);
        }
        (UpTo::Homotopy, _) => r.homotopy_classes = Some(homotopy_keys(n, t0_only).len() as u64),
    }
    Ok(r)
}

/// Canonical keys of the cores of every space counted. A preorder has the
/// homotopy type of its T0 quotient, a poset on at most `n` points.
fn homotopy_keys(n: usize, t0_only: bool) -> BTreeSet<CanonKey> {
    if t0_only {
        unlabeled::core_keys(&unlabeled::unlabeled_posets(n))
    } else {
        let levels = unlabeled::unlabeled_poset_levels(n);
        let start = usize::from(n > 0);
        unlabeled::core_keys(levels[start..].iter().flatten())
    }
}

/// One core per homotopy type, in canonical order.
pub fn homotopy_representatives(
    n: usize,
    t0_only: bool,
    limits: Limits,
) -> Result<impl Iterator<Item = FiniteSpace>, EnumerateError> {
    limits.check(n, t0_only)?;
    Ok(homotopy_keys(n, t0_only).into_iter().map(|k| k.to_order().to_space()))
}

/// Labeled preorders, summing over set partitions the labeled posets on the
/// blocks.
pub fn count_labeled_preorders(n: usize) -> u64 {
    let mut by_blocks: Vec<u64> = alloc::vec![0; n + 1];
    for p in labeled::SetPartitions::new(n) {
        let k = p.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        by_blocks[k] += 1;
    }
    by_blocks
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| c * labeled::count_labeled_posets(k))
        .sum()
}

/// Every column for size `n`; preorder columns are left empty above the
/// preorder cap.
pub fn full_row(n: usize, limits: Limits) -> Result<EnumerationResult, EnumerateError> {
    limits.check(n, true)?;
    let posets = unlabeled::unlabeled_posets(n);
    let mut r = EnumerationResult {
        n,
        distinct_t0: Some(labeled::count_labeled_posets(n)),
        inequivalent_t0: Some(posets.len() as u64),
        minimal_t0: Some(posets.iter().filter(|p| !p.has_beat_point()).count() as u64),
        homotopy_classes: Some(unlabeled::core_keys(&posets).len() as u64),
        ..Default::default()
    };
    if limits.check(n, false).is_ok() {
        r.distinct = Some(count_labeled_preorders(n));
        r.inequivalent = Some(unlabeled::unlabeled_preorders(n).len() as u64);
    }
    Ok(r)
}
