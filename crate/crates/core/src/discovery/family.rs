use alloc::vec::Vec;

use crate::set::ElemSet;
use crate::space::{separates, strongly_separates, sets_over, SpaceError};

/// Named intervention topologies, most specific first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyLabel {
    /// Only `∅` and the whole set: purely observational.
    Trivial,
    /// Every singleton is a target.
    SingletonClosed,
    /// The proper nonempty targets split the set into disjoint blocks.
    Partition,
    StronglySeparating,
    Separating,
    Other,
}

impl FamilyLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyLabel::Trivial => "trivial",
            FamilyLabel::SingletonClosed => "singleton_closed",
            FamilyLabel::Partition => "partition",
            FamilyLabel::StronglySeparating => "strongly_separating",
            FamilyLabel::Separating => "separating",
            FamilyLabel::Other => "other",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FamilyFlags {
    pub trivial: bool,
    pub singleton_closed: bool,
    pub partition: bool,
    pub strongly_separating: bool,
    pub separating: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyClass {
    pub label: FamilyLabel,
    pub flags: FamilyFlags,
}

pub fn classify_sets(sets: &[ElemSet], n: usize) -> FamilyClass {
    let proper: Vec<&ElemSet> = sets.iter().filter(|s| !s.is_empty() && s.len() != n).collect();
    let trivial = proper.is_empty();
    let singleton_closed = n > 0 && (0..n).all(|x| sets.iter().any(|s| s.len() == 1 && s.contains(x)));
    let partition = !trivial && {
        let mut blocks = proper.clone();
        blocks.sort();
        blocks.dedup();
        let mut cover = ElemSet::empty(n);
        let mut disjoint = true;
        for b in &blocks {
            disjoint &= !b.intersects(&cover);
            cover.union_with(b);
        }
        disjoint && cover.len() == n
    };
    let flags = FamilyFlags {
        trivial,
        singleton_closed,
        partition,
        strongly_separating: strongly_separates(sets, n),
        separating: separates(sets, n),
    };
    let label = if flags.trivial {
        FamilyLabel::Trivial
    } else if flags.singleton_closed {
        FamilyLabel::SingletonClosed
    } else if flags.partition {
        FamilyLabel::Partition
    } else if flags.strongly_separating {
        FamilyLabel::StronglySeparating
    } else if flags.separating {
        FamilyLabel::Separating
    } else {
        FamilyLabel::Other
    };
    FamilyClass { label, flags }
}

/// Classifies a family of target sets over `universe`.
pub fn classify_intervention_topology<S, O>(family: &[O], universe: &[S]) -> Result<FamilyClass, SpaceError>
where
    S: AsRef<str>,
    O: AsRef<[S]>,
{
    Ok(classify_sets(&sets_over(family, universe)?, universe.len()))
}
