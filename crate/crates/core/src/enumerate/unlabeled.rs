//! Posets and preorders up to isomorphism, by canonical augmentation.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::labeled::blow_up;
use super::small::{CanonKey, SmallOrder};

fn maximal_elements(order: &SmallOrder) -> impl Iterator<Item = usize> + '_ {
    let n = order.len();
    (0..n).filter(move |&x| (0..n).all(|y| y == x || !order.leq(x, y)))
}

/// Children of an unlabeled poset: one new maximal element per down-set,
/// kept only when the new element is canonical among the maximal elements
/// and not already produced from the same parent.
pub fn children(parent: &SmallOrder) -> Vec<SmallOrder> {
    let m = parent.len();
    let mut seen: BTreeSet<CanonKey> = BTreeSet::new();
    let mut out = Vec::new();
    for d in parent.down_sets() {
        let child = parent.extended(d, 0);
        let mine = child.marked_key(m);
        let best = maximal_elements(&child)
            .map(|v| child.marked_key(v))
            .min()
            .expect("a nonempty poset has a maximal element");
        if mine != best {
            continue;
        }
        let key = child.canonical_key();
        if seen.insert(key) {
            out.push(key.to_order());
        }
    }
    out
}

/// The unlabeled posets of every size `0..=n`, one canonical representative
/// each; `levels[k]` holds the `k`-point posets.
pub fn unlabeled_poset_levels(n: usize) -> Vec<Vec<SmallOrder>> {
    let mut levels = vec![vec![SmallOrder::empty()]];
    for _ in 0..n {
        let next: Vec<SmallOrder> = levels
            .last()
            .expect("nonempty")
            .iter()
            .flat_map(children)
            .collect();
        levels.push(next);
    }
    levels
}

pub fn unlabeled_posets(n: usize) -> Vec<SmallOrder> {
    unlabeled_poset_levels(n).pop().expect("nonempty")
}

/// Compositions of `n` into exactly `k` positive parts.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Preorders on `n` points up to isomorphism: each unlabeled poset on `k`
/// classes with every assignment of class sizes summing to `n`.
pub fn unlabeled_preorders(n: usize) -> Vec<SmallOrder> {
    if n == 0 {
        return vec![SmallOrder::empty()];
    }
    let levels = unlabeled_poset_levels(n);
    let mut out = Vec::new();
    for (k, level) in levels.iter().enumerate().skip(1) {
        let comps = compositions(n, k);
        for q in level {
            // Different quotients never give isomorphic preorders, so
            // deduplication is local to `q`.
            let mut seen: BTreeSet<CanonKey> = BTreeSet::new();
            for w in &comps {
                let blocks: Vec<u8> = w
                    .iter()
                    .enumerate()
                    .flat_map(|(b, &size)| core::iter::repeat_n(b as u8, size))
                    .collect();
                let key = blow_up(&blocks, q).canonical_key();
                if seen.insert(key) {
                    out.push(key.to_order());
                }
            }
        }
    }
    out
}

/// Representatives of the `n`-point posets without beat points.
pub fn minimal_posets(n: usize) -> Vec<SmallOrder> {
    unlabeled_posets(n)
        .into_iter()
        .filter(|p| !p.has_beat_point())
        .collect()
}

/// Distinct homotopy types among the given posets, as canonical keys of
/// their cores.
pub fn core_keys<'a>(posets: impl IntoIterator<Item = &'a SmallOrder>) -> BTreeSet<CanonKey> {
    posets
        .into_iter()
        .map(|p| p.core_of_poset().canonical_key())
        .collect()
}
