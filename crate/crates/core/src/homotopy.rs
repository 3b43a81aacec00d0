//! Beat points, cores and the homotopy type of finite spaces.
//!
//! Removing a beat point from a T0 space is a strong deformation retraction,
//! and two finite spaces are homotopy equivalent iff their cores (beat-point
//! free retracts of the T0 quotient) are homeomorphic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::set::ElemSet;
use crate::space::{FiniteSpace, SpaceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RemovalKind {
    UpBeat,
    DownBeat,
    /// Identified with an equivalent point while forming the T0 quotient.
    T0Merge,
}

impl RemovalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RemovalKind::UpBeat => "up_beat",
            RemovalKind::DownBeat => "down_beat",
            RemovalKind::T0Merge => "t0_merge",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Removal {
    pub element: String,
    pub kind: RemovalKind,
}

#[derive(Debug, Clone)]
pub struct CoreReport {
    /// The minimal model.
    pub core: FiniteSpace,
    pub removal_trace: Vec<Removal>,
}

/// Identifies points with equal minimal open sets. Returns the quotient and
/// the equivalence classes (as label lists, in order of first occurrence).
pub fn t0_quotient(space: &FiniteSpace) -> (FiniteSpace, Vec<Vec<String>>) {
    let blocks = t0_blocks(space);
    let q = space.quotient_blocks(&blocks);
    let partition = blocks
        .iter()
        .map(|b| b.iter().map(|i| String::from(space.label(i))).collect())
        .collect();
    (q, partition)
}

fn t0_blocks(space: &FiniteSpace) -> Vec<ElemSet> {
    let n = space.len();
    let mut by_open: BTreeMap<&ElemSet, usize> = BTreeMap::new();
    let mut blocks: Vec<ElemSet> = Vec::new();
    for x in 0..n {
        let u = space.min_open(x);
        match by_open.get(u) {
            Some(&b) => {
                blocks[b].insert(x);
            }
            None => {
                by_open.insert(u, blocks.len());
                blocks.push(ElemSet::singleton(n, x));
            }
        }
    }
    blocks
}

/// Strict down-set of `x` inside the live points, with `x` removed.
fn hat_down(space: &FiniteSpace, alive: &ElemSet, x: usize) -> ElemSet {
    let mut s = space.min_open(x).intersection(alive);
    s.remove(x);
    s
}

fn hat_up(space: &FiniteSpace, alive: &ElemSet, x: usize) -> ElemSet {
    let mut s = ElemSet::from_indices(space.len(), alive.iter().filter(|&y| space.leq(x, y)));
    s.remove(x);
    s
}

/// `Û_x` has a maximum.
fn is_down_beat(space: &FiniteSpace, alive: &ElemSet, x: usize) -> bool {
    let hat = hat_down(space, alive, x);
    hat.iter().any(|m| hat.is_subset(space.min_open(m)))
}

/// `F̂_x` has a minimum.
fn is_up_beat(space: &FiniteSpace, alive: &ElemSet, x: usize) -> bool {
    let hat = hat_up(space, alive, x);
    hat.iter().any(|m| hat.iter().all(|y| space.leq(m, y)))
}

fn beats_within(space: &FiniteSpace, alive: &ElemSet) -> Vec<(usize, RemovalKind)> {
    let mut out = Vec::new();
    for x in alive.iter() {
        if is_down_beat(space, alive, x) {
            out.push((x, RemovalKind::DownBeat));
        }
        if is_up_beat(space, alive, x) {
            out.push((x, RemovalKind::UpBeat));
        }
    }
    out
}

/// Beat points of a T0 space, in element order; a point that is both a down
/// and an up beat point is listed twice (down first).
pub fn beat_points(space: &FiniteSpace) -> Result<Vec<Removal>, SpaceError> {
    space.require_t0()?;
    let alive = ElemSet::full(space.len());
    let found = to_removals(space, beats_within(space, &alive));
    debug_assert_eq!(found, beat_points_hasse(space)?);
    Ok(found)
}

/// Beat points read off the Hasse diagram: down beat iff exactly one lower
/// cover, up beat iff exactly one upper cover.
pub fn beat_points_hasse(space: &FiniteSpace) -> Result<Vec<Removal>, SpaceError> {
    space.require_t0()?;
    let mut out = Vec::new();
    for x in 0..space.len() {
        if space.lower_covers(x).len() == 1 {
            out.push((x, RemovalKind::DownBeat));
        }
        if space.upper_covers(x).len() == 1 {
            out.push((x, RemovalKind::UpBeat));
        }
    }
    Ok(to_removals(space, out))
}

fn to_removals(space: &FiniteSpace, v: Vec<(usize, RemovalKind)>) -> Vec<Removal> {
    v.into_iter()
        .map(|(x, kind)| Removal {
            element: String::from(space.label(x)),
            kind,
        })
        .collect()
}

/// True when the (T0) space has no beat points.
pub fn is_minimal(space: &FiniteSpace) -> bool {
    space.is_t0() && beats_within(space, &ElemSet::full(space.len())).is_empty()
}

/// Core of a finite space, removing the lowest-index beat point first.
pub fn core(space: &FiniteSpace) -> CoreReport {
    reduce(space, |cands| cands[0])
}

/// Core computed with beat points removed in a random order. The result is
/// homeomorphic to [`core`] for every order.
pub fn core_randomized<R: RngCore + ?Sized>(space: &FiniteSpace, rng: &mut R) -> CoreReport {
    reduce(space, |cands| {
        cands[(rng.next_u64() % cands.len() as u64) as usize]
    })
}

fn reduce(
    space: &FiniteSpace,
    mut pick: impl FnMut(&[(usize, RemovalKind)]) -> (usize, RemovalKind),
) -> CoreReport {
    let (q, partition) = t0_quotient(space);
    let mut trace = Vec::new();
    for block in &partition {
        let rep = block.iter().min().expect("nonempty block");
        for member in block.iter().filter(|m| *m != rep) {
            trace.push(Removal {
                element: member.clone(),
                kind: RemovalKind::T0Merge,
            });
        }
    }
    let mut alive = ElemSet::full(q.len());
    loop {
        let cands = beats_within(&q, &alive);
        if cands.is_empty() {
            break;
        }
        let (x, kind) = pick(&cands);
        alive.remove(x);
        trace.push(Removal {
            element: String::from(q.label(x)),
            kind,
        });
    }
    CoreReport {
        core: q.subspace_indices(&alive),
        removal_trace: trace,
    }
}

pub fn is_contractible(space: &FiniteSpace) -> bool {
    core(space).core.len() == 1
}

/// An order isomorphism, `map[i]` being the image of element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<usize>,
}

impl Isomorphism {
    pub fn label_pairs<'a>(&self, from: &'a FiniteSpace, to: &'a FiniteSpace) -> Vec<(&'a str, &'a str)> {
        self.map
            .iter()
            .enumerate()
            .map(|(i, &j)| (from.label(i), to.label(j)))
            .collect()
    }
}

/// Longest strict chain ending at (`below`) or starting from each point.
fn heights(space: &FiniteSpace, below: bool) -> Vec<usize> {
    let n = space.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Sorting by |U_x| is a linear extension of the strict order.
    order.sort_by_key(|&x| space.min_open(x).len());
    if !below {
        order.reverse();
    }
    let mut h = vec![0usize; n];
    for &x in &order {
        h[x] = (0..n)
            .filter(|&y| if below { space.lt(y, x) } else { space.lt(x, y) })
            .map(|y| h[y] + 1)
            .max()
            .unwrap_or(0);
    }
    h
}

/// Colour refinement run jointly on both spaces so colours are comparable.
fn joint_colours(a: &FiniteSpace, b: &FiniteSpace) -> (Vec<usize>, Vec<usize>) {
    let base = |s: &FiniteSpace| -> Vec<Vec<usize>> {
        let hb = heights(s, true);
        let ha = heights(s, false);
        (0..s.len())
            .map(|x| {
                vec![
                    s.min_open(x).len(),
                    s.min_closed(x).len(),
                    hb[x],
                    ha[x],
                    s.lower_covers(x).len(),
                    s.upper_covers(x).len(),
                ]
            })
            .collect()
    };
    let rank = |ka: Vec<Vec<usize>>, kb: Vec<Vec<usize>>| -> (Vec<usize>, Vec<usize>, usize) {
        let all: BTreeSet<&Vec<usize>> = ka.iter().chain(kb.iter()).collect();
        let pos: BTreeMap<&Vec<usize>, usize> = all.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let ca = ka.iter().map(|k| pos[k]).collect();
        let cb = kb.iter().map(|k| pos[k]).collect();
        (ca, cb, pos.len())
    };
    let (mut ca, mut cb, mut classes) = rank(base(a), base(b));
    loop {
        let refine = |s: &FiniteSpace, c: &[usize]| -> Vec<Vec<usize>> {
            (0..s.len())
                .map(|x| {
                    let mut lo: Vec<usize> = (0..s.len()).filter(|&y| s.lt(y, x)).map(|y| c[y]).collect();
                    let mut hi: Vec<usize> = (0..s.len()).filter(|&y| s.lt(x, y)).map(|y| c[y]).collect();
                    lo.sort_unstable();
                    hi.sort_unstable();
                    let mut key = vec![c[x], lo.len()];
                    key.extend(lo);
                    key.push(usize::MAX);
                    key.extend(hi);
                    key
                })
                .collect()
        };
        let (na, nb, k) = rank(refine(a, &ca), refine(b, &cb));
        ca = na;
        cb = nb;
        if k == classes {
            break;
        }
        classes = k;
    }
    (ca, cb)
}

/// Searches for an order isomorphism between two finite spaces.
pub fn homeomorphic(a: &FiniteSpace, b: &FiniteSpace) -> Option<Isomorphism> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let (ca, cb) = joint_colours(a, b);
    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }
    // Map rarest colours first.
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &ca {
        *freq.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (freq[&ca[x]], ca[x], x));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &ca, &cb, &order, 0, &mut map, &mut used) {
        Some(Isomorphism { map })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &FiniteSpace,
    b: &FiniteSpace,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..b.len() {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let v = map[u];
            a.leq(x, u) == b.leq(y, v) && a.leq(u, x) == b.leq(v, y)
        }) && a.leq(x, x) == b.leq(y, y);
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

pub fn homotopy_equivalent(a: &FiniteSpace, b: &FiniteSpace) -> bool {
    homeomorphic(&core(a).core, &core(b).core).is_some()
}
