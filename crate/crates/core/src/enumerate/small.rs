//! Bitmask preorders on at most [`KERNEL_MAX`] points, the working
//! representation for enumeration.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::set::ElemSet;
use crate::space::FiniteSpace;

/// Largest size the bitmask kernel supports (`n * n` bits fit in a `u128`).
pub const KERNEL_MAX: usize = 11;

/// A preorder on `0..n` stored as down-set masks: bit `x` of `down[y]` is set
/// iff `x <= y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallOrder {
    n: u8,
    down: [u16; KERNEL_MAX],
}

/// Canonical form of a preorder up to relabeling.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonKey {
    n: u8,
    bits: u128,
}

impl core::fmt::Debug for SmallOrder {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_list()
            .entries(self.downs().iter().map(|d| format!("{d:0w$b}", w = self.len())))
            .finish()
    }
}

impl SmallOrder {
    pub fn empty() -> Self {
        Self {
            n: 0,
            down: [0; KERNEL_MAX],
        }
    }

    pub fn antichain(n: usize) -> Self {
        assert!(n <= KERNEL_MAX);
        let mut s = Self::empty();
        s.n = n as u8;
        for i in 0..n {
            s.down[i] = 1 << i;
        }
        s
    }

    /// From down-set masks; the caller guarantees reflexivity and transitivity.
    pub fn from_downs(downs: &[u16]) -> Self {
        assert!(downs.len() <= KERNEL_MAX);
        let mut s = Self::empty();
        s.n = downs.len() as u8;
        s.down[..downs.len()].copy_from_slice(downs);
        debug_assert!(s.is_preorder());
        s
    }

    /// Reads an arbitrary finite space with at most [`KERNEL_MAX`] points.
    pub fn from_space(space: &FiniteSpace) -> Option<Self> {
        if space.len() > KERNEL_MAX {
            return None;
        }
        let downs: Vec<u16> = (0..space.len())
            .map(|x| space.min_open(x).iter().fold(0u16, |m, i| m | 1 << i))
            .collect();
        Some(Self::from_downs(&downs))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn downs(&self) -> &[u16] {
        &self.down[..self.len()]
    }

    #[inline]
    pub fn down(&self, x: usize) -> u16 {
        self.down[x]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y] >> x & 1 == 1
    }

    /// Mask of elements `>= x`.
    pub fn up(&self, x: usize) -> u16 {
        let mut m = 0u16;
        for y in 0..self.len() {
            if self.leq(x, y) {
                m |= 1 << y;
            }
        }
        m
    }

    pub fn ups(&self) -> Vec<u16> {
        (0..self.len()).map(|x| self.up(x)).collect()
    }

    fn full_mask(&self) -> u16 {
        if self.n == 16 {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        }
    }

    pub fn is_preorder(&self) -> bool {
        let n = self.len();
        (0..n).all(|y| {
            let d = self.down[y];
            d >> y & 1 == 1
                && d & !self.full_mask() == 0
                && (0..n).filter(|&x| d >> x & 1 == 1).all(|x| self.down[x] & !d == 0)
        })
    }

    pub fn is_t0(&self) -> bool {
        let d = self.downs();
        (0..d.len()).all(|i| (i + 1..d.len()).all(|j| d[i] != d[j]))
    }

    /// All down-sets (open sets) as masks, in increasing numeric order.
    pub fn down_sets(&self) -> Vec<u16> {
        let n = self.len();
        (0..1u32 << n)
            .map(|m| m as u16)
            .filter(|&m| (0..n).filter(|&x| m >> x & 1 == 1).all(|x| self.down[x] & !m == 0))
            .collect()
    }

    /// All up-sets (closed sets) as masks.
    pub fn up_sets(&self) -> Vec<u16> {
        let n = self.len();
        let ups = self.ups();
        (0..1u32 << n)
            .map(|m| m as u16)
            .filter(|&m| (0..n).filter(|&x| m >> x & 1 == 1).all(|x| ups[x] & !m == 0))
            .collect()
    }

    /// Adds a new element above exactly `below` (a down-set) and below
    /// exactly `above` (an up-set); every member of `below` must be strictly
    /// under every member of `above`.
    pub fn extended(&self, below: u16, above: u16) -> Self {
        let k = self.len();
        assert!(k < KERNEL_MAX);
        let mut s = *self;
        s.n += 1;
        let new_down = below | 1 << k;
        s.down[k] = new_down;
        for u in 0..k {
            if above >> u & 1 == 1 {
                s.down[u] |= new_down;
            }
        }
        debug_assert!(s.is_preorder());
        s
    }

    pub fn to_space(&self) -> FiniteSpace {
        let n = self.len();
        let labels: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
        let down = self
            .downs()
            .iter()
            .map(|&d| ElemSet::from_indices(n, (0..n).filter(|&x| d >> x & 1 == 1)))
            .collect();
        FiniteSpace::from_down_sets(labels, down)
    }

    /// Removes the elements outside `keep`, renumbering the rest in order.
    pub fn restrict(&self, keep: u16) -> Self {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep >> i & 1 == 1).collect();
        let downs: Vec<u16> = idx
            .iter()
            .map(|&y| {
                idx.iter()
                    .enumerate()
                    .filter(|(_, &x)| self.leq(x, y))
                    .fold(0u16, |m, (a, _)| m | 1 << a)
            })
            .collect();
        Self::from_downs(&downs)
    }

    /// Beat points of a T0 order restricted to the live mask.
    pub fn beat_point(&self, alive: u16) -> Option<usize> {
        let n = self.len();
        let ups = self.ups();
        (0..n).filter(|&x| alive >> x & 1 == 1).find(|&x| {
            let hat_down = self.down[x] & alive & !(1 << x);
            let hat_up = ups[x] & alive & !(1 << x);
            let has_max = (0..n)
                .filter(|&m| hat_down >> m & 1 == 1)
                .any(|m| hat_down & !self.down[m] == 0);
            let has_min = (0..n)
                .filter(|&m| hat_up >> m & 1 == 1)
                .any(|m| hat_up & !ups[m] == 0);
            has_max || has_min
        })
    }

    pub fn has_beat_point(&self) -> bool {
        self.beat_point(self.full_mask()).is_some()
    }

    /// Core of a poset, by repeated removal of the lowest beat point.
    pub fn core_of_poset(&self) -> Self {
        debug_assert!(self.is_t0());
        let mut alive = self.full_mask();
        while let Some(x) = self.beat_point(alive) {
            alive &= !(1 << x);
        }
        self.restrict(alive)
    }

    /// T0 quotient: one representative per class of equivalent points.
    pub fn t0_quotient(&self) -> Self {
        let mut keep = 0u16;
        let mut seen: Vec<u16> = Vec::new();
        for x in 0..self.len() {
            if !seen.contains(&self.down[x]) {
                seen.push(self.down[x]);
                keep |= 1 << x;
            }
        }
        self.restrict(keep)
    }

    /// Longest chain length (number of points), 0 for the empty order.
    pub fn height(&self) -> usize {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.down[x].count_ones());
        let mut h = vec![0usize; n];
        for &x in &order {
            h[x] = 1 + (0..n)
                .filter(|&y| y != x && self.leq(y, x) && !self.leq(x, y))
                .map(|y| h[y])
                .max()
                .unwrap_or(0);
        }
        h.into_iter().max().unwrap_or(0)
    }

    pub fn canonical_key(&self) -> CanonKey {
        canonical(self, None).0
    }

    /// Canonical form with one point distinguished.
    pub fn marked_key(&self, marked: usize) -> CanonKey {
        canonical(self, Some(marked)).0
    }

    /// Canonical labeling: position `i` of the canonical order holds element
    /// `perm[i]`.
    pub fn canonical_labeling(&self) -> (CanonKey, Vec<usize>) {
        canonical(self, None)
    }
}

impl CanonKey {
    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The canonical representative.
    pub fn to_order(&self) -> SmallOrder {
        let n = self.len();
        let downs: Vec<u16> = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| self.bits >> (i * n + j) & 1 == 1)
                    .fold(0u16, |m, i| m | 1 << i)
            })
            .collect();
        SmallOrder::from_downs(&downs)
    }
}

fn rank_keys(keys: &[Vec<u32>]) -> (Vec<u32>, usize) {
    let mut sorted: Vec<&Vec<u32>> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    let pos: BTreeMap<&Vec<u32>, u32> = sorted.iter().enumerate().map(|(i, k)| (*k, i as u32)).collect();
    (keys.iter().map(|k| pos[k]).collect(), pos.len())
}

/// Iso-invariant colouring by iterated refinement on lower/upper
/// neighbourhoods.
fn colours(s: &SmallOrder, marked: Option<usize>) -> Vec<u32> {
    let n = s.len();
    let ups = s.ups();
    let init: Vec<Vec<u32>> = (0..n)
        .map(|x| {
            vec![
                (marked == Some(x)) as u32,
                s.down(x).count_ones(),
                ups[x].count_ones(),
                (s.down(x) & ups[x]).count_ones(),
            ]
        })
        .collect();
    let (mut c, mut k) = rank_keys(&init);
    loop {
        let keys: Vec<Vec<u32>> = (0..n)
            .map(|x| {
                let strict_down = s.down(x) & !ups[x];
                let strict_up = ups[x] & !s.down(x);
                let mut lo: Vec<u32> = (0..n).filter(|&y| strict_down >> y & 1 == 1).map(|y| c[y]).collect();
                let mut hi: Vec<u32> = (0..n).filter(|&y| strict_up >> y & 1 == 1).map(|y| c[y]).collect();
                lo.sort_unstable();
                hi.sort_unstable();
                let mut key = vec![c[x], lo.len() as u32];
                key.extend(lo);
                key.extend(hi);
                key
            })
            .collect();
        let (nc, nk) = rank_keys(&keys);
        c = nc;
        if nk == k {
            return c;
        }
        k = nk;
    }
}

fn canonical(s: &SmallOrder, marked: Option<usize>) -> (CanonKey, Vec<usize>) {
    let n = s.len();
    let c = colours(s, marked);
    // Cells in colour order; the canonical labeling places cells in that
    // order and tries every arrangement inside each cell.
    let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        cells.entry(c[x]).or_default().push(x);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = 0u16;
    search(s, &cells, 0, &mut perm, &mut used, &mut best);
    let (bits, perm) = best.unwrap_or((0, Vec::new()));
    (CanonKey { n: n as u8, bits }, perm)
}

fn key_of(s: &SmallOrder, perm: &[usize]) -> u128 {
    let n = perm.len();
    let mut bits = 0u128;
    for (i, &pi) in perm.iter().enumerate() {
        for (j, &pj) in perm.iter().enumerate() {
            if s.leq(pi, pj) {
                bits |= 1u128 << (i * n + j);
            }
        }
    }
    bits
}

fn search(
    s: &SmallOrder,
    cells: &[Vec<usize>],
    cell: usize,
    perm: &mut Vec<usize>,
    used: &mut u16,
    best: &mut Option<(u128, Vec<usize>)>,
) {
    if cell == cells.len() {
        let k = key_of(s, perm);
        if best.as_ref().is_none_or(|(b, _)| k > *b) {
            *best = Some((k, perm.clone()));
        }
        return;
    }
    let members = &cells[cell];
    let placed_in_cell = members.iter().filter(|&&x| *used >> x & 1 == 1).count();
    if placed_in_cell == members.len() {
        search(s, cells, cell + 1, perm, used, best);
        return;
    }
    for &x in members {
        if *used >> x & 1 == 1 {
            continue;
        }
        *used |= 1 << x;
        perm.push(x);
        search(s, cells, cell, perm, used, best);
        perm.pop();
        *used &= !(1 << x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> SmallOrder {
        let downs: Vec<u16> = (0..n).map(|i| ((1u32 << (i + 1)) - 1) as u16).collect();
        SmallOrder::from_downs(&downs)
    }

    #[test]
    fn relabelled_orders_share_a_key() {
        // 0 < 2, 1 < 2  versus  2 < 0, 1 < 0
        let a = SmallOrder::from_downs(&[0b001, 0b010, 0b111]);
        let b = SmallOrder::from_downs(&[0b111, 0b010, 0b100]);
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(a.canonical_key(), chain(3).canonical_key());
        assert_eq!(a.canonical_key().to_order().canonical_key(), a.canonical_key());
    }

    #[test]
    fn canonical_labeling_reproduces_key() {
        let a = SmallOrder::from_downs(&[0b0001, 0b0011, 0b0101, 0b1111]);
        let (key, perm) = a.canonical_labeling();
        assert_eq!(key_of(&a, &perm), key.bits);
    }

    #[test]
    fn chain_core_is_a_point_and_antichain_is_minimal() {
        assert_eq!(chain(5).core_of_poset().len(), 1);
        assert!(!SmallOrder::antichain(4).has_beat_point());
        assert_eq!(chain(4).height(), 4);
        assert_eq!(SmallOrder::antichain(4).height(), 1);
    }

    #[test]
    fn marked_keys_distinguish_orbits() {
        // Fence 0 < 1 > 2: the two ends are in one orbit, the middle is not.
        let f = SmallOrder::from_downs(&[0b001, 0b111, 0b100]);
        assert_eq!(f.marked_key(0), f.marked_key(2));
        assert_ne!(f.marked_key(0), f.marked_key(1));
    }
}
