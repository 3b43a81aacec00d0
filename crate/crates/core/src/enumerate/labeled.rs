//! Labeled posets and preorders as restartable streams.

use alloc::vec;
use alloc::vec::Vec;

use super::small::{SmallOrder, KERNEL_MAX};

/// The ways to add element `k` to an order on `0..k`: a down-set `D` of
/// elements below it and an up-set of elements above it, every member of the
/// up-set lying strictly above all of `D`.
pub fn extensions(order: &SmallOrder) -> Vec<(u16, u16)> {
    let n = order.len();
    let downs = order.down_sets();
    let ups = order.up_sets();
    let mut out = Vec::new();
    for &d in &downs {
        // Elements that could sit above the new point.
        let allowed = (0..n)
            .filter(|&u| d >> u & 1 == 0 && d & !order.down(u) == 0)
            .fold(0u16, |m, u| m | 1 << u);
        for &u in &ups {
            if u & !allowed == 0 {
                out.push((d, u));
            }
        }
    }
    out
}

struct Frame {
    order: SmallOrder,
    choices: Vec<(u16, u16)>,
    next: usize,
}

/// Depth-first stream of all labeled posets on `0..n` whose restriction to
/// the first `prefix.len()` points equals `prefix`. Output order is fixed.
pub struct LabeledPosets {
    target: usize,
    stack: Vec<Frame>,
}

impl LabeledPosets {
    pub fn new(n: usize) -> Self {
        Self::from_prefix(SmallOrder::empty(), n)
    }

    pub fn from_prefix(prefix: SmallOrder, n: usize) -> Self {
        assert!(n <= KERNEL_MAX && prefix.len() <= n);
        let mut s = Self {
            target: n,
            stack: Vec::new(),
        };
        s.push(prefix);
        s
    }

    fn push(&mut self, order: SmallOrder) {
        let choices = if order.len() < self.target {
            extensions(&order)
        } else {
            Vec::new()
        };
        self.stack.push(Frame {
            order,
            choices,
            next: 0,
        });
    }
}

impl Iterator for LabeledPosets {
    type Item = SmallOrder;

    fn next(&mut self) -> Option<SmallOrder> {
        loop {
            let top = self.stack.last_mut()?;
            if top.order.len() == self.target {
                let done = self.stack.pop().expect("nonempty");
                return Some(done.order);
            }
            if top.next == top.choices.len() {
                self.stack.pop();
                continue;
            }
            let (d, u) = top.choices[top.next];
            top.next += 1;
            let child = top.order.extended(d, u);
            self.push(child);
        }
    }
}

/// Prefixes of size `depth` that split the stream for `n` into disjoint
/// pieces: the union of `LabeledPosets::from_prefix(p, n)` over them is the
/// full stream.
pub fn branches(depth: usize) -> Vec<SmallOrder> {
    LabeledPosets::new(depth).collect()
}

/// Counts the labeled posets extending `prefix` to `n` points without
/// materializing the last level.
pub fn count_from_prefix(prefix: SmallOrder, n: usize) -> u64 {
    if prefix.len() == n {
        return 1;
    }
    if prefix.len() + 1 == n {
        return extensions(&prefix).len() as u64;
    }
    LabeledPosets::from_prefix(prefix, n - 1)
        .map(|o| extensions(&o).len() as u64)
        .sum()
}

pub fn count_labeled_posets(n: usize) -> u64 {
    count_from_prefix(SmallOrder::empty(), n)
}

/// Restricted growth strings of length `n`: `a[0] = 0` and
/// `a[i] <= 1 + max(a[..i])`, i.e. set partitions with blocks numbered by
/// first occurrence.
pub struct SetPartitions {
    a: Vec<u8>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self {
            a: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.a.clone();
        // Advance: bump the last position that can grow, reset the tail.
        let n = self.a.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let max_before = *self.a[..i].iter().max().expect("i >= 1");
            if self.a[i] <= max_before {
                self.a[i] += 1;
                for t in &mut self.a[i + 1..] {
                    *t = 0;
                }
                break;
            }
        }
        Some(out)
    }
}

/// The preorder on `0..n` obtained by placing a poset on the blocks of a set
/// partition: `x <= y` iff `block(x) <= block(y)`.
pub fn blow_up(blocks: &[u8], poset: &SmallOrder) -> SmallOrder {
    let n = blocks.len();
    let downs: Vec<u16> = (0..n)
        .map(|y| {
            (0..n)
                .filter(|&x| poset.leq(blocks[x] as usize, blocks[y] as usize))
                .fold(0u16, |m, x| m | 1 << x)
        })
        .collect();
    SmallOrder::from_downs(&downs)
}

/// Stream of all labeled preorders on `0..n`: for each set partition into
/// `k` blocks, every labeled poset on the blocks.
pub struct LabeledPreorders {
    partitions: SetPartitions,
    current: Option<(Vec<u8>, LabeledPosets)>,
}

impl LabeledPreorders {
    pub fn new(n: usize) -> Self {
        assert!(n <= KERNEL_MAX);
        Self {
            partitions: SetPartitions::new(n),
            current: None,
        }
    }
}

impl Iterator for LabeledPreorders {
    type Item = SmallOrder;

    fn next(&mut self) -> Option<SmallOrder> {
        loop {
            if let Some((blocks, posets)) = &mut self.current {
                if let Some(p) = posets.next() {
                    return Some(blow_up(blocks, &p));
                }
            }
            let blocks = self.partitions.next()?;
            let k = blocks.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
            self.current = Some((blocks, LabeledPosets::new(k)));
        }
    }
}
