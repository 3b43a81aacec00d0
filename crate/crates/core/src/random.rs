//! Random spaces, DAGs and models for tests and experiments.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::causal::{Cpt, DiscreteCausalModel};
use crate::graphs::{dag_to_space, Dag};
use crate::set::ElemSet;
use crate::space::FiniteSpace;

/// Uniform sample from `[0, 1)` with 53 random bits.
pub fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform integer in `0..n` (`n > 0`).
pub fn below<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> usize {
    (unit_f64(rng) * n as f64) as usize % n
}

pub fn uniform<R: RngCore + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit_f64(rng)
}

pub fn shuffle<T, R: RngCore + ?Sized>(rng: &mut R, v: &mut [T]) {
    for i in (1..v.len()).rev() {
        v.swap(i, below(rng, i + 1));
    }
}

/// Labels `x0, x1, ...`.
pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Random DAG on `n` vertices: each pair of a random order gets an edge with
/// probability `p`, and the vertex indices are shuffled.
pub fn random_dag<R: RngCore + ?Sized>(rng: &mut R, n: usize, p: f64) -> Dag {
    let mut perm: Vec<usize> = (0..n).collect();
    shuffle(rng, &mut perm);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if unit_f64(rng) < p {
                edges.push((perm[i], perm[j]));
            }
        }
    }
    Dag::from_indices(labels(n), edges).expect("edges follow a fixed order")
}

/// Random finite space: the transitive closure of a random relation.
pub fn random_space<R: RngCore + ?Sized>(rng: &mut R, n: usize, p: f64) -> FiniteSpace {
    let mut down: Vec<ElemSet> = (0..n).map(|i| ElemSet::singleton(n, i)).collect();
    for (y, row) in down.iter_mut().enumerate() {
        for x in 0..n {
            if x != y && unit_f64(rng) < p {
                row.insert(x);
            }
        }
    }
    FiniteSpace::from_down_sets(labels(n), crate::space::transitive_close(down))
}

/// Random T0 space, from a random DAG.
pub fn random_t0_space<R: RngCore + ?Sized>(rng: &mut R, n: usize, p: f64) -> FiniteSpace {
    dag_to_space(&random_dag(rng, n, p))
}

/// Binary model with every CPT entry drawn from `[lo, 1 - lo]`.
pub fn bounded_binary_model<R: RngCore + ?Sized>(rng: &mut R, dag: &Dag, lo: f64) -> DiscreteCausalModel {
    let space = dag_to_space(dag);
    let n = space.len();
    let cpts = (0..n)
        .map(|x| {
            let parents: Vec<usize> = space.upper_covers(x).iter().collect();
            let table = (0..1usize << parents.len())
                .map(|_| {
                    let p = uniform(rng, lo, 1.0 - lo);
                    vec![1.0 - p, p]
                })
                .collect();
            Cpt { parents, table }
        })
        .collect();
    DiscreteCausalModel::new(space, vec![vec!["0".into(), "1".into()]; n], cpts).expect("valid by construction")
}

/// Binary noisy-OR model: `P(x = 1) = 1 - (1 - leak) ∏ (1 - w_p)` over the
/// active parents, with weights drawn from `[w_lo, w_hi]`. Effects are
/// monotone, so no dependence cancels along a path.
pub fn noisy_or_model<R: RngCore + ?Sized>(
    rng: &mut R,
    dag: &Dag,
    leak: f64,
    w_lo: f64,
    w_hi: f64,
) -> DiscreteCausalModel {
    let space = dag_to_space(dag);
    let n = space.len();
    let cpts = (0..n)
        .map(|x| {
            let parents: Vec<usize> = space.upper_covers(x).iter().collect();
            let k = parents.len();
            let w: Vec<f64> = (0..k).map(|_| uniform(rng, w_lo, w_hi)).collect();
            let table = (0..1usize << k)
                .map(|r| {
                    let off = (0..k)
                        .filter(|&i| r >> (k - 1 - i) & 1 == 1)
                        .fold(1.0 - leak, |acc, i| acc * (1.0 - w[i]));
                    vec![off, 1.0 - off]
                })
                .collect();
            Cpt { parents, table }
        })
        .collect();
    DiscreteCausalModel::new(space, vec![vec!["0".into(), "1".into()]; n], cpts).expect("valid by construction")
}
