//! Finite Alexandroff spaces as a language for causal structure.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`space`]: finite spaces through their minimal basis, separation axioms,
//!   connectivity and the usual constructions (subspace, quotient, sum,
//!   product, non-Hausdorff cone and suspension);
//! * [`homotopy`]: beat points, cores, contractibility, homeomorphism and
//!   homotopy equivalence;
//! * [`enumerate`]: generation and counting of finite topologies and posets,
//!   labeled and up to homeomorphism or homotopy;
//! * [`graphs`]: DAGs, chain graphs and hyper-edge models embedded as finite
//!   spaces, Hasse diagrams and antichain levels;
//! * [`causal`]: discrete causal models over a finite space, interventions,
//!   exact joints, topological d-separation and closed-loop solving;
//! * [`discovery`]: learning posets from interventions or genotype data.
//!
//! Ordering convention: for a causal DAG, `U_x` is `x` together with its
//! descendants, so causes sit *above* their effects.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod causal;
pub mod discovery;
pub mod enumerate;
pub mod graphs;
pub mod homotopy;
pub mod random;
pub mod set;
pub mod space;

pub use set::ElemSet;
pub use space::{FiniteSpace, SpaceError};
