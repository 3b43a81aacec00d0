use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{CausalError, DiscreteCausalModel};

/// Largest joint table that will be materialized.
pub const JOINT_CAP: u128 = 10_000_000;

/// Probability table over all assignments, variable 0 most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    labels: Vec<String>,
    dims: Vec<usize>,
    probs: Vec<f64>,
}

/// Advances a mixed-radix counter; the last digit moves fastest.
#[inline]
pub(crate) fn bump(a: &mut [usize], dims: &[usize]) -> bool {
    for i in (0..a.len()).rev() {
        a[i] += 1;
        if a[i] < dims[i] {
            return true;
        }
        a[i] = 0;
    }
    false
}

impl JointDistribution {
    pub(crate) fn of_model(m: &DiscreteCausalModel) -> Result<Self, CausalError> {
        let size = m.joint_size();
        if size > JOINT_CAP {
            return Err(CausalError::SizeCap {
                what: "joint table",
                size,
                cap: JOINT_CAP,
            });
        }
        let dims: Vec<usize> = m.domains().iter().map(Vec::len).collect();
        let mut probs = Vec::with_capacity(size as usize);
        let mut a = vec![0usize; dims.len()];
        loop {
            let p = m.order().iter().fold(1.0, |acc, &x| acc * m.prob(x, &a));
            probs.push(p);
            if !bump(&mut a, &dims) {
                break;
            }
        }
        Ok(Self {
            labels: m.space().labels().to_vec(),
            dims,
            probs,
        })
    }

    /// From raw parts; `probs` must have one entry per assignment.
    pub fn from_table(labels: Vec<String>, dims: Vec<usize>, probs: Vec<f64>) -> Self {
        assert_eq!(labels.len(), dims.len());
        assert_eq!(dims.iter().product::<usize>(), probs.len());
        Self { labels, dims, probs }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Probability of a full assignment.
    pub fn prob(&self, assignment: &[usize]) -> f64 {
        let i = assignment.iter().zip(&self.dims).fold(0, |i, (&v, &d)| i * d + v);
        self.probs[i]
    }

    /// Marginal over `vars`, indexed lexicographically in the given order.
    pub fn marginal(&self, vars: &[usize]) -> Vec<f64> {
        let sub: Vec<usize> = vars.iter().map(|&v| self.dims[v]).collect();
        let mut out = vec![0.0; sub.iter().product()];
        let mut a = vec![0usize; self.dims.len()];
        for &p in &self.probs {
            let i = vars.iter().zip(&sub).fold(0, |i, (&v, &d)| i * d + a[v]);
            out[i] += p;
            bump(&mut a, &self.dims);
        }
        out
    }

    /// Largest total-variation gap between `P(U, V | z)` and
    /// `P(U | z) P(V | z)` over the slices with `P(z) > 0`.
    pub fn independence_gap(&self, u: &[usize], v: &[usize], z: &[usize]) -> f64 {
        let size = |s: &[usize]| s.iter().map(|&x| self.dims[x]).product::<usize>();
        let (nu, nv, nz) = (size(u), size(v), size(z));
        let mut vars = Vec::with_capacity(u.len() + v.len() + z.len());
        vars.extend_from_slice(z);
        vars.extend_from_slice(u);
        vars.extend_from_slice(v);
        // Layout: z most significant, then u, then v.
        let m = self.marginal(&vars);
        let mut worst = 0.0f64;
        for zi in 0..nz {
            let slice = &m[zi * nu * nv..(zi + 1) * nu * nv];
            let pz: f64 = slice.iter().sum();
            if pz <= 0.0 {
                continue;
            }
            let pu: Vec<f64> = (0..nu).map(|a| slice[a * nv..(a + 1) * nv].iter().sum::<f64>() / pz).collect();
            let pv: Vec<f64> = (0..nv).map(|b| (0..nu).map(|a| slice[a * nv + b]).sum::<f64>() / pz).collect();
            let mut tv = 0.0;
            for a in 0..nu {
                for b in 0..nv {
                    tv += (slice[a * nv + b] / pz - pu[a] * pv[b]).abs();
                }
            }
            worst = worst.max(tv / 2.0);
        }
        worst
    }
}

/// `U ⫫ V | Z` in the joint, up to `tol` in total variation per slice.
pub fn ci_exact(joint: &JointDistribution, u: &[usize], v: &[usize], z: &[usize], tol: f64) -> bool {
    joint.independence_gap(u, v, z) <= tol
}

/// Label-level [`ci_exact`].
pub fn ci_exact_labels<S: AsRef<str>>(
    joint: &JointDistribution,
    u: &[S],
    v: &[S],
    z: &[S],
    tol: f64,
) -> Result<bool, CausalError> {
    let look = |s: &[S]| -> Result<Vec<usize>, CausalError> {
        s.iter()
            .map(|l| {
                joint
                    .labels
                    .iter()
                    .position(|x| x == l.as_ref())
                    .ok_or_else(|| crate::space::SpaceError::UnknownElement(l.as_ref().to_owned()).into())
            })
            .collect()
    };
    Ok(ci_exact(joint, &look(u)?, &look(v)?, &look(z)?, tol))
}
