use alloc::string::String;
use alloc::vec::Vec;

use super::{ci_exact, d_separated, CausalError, DiscreteCausalModel};
use crate::set::ElemSet;

/// Largest model checked exhaustively.
pub const FAITHFUL_MAX_N: usize = 7;

/// A triple where topology and distribution disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub u: String,
    pub v: String,
    pub z: Vec<String>,
    pub tci: bool,
    pub ci: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulnessReport {
    pub faithful: bool,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

/// Compares `tci` with `ci_exact` on every pair of single variables and
/// every conditioning set drawn from the remaining variables.
pub fn is_faithful(model: &DiscreteCausalModel, tol: f64) -> Result<FaithfulnessReport, CausalError> {
    let n = model.len();
    if n > FAITHFUL_MAX_N {
        return Err(CausalError::SizeCap {
            what: "faithfulness check",
            size: n as u128,
            cap: FAITHFUL_MAX_N as u128,
        });
    }
    let joint = model.joint()?;
    let space = model.space();
    let mut violations = Vec::new();
    let mut checked = 0;
    for a in 0..n {
        for b in a + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&x| x != a && x != b).collect();
            for mask in 0u32..1 << rest.len() {
                let z: Vec<usize> = rest
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                let t = d_separated(
                    space,
                    &ElemSet::singleton(n, a),
                    &ElemSet::singleton(n, b),
                    &ElemSet::from_indices(n, z.iter().copied()),
                );
                let c = ci_exact(&joint, &[a], &[b], &z, tol);
                checked += 1;
                if t != c {
                    violations.push(Violation {
                        u: space.label(a).into(),
                        v: space.label(b).into(),
                        z: z.iter().map(|&x| space.label(x).into()).collect(),
                        tci: t,
                        ci: c,
                    });
                }
            }
        }
    }
    Ok(FaithfulnessReport {
        faithful: violations.is_empty(),
        checked,
        violations,
    })
}
