//! Topological d-separation on the Hasse diagram of a T0 space.
//!
//! A fence is a path in the cover graph. An interior point is a collider when
//! both of its neighbours on the fence lie above it (both are direct causes).
//! A fence is active given `Z` when every non-collider is outside `Z` and
//! every collider `w` has `U_w ∩ Z ≠ ∅`, that is `w` or one of its
//! descendants is conditioned on.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::CausalError;
use crate::set::ElemSet;
use crate::space::FiniteSpace;

struct Covers {
    /// Direct causes (upper covers).
    up: Vec<Vec<usize>>,
    /// Direct effects (lower covers).
    down: Vec<Vec<usize>>,
}

fn covers(space: &FiniteSpace) -> Covers {
    let n = space.len();
    Covers {
        up: (0..n).map(|x| space.upper_covers(x).to_vec()).collect(),
        down: (0..n).map(|x| space.lower_covers(x).to_vec()).collect(),
    }
}

/// Reachability over (point, direction) states: `true` means the point was
/// entered from one of its effects, `false` from one of its causes.
pub fn d_separated(space: &FiniteSpace, u: &ElemSet, v: &ElemSet, z: &ElemSet) -> bool {
    let n = space.len();
    let c = covers(space);
    let active_collider = space.up_closure(z);
    let mut seen = vec![[false; 2]; n];
    let mut stack: Vec<(usize, bool)> = u.iter().map(|x| (x, true)).collect();
    while let Some((x, from_below)) = stack.pop() {
        if seen[x][from_below as usize] {
            continue;
        }
        seen[x][from_below as usize] = true;
        if v.contains(x) && !z.contains(x) {
            return false;
        }
        let blocked = z.contains(x);
        if from_below {
            if !blocked {
                stack.extend(c.up[x].iter().map(|&p| (p, true)));
                stack.extend(c.down[x].iter().map(|&ch| (ch, false)));
            }
        } else {
            if !blocked {
                stack.extend(c.down[x].iter().map(|&ch| (ch, false)));
            }
            if active_collider.contains(x) {
                stack.extend(c.up[x].iter().map(|&p| (p, true)));
            }
        }
    }
    true
}

/// An active fence from `U` to `V` given `Z`, if one exists, found by
/// depth-first search over simple paths.
pub fn active_fence(space: &FiniteSpace, u: &ElemSet, v: &ElemSet, z: &ElemSet) -> Option<Vec<usize>> {
    let c = covers(space);
    let active_collider = space.up_closure(z);
    let neighbours: Vec<Vec<usize>> = (0..space.len())
        .map(|x| c.up[x].iter().chain(&c.down[x]).copied().collect())
        .collect();
    let mut path = Vec::new();
    let mut on_path = ElemSet::empty(space.len());
    for s in u.iter() {
        path.push(s);
        on_path.insert(s);
        if dfs(space, &neighbours, v, z, &active_collider, &mut path, &mut on_path) {
            return Some(path);
        }
        path.pop();
        on_path.remove(s);
    }
    None
}

fn dfs(
    space: &FiniteSpace,
    neighbours: &[Vec<usize>],
    v: &ElemSet,
    z: &ElemSet,
    active_collider: &ElemSet,
    path: &mut Vec<usize>,
    on_path: &mut ElemSet,
) -> bool {
    let x = *path.last().expect("nonempty path");
    if v.contains(x) {
        return true;
    }
    for &y in &neighbours[x] {
        if on_path.contains(y) {
            continue;
        }
        if path.len() >= 2 {
            // x becomes interior: check it against its two fence neighbours.
            let prev = path[path.len() - 2];
            let collider = space.lt(x, prev) && space.lt(x, y);
            let ok = if collider { active_collider.contains(x) } else { !z.contains(x) };
            if !ok {
                continue;
            }
        }
        path.push(y);
        on_path.insert(y);
        if dfs(space, neighbours, v, z, active_collider, path, on_path) {
            return true;
        }
        path.pop();
        on_path.remove(y);
    }
    false
}

fn triple<S: AsRef<str>>(space: &FiniteSpace, u: &[S], v: &[S], z: &[S]) -> Result<[ElemSet; 3], CausalError> {
    space.require_t0()?;
    let sets = [space.set_of(u)?, space.set_of(v)?, space.set_of(z)?];
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if let Some(x) = a.intersection(b).first() {
                return Err(CausalError::Overlap(space.label(x).to_owned()));
            }
        }
    }
    Ok(sets)
}

/// Topological conditional independence of `U` and `V` given `Z`.
pub fn tci<S: AsRef<str>>(space: &FiniteSpace, u: &[S], v: &[S], z: &[S]) -> Result<bool, CausalError> {
    let [u, v, z] = triple(space, u, v, z)?;
    Ok(d_separated(space, &u, &v, &z))
}

/// Like [`tci`], also returning an unblocked fence (as labels) when the sets
/// are not separated.
pub fn tci_fence<S: AsRef<str>>(
    space: &FiniteSpace,
    u: &[S],
    v: &[S],
    z: &[S],
) -> Result<(bool, Option<Vec<String>>), CausalError> {
    let [u, v, z] = triple(space, u, v, z)?;
    let sep = d_separated(space, &u, &v, &z);
    let fence = if sep {
        None
    } else {
        let f = active_fence(space, &u, &v, &z).expect("an active trail implies an active fence");
        Some(f.into_iter().map(|i| space.label(i).to_owned()).collect())
    };
    Ok((sep, fence))
}
