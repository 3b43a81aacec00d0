//! Deterministic structural systems with possible feedback.
//!
//! Each variable is set by `value = f(inputs, noise)`. For a fixed noise
//! assignment the closed-loop equations are solved by checking every joint
//! assignment.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::joint::bump;
use super::CausalError;

/// Largest assignment space searched by the solver.
pub const SOLVE_CAP: u128 = 1_000_000;

/// Mechanism of one variable: receives the values of its inputs (in the
/// declared order) and its own noise value.
pub type Mechanism = Box<dyn Fn(&[usize], usize) -> usize + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<usize>),
    NoSolution,
    Multiple(usize),
}

struct Var {
    name: String,
    domain: usize,
    noise: usize,
    inputs: Vec<usize>,
    mechanism: Option<Mechanism>,
}

#[derive(Default)]
pub struct StructuralSystem {
    vars: Vec<Var>,
    index: BTreeMap<String, usize>,
}

impl core::fmt::Debug for StructuralSystem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut m = f.debug_map();
        for v in &self.vars {
            m.entry(&v.name, &v.inputs);
        }
        m.finish()
    }
}

impl StructuralSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a variable with values `0..domain` and noise `0..noise`.
    pub fn add_variable(&mut self, name: &str, domain: usize, noise: usize) -> Result<usize, CausalError> {
        if domain == 0 || noise == 0 {
            return Err(CausalError::EmptyDomain(name.to_owned()));
        }
        if self.index.contains_key(name) {
            return Err(crate::space::SpaceError::DuplicateElement(name.to_owned()).into());
        }
        let i = self.vars.len();
        self.index.insert(name.to_owned(), i);
        self.vars.push(Var {
            name: name.to_owned(),
            domain,
            noise,
            inputs: Vec::new(),
            mechanism: None,
        });
        Ok(i)
    }

    pub fn set_mechanism(
        &mut self,
        name: &str,
        inputs: &[&str],
        f: impl Fn(&[usize], usize) -> usize + Send + Sync + 'static,
    ) -> Result<(), CausalError> {
        let look = |s: &str| {
            self.index
                .get(s)
                .copied()
                .ok_or_else(|| CausalError::from(crate::space::SpaceError::UnknownElement(s.to_owned())))
        };
        let i = look(name)?;
        let inputs = inputs.iter().map(|s| look(s)).collect::<Result<Vec<_>, _>>()?;
        let v = &mut self.vars[i];
        v.inputs = inputs;
        v.mechanism = Some(Box::new(f));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.vars.iter().map(|v| v.name.as_str()).collect()
    }

    fn mechanisms(&self) -> Result<Vec<&Mechanism>, CausalError> {
        self.vars
            .iter()
            .map(|v| v.mechanism.as_ref().ok_or_else(|| CausalError::MissingMechanism(v.name.clone())))
            .collect()
    }

    fn eval(&self, mechs: &[&Mechanism], x: usize, a: &[usize], noise: usize, buf: &mut Vec<usize>) -> usize {
        buf.clear();
        buf.extend(self.vars[x].inputs.iter().map(|&i| a[i]));
        (mechs[x])(buf, noise)
    }

    fn acyclic(&self, deps: &[Vec<usize>]) -> bool {
        let n = self.len();
        let mut done = vec![false; n];
        let mut progress = true;
        while progress {
            progress = false;
            for x in 0..n {
                if !done[x] && deps[x].iter().all(|&d| done[d]) {
                    done[x] = true;
                    progress = true;
                }
            }
        }
        done.iter().all(|&d| d)
    }

    /// An order exists in which every variable's inputs come first.
    pub fn is_recursive(&self) -> bool {
        let deps: Vec<Vec<usize>> = self.vars.iter().map(|v| v.inputs.clone()).collect();
        self.acyclic(&deps)
    }

    fn space_size(&self) -> u128 {
        self.vars.iter().map(|v| v.domain as u128).product()
    }

    /// All fixed points of the closed-loop equations for one noise
    /// assignment.
    pub fn solve_closed_loop(&self, noise: &[usize]) -> Result<Solution, CausalError> {
        if noise.len() != self.len() {
            return Err(CausalError::Arity {
                expected: self.len(),
                got: noise.len(),
            });
        }
        let size = self.space_size();
        if size > SOLVE_CAP {
            return Err(CausalError::SizeCap {
                what: "assignment space",
                size,
                cap: SOLVE_CAP,
            });
        }
        let mechs = self.mechanisms()?;
        let dims: Vec<usize> = self.vars.iter().map(|v| v.domain).collect();
        let mut a = vec![0usize; self.len()];
        let mut buf = Vec::new();
        let mut found: Option<Vec<usize>> = None;
        let mut count = 0;
        loop {
            if (0..self.len()).all(|x| self.eval(&mechs, x, &a, noise[x], &mut buf) == a[x]) {
                count += 1;
                if found.is_none() {
                    found = Some(a.clone());
                }
            }
            if !bump(&mut a, &dims) {
                break;
            }
        }
        Ok(match (count, found) {
            (1, Some(s)) => Solution::Unique(s),
            (0, _) => Solution::NoSolution,
            (k, _) => Solution::Multiple(k),
        })
    }

    /// Every noise assignment yields exactly one solution.
    pub fn is_measurably_solvable(&self) -> Result<bool, CausalError> {
        let dims: Vec<usize> = self.vars.iter().map(|v| v.noise).collect();
        let total: u128 = dims.iter().map(|&d| d as u128).product::<u128>() * self.space_size();
        if total > SOLVE_CAP {
            return Err(CausalError::SizeCap {
                what: "noise and assignment space",
                size: total,
                cap: SOLVE_CAP,
            });
        }
        let mut w = vec![0usize; self.len()];
        loop {
            if !matches!(self.solve_closed_loop(&w)?, Solution::Unique(_)) {
                return Ok(false);
            }
            if !bump(&mut w, &dims) {
                return Ok(true);
            }
        }
    }

    /// Inputs that actually change a mechanism's output for some values of
    /// the other inputs and the noise.
    pub fn effective_inputs(&self) -> Result<Vec<Vec<usize>>, CausalError> {
        let mechs = self.mechanisms()?;
        let mut out = Vec::with_capacity(self.len());
        for (x, v) in self.vars.iter().enumerate() {
            let dims: Vec<usize> = v.inputs.iter().map(|&i| self.vars[i].domain).collect();
            let local: u128 = dims.iter().map(|&d| d as u128).product::<u128>() * v.noise as u128;
            if local > SOLVE_CAP {
                return Err(CausalError::SizeCap {
                    what: "mechanism table",
                    size: local,
                    cap: SOLVE_CAP,
                });
            }
            let mut used = Vec::new();
            for (k, &inp) in v.inputs.iter().enumerate() {
                if used.contains(&inp) {
                    continue;
                }
                let mut vals = vec![0usize; dims.len()];
                'search: loop {
                    for w in 0..v.noise {
                        let base = (mechs[x])(&vals, w);
                        let mut alt = vals.clone();
                        for val in 0..dims[k] {
                            alt[k] = val;
                            if (mechs[x])(&alt, w) != base {
                                used.push(inp);
                                break 'search;
                            }
                        }
                    }
                    if !bump(&mut vals, &dims) {
                        break;
                    }
                }
            }
            used.sort_unstable();
            out.push(used);
        }
        Ok(out)
    }

    /// The effective dependence graph is acyclic, so one resolution order
    /// solves the system for every noise value.
    pub fn is_stable(&self) -> Result<bool, CausalError> {
        Ok(self.acyclic(&self.effective_inputs()?))
    }
}
