//! Graphical models embedded as finite spaces.
//!
//! A DAG becomes the T0 space in which `U_x` is `x` with its descendants.
//! Chain graphs give preorders (undirected edges make their ends
//! equivalent), and each hyperedge of a latent-variable model adds a fresh
//! common cause of its members, a local non-Hausdorff cone.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::set::ElemSet;
use crate::space::{FiniteSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("directed cycle through `{0}`")]
    Cycle(String),
    #[error("`{0}` and `{1}` are joined by both a directed and an undirected edge")]
    MixedEdge(String, String),
    #[error("hyperedge {0} needs at least two members")]
    SmallHyperedge(usize),
    #[error("{got} latent names given for {expected} hyperedges")]
    LatentCount { expected: usize, got: usize },
    #[error("latent name `{0}` clashes with an existing vertex")]
    LatentClash(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

fn index_vertices<S: AsRef<str>>(vertices: &[S]) -> Result<(Vec<String>, BTreeMap<String, usize>), GraphError> {
    let mut labels = Vec::with_capacity(vertices.len());
    let mut index = BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        let v = v.as_ref();
        if index.insert(v.to_owned(), i).is_some() {
            return Err(GraphError::DuplicateVertex(v.to_owned()));
        }
        labels.push(v.to_owned());
    }
    Ok((labels, index))
}

fn resolve<S: AsRef<str>>(index: &BTreeMap<String, usize>, edges: &[(S, S)]) -> Result<Vec<(usize, usize)>, GraphError> {
    edges
        .iter()
        .map(|(a, b)| {
            let look = |v: &S| {
                index
                    .get(v.as_ref())
                    .copied()
                    .ok_or_else(|| GraphError::UnknownVertex(v.as_ref().to_owned()))
            };
            Ok((look(a)?, look(b)?))
        })
        .collect()
}

/// A directed acyclic graph; `(u, v)` means `u` causes `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    vertices: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl Dag {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let (vertices, index) = index_vertices(vertices)?;
        let edges = resolve(&index, edges)?;
        Self::from_indices(vertices, edges)
    }

    /// From vertex labels and index edges, checking acyclicity.
    pub fn from_indices(vertices: Vec<String>, mut edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let n = vertices.len();
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        if let Some(&(a, _)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(GraphError::UnknownVertex(format!("#{a}")));
        }
        edges.sort_unstable();
        edges.dedup();
        let dag = Self { vertices, index, edges };
        if let Some(v) = dag.cycle_vertex() {
            return Err(GraphError::Cycle(dag.vertices[v].clone()));
        }
        Ok(dag)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Sorted, deduplicated index edges.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].as_str(), self.vertices[b].as_str()))
            .collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a, b)).is_ok()
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.0 == v).map(|e| e.1)
    }

    pub fn parents(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.1 == v).map(|e| e.0)
    }

    fn cycle_vertex(&self) -> Option<usize> {
        let order = self.kahn();
        if order.len() == self.len() {
            None
        } else {
            (0..self.len()).find(|v| !order.contains(v))
        }
    }

    fn kahn(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for &(_, b) in &self.edges {
            indeg[b] += 1;
        }
        let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            out.push(v);
            let mut next: Vec<usize> = Vec::new();
            for c in self.children(v) {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    next.push(c);
                }
            }
            ready.extend(next.into_iter().rev());
            ready.sort_unstable_by(|a, b| b.cmp(a));
        }
        out
    }

    /// Causes before effects, smallest index first among the ready vertices.
    pub fn topological_order(&self) -> Vec<usize> {
        self.kahn()
    }

    /// `desc[v]` holds `v` and every vertex reachable from it.
    pub fn descendant_sets(&self) -> Vec<ElemSet> {
        let n = self.len();
        let mut desc: Vec<ElemSet> = (0..n).map(|v| ElemSet::singleton(n, v)).collect();
        for &v in self.kahn().iter().rev() {
            for c in self.children(v).collect::<Vec<_>>() {
                let dc = desc[c].clone();
                desc[v].union_with(&dc);
            }
        }
        desc
    }

    pub fn transitive_closure(&self) -> Dag {
        let desc = self.descendant_sets();
        let edges = (0..self.len())
            .flat_map(|v| desc[v].iter().filter(move |&w| w != v).map(move |w| (v, w)))
            .collect();
        self.with_edges(edges)
    }

    /// Keeps the edges not implied by a longer path.
    pub fn transitive_reduction(&self) -> Dag {
        let desc = self.descendant_sets();
        let closure: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|v| desc[v].iter().filter(move |&w| w != v).map(move |w| (v, w)))
            .collect();
        let edges = closure
            .iter()
            .copied()
            .filter(|&(a, b)| {
                !desc[a]
                    .iter()
                    .any(|m| m != a && m != b && desc[m].contains(b))
            })
            .collect();
        self.with_edges(edges)
    }

    fn with_edges(&self, mut edges: Vec<(usize, usize)>) -> Dag {
        edges.sort_unstable();
        edges.dedup();
        Dag {
            vertices: self.vertices.clone(),
            index: self.index.clone(),
            edges,
        }
    }
}

/// `x <= y` iff `x` is `y` or one of its descendants.
pub fn dag_to_space(dag: &Dag) -> FiniteSpace {
    FiniteSpace::from_down_sets(dag.vertices.clone(), dag.descendant_sets())
}

/// The Hasse diagram of a T0 space as a DAG, oriented from each point to the
/// points it covers (cause to effect).
pub fn space_to_dag(space: &FiniteSpace) -> Result<Dag, GraphError> {
    let h = HasseDiagram::from_space(space)?;
    Ok(Dag {
        vertices: h.vertices,
        index: space
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect(),
        edges: h.cover_edges,
    })
}

/// Cover relation of a T0 space: `(x, y)` when `y < x` with nothing between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    vertices: Vec<String>,
    cover_edges: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn from_space(space: &FiniteSpace) -> Result<Self, GraphError> {
        if let Some((a, b)) = space.t0_violation() {
            return Err(SpaceError::NotT0(space.label(a).to_owned(), space.label(b).to_owned()).into());
        }
        let mut cover_edges: Vec<(usize, usize)> = (0..space.len())
            .flat_map(|x| space.lower_covers(x).iter().map(move |y| (x, y)).collect::<Vec<_>>())
            .collect();
        cover_edges.sort_unstable();
        Ok(Self {
            vertices: space.labels().to_vec(),
            cover_edges,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }

    pub fn edge_labels(&self) -> Vec<(&str, &str)> {
        self.cover_edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].as_str(), self.vertices[b].as_str()))
            .collect()
    }

    pub fn to_dag(&self) -> Dag {
        Dag::from_indices(self.vertices.clone(), self.cover_edges.clone()).expect("cover relations are acyclic")
    }

    pub fn to_space(&self) -> FiniteSpace {
        dag_to_space(&self.to_dag())
    }
}

/// A graph with directed and undirected edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainGraph {
    vertices: Vec<String>,
    directed: Vec<(usize, usize)>,
    undirected: Vec<(usize, usize)>,
}

impl ChainGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], directed: &[(S, S)], undirected: &[(S, S)]) -> Result<Self, GraphError> {
        let (vertices, index) = index_vertices(vertices)?;
        let mut directed = resolve(&index, directed)?;
        let mut undirected: Vec<(usize, usize)> = resolve(&index, undirected)?
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        directed.sort_unstable();
        directed.dedup();
        undirected.sort_unstable();
        undirected.dedup();
        for &(a, b) in &directed {
            if undirected.binary_search(&(a.min(b), a.max(b))).is_ok() {
                return Err(GraphError::MixedEdge(vertices[a].clone(), vertices[b].clone()));
            }
        }
        Ok(Self {
            vertices,
            directed,
            undirected,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn directed(&self) -> &[(usize, usize)] {
        &self.directed
    }

    pub fn undirected(&self) -> &[(usize, usize)] {
        &self.undirected
    }
}

/// `x <= y` iff `y` is reached from `x` by steps that each follow a directed
/// edge backwards (from effect to cause) or cross an undirected edge.
pub fn chain_graph_to_space(cg: &ChainGraph) -> FiniteSpace {
    let n = cg.vertices.len();
    // up[x] collects the points reachable from x; then U_y = {x : y ∈ up[x]}.
    let mut step: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &cg.directed {
        step[b].push(a);
    }
    for &(a, b) in &cg.undirected {
        step[a].push(b);
        step[b].push(a);
    }
    let up: Vec<ElemSet> = (0..n)
        .map(|x| {
            let mut seen = ElemSet::singleton(n, x);
            let mut stack = vec![x];
            while let Some(v) = stack.pop() {
                for &w in &step[v] {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect();
    FiniteSpace::from_leq_fn(cg.vertices.clone(), |x, y| up[x].contains(y))
}

/// A DAG over observables plus latent common causes, one per hyperedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperModel {
    base: Dag,
    hyperedges: Vec<ElemSet>,
    latents: Vec<String>,
}

impl HyperModel {
    /// Latents are named `*1`, `*2`, ... unless `latent_names` is given.
    pub fn new<S: AsRef<str>>(
        base: Dag,
        hyperedges: &[Vec<S>],
        latent_names: Option<&[S]>,
    ) -> Result<Self, GraphError> {
        let n = base.len();
        let mut sets = Vec::with_capacity(hyperedges.len());
        for (i, h) in hyperedges.iter().enumerate() {
            let mut s = ElemSet::empty(n);
            for v in h {
                let v = v.as_ref();
                let idx = base.index_of(v).ok_or_else(|| GraphError::UnknownVertex(v.to_owned()))?;
                s.insert(idx);
            }
            if s.len() < 2 {
                return Err(GraphError::SmallHyperedge(i));
            }
            sets.push(s);
        }
        let latents: Vec<String> = match latent_names {
            Some(names) => {
                if names.len() != sets.len() {
                    return Err(GraphError::LatentCount {
                        expected: sets.len(),
                        got: names.len(),
                    });
                }
                names.iter().map(|s| s.as_ref().to_owned()).collect()
            }
            None => (1..=sets.len()).map(|i| format!("*{i}")).collect(),
        };
        let mut seen: BTreeMap<&str, ()> = base.vertices.iter().map(|v| (v.as_str(), ())).collect();
        for l in &latents {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(GraphError::LatentClash(l.clone()));
            }
        }
        Ok(Self {
            base,
            hyperedges: sets,
            latents,
        })
    }

    pub fn base(&self) -> &Dag {
        &self.base
    }

    pub fn hyperedges(&self) -> &[ElemSet] {
        &self.hyperedges
    }

    pub fn latents(&self) -> &[String] {
        &self.latents
    }
}

/// Observables keep their minimal open sets; the latent of hyperedge `H` has
/// `U = {latent} ∪ ⋃_{v ∈ H} U_v`.
pub fn hyper_to_space(hm: &HyperModel) -> FiniteSpace {
    let base = hm.base.descendant_sets();
    let n0 = base.len();
    let n = n0 + hm.latents.len();
    let mut down: Vec<ElemSet> = base.iter().map(|u| u.resized(n)).collect();
    for (i, h) in hm.hyperedges.iter().enumerate() {
        let mut u = ElemSet::singleton(n, n0 + i);
        for v in h.iter() {
            u.union_with(&down[v]);
        }
        down.push(u);
    }
    let mut labels = hm.base.vertices.clone();
    labels.extend(hm.latents.iter().cloned());
    FiniteSpace::from_down_sets(labels, down)
}

/// Length of the longest chain ending at each point (1 for minimal points).
pub fn levels(space: &FiniteSpace) -> Result<Vec<usize>, GraphError> {
    if let Some((a, b)) = space.t0_violation() {
        return Err(SpaceError::NotT0(space.label(a).to_owned(), space.label(b).to_owned()).into());
    }
    let n = space.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| space.min_open(x).len());
    let mut level = vec![0usize; n];
    for &x in &order {
        level[x] = 1 + space
            .min_open(x)
            .iter()
            .filter(|&y| y != x)
            .map(|y| level[y])
            .max()
            .unwrap_or(0);
    }
    Ok(level)
}

pub fn height(space: &FiniteSpace) -> Result<usize, GraphError> {
    Ok(levels(space)?.into_iter().max().unwrap_or(0))
}

/// Level antichains, lowest level first; there are exactly `height` parts.
pub fn antichain_partition(space: &FiniteSpace) -> Result<Vec<ElemSet>, GraphError> {
    let level = levels(space)?;
    let h = level.iter().copied().max().unwrap_or(0);
    let n = space.len();
    let parts: Vec<ElemSet> = (1..=h)
        .map(|l| ElemSet::from_indices(n, (0..n).filter(|&x| level[x] == l)))
        .collect();
    debug_assert!(parts.iter().all(|p| p.iter().all(|x| p.iter().all(|y| x == y || !space.comparable(x, y)))));
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_reduction() {
        let d = Dag::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let c = d.transitive_closure();
        assert!(c.has_edge(0, 2));
        assert_eq!(c.transitive_reduction(), d);
        assert!(Dag::new(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Dag::new(&["a"], &[("a", "a")]).is_err());
    }

    #[test]
    fn covid_edge() {
        let d = Dag::new(&["AZV", "VITT"], &[("AZV", "VITT")]).unwrap();
        let s = dag_to_space(&d);
        assert_eq!(s.labels_of(s.min_open(0)), vec!["AZV", "VITT"]);
        assert_eq!(s.labels_of(s.min_open(1)), vec!["VITT"]);
        assert_eq!(space_to_dag(&s).unwrap(), d);
        assert_eq!(d.transitive_closure(), d);
    }

    #[test]
    fn collider_dual_matches_ancestor_opens() {
        let d = Dag::new(&["a", "b", "c"], &[("b", "a"), ("c", "a")]).unwrap();
        let o = dag_to_space(&d).opposite();
        let expect = FiniteSpace::from_open_sets(&["a", "b", "c"], &[vec!["b"], vec!["c"], vec!["b", "c"]]).unwrap();
        assert_eq!(o, expect);
    }

    #[test]
    fn chain_graph_merges_undirected_ends() {
        let cg = ChainGraph::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")], &[("b", "c")]).unwrap();
        let s = chain_graph_to_space(&cg);
        assert_eq!(s.min_open(1), s.min_open(2));
        assert_eq!(s.labels_of(s.min_open(0)), vec!["a", "b", "c"]);
        assert!(!s.is_t0());
        let (q, _) = crate::homotopy::t0_quotient(&s);
        assert_eq!(q.len(), 2);
        assert!(q.is_t0() && q.is_connected());
        assert!(ChainGraph::new(&["a", "b"], &[("a", "b")], &[("b", "a")]).is_err());
    }

    #[test]
    fn hyperedge_over_discrete_is_a_cone() {
        let base = Dag::new::<&str>(&["a", "b", "c"], &[]).unwrap();
        let hm = HyperModel::new(base, &[vec!["a", "b", "c"]], None).unwrap();
        let s = hyper_to_space(&hm);
        assert_eq!(s.labels_of(s.min_open(3)), vec!["a", "b", "c", "*1"]);
        assert!(s.subspace(&["a", "b", "c"]).unwrap().is_t1());
        assert!(crate::homotopy::is_contractible(&s));
    }

    #[test]
    fn antichains_of_a_chain_and_discrete_space() {
        let c = FiniteSpace::chain(&["1", "2", "3", "4"]).unwrap();
        assert_eq!(height(&c).unwrap(), 4);
        assert!(antichain_partition(&c).unwrap().iter().all(|p| p.len() == 1));
        let d = FiniteSpace::discrete(&["1", "2", "3", "4", "5"]).unwrap();
        let parts = antichain_partition(&d).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].len(), 5);
    }
}
