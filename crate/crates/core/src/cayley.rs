//! Labeled undirected graphs and Cayley graphs `C(Γ, S)` over finite Abelian groups.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GeneratorSet, GroupElement, GroupSpec};

/// Distance reported by BFS for vertices in another component.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub label: u32,
}

/// Simple undirected graph whose edges carry a generator label.
///
/// Edges are stored with `u < v`; an edge's index in [`LabeledGraph::edges`]
/// is the key colorings use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    // (neighbor, edge index)
    incidence: Vec<(u32, u32)>,
}

/// Serialized form `{"n": .., "edges": [[u, v, label], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub n: usize,
    pub edges: Vec<[u32; 3]>,
}

impl LabeledGraph {
    /// Rejects self-loops, out-of-range endpoints and repeated undirected edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32, u32)>) -> Result<Self> {
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (a, b, label) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            let (u, v) = (a.min(b), a.max(b));
            if v as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: v as u64, n: n as u64 });
            }
            if seen.insert((u, v), out.len()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
            out.push(Edge { u, v, label });
        }
        Ok(Self::from_edges(n, out))
    }

    fn from_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut degree = vec![0usize; n + 1];
        for e in &edges {
            degree[e.u as usize + 1] += 1;
            degree[e.v as usize + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut fill = offsets.clone();
        let mut incidence = vec![(0, 0); 2 * edges.len()];
        for (idx, e) in edges.iter().enumerate() {
            incidence[fill[e.u as usize]] = (e.v, idx as u32);
            fill[e.u as usize] += 1;
            incidence[fill[e.v as usize]] = (e.u, idx as u32);
            fill[e.v as usize] += 1;
        }
        Self { n, edges, offsets, incidence }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(neighbor, edge index)` pairs incident to `v`.
    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        &self.incidence[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn edge_between(&self, u: u32, v: u32) -> Option<u32> {
        self.neighbors(u).iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    /// Unweighted distances from `source`; [`UNREACHABLE`] marks other components.
    pub fn bfs_distances(&self, source: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        dist[source as usize] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            for &(y, _) in self.neighbors(x) {
                if dist[y as usize] == UNREACHABLE {
                    dist[y as usize] = dx + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Eccentricity of `source`, or an error when some vertex is unreachable.
    pub fn eccentricity(&self, source: u32) -> Result<u32> {
        let dist = self.bfs_distances(source);
        if dist.contains(&UNREACHABLE) {
            return Err(Error::Disconnected);
        }
        Ok(dist.into_iter().max().unwrap_or(0))
    }

    /// Maximum distance over all pairs.
    pub fn diameter(&self) -> Result<u32> {
        (0..self.n as u32).try_fold(0, |acc, s| Ok(acc.max(self.eccentricity(s)?)))
    }

    pub fn export(&self) -> GraphExport {
        GraphExport { n: self.n, edges: self.edges.iter().map(|e| [e.u, e.v, e.label]).collect() }
    }

    pub fn from_export(export: &GraphExport) -> Result<Self> {
        Self::new(export.n, export.edges.iter().map(|&[u, v, l]| (u, v, l)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.export()).expect("graph export is always serializable")
    }

    /// Graphviz rendering; `label` carries the generator index.
    pub fn to_dot(&self) -> String {
        self.to_dot_with(|idx| format!("label={}", self.edges[idx].label))
    }

    pub(crate) fn to_dot_with(&self, attrs: impl Fn(usize) -> String) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (idx, e) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "  {} -- {} [{}];", e.u, e.v, attrs(idx));
        }
        out.push_str("}\n");
        out
    }
}

/// Cayley graph of a finite Abelian group together with its generator pairs.
///
/// Vertex ids are mixed-radix ranks of group elements (identity = 0). Label
/// `i` marks the edges `{x, x + a_i}` where `a_i = generators()[i]` is the
/// canonical representative of the `i`-th inverse pair.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    group: GroupSpec,
    generators: Vec<GroupElement>,
    graph: LabeledGraph,
}

/// Builds `C(Γ, S)`. `S` must be inverse-closed; pairs are labeled in order of
/// first occurrence in `S`.
pub fn build_cayley(group: &GroupSpec, gens: &GeneratorSet) -> Result<CayleyGraph> {
    if !gens.is_inverse_closed() {
        return Err(Error::NotInverseClosed);
    }
    let generators = gens.pair_representatives(group);
    let n = group.order() as usize;
    let mut edges = Vec::new();
    for (label, a) in generators.iter().enumerate() {
        let involution = group.element_order(a) == 2;
        for x in 0..n {
            let y = group.index_of(&group.add_unchecked(&group.element_at(x), a));
            // An order-2 generator reaches each edge from both endpoints.
            if involution && y < x {
                continue;
            }
            edges.push(Edge { u: x.min(y) as u32, v: x.max(y) as u32, label: label as u32 });
        }
    }
    let graph = LabeledGraph::from_edges(n, edges);
    Ok(CayleyGraph { group: group.clone(), generators, graph })
}

impl CayleyGraph {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Canonical representative of each generator pair, indexed by label.
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }

    pub fn label_of(&self, a: &GroupElement) -> Option<usize> {
        let rep = self.group.pair_representative(a);
        self.generators.iter().position(|g| *g == rep)
    }

    pub fn generator_order(&self, label: usize) -> u64 {
        self.group.element_order(&self.generators[label])
    }

    pub fn vertex_of(&self, g: &GroupElement) -> u32 {
        self.group.index_of(g) as u32
    }

    /// Neighbor of `x` along `+a_label`.
    pub fn step(&self, x: u32, label: usize) -> u32 {
        let y = self.group.add_unchecked(&self.group.element_at(x as usize), &self.generators[label]);
        self.group.index_of(&y) as u32
    }

    /// Diameter from the eccentricity of the identity; Cayley graphs are
    /// vertex-transitive so every vertex has the same eccentricity.
    pub fn diameter(&self) -> Result<u32> {
        self.graph.eccentricity(0)
    }
}

/// `Σ_{a ∈ S*} ⌊|a|/2⌋` for an independent minimal generating set `S*`
/// (one element per inverse pair): the diameter of `C(Γ, S* ∪ (S*)⁻¹)`.
pub fn theoretical_diameter(group: &GroupSpec, basis: &GeneratorSet) -> Result<u64> {
    group.check_independent_basis(basis)?;
    Ok(basis.pair_representatives(group).iter().map(|a| group.element_order(a) / 2).sum())
}
