//! Immutable undirected simple graphs in compressed adjacency form, vertex
//! subsets and the counting primitives every other module is built on.
//!
//! Vertex ids are dense integers from 0. Graphs are canonical: equal edge
//! multisets produce identical representations regardless of input order.

use crate::rational::Rat;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self loop ({0}, {0})")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("vertex {v} out of range for n={n}")]
    VertexOutOfRange { v: u32, n: usize },
    #[error("empty vertex set")]
    EmptySet,
    #[error("count {count} exceeds vertex count {n}")]
    CountTooLarge { count: usize, n: usize },
}

/// Immutable undirected simple graph with sorted per-vertex neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<u32>>,
    m: usize,
    max_degree: usize,
}

impl Graph {
    /// Build a canonical graph from an edge list. Input order is irrelevant;
    /// endpoints may come in either orientation.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a as usize >= n {
                return Err(GraphError::VertexOutOfRange { v: a, n });
            }
            if b as usize >= n {
                return Err(GraphError::VertexOutOfRange { v: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(w[0].min(v as u32), w[0].max(v as u32)));
            }
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Graph {
            n,
            adjacency,
            m: edges.len(),
            max_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count, each undirected edge counted once.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Exact density m/n. The degenerate n=0 graph reports 0.
    pub fn density(&self) -> Rat {
        if self.n == 0 {
            Rat::from_integer(0)
        } else {
            Rat::new(self.m as i64, self.n as i64)
        }
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.n as u32
    }

    /// All edges as (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adjacency.iter().any(|l| l.is_empty())
    }

    fn check_set(&self, w: &VertexSet) -> Result<(), GraphError> {
        if let Some(&v) = w.members().last() {
            if v as usize >= self.n {
                return Err(GraphError::VertexOutOfRange { v, n: self.n });
            }
        }
        Ok(())
    }
}

/// A sorted, duplicate-free subset of the vertices of some graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexSet {
    members: Vec<u32>,
}

impl VertexSet {
    pub fn new(mut ids: Vec<u32>) -> VertexSet {
        ids.sort_unstable();
        ids.dedup();
        VertexSet { members: ids }
    }

    pub fn empty() -> VertexSet {
        VertexSet { members: Vec::new() }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }

    /// Complement within a graph on n vertices.
    pub fn complement(&self, n: usize) -> VertexSet {
        let mut out = Vec::with_capacity(n - self.members.len());
        let mut it = self.members.iter().peekable();
        for v in 0..n as u32 {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                out.push(v);
            }
        }
        VertexSet { members: out }
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Edge counts of a subset W in one pass: edges inside W, edges leaving W,
/// edges meeting W, total degree of W and the external neighborhood N(W).
///
/// Identities: touching = within + boundary, volume = 2*within + boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetStats {
    pub within: usize,
    pub boundary: usize,
    pub touching: usize,
    pub volume: usize,
    pub ext_neighborhood: VertexSet,
}

pub fn subset_stats(g: &Graph, w: &VertexSet) -> Result<SubsetStats, GraphError> {
    g.check_set(w)?;
    let mut membership = vec![false; g.n()];
    for v in w.iter() {
        membership[v as usize] = true;
    }
    let mut within2 = 0usize; // within counted from both endpoints
    let mut boundary = 0usize;
    let mut volume = 0usize;
    let mut ext = Vec::new();
    let mut ext_seen = vec![false; g.n()];
    for v in w.iter() {
        volume += g.degree(v);
        for &u in g.neighbors(v) {
            if membership[u as usize] {
                within2 += 1;
            } else {
                boundary += 1;
                if !ext_seen[u as usize] {
                    ext_seen[u as usize] = true;
                    ext.push(u);
                }
            }
        }
    }
    let within = within2 / 2;
    Ok(SubsetStats {
        within,
        boundary,
        touching: within + boundary,
        volume,
        ext_neighborhood: VertexSet::new(ext),
    })
}

/// An induced subgraph together with its vertex relabeling. New ids are the
/// positions of the (sorted) members, so `vertex_map[new] = old` and the map
/// old -> new is recoverable by binary search.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertex_map: Vec<u32>,
}

impl InducedSubgraph {
    pub fn original_id(&self, new: u32) -> u32 {
        self.vertex_map[new as usize]
    }

    pub fn new_id(&self, old: u32) -> Option<u32> {
        self.vertex_map.binary_search(&old).ok().map(|i| i as u32)
    }

    /// Map a vertex set of the induced graph back to original ids.
    pub fn restore(&self, w: &VertexSet) -> VertexSet {
        VertexSet::new(w.iter().map(|v| self.original_id(v)).collect())
    }
}

pub fn induced_subgraph(g: &Graph, w: &VertexSet) -> Result<InducedSubgraph, GraphError> {
    if w.is_empty() {
        return Err(GraphError::EmptySet);
    }
    g.check_set(w)?;
    let vertex_map: Vec<u32> = w.members().to_vec();
    let mut new_of = vec![u32::MAX; g.n()];
    for (new, &old) in vertex_map.iter().enumerate() {
        new_of[old as usize] = new as u32;
    }
    let mut edges = Vec::new();
    for (new_u, &old_u) in vertex_map.iter().enumerate() {
        for &old_v in g.neighbors(old_u) {
            if old_v > old_u {
                let new_v = new_of[old_v as usize];
                if new_v != u32::MAX {
                    edges.push((new_u as u32, new_v));
                }
            }
        }
    }
    let graph = Graph::from_edges(vertex_map.len(), &edges).expect("induced edges are valid");
    Ok(InducedSubgraph { graph, vertex_map })
}

/// Delete all edges of the `count` highest-degree vertices, ties broken by
/// smaller id. Vertex ids are preserved (the removed vertices stay as
/// isolated shells); compact with [`induced_subgraph`] when needed.
pub fn trim_high_degree(g: &Graph, count: usize) -> Result<(Graph, VertexSet), GraphError> {
    if count > g.n() {
        return Err(GraphError::CountTooLarge { count, n: g.n() });
    }
    let mut order: Vec<u32> = (0..g.n() as u32).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let removed = VertexSet::new(order[..count].to_vec());
    let edges: Vec<(u32, u32)> = g
        .edges()
        .filter(|&(u, v)| !removed.contains(u) && !removed.contains(v))
        .collect();
    let trimmed = Graph::from_edges(g.n(), &edges).expect("subset of valid edges");
    Ok((trimmed, removed))
}

/// Connected components, ordered by decreasing size then smallest contained
/// id. Together they partition the vertex set.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut parts: Vec<VertexSet> = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n as u32 {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        stack.push(start);
        let mut part = Vec::new();
        while let Some(v) = stack.pop() {
            part.push(v);
            for &u in g.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        parts.push(VertexSet::new(part));
    }
    parts.sort_by_key(|p| (std::cmp::Reverse(p.len()), p.members()[0]));
    parts
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || connected_components(g).len() == 1
}
