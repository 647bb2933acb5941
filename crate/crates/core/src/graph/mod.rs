//! Simple undirected graphs with sorted adjacency lists, plus the path and
//! vertex-set machinery the Hamiltonicity engines share.

mod cycle;
pub mod io;
mod path;
mod set;

pub use cycle::{verify_hamilton_cycle, Cycle, CycleDefect, Verdict};
pub use path::{components_on, dif, interior, PathError, PathState};
pub use set::VertexSet;

use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
}

/// How [`Graph::edges_between`] counts edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeCount {
    /// Ordered pairs `(a, b)` with `a` in A and `b` in B; an edge inside
    /// `A ∩ B` contributes twice. This is the convention of the mixing lemma.
    Ordered,
    /// Unordered edges with one end in A and the other in B, each counted once.
    Single,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: 0 }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, edges: edges.len() })
    }

    /// Builds a graph, silently dropping loops and repeated edges.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge {u}-{v} out of range for n = {n}");
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut total = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            total += list.len();
        }
        Graph { adj, edges: total / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.edges as f64 / self.n() as f64
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.adj[v].iter().filter(|&&w| set.contains(w)).count()
    }

    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet, mode: EdgeCount) -> usize {
        match mode {
            EdgeCount::Ordered => a.iter().map(|u| self.degree_into(u, b)).sum(),
            EdgeCount::Single => self
                .edges()
                .filter(|&(u, v)| {
                    (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u))
                })
                .count(),
        }
    }

    /// Edges with both ends in `a`, each counted once.
    pub fn edges_within(&self, a: &VertexSet) -> usize {
        self.edges_between(a, a, EdgeCount::Ordered) / 2
    }

    pub fn induced_min_degree(&self, set: &VertexSet) -> Option<usize> {
        set.iter().map(|v| self.degree_into(v, set)).min()
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && index[w] > i).then(|| (i, index[w])))
        });
        Graph::from_edges_dedup(vertices.len(), edges.collect::<Vec<_>>())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }
}
