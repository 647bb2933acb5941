use super::LinearForest;
use crate::digraph::Digraph;
use crate::graph::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractedVertex {
    /// Covering path `i` fused into one vertex.
    Path(usize),
    Plain(usize),
}

/// Random orientation of `g[y]` with each covering path contracted to a
/// vertex `z_i` entered through its tail `z⁻_i` and left through its head
/// `z⁺_i`. Local indices list the contracted paths first.
#[derive(Debug, Clone)]
pub struct ContractedDigraph {
    pub digraph: Digraph,
    pub nodes: Vec<ContractedVertex>,
    /// Covering paths oriented from `z⁻_i` to `z⁺_i`.
    pub paths: Vec<Vec<usize>>,
    pub seed: u64,
}

impl ContractedDigraph {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn head(&self, i: usize) -> usize {
        *self.paths[i].last().unwrap()
    }

    pub fn tail(&self, i: usize) -> usize {
        self.paths[i][0]
    }

    /// Replaces every contracted vertex of each directed path by its
    /// covering path.
    pub fn uncontract(&self, paths: &[Vec<usize>]) -> Vec<Vec<usize>> {
        paths
            .iter()
            .map(|p| {
                p.iter()
                    .flat_map(|&i| match self.nodes[i] {
                        ContractedVertex::Path(j) => self.paths[j].clone(),
                        ContractedVertex::Plain(v) => vec![v],
                    })
                    .collect()
            })
            .collect()
    }
}

/// Builds the contracted digraph. Head choices are drawn first, one per
/// covering path, then one orientation per plain edge in edge order.
pub fn contract_and_orient(g: &Graph, y: &VertexSet, cover: &LinearForest, seed: u64) -> ContractedDigraph {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let paths: Vec<Vec<usize>> = cover
        .paths
        .iter()
        .map(|p| {
            let mut q = p.clone();
            if rng.gen::<bool>() {
                q.reverse();
            }
            q
        })
        .collect();
    let mut nodes: Vec<ContractedVertex> = (0..paths.len()).map(ContractedVertex::Path).collect();
    let mut local = vec![usize::MAX; n];
    for v in y.iter().filter(|&v| !cover.cover.contains(v)) {
        local[v] = nodes.len();
        nodes.push(ContractedVertex::Plain(v));
    }
    let mut head_of = vec![usize::MAX; n];
    let mut tail_of = vec![usize::MAX; n];
    for (i, p) in paths.iter().enumerate() {
        head_of[*p.last().unwrap()] = i;
        tail_of[p[0]] = i;
    }
    let mut arcs = Vec::new();
    for (u, v) in g.edges() {
        if local[u] != usize::MAX && local[v] != usize::MAX {
            arcs.push(if rng.gen::<bool>() { (local[u], local[v]) } else { (local[v], local[u]) });
        }
    }
    for (i, p) in paths.iter().enumerate() {
        let head = *p.last().unwrap();
        for &w in g.neighbors(head) {
            if tail_of[w] != usize::MAX && tail_of[w] != i {
                arcs.push((i, tail_of[w]));
            }
            if local[w] != usize::MAX {
                arcs.push((i, local[w]));
            }
        }
        for &w in g.neighbors(p[0]) {
            if local[w] != usize::MAX {
                arcs.push((local[w], i));
            }
        }
    }
    let digraph = Digraph::from_arcs(nodes.len(), arcs);
    ContractedDigraph { digraph, nodes, paths, seed }
}
