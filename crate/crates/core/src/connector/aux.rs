use super::ConnectorError;
use crate::digraph::Digraph;
use crate::graph::{Graph, VertexSet};
use crate::pairs::PairList;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// What a vertex of the auxiliary digraph stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxVertex {
    /// The red vertex `x_i` of pair `i`.
    Pair(usize),
    /// A host vertex outside every pair.
    Outside(usize),
}

/// Randomly coloured auxiliary digraph of a graph and a pair list.
///
/// Local indices `0..m` are the pairs in order, followed by the outside
/// vertices in ascending order.
#[derive(Debug, Clone)]
pub struct AuxDigraph {
    pub digraph: Digraph,
    pub nodes: Vec<AuxVertex>,
    /// `red[i]` is `x_i`.
    pub red: Vec<usize>,
    /// `blue[i]` is `y_i`; equals `red[i]` for a single-vertex pair.
    pub blue: Vec<usize>,
    pub seed: u64,
    local: Vec<Option<usize>>,
}

impl AuxDigraph {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn pair_count(&self) -> usize {
        self.red.len()
    }

    /// Host vertex a local vertex is drawn at: `x_i` or the outside vertex.
    pub fn host_vertex(&self, i: usize) -> usize {
        match self.nodes[i] {
            AuxVertex::Pair(p) => self.red[p],
            AuxVertex::Outside(v) => v,
        }
    }

    /// Local index of a red or outside host vertex.
    pub fn local_of(&self, v: usize) -> Option<usize> {
        self.local.get(v).copied().flatten()
    }

    /// Lifts a directed path to host vertices: `y x` for each pair, with
    /// an outside start kept as itself.
    pub fn lift(&self, path: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * path.len());
        for &i in path {
            match self.nodes[i] {
                AuxVertex::Pair(p) => {
                    if self.blue[p] != self.red[p] {
                        out.push(self.blue[p]);
                    }
                    out.push(self.red[p]);
                }
                AuxVertex::Outside(v) => out.push(v),
            }
        }
        out
    }

    /// Joins two directed paths ending in adjacent red (or root) vertices
    /// into one host path from the first start to the second start.
    pub fn lift_pair(&self, first: &[usize], second: &[usize]) -> Vec<usize> {
        let mut out = self.lift(first);
        let mut back = self.lift(second);
        back.reverse();
        out.extend(back);
        out
    }
}

/// Colouring used for seed `seed`: `true` keeps the stored order `(x, y)`.
fn colouring(m: &PairList, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    m.as_slice().iter().map(|&(x, y)| x == y || rng.gen::<bool>()).collect()
}

/// Builds `H(G, M)` for the colouring drawn from `seed`. With a scope, only
/// outside vertices in the scope are kept.
pub fn build_aux(g: &Graph, m: &PairList, scope: Option<&VertexSet>, seed: u64) -> Result<AuxDigraph, ConnectorError> {
    let n = g.n();
    let in_m = m.vertices(n);
    if let Some(s) = scope {
        if let Some(v) = in_m.iter().find(|&v| !s.contains(v)) {
            return Err(ConnectorError::ScopeMissesPair(v));
        }
    }
    let keep = colouring(m, seed);
    let (red, blue): (Vec<usize>, Vec<usize>) =
        m.as_slice().iter().zip(&keep).map(|(&(x, y), &k)| if k { (x, y) } else { (y, x) }).unzip();
    let mut nodes: Vec<AuxVertex> = (0..m.len()).map(AuxVertex::Pair).collect();
    let mut local = vec![None; n];
    for (i, &x) in red.iter().enumerate() {
        local[x] = Some(i);
    }
    for v in 0..n {
        if !in_m.contains(v) && scope.is_none_or(|s| s.contains(v)) {
            local[v] = Some(nodes.len());
            nodes.push(AuxVertex::Outside(v));
        }
    }
    let mut arcs = Vec::new();
    for (j, &y) in blue.iter().enumerate() {
        for &u in g.neighbors(y) {
            if let Some(i) = local[u] {
                if i != j {
                    arcs.push((i, j));
                }
            }
        }
    }
    let digraph = Digraph::from_arcs(nodes.len(), arcs);
    Ok(AuxDigraph { digraph, nodes, red, blue, seed, local })
}
