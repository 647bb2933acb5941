use super::aux::build_aux;
use super::ConnectorError;
use crate::digraph::Digraph;
use crate::graph::Graph;
use crate::pairs::PairList;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

/// Depth-first search keeping unvisited, active and finished vertices; the
/// longest active stack seen is returned. Stops early once the stack reaches
/// `n − 2k + 1`.
pub fn dfs_long_path(h: &Digraph, k: usize) -> Vec<usize> {
    let n = h.n();
    let goal = (n + 1).saturating_sub(2 * k).max(1);
    let mut unvisited = vec![true; n];
    let mut cursor = vec![0usize; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut best: Vec<usize> = Vec::new();
    let mut next_start = 0;
    loop {
        if stack.is_empty() {
            while next_start < n && !unvisited[next_start] {
                next_start += 1;
            }
            if next_start == n {
                break;
            }
            unvisited[next_start] = false;
            stack.push(next_start);
            if best.is_empty() {
                best.push(next_start);
            }
        }
        let v = *stack.last().unwrap();
        let out = h.out(v);
        while cursor[v] < out.len() && !unvisited[out[cursor[v]]] {
            cursor[v] += 1;
        }
        if cursor[v] < out.len() {
            let w = out[cursor[v]];
            unvisited[w] = false;
            stack.push(w);
            if stack.len() > best.len() {
                best.clone_from(&stack);
                if best.len() >= goal {
                    break;
                }
            }
        } else {
            stack.pop();
        }
    }
    best
}

/// Outcome of sampling the hypothesis "every two disjoint `k`-sets `S, T`
/// have an arc from `S` to `T`".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StSample {
    pub checked: usize,
    pub violations: usize,
}

impl StSample {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

pub fn sample_st_hypothesis(h: &Digraph, k: usize, samples: usize, rng: &mut impl Rng) -> StSample {
    let n = h.n();
    if k == 0 || 2 * k > n {
        return StSample { checked: 0, violations: 0 };
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut in_t = vec![false; n];
    let mut violations = 0;
    for _ in 0..samples {
        let (picked, _) = order.partial_shuffle(rng, 2 * k);
        let (s, t) = picked.split_at(k);
        for &v in t {
            in_t[v] = true;
        }
        if !s.iter().any(|&u| h.out(u).iter().any(|&w| in_t[w])) {
            violations += 1;
        }
        for &v in t {
            in_t[v] = false;
        }
    }
    StSample { checked: samples, violations }
}

/// An alternating path through the pairs, as host vertices.
#[derive(Debug, Clone, Serialize)]
pub struct AltPath {
    pub vertices: Vec<usize>,
    /// Pair indices in path order.
    pub pairs: Vec<usize>,
    pub seed: u64,
}

/// Long alternating path through `m`: a DFS path in the red part of the
/// auxiliary digraph, lifted pair by pair.
pub fn alt_path_spanning(g: &Graph, m: &PairList, k: usize, seed: u64) -> Result<AltPath, ConnectorError> {
    let scope = m.vertices(g.n());
    let h = build_aux(g, m, Some(&scope), seed)?;
    let path = if m.is_empty() { Vec::new() } else { dfs_long_path(&h.digraph, k) };
    Ok(AltPath { vertices: h.lift(&path), pairs: path, seed })
}
