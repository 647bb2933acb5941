use super::AbsorbError;
use crate::graph::{Cycle, Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

/// Shortest cycle through `root` avoiding `used`, if one of length at most
/// `max_len` exists. Breadth-first search labels every vertex with the
/// neighbour of `root` it was reached through; an edge between two
/// branches closes a cycle.
fn shortest_cycle_through(g: &Graph, root: usize, used: &[bool], max_len: usize, scratch: &mut Scratch) -> Option<Vec<usize>> {
    scratch.reset();
    let Scratch { dist, parent, branch, touched } = scratch;
    let mut queue = VecDeque::new();
    dist[root] = 0;
    touched.push(root);
    queue.push_back(root);
    let mut best: Option<(usize, usize, usize)> = None;
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        if let Some((len, _, _)) = best {
            if 2 * du + 1 >= len {
                break;
            }
        }
        if 2 * du + 1 > max_len {
            break;
        }
        for &w in g.neighbors(u) {
            if used[w] || w == parent[u] {
                continue;
            }
            if dist[w] == usize::MAX {
                dist[w] = du + 1;
                parent[w] = u;
                branch[w] = if u == root { w } else { branch[u] };
                touched.push(w);
                queue.push_back(w);
            } else if w != root && u != root && branch[w] != branch[u] {
                let len = du + dist[w] + 1;
                if len <= max_len && best.is_none_or(|b| len < b.0) {
                    best = Some((len, u, w));
                }
            }
        }
    }
    let (_, u, w) = best?;
    let walk = |mut v: usize| {
        let mut out = Vec::new();
        while v != root {
            out.push(v);
            v = parent[v];
        }
        out
    };
    let mut cycle = vec![root];
    cycle.extend(walk(u).into_iter().rev());
    cycle.extend(walk(w));
    Some(cycle)
}

struct Scratch {
    dist: Vec<usize>,
    parent: Vec<usize>,
    branch: Vec<usize>,
    touched: Vec<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { dist: vec![usize::MAX; n], parent: vec![usize::MAX; n], branch: vec![usize::MAX; n], touched: Vec::new() }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = usize::MAX;
            self.parent[v] = usize::MAX;
            self.branch[v] = usize::MAX;
        }
        self.touched.clear();
    }
}

/// Greedy vertex-disjoint short cycles: roots are visited in a seeded random
/// order and each takes the shortest cycle through it among unused
/// vertices. Stops after `target` cycles or when every root has been tried.
pub fn find_disjoint_cycles(g: &Graph, max_len: usize, target: usize, seed: u64) -> Vec<Cycle> {
    let n = g.n();
    let mut roots: Vec<usize> = (0..n).collect();
    roots.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut used = vec![false; n];
    let mut scratch = Scratch::new(n);
    let mut out = Vec::new();
    for r in roots {
        if out.len() >= target {
            break;
        }
        if used[r] {
            continue;
        }
        if let Some(c) = shortest_cycle_through(g, r, &used, max_len, &mut scratch) {
            for &v in &c {
                used[v] = true;
            }
            out.push(Cycle::new(c));
        }
    }
    out
}

/// Knobs of [`sparsify_cycles`].
#[derive(Debug, Clone, Copy)]
pub struct SparsifyParams {
    pub keep_prob: f64,
    /// Every vertex keeps this fraction of its degree outside the cycles.
    pub outside_frac: f64,
    /// At least `min_kept_frac · t` cycles must survive.
    pub min_kept_frac: f64,
    pub seeds: usize,
}

impl Default for SparsifyParams {
    fn default() -> Self {
        SparsifyParams { keep_prob: 0.8, outside_frac: 0.1, min_kept_frac: 0.7, seeds: 10 }
    }
}

/// Drops cycles longer than `100n/t`, then keeps each remaining cycle with
/// probability `keep_prob`, redrawing until enough cycles survive and every
/// vertex has its share of neighbours outside them.
pub fn sparsify_cycles(g: &Graph, cycles: &[Cycle], params: &SparsifyParams, rng: &mut impl Rng) -> Result<Vec<Cycle>, AbsorbError> {
    let t = cycles.len();
    if t == 0 {
        return Ok(Vec::new());
    }
    let n = g.n();
    let long = 100 * n / t;
    let short: Vec<&Cycle> = cycles.iter().filter(|c| c.len() <= long).collect();
    let need_kept = (params.min_kept_frac * t as f64).ceil() as usize;
    let mut worst = (usize::MAX, 0usize, 0usize);
    for _ in 0..params.seeds.max(1) {
        let kept: Vec<Cycle> = short.iter().filter(|_| rng.gen_bool(params.keep_prob)).map(|c| (*c).clone()).collect();
        if kept.len() < need_kept {
            continue;
        }
        let on = VertexSet::from_iter(n, kept.iter().flat_map(|c| c.order.iter().copied()));
        let bad = (0..n)
            .map(|v| (v, g.neighbors(v).iter().filter(|&&w| !on.contains(w)).count()))
            .find(|&(v, out)| (out as f64) < params.outside_frac * g.degree(v) as f64);
        match bad {
            None => return Ok(kept),
            Some((v, out)) => worst = (v, out, kept.len()),
        }
    }
    Err(AbsorbError::Sparsify { vertex: worst.0, outside: worst.1, kept: worst.2, needed: need_kept })
}
