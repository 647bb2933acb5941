use super::regular::regular_subdigraph;
use super::LinearForest;
use crate::digraph::Digraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct MergeStats {
    /// Paths after opening every cycle of the first factor.
    pub opened: usize,
    /// Paths after joining ends to starts directly.
    pub joined: usize,
    /// Paths after the exchange walk.
    pub walked: usize,
    pub exchanges: usize,
}

/// Directed paths stored as successor and predecessor links.
struct Chains {
    next: Vec<Option<usize>>,
    prev: Vec<Option<usize>>,
    id: Vec<usize>,
    fresh: usize,
    count: usize,
}

impl Chains {
    fn from_factor(succ: &[usize]) -> Self {
        let n = succ.len();
        let mut c = Chains { next: vec![None; n], prev: vec![None; n], id: vec![usize::MAX; n], fresh: 0, count: 0 };
        for s in 0..n {
            if c.id[s] != usize::MAX {
                continue;
            }
            // open the cycle through s just before s
            let mut v = s;
            loop {
                c.id[v] = c.fresh;
                let w = succ[v];
                if w == s {
                    break;
                }
                c.next[v] = Some(w);
                c.prev[w] = Some(v);
                v = w;
            }
            c.fresh += 1;
            c.count += 1;
        }
        c
    }

    fn is_start(&self, v: usize) -> bool {
        self.prev[v].is_none()
    }

    fn relabel_forward(&mut self, from: usize, id: usize) {
        let mut v = Some(from);
        while let Some(x) = v {
            self.id[x] = id;
            v = self.next[x];
        }
    }

    fn relabel_backward(&mut self, from: usize, id: usize) {
        let mut v = Some(from);
        while let Some(x) = v {
            self.id[x] = id;
            v = self.prev[x];
        }
    }

    /// Links end `u` to start `s` of another path.
    fn join(&mut self, u: usize, s: usize) {
        self.next[u] = Some(s);
        self.prev[s] = Some(u);
        self.relabel_forward(s, self.id[u]);
        self.count -= 1;
    }

    /// Links end `u` to the inner vertex `v` of another path, cutting the
    /// arc into `v`; returns the new end.
    fn exchange(&mut self, u: usize, v: usize) -> usize {
        let w = self.prev[v].unwrap();
        self.next[w] = None;
        self.prev[v] = Some(u);
        self.next[u] = Some(v);
        self.relabel_forward(v, self.id[u]);
        let id = self.fresh;
        self.fresh += 1;
        self.relabel_backward(w, id);
        w
    }

    fn ends(&self) -> Vec<usize> {
        (0..self.next.len()).filter(|&v| self.next[v].is_none()).collect()
    }

    fn paths(&self) -> Vec<Vec<usize>> {
        (0..self.next.len())
            .filter(|&v| self.is_start(v))
            .map(|s| {
                let mut p = vec![s];
                while let Some(w) = self.next[*p.last().unwrap()] {
                    p.push(w);
                }
                p
            })
            .collect()
    }
}

/// Merges the cycles of `factors[0]` into few paths using the arcs of all
/// factors: each cycle is opened, ends are joined to starts of other paths,
/// then a random walk moves ends by exchanges until more joins appear.
pub fn forest_from_factors(factors: &[Vec<usize>], n: usize, effort: usize, seed: u64) -> (LinearForest, MergeStats) {
    let Some(first) = factors.first() else {
        let paths = (0..n).map(|v| vec![v]).collect();
        let stats = MergeStats { opened: n, joined: n, walked: n, exchanges: 0 };
        return (LinearForest::new(n, paths).unwrap(), stats);
    };
    let out: Vec<Vec<usize>> = (0..n).map(|v| factors.iter().map(|f| f[v]).collect()).collect();
    let mut c = Chains::from_factor(first);
    let mut stats = MergeStats { opened: c.count, ..Default::default() };
    for u in c.ends() {
        if let Some(&s) = out[u].iter().find(|&&s| c.is_start(s) && c.id[s] != c.id[u]) {
            c.join(u, s);
        }
    }
    stats.joined = c.count;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ends = c.ends();
    let mut u = *ends.choose(&mut rng).unwrap();
    for _ in 0..effort * n {
        if c.count <= 1 {
            break;
        }
        if let Some(&s) = out[u].iter().find(|&&s| c.is_start(s) && c.id[s] != c.id[u]) {
            c.join(u, s);
            ends = c.ends();
            u = *ends.choose(&mut rng).unwrap();
            continue;
        }
        let moves: Vec<usize> = out[u].iter().copied().filter(|&v| !c.is_start(v) && c.id[v] != c.id[u]).collect();
        if moves.is_empty() || rng.gen_bool(0.05) {
            u = *ends.choose(&mut rng).unwrap();
            continue;
        }
        let v = *moves.choose(&mut rng).unwrap();
        let w = c.exchange(u, v);
        stats.exchanges += 1;
        if let Some(slot) = ends.iter_mut().find(|e| **e == u) {
            *slot = w;
        }
        u = w;
    }
    stats.walked = c.count;
    (LinearForest::new(n, c.paths()).unwrap(), stats)
}

/// Spanning linear forest of an `r`-regular digraph with few paths.
pub fn few_path_forest(r_graph: &Digraph, effort: usize, seed: u64) -> LinearForest {
    let n = r_graph.n();
    let r = (0..n).map(|v| r_graph.out(v).len()).min().unwrap_or(0);
    let sub = regular_subdigraph(r_graph, r).expect("a regular digraph splits into 1-factors");
    forest_from_factors(&sub.factors, n, effort, seed).0
}
