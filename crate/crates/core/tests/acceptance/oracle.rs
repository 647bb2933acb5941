//! Reference implementations that share no code with the library.

use expham::graph::Graph;
use nalgebra::DMatrix;
use std::collections::{BTreeSet, HashSet};

fn adjacency(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect()
}

/// Held–Karp over subsets containing vertex 0.
pub fn has_hamilton_cycle(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    assert!(n <= 20);
    let adj = adjacency(g);
    let full = (1usize << n) - 1;
    // reach[mask] = endpoints of 0-rooted paths covering `mask`
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        for v in 0..n {
            if reach[mask] >> v & 1 == 0 {
                continue;
            }
            let mut next = adj[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | 1 << w] |= 1 << w;
            }
        }
    }
    reach[full] & adj[0] != 0
}

/// Length of a longest cycle, 0 for forests.
pub fn longest_cycle_len(g: &Graph) -> usize {
    let n = g.n();
    let adj = adjacency(g);
    let mut best = 0;
    fn grow(adj: &[u32], start: usize, v: usize, used: u32, len: usize, best: &mut usize) {
        if len >= 3 && adj[v] >> start & 1 == 1 {
            *best = (*best).max(len);
        }
        // only vertices above `start`, so each cycle is rooted at its minimum
        let mut next = adj[v] & !used & !((1u32 << (start + 1)) - 1);
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            grow(adj, start, w, used | 1 << w, len + 1, best);
        }
    }
    for s in 0..n {
        grow(&adj, s, s, 1 << s, 1, &mut best);
    }
    best
}

/// Plain check of a Hamilton cycle given as a vertex order.
pub fn is_hamilton_cycle(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n || n < 3 {
        return false;
    }
    let distinct: HashSet<usize> = order.iter().copied().collect();
    distinct.len() == n
        && order.iter().all(|&v| v < n)
        && (0..n).all(|i| g.neighbors(order[i]).contains(&order[(i + 1) % n]))
}

/// Rotation on a plain vector: the far end is `order.last()`.
pub fn rotate_tail(order: &[usize], pivot_pos: usize) -> Vec<usize> {
    let mut out = order[..=pivot_pos].to_vec();
    out.extend(order[pivot_pos + 1..].iter().rev());
    out
}

/// Rotation keeping `fixed` (an endpoint) in place.
pub fn rotate(order: &[usize], fixed: usize, pivot: usize) -> Vec<usize> {
    if order[0] == fixed {
        let i = order.iter().position(|&v| v == pivot).unwrap();
        rotate_tail(order, i)
    } else {
        let rev: Vec<usize> = order.iter().rev().copied().collect();
        let i = rev.iter().position(|&v| v == pivot).unwrap();
        let mut out = rotate_tail(&rev, i);
        out.reverse();
        out
    }
}

fn path_nbrs(order: &[usize], i: usize) -> BTreeSet<usize> {
    let mut s = BTreeSet::new();
    if i > 0 {
        s.insert(order[i - 1]);
    }
    if i + 1 < order.len() {
        s.insert(order[i + 1]);
    }
    s
}

/// Vertices whose path neighbourhoods differ; both orders span one set.
pub fn dif(a: &[usize], b: &[usize]) -> BTreeSet<usize> {
    let pos_b: std::collections::HashMap<usize, usize> = b.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    a.iter().enumerate().filter(|&(i, v)| path_nbrs(a, i) != path_nbrs(b, pos_b[v])).map(|(_, &v)| v).collect()
}

pub fn interior(order: &[usize], x: &HashSet<usize>) -> BTreeSet<usize> {
    (1..order.len().saturating_sub(1))
        .filter(|&i| x.contains(&order[i - 1]) && x.contains(&order[i]) && x.contains(&order[i + 1]))
        .map(|i| order[i])
        .collect()
}

pub fn is_path(g: &Graph, order: &[usize]) -> bool {
    let distinct: HashSet<usize> = order.iter().copied().collect();
    distinct.len() == order.len() && order.windows(2).all(|w| g.neighbors(w[0]).contains(&w[1]))
}

/// Second largest absolute eigenvalue of a regular graph.
pub fn lambda(g: &Graph) -> f64 {
    let n = g.n();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev[1].abs().max(ev[n - 1].abs())
}

/// Out-neighbour lists of a host digraph plus a forest embedded in it.
pub struct Embedded<'a> {
    pub out: &'a [Vec<usize>],
    /// `(image, children)` of every embedded node.
    pub nodes: Vec<(usize, usize)>,
}

/// Every set of at most `s` host vertices satisfies
/// `|Γ⁺(X) \ φ(F)| ≥ Σ_{v∈X} (D − deg_F(v)) + |φ(F) ∩ X|`.
pub fn is_good(e: &Embedded<'_>, s: usize, d: usize) -> Result<(), Vec<usize>> {
    let n = e.out.len();
    let mut used = vec![false; n];
    let mut deg = vec![0usize; n];
    for &(img, ch) in &e.nodes {
        used[img] = true;
        deg[img] = ch;
    }
    let mut chosen = Vec::new();
    fn walk(
        e: &Embedded<'_>,
        used: &[bool],
        deg: &[usize],
        d: usize,
        left: usize,
        from: usize,
        chosen: &mut Vec<usize>,
    ) -> Result<(), Vec<usize>> {
        if !chosen.is_empty() {
            let reach: BTreeSet<usize> =
                chosen.iter().flat_map(|&v| e.out[v].iter().copied()).filter(|&w| !used[w]).collect();
            let need: i64 = chosen.iter().map(|&v| d as i64 - deg[v] as i64 + used[v] as i64).sum();
            if (reach.len() as i64) < need {
                return Err(chosen.clone());
            }
        }
        if left == 0 {
            return Ok(());
        }
        for v in from..e.out.len() {
            chosen.push(v);
            let r = walk(e, used, deg, d, left - 1, v + 1, chosen);
            chosen.pop();
            r?;
        }
        Ok(())
    }
    walk(e, &used, &deg, d, s.min(n), 0, &mut chosen)
}

/// Alternating check for two-vertex pairs: `a`, edge, pair, edge, ..., `b`.
pub fn alternates(g: &Graph, partner: &[Option<usize>], path: &[usize], a: usize, b: usize) -> bool {
    let k = path.len();
    if k < 2 || path[0] != a || path[k - 1] != b || !k.is_multiple_of(2) {
        return false;
    }
    (0..k - 1).all(|i| {
        let (u, v) = (path[i], path[i + 1]);
        if i % 2 == 0 {
            g.neighbors(u).contains(&v)
        } else {
            partner[u] == Some(v)
        }
    })
}
