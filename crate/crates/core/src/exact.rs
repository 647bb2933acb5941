//! Exact Hamilton and longest-cycle search for small graphs by dynamic
//! programming over vertex subsets.

use crate::graph::{Cycle, Graph};

/// Largest `n` the subset search accepts.
pub const MAX_EXACT: usize = 20;

/// Longest cycle whose minimum vertex is `s`, over subsets of `s..n`.
fn best_from(g: &Graph, s: usize, want_len: Option<usize>) -> Option<Vec<usize>> {
    let n = g.n();
    let m = n - s;
    if m < 3 {
        return None;
    }
    let adj: Vec<u32> = (s..n)
        .map(|v| g.neighbors(v).iter().filter(|&&w| w >= s).fold(0u32, |acc, &w| acc | 1 << (w - s)))
        .collect();
    // reach[mask] = set of ends of paths from s covering exactly `mask`
    let size = 1usize << m;
    let mut reach = vec![0u32; size];
    reach[1] = 1;
    let mut best: Option<(usize, usize, usize)> = None;
    for mask in 1..size {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        let mut ends = reach[mask];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = adj[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | 1 << w] |= 1 << w;
            }
            let len = mask.count_ones() as usize;
            if len >= 3 && adj[v] & 1 != 0 && want_len.is_none_or(|l| l == len) && best.is_none_or(|b| len > b.0) {
                best = Some((len, mask, v));
            }
        }
    }
    let (_, mut mask, mut v) = best?;
    let mut rev = vec![v];
    while mask != 1 {
        let prev_mask = mask & !(1 << v);
        let u = (0..m)
            .find(|&u| prev_mask >> u & 1 == 1 && reach[prev_mask] >> u & 1 == 1 && adj[u] >> v & 1 == 1)
            .expect("predecessor exists");
        rev.push(u);
        mask = prev_mask;
        v = u;
    }
    rev.reverse();
    Some(rev.into_iter().map(|i| i + s).collect())
}

/// A Hamilton cycle if one exists. Panics when `n > MAX_EXACT`.
pub fn hamilton_cycle(g: &Graph) -> Option<Cycle> {
    let n = g.n();
    assert!(n <= MAX_EXACT, "exact search limited to {MAX_EXACT} vertices");
    if n < 3 {
        return None;
    }
    best_from(g, 0, Some(n)).map(Cycle::new)
}

/// A longest cycle, or `None` for a forest. Panics when `n > MAX_EXACT`.
pub fn longest_cycle(g: &Graph) -> Option<Cycle> {
    let n = g.n();
    assert!(n <= MAX_EXACT, "exact search limited to {MAX_EXACT} vertices");
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n.saturating_sub(2) {
        if best.as_ref().is_some_and(|b| b.len() >= n - s) {
            break;
        }
        if let Some(c) = best_from(g, s, None) {
            if best.as_ref().is_none_or(|b| c.len() > b.len()) {
                best = Some(c);
            }
        }
    }
    best.map(Cycle::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn petersen_has_no_hamilton_cycle() {
        let g = petersen();
        assert!(hamilton_cycle(&g).is_none());
        let c = longest_cycle(&g).unwrap();
        assert_eq!(c.len(), 9);
        c.check(&g).unwrap();
    }

    #[test]
    fn small_cases() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(hamilton_cycle(&k4).unwrap().len(), 4);
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(longest_cycle(&path).is_none());
        // a triangle hanging off a path
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let c = longest_cycle(&g).unwrap();
        assert_eq!(c.len(), 3);
        c.check(&g).unwrap();
    }
}
