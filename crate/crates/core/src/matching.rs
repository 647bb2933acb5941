//! Hopcroft–Karp maximum bipartite matching with a Hall-violator witness.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct Matching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    pub size: usize,
}

/// A left set `set` whose neighbourhood `neighbors` is strictly smaller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallViolator {
    pub set: Vec<usize>,
    pub neighbors: Vec<usize>,
}

/// Maximum matching of the bipartite graph with left side `adj.len()` and
/// right side `right_size`, where `adj[l]` lists right neighbours of `l`.
pub fn max_matching(adj: &[Vec<usize>], right_size: usize) -> Matching {
    let nl = adj.len();
    let mut ml = vec![NONE; nl];
    let mut mr = vec![NONE; right_size];
    let mut dist = vec![0usize; nl];
    let mut size = 0;
    loop {
        let mut queue = VecDeque::new();
        let mut found = false;
        for l in 0..nl {
            if ml[l] == NONE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = NONE;
            }
        }
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = mr[r];
                if next == NONE {
                    found = true;
                } else if dist[next] == NONE {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; nl];
        for l in 0..nl {
            if ml[l] == NONE && augment(l, adj, &mut ml, &mut mr, &mut dist, &mut cursor) {
                size += 1;
            }
        }
    }
    let wrap = |v: Vec<usize>| v.into_iter().map(|x| (x != NONE).then_some(x)).collect();
    Matching { left: wrap(ml), right: wrap(mr), size }
}

fn augment(
    start: usize,
    adj: &[Vec<usize>],
    ml: &mut [usize],
    mr: &mut [usize],
    dist: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    // Iterative layered DFS so long augmenting paths cannot overflow the stack.
    let mut stack = vec![start];
    while let Some(&l) = stack.last() {
        if cursor[l] == adj[l].len() {
            dist[l] = NONE;
            stack.pop();
            continue;
        }
        let r = adj[l][cursor[l]];
        cursor[l] += 1;
        let next = mr[r];
        if next == NONE {
            let mut r = r;
            while let Some(l) = stack.pop() {
                let prev = ml[l];
                ml[l] = r;
                mr[r] = l;
                r = prev;
            }
            return true;
        }
        if dist[next] == dist[l] + 1 {
            stack.push(next);
        }
    }
    false
}

impl Matching {
    pub fn is_left_perfect(&self) -> bool {
        self.left.iter().all(Option::is_some)
    }

    /// Alternating-path closure of an unmatched left vertex; empty when the
    /// matching saturates the left side.
    pub fn hall_violator(&self, adj: &[Vec<usize>]) -> Option<HallViolator> {
        let root = self.left.iter().position(Option::is_none)?;
        let mut in_set = vec![false; adj.len()];
        let mut seen_r = vec![false; self.right.len()];
        let mut queue = VecDeque::from([root]);
        in_set[root] = true;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                if !seen_r[r] {
                    seen_r[r] = true;
                    if let Some(next) = self.right[r] {
                        if !in_set[next] {
                            in_set[next] = true;
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        let set = (0..adj.len()).filter(|&l| in_set[l]).collect();
        let neighbors = (0..self.right.len()).filter(|&r| seen_r[r]).collect();
        Some(HallViolator { set, neighbors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_max(adj: &[Vec<usize>], r: usize) -> usize {
        fn go(l: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if l == adj.len() {
                return 0;
            }
            let mut best = go(l + 1, adj, used);
            for &x in &adj[l] {
                if !used[x] {
                    used[x] = true;
                    best = best.max(1 + go(l + 1, adj, used));
                    used[x] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; r])
    }

    proptest! {
        #[test]
        fn matches_brute_force(adj in proptest::collection::vec(proptest::collection::btree_set(0usize..7, 0..4), 0..7)) {
            let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
            let m = max_matching(&adj, 7);
            prop_assert_eq!(m.size, brute_max(&adj, 7));
            for (l, r) in m.left.iter().enumerate() {
                if let Some(r) = r {
                    prop_assert!(adj[l].contains(r));
                    prop_assert_eq!(m.right[*r], Some(l));
                }
            }
            if let Some(h) = m.hall_violator(&adj) {
                prop_assert!(h.neighbors.len() < h.set.len());
                for &l in &h.set {
                    for r in &adj[l] {
                        prop_assert!(h.neighbors.contains(r));
                    }
                }
            }
        }
    }
}
