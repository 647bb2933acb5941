use crate::graph::{interior, Graph, PathState, VertexSet};
use serde::Serialize;
use thiserror::Error;

/// Disjoint subpaths of a path together with a subset `S` of their union
/// that is spread densely across them.
#[derive(Debug, Clone, Serialize)]
pub struct CleanCollection {
    /// Vertex lists of the surviving subpaths, in path order.
    pub intervals: Vec<Vec<usize>>,
    #[serde(skip)]
    pub set: VertexSet,
    pub delta: f64,
    pub gamma: f64,
    /// Number of surviving subpaths.
    pub k: usize,
    /// Number of subpaths the path was first cut into.
    pub initial: usize,
    pub removed_vertices: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PartitionError {
    #[error("path of {len} vertices is too short for {k} intervals")]
    TooShort { len: usize, k: usize },
    #[error("only {achieved} of the required {k} intervals survived")]
    TooFewSurvivors { achieved: usize, k: usize },
}

impl CleanCollection {
    /// Property-by-property check against `p`; returns the first failure.
    pub fn validate(&self, g: &Graph, p: &PathState) -> Result<(), String> {
        let k = self.k as f64;
        let int_s = interior(p, &self.set);
        let mut parts_int = Vec::new();
        for (i, q) in self.intervals.iter().enumerate() {
            let on_s = q.iter().filter(|&&v| self.set.contains(v)).count();
            if (q.len() as f64) < 0.99 * p.len() as f64 / k || (on_s as f64) < 0.99 * q.len() as f64 {
                return Err(format!("interval {i} is too small or too sparse"));
            }
            let sq = VertexSet::from_iter(p.universe(), q.iter().copied().filter(|&v| self.set.contains(v)));
            parts_int.push(interior(p, &sq));
        }
        let mut covered = VertexSet::new(p.universe());
        for q in &self.intervals {
            for &v in q {
                covered.insert(v);
            }
        }
        if !self.set.is_subset(&covered) {
            return Err("S is not inside the intervals".into());
        }
        for v in self.set.iter() {
            if (g.degree_into(v, &int_s) as f64) < self.delta {
                return Err(format!("vertex {v} has too few neighbours in int(S)"));
            }
            let good = parts_int.iter().filter(|pi| g.degree_into(v, pi) as f64 >= self.delta / k).count();
            if (good as f64) < self.gamma * k {
                return Err(format!("vertex {v} is spread over only {good} intervals"));
            }
        }
        Ok(())
    }
}

/// Number of pieces so that pieces of near-equal size stay at least
/// `0.99|P|/k` long after integer rounding.
fn piece_count(len: usize, k: usize) -> usize {
    let want = (1.01 * k as f64).ceil() as usize;
    let min_size = (0.99 * len as f64 / k as f64).ceil().max(1.0) as usize;
    want.min(len / min_size)
}

/// Largest `k' ≤ k` for which a path of `len` vertices can be cut into at
/// least `k'` pieces of size `≥ 0.99 len/k'`.
pub fn fit_interval_count(len: usize, k: usize) -> usize {
    (1..=k).rev().find(|&j| piece_count(len, j) >= j).unwrap_or(0)
}

struct Scan<'a> {
    g: &'a Graph,
    p: &'a PathState,
    piece: Vec<usize>,
    in_s: Vec<bool>,
    /// `|N(v) ∩ int(S)|`
    deg_int: Vec<usize>,
    /// `|N(v) ∩ int(S ∩ I_j)|`, row per path position
    deg_part: Vec<Vec<usize>>,
    is_int: Vec<bool>,
    is_int_part: Vec<bool>,
}

impl<'a> Scan<'a> {
    fn int_status(&self, v: usize) -> (bool, bool) {
        let ord = self.p.vertices();
        let i = self.p.position(v).unwrap();
        if !self.in_s[i] || i == 0 || i + 1 == ord.len() {
            return (false, false);
        }
        let whole = self.in_s[i - 1] && self.in_s[i + 1];
        let part = whole && self.piece[i - 1] == self.piece[i] && self.piece[i + 1] == self.piece[i];
        (whole, part)
    }

    fn refresh(&mut self, v: usize) {
        let i = self.p.position(v).unwrap();
        let (whole, part) = self.int_status(v);
        let sign = |now: bool, before: bool| now as i64 - before as i64;
        let dw = sign(whole, self.is_int[i]);
        let dp = sign(part, self.is_int_part[i]);
        if dw == 0 && dp == 0 {
            return;
        }
        self.is_int[i] = whole;
        self.is_int_part[i] = part;
        let j = self.piece[i];
        for &w in self.g.neighbors(v) {
            if let Some(pos) = self.p.position(w) {
                self.deg_int[pos] = (self.deg_int[pos] as i64 + dw) as usize;
                self.deg_part[pos][j] = (self.deg_part[pos][j] as i64 + dp) as usize;
            }
        }
    }

    fn remove(&mut self, i: usize) {
        self.in_s[i] = false;
        let ord = self.p.vertices();
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(ord.len() - 1);
        for t in lo..=hi {
            self.refresh(ord[t]);
        }
    }
}

/// Builds a clean collection by the three-rule deletion process: drop
/// sparse subpaths, then vertices with few neighbours in `int(S)`, then
/// vertices whose neighbourhood is concentrated on too few subpaths.
pub fn clean_partition(g: &Graph, p: &PathState, k: usize, delta: f64, gamma: f64) -> Result<CleanCollection, PartitionError> {
    let len = p.len();
    let r = if k == 0 { 0 } else { piece_count(len, k) };
    if k == 0 || r < k {
        return Err(PartitionError::TooShort { len, k });
    }
    let piece: Vec<usize> = (0..len).map(|i| i * r / len).collect();
    let mut bounds = vec![(usize::MAX, 0); r];
    for (i, &j) in piece.iter().enumerate() {
        bounds[j].0 = bounds[j].0.min(i);
        bounds[j].1 = i;
    }
    let mut scan = Scan {
        g,
        p,
        piece,
        in_s: vec![true; len],
        deg_int: vec![0; len],
        deg_part: vec![vec![0; r]; len],
        is_int: vec![false; len],
        is_int_part: vec![false; len],
    };
    for &v in p.vertices() {
        scan.refresh(v);
    }
    let mut alive = vec![true; r];
    let mut count = vec![0usize; r];
    for i in 0..len {
        count[scan.piece[i]] += 1;
    }
    let size: Vec<usize> = count.clone();
    let mut removed_vertices = 0;
    let spread_need = gamma * r as f64;
    let part_need = delta / k as f64;
    loop {
        if let Some(j) = (0..r).find(|&j| alive[j] && (count[j] as f64) < 0.99 * size[j] as f64) {
            alive[j] = false;
            for i in bounds[j].0..=bounds[j].1 {
                if scan.in_s[i] {
                    scan.remove(i);
                    count[j] -= 1;
                }
            }
            continue;
        }
        let weak = (0..len).filter(|&i| scan.in_s[i]).min_by_key(|&i| {
            let v = p.vertices()[i];
            let low_degree = (scan.deg_int[i] as f64) < delta;
            let spread = scan.deg_part[i].iter().filter(|&&c| c as f64 >= part_need).count();
            let low_spread = (spread as f64) < spread_need;
            // rule 2 before rule 3, lowest vertex label first
            (!low_degree, !low_spread, v)
        });
        match weak {
            Some(i) => {
                let low_degree = (scan.deg_int[i] as f64) < delta;
                let spread = scan.deg_part[i].iter().filter(|&&c| c as f64 >= part_need).count();
                if !low_degree && (spread as f64) >= spread_need {
                    break;
                }
                count[scan.piece[i]] -= 1;
                scan.remove(i);
                removed_vertices += 1;
            }
            None => break,
        }
    }
    let survivors: Vec<usize> = (0..r).filter(|&j| alive[j]).collect();
    if survivors.len() < k {
        return Err(PartitionError::TooFewSurvivors { achieved: survivors.len(), k });
    }
    let ord = p.vertices();
    let intervals = survivors.iter().map(|&j| ord[bounds[j].0..=bounds[j].1].to_vec()).collect();
    let set = VertexSet::from_iter(p.universe(), (0..len).filter(|&i| scan.in_s[i]).map(|i| ord[i]));
    Ok(CleanCollection { intervals, set, delta, gamma, k: survivors.len(), initial: r, removed_vertices })
}

/// Path version of the cleaning process: removes, lowest label first, any
/// vertex of `a` with fewer than `threshold` neighbours in `int_P` of the
/// current set.
pub fn path_clean(g: &Graph, p: &PathState, a: &VertexSet, threshold: f64) -> VertexSet {
    let mut set = a.clone();
    loop {
        let int = interior(p, &set);
        let weak = set.iter().find(|&v| (g.degree_into(v, &int) as f64) < threshold);
        match weak {
            Some(v) => {
                set.remove(v);
            }
            None => return set,
        }
    }
}

/// Largest `δ` for which `s` is `(P, δ)`-clean.
pub fn cleanliness(g: &Graph, p: &PathState, s: &VertexSet) -> usize {
    let int = interior(p, s);
    s.iter().map(|v| g.degree_into(v, &int)).min().unwrap_or(0)
}
