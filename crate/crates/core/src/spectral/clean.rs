use super::{HostParams, SpectralError};
use crate::graph::{Graph, VertexSet};
use crate::pairs::PairList;
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CleaningWarning {
    /// The input is smaller than the size the halting guarantee needs.
    SmallInput { size: usize, required: f64 },
    /// More deletions than twice the guaranteed bound.
    DeletionBoundExceeded { deleted: usize, bound: f64 },
}

#[derive(Debug, Clone)]
pub struct CleanOutcome {
    pub set: VertexSet,
    /// Deleted vertices in deletion order.
    pub deleted: Vec<usize>,
    pub threshold: f64,
    pub warnings: Vec<CleaningWarning>,
}

#[derive(Debug, Clone)]
pub struct PairCleanOutcome {
    pub pairs: PairList,
    /// Indices into the input list of the pairs kept.
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
    pub threshold: f64,
    pub warnings: Vec<CleaningWarning>,
}

/// Deletes, lowest index first, any vertex of `s` whose degree inside the
/// current set is below `threshold`, until none remains. Returns the fixed
/// point and the deletion order.
pub fn clean_with_threshold(g: &Graph, s: &VertexSet, threshold: f64) -> (VertexSet, Vec<usize>) {
    let mut set = s.clone();
    let mut deg = vec![0usize; g.n()];
    let mut heap = BinaryHeap::new();
    for v in s.iter() {
        deg[v] = g.degree_into(v, s);
        if (deg[v] as f64) < threshold {
            heap.push(Reverse(v));
        }
    }
    let mut deleted = Vec::new();
    while let Some(Reverse(v)) = heap.pop() {
        if !set.remove(v) {
            continue;
        }
        deleted.push(v);
        for &w in g.neighbors(v) {
            if set.contains(w) {
                let before = deg[w] as f64 >= threshold;
                deg[w] -= 1;
                if before && (deg[w] as f64) < threshold {
                    heap.push(Reverse(w));
                }
            }
        }
    }
    (set, deleted)
}

/// Cleaning with threshold `d|S|/4n`. The result has minimum degree at least
/// the threshold inside itself.
pub fn clean_subset(g: &Graph, s: &VertexSet, host: &HostParams) -> Result<CleanOutcome, SpectralError> {
    let n = g.n() as f64;
    let threshold = host.d * s.len() as f64 / (4.0 * n);
    let (set, deleted) = clean_with_threshold(g, s, threshold);
    let warnings = halting_warnings(s.len(), deleted.len(), host);
    if set.is_empty() && !s.is_empty() {
        return Err(SpectralError::Exhausted { size: s.len() });
    }
    Ok(CleanOutcome { set, deleted, threshold, warnings })
}

fn halting_warnings(size: usize, deleted: usize, host: &HostParams) -> Vec<CleaningWarning> {
    let mut w = Vec::new();
    let required = 5.0 * host.scale();
    if (size as f64) < required {
        w.push(CleaningWarning::SmallInput { size, required });
    }
    let bound = 2.0 * host.scale();
    if deleted as f64 > bound {
        w.push(CleaningWarning::DeletionBoundExceeded { deleted, bound });
    }
    for x in &w {
        log::debug!("cleaning: {x:?}");
    }
    w
}

/// Pair version of the cleaning process: whenever a vertex falls below
/// `d|V(S)|/4n` inside the current union, its whole pair is removed.
pub fn pair_clean(g: &Graph, pairs: &PairList, host: &HostParams) -> Result<PairCleanOutcome, SpectralError> {
    let n = g.n();
    let threshold = host.d * pairs.vertices(n).len() as f64 / (4.0 * n as f64);
    pair_clean_with_threshold(g, pairs, host, threshold)
}

/// Pair cleaning with an explicit threshold.
pub fn pair_clean_with_threshold(
    g: &Graph,
    pairs: &PairList,
    host: &HostParams,
    threshold: f64,
) -> Result<PairCleanOutcome, SpectralError> {
    let n = g.n();
    let union = pairs.vertices(n);
    let owner = pairs.owners(n);
    let mut set = union.clone();
    let mut alive = vec![true; pairs.len()];
    let mut deg = vec![0usize; n];
    let mut heap = BinaryHeap::new();
    for v in union.iter() {
        deg[v] = g.degree_into(v, &union);
        if (deg[v] as f64) < threshold {
            heap.push(Reverse(v));
        }
    }
    let mut removed = Vec::new();
    while let Some(Reverse(v)) = heap.pop() {
        let Some(i) = owner[v] else { continue };
        if !alive[i] {
            continue;
        }
        alive[i] = false;
        removed.push(i);
        let (x, y) = pairs.get(i);
        for u in if x == y { vec![x] } else { vec![x, y] } {
            set.remove(u);
        }
        for u in if x == y { vec![x] } else { vec![x, y] } {
            for &w in g.neighbors(u) {
                if set.contains(w) {
                    let before = deg[w] as f64 >= threshold;
                    deg[w] -= 1;
                    if before && (deg[w] as f64) < threshold {
                        heap.push(Reverse(w));
                    }
                }
            }
        }
    }
    let kept: Vec<usize> = (0..pairs.len()).filter(|&i| alive[i]).collect();
    if kept.is_empty() && !pairs.is_empty() {
        return Err(SpectralError::Exhausted { size: union.len() });
    }
    let warnings = halting_warnings(union.len(), removed.len(), host);
    Ok(PairCleanOutcome { pairs: pairs.subset(&kept), kept, removed, threshold, warnings })
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpansionError {
    #[error("vertex {vertex} has only {found} neighbours in B, need {delta}")]
    LowDegree { vertex: usize, found: usize, delta: f64 },
    #[error("|A| = {size} exceeds δn/100d = {limit}")]
    TooLarge { size: usize, limit: f64 },
    #[error("δ = {delta} is outside [10λ, d]")]
    DeltaOutOfRange { delta: f64 },
}

/// Checks `|N(A) ∩ B| ≥ min(δ²|A|/8λ², δn/10d)` after validating the
/// hypotheses. `Ok(false)` means the certificate is contradicted.
pub fn expansion_check(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    delta: f64,
    host: &HostParams,
) -> Result<bool, ExpansionError> {
    let n = g.n() as f64;
    if delta < 10.0 * host.lambda || delta > host.d {
        return Err(ExpansionError::DeltaOutOfRange { delta });
    }
    let limit = delta * n / (100.0 * host.d);
    if a.len() as f64 > limit {
        return Err(ExpansionError::TooLarge { size: a.len(), limit });
    }
    for v in a.iter() {
        let found = g.degree_into(v, b);
        if (found as f64) < delta {
            return Err(ExpansionError::LowDegree { vertex: v, found, delta });
        }
    }
    let mut hood = VertexSet::new(g.n());
    for v in a.iter() {
        for &w in g.neighbors(v) {
            if b.contains(w) {
                hood.insert(w);
            }
        }
    }
    let lam2 = host.lambda * host.lambda;
    let need = if lam2 == 0.0 {
        delta * n / (10.0 * host.d)
    } else {
        (delta * delta * a.len() as f64 / (8.0 * lam2)).min(delta * n / (10.0 * host.d))
    };
    Ok(hood.len() as f64 >= need)
}
