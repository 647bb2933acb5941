//! Spanning linear forests with few paths whose endpoints avoid a bad set:
//! covering the bad set by paths, contracting them inside a random
//! orientation, extracting a regular subdigraph and merging its factors.

mod contract;
mod cover;
mod linear;
mod regular;

pub use contract::{contract_and_orient, ContractedDigraph, ContractedVertex};
pub use cover::{bad_set_order, cover_bad_set, validate_cover};
pub use linear::{few_path_forest, forest_from_factors, MergeStats};
pub use regular::{regular_subdigraph, RegularSubdigraph};

use crate::graph::{Graph, VertexSet};
use crate::matching::HallViolator;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ForestError {
    #[error("vertex {0} lies on two paths")]
    Overlap(usize),
    #[error("{0} and {1} are consecutive on a path but not adjacent")]
    NotAnEdge(usize, usize),
    #[error("ordering of the bad set stalled after {placed} vertices with {remaining} left")]
    OrderingStall { placed: usize, remaining: usize },
    #[error("matching covers {matched} of {needed} copies")]
    MatchingIncomplete { matched: usize, needed: usize, witness: Option<HallViolator> },
    #[error("factor {round} has no perfect matching")]
    Factor { round: usize, witness: Option<HallViolator> },
    #[error("stage {stage}: {source}")]
    Stage { stage: &'static str, source: Box<ForestError> },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

fn stage(stage: &'static str) -> impl FnOnce(ForestError) -> ForestError {
    move |e| ForestError::Stage { stage, source: Box::new(e) }
}

/// Vertex-disjoint paths with the set of vertices they cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearForest {
    pub paths: Vec<Vec<usize>>,
    #[serde(skip)]
    pub cover: VertexSet,
}

impl LinearForest {
    pub fn new(universe: usize, paths: Vec<Vec<usize>>) -> Result<Self, ForestError> {
        let mut cover = VertexSet::new(universe);
        for &v in paths.iter().flatten() {
            if !cover.insert(v) {
                return Err(ForestError::Overlap(v));
            }
        }
        Ok(LinearForest { paths, cover })
    }

    pub fn empty(universe: usize) -> Self {
        LinearForest { paths: Vec::new(), cover: VertexSet::new(universe) }
    }

    /// Number of paths.
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn endpoints(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.paths.iter().map(|p| (p[0], *p.last().unwrap()))
    }

    pub fn check_edges(&self, g: &Graph) -> Result<(), ForestError> {
        for p in &self.paths {
            if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
                return Err(ForestError::NotAnEdge(w[0], w[1]));
            }
        }
        Ok(())
    }
}

/// Checks that `f` is a spanning linear forest of `g[y]` with every
/// endpoint outside `x`.
pub fn validate_spanning(g: &Graph, x: &VertexSet, y: &VertexSet, f: &LinearForest) -> Result<(), String> {
    let fresh = LinearForest::new(g.n(), f.paths.clone()).map_err(|e| e.to_string())?;
    if fresh.cover != *y {
        return Err("forest does not cover exactly Y".into());
    }
    fresh.check_edges(g).map_err(|e| e.to_string())?;
    match f.endpoints().flat_map(|(a, b)| [a, b]).find(|&v| x.contains(v)) {
        Some(v) => Err(format!("endpoint {v} is in X")),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ForestConfig {
    /// Degree of the regular subdigraph; lowered to the minimum semi-degree
    /// of the contracted digraph when that is smaller.
    pub r: usize,
    /// Path-count target is `c0 · n / r^{1/5}`.
    pub c0: f64,
    /// Merge steps per vertex.
    pub merge_effort: usize,
    /// Orientations tried before giving up.
    pub retries: usize,
    pub seed: u64,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig { r: 6, c0: 4.0, merge_effort: 20, retries: 10, seed: 0 }
    }
}

impl ForestConfig {
    pub fn target(&self, n: usize, r: usize) -> f64 {
        self.c0 * n as f64 / (r.max(1) as f64).powf(0.2)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ForestOutcome {
    pub forest: LinearForest,
    /// Paths covering the bad set.
    pub cover_paths: usize,
    /// Order of the contracted digraph.
    pub contracted_order: usize,
    /// Degree actually used.
    pub r: usize,
    pub seed: u64,
    pub attempts: usize,
    pub merge: MergeStats,
    pub target: f64,
}

/// Spanning linear forest of `g[y]` with few paths and every endpoint in
/// `y \ x`: cover `x` by paths, contract them in a random orientation,
/// take an `r`-regular subdigraph, merge its factors and expand back.
pub fn spanning_forest_good_endpoints(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    delta: f64,
    cfg: &ForestConfig,
) -> Result<ForestOutcome, ForestError> {
    if !x.is_subset(y) {
        return Err(ForestError::Precondition("X is not inside Y".into()));
    }
    let cover = cover_bad_set(g, x, y, delta).map_err(stage("cover"))?;
    let mut last = None;
    for attempt in 0..cfg.retries.max(1) {
        let seed = cfg.seed.wrapping_add(attempt as u64);
        let h = contract_and_orient(g, y, &cover, seed);
        let semi = (0..h.order()).map(|v| h.digraph.out(v).len()).min().unwrap_or(0);
        let in_min = h.digraph.in_lists().iter().map(Vec::len).min().unwrap_or(0);
        let r = cfg.r.min(semi).min(in_min);
        match regular_subdigraph(&h.digraph, r) {
            Ok(sub) => {
                let (lf, merge) = forest_from_factors(&sub.factors, h.order(), cfg.merge_effort, seed);
                let paths = h.uncontract(&lf.paths);
                let forest = LinearForest::new(g.n(), paths)?;
                return Ok(ForestOutcome {
                    forest,
                    cover_paths: cover.len(),
                    contracted_order: h.order(),
                    r,
                    seed,
                    attempts: attempt + 1,
                    merge,
                    target: cfg.target(g.n(), r),
                });
            }
            Err(e) => {
                log::debug!("orientation {seed}: {e}");
                last = Some(e);
            }
        }
    }
    Err(stage("regular")(last.expect("at least one attempt")))
}
