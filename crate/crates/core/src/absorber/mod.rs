//! Hamilton cycles by absorption: thread short disjoint cycles into a spine
//! path, keep one flexible pair per cycle, cover the rest by few paths with
//! well-connected ends, join everything through the flexible pairs and
//! absorb the cycles that were not needed.

mod cycles;
mod spine;
mod weave;

pub use cycles::{find_disjoint_cycles, sparsify_cycles, SparsifyParams};
pub use spine::{
    check_connects, flexible_pair, normalize_cycle, thread_cycles, trim_and_clean, Threaded, Trimmed, THREAD_COLOURINGS,
};
pub use weave::{
    assemble_good_collection, cycle_supply, hamilton_absorb, hamilton_auto, hamilton_from_collection, AbsorbRun,
    Assembly, AutoRun, Strategy, Supply,
};

use crate::connector::{ConnectConfig, ConnectorError};
use crate::forest::{ForestConfig, ForestError, LinearForest};
use crate::graph::{Cycle, Graph, PathState, VertexSet};
use crate::pairs::PairList;
use crate::spectral::SpectralError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AbsorbError {
    #[error("no sparsification kept {needed} cycles with every vertex outside them enough; last: vertex {vertex} has {outside} outside neighbours with {kept} cycles kept")]
    Sparsify { vertex: usize, outside: usize, kept: usize, needed: usize },
    #[error("stage {stage} left {found} cycles, {needed} needed")]
    TooFewCycles { stage: &'static str, found: usize, needed: usize },
    #[error("no spine vertex near the {side} end has {needed} flexible neighbours")]
    NoEndpoint { side: &'static str, needed: f64 },
    #[error("spine does not connect the cycles: {0}")]
    Connects(String),
    #[error(transparent)]
    Clean(#[from] SpectralError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error("{paths} residual paths exceed the limit {limit}")]
    TooManyPaths { paths: usize, limit: usize },
    #[error(transparent)]
    Connector(#[from] ConnectorError),
    #[error("collection is not good: {0}")]
    Collection(#[from] CollectionDefect),
    #[error("woven cycle failed verification: {0}")]
    Weave(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Constants of the absorbing pipeline. [`AbsorbConfig::asymptotic`] keeps the
/// asymptotic ratios; the default suits graphs of a few thousand
/// vertices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AbsorbConfig {
    /// Longest cycle searched for; `None` means `max(4, ⌈log₂ n⌉)`.
    pub max_cycle_len: Option<usize>,
    /// Cycles looked for, as a fraction of `n`.
    pub cycle_frac: f64,
    pub keep_prob: f64,
    pub outside_frac: f64,
    pub min_kept_frac: f64,
    pub sparsify_seeds: usize,
    /// The threading path may skip about `2k` cycles with
    /// `k = ⌈k_scale · λn/d⌉`; zero lets the search run to the end.
    pub k_scale: f64,
    /// Fraction of threaded cycles dropped at each end of the spine.
    pub trim_frac: f64,
    /// Flexible degree `δ = c·λ` when set; otherwise the pair-cleaning
    /// threshold `d|V_flex|/4n`.
    pub flex_lambda: Option<f64>,
    /// Path ends need `max(δ, end_frac · d|V_flex|/n)` flexible neighbours,
    /// a fraction of the expected count.
    pub end_frac: f64,
    /// `δ` handed to the forest stage is `forest_delta_frac · d`.
    pub forest_delta_frac: f64,
    /// Residual paths allowed: `residual_slack · l / (100 log₂ n)`.
    pub residual_slack: f64,
    pub forest: ForestConfig,
    pub connect: ConnectConfig,
    pub retries: usize,
    pub seed: u64,
    /// Graphs up to this order are solved exactly.
    pub exact_below: usize,
    /// `auto` absorbs when `d/λ ≥ supply_ratio · log_d n` and enough short
    /// cycles exist.
    pub supply_ratio: f64,
}

impl Default for AbsorbConfig {
    fn default() -> Self {
        AbsorbConfig {
            max_cycle_len: None,
            cycle_frac: 0.25,
            keep_prob: 0.8,
            outside_frac: 0.1,
            min_kept_frac: 0.7,
            sparsify_seeds: 10,
            k_scale: 0.0,
            trim_frac: 0.1,
            flex_lambda: None,
            end_frac: 0.5,
            forest_delta_frac: 0.01,
            residual_slack: 100.0,
            forest: ForestConfig::default(),
            connect: ConnectConfig::default(),
            retries: 10,
            seed: 0,
            exact_below: 16,
            supply_ratio: 1.0,
        }
    }
}

impl AbsorbConfig {
    /// `k = λn/d`, thirds trimmed, `500λ`-clean flexible set, at most
    /// `l/(100 log n)` residual paths.
    pub fn asymptotic() -> Self {
        AbsorbConfig {
            k_scale: 1.0,
            trim_frac: 1.0 / 3.0,
            flex_lambda: Some(500.0),
            end_frac: 0.0,
            residual_slack: 1.0,
            connect: ConnectConfig::asymptotic(),
            ..Self::default()
        }
    }

    pub fn max_len_for(&self, n: usize) -> usize {
        self.max_cycle_len.unwrap_or_else(|| ((n.max(2) as f64).log2().ceil() as usize).max(4))
    }

    pub fn sparsify(&self) -> SparsifyParams {
        SparsifyParams {
            keep_prob: self.keep_prob,
            outside_frac: self.outside_frac,
            min_kept_frac: self.min_kept_frac,
            seeds: self.sparsify_seeds,
        }
    }
}

/// Spine, cycles, flexible pairs and residual paths.
///
/// Every cycle is stored starting with the two ends of its chosen edge
/// `e_i`, so `order[0] order[1]` is the edge on the spine and the flexible
/// pair is `(order[len-1], order[2])`.
#[derive(Debug, Clone)]
pub struct GoodCollection {
    pub spine: PathState,
    pub cycles: Vec<Cycle>,
    pub flexible: PairList,
    pub residual: LinearForest,
    /// Number of paths, spine included.
    pub r: usize,
    pub l: usize,
    pub delta: f64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CollectionDefect {
    #[error("spine: {0}")]
    Spine(String),
    #[error("cycle {0} is not a cycle of the graph")]
    BadCycle(usize),
    #[error("edge of cycle {0} is not on the spine")]
    EdgeOffSpine(usize),
    #[error("cycle {0} meets the spine outside its edge")]
    CycleOnSpine(usize),
    #[error("vertex {0} is covered twice")]
    Overlap(usize),
    #[error("vertex {0} is not covered")]
    Uncovered(usize),
    #[error("residual path {0} uses a non-edge")]
    Residual(usize),
    #[error("flexible pair {0} does not match its cycle")]
    FlexibleMismatch(usize),
    #[error("flexible vertex {vertex} has {degree} flexible neighbours")]
    FlexibleDegree { vertex: usize, degree: usize },
    #[error("endpoint {vertex} has {degree} flexible neighbours")]
    EndpointDegree { vertex: usize, degree: usize },
    #[error("path count {r} does not match")]
    Count { r: usize },
}

impl GoodCollection {
    /// All paths, spine first.
    pub fn paths(&self) -> Vec<&[usize]> {
        std::iter::once(self.spine.vertices()).chain(self.residual.paths.iter().map(Vec::as_slice)).collect()
    }

    /// Checks the three defining properties together with the
    /// bookkeeping of the struct itself.
    pub fn check(&self, g: &Graph) -> Result<(), CollectionDefect> {
        let n = g.n();
        self.spine.validate(g).map_err(|e| CollectionDefect::Spine(e.to_string()))?;
        if self.spine.len() < 2 {
            return Err(CollectionDefect::Spine("fewer than two vertices".into()));
        }
        if self.r != 1 + self.residual.len() || self.l != self.cycles.len() || self.flexible.len() != self.l {
            return Err(CollectionDefect::Count { r: self.r });
        }
        let mut seen = vec![false; n];
        let mut cover = |v: usize| if std::mem::replace(&mut seen[v], true) { Err(CollectionDefect::Overlap(v)) } else { Ok(()) };
        for &v in self.spine.vertices() {
            cover(v)?;
        }
        for (i, c) in self.cycles.iter().enumerate() {
            if c.len() < 3 || c.check(g).is_err() {
                return Err(CollectionDefect::BadCycle(i));
            }
            let (b, e) = (c.order[0], c.order[1]);
            if self.spine.position(b).zip(self.spine.position(e)).is_none_or(|(p, q)| p.abs_diff(q) != 1) {
                return Err(CollectionDefect::EdgeOffSpine(i));
            }
            for &v in &c.order[2..] {
                if self.spine.contains(v) {
                    return Err(CollectionDefect::CycleOnSpine(i));
                }
                cover(v)?;
            }
            if self.flexible.get(i) != (c.order[c.len() - 1], c.order[2]) {
                return Err(CollectionDefect::FlexibleMismatch(i));
            }
        }
        for (i, p) in self.residual.paths.iter().enumerate() {
            if p.is_empty() || p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return Err(CollectionDefect::Residual(i));
            }
            for &v in p {
                cover(v)?;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(CollectionDefect::Uncovered(v));
        }
        let flex = self.flexible.vertices(n);
        for v in flex.iter() {
            let degree = g.degree_into(v, &flex);
            if (degree as f64) < self.delta {
                return Err(CollectionDefect::FlexibleDegree { vertex: v, degree });
            }
        }
        for p in self.paths() {
            for v in [p[0], p[p.len() - 1]] {
                let degree = g.degree_into(v, &flex);
                if (degree as f64) < self.delta {
                    return Err(CollectionDefect::EndpointDegree { vertex: v, degree });
                }
            }
        }
        Ok(())
    }

    /// Vertices of the flexible pairs.
    pub fn flexible_set(&self) -> VertexSet {
        self.flexible.vertices(self.spine.universe())
    }
}
