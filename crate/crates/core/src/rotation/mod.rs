//! Pósa rotation-extension: rotations with restricted pivots, clean
//! collections of subpaths, closing paths into cycles, and the Hamilton
//! cycle driver built from them.

mod close;
mod expansion;
mod partition;
mod pipeline;

pub use close::{close_by_rotation, close_path, component_count, CloseSets, Closing};
pub use expansion::{
    default_target, endpoint_expansion, hop_into, replay, rotate_into_set, ExpansionSpec, Hypothesis, RotationOutcome,
    Step,
};
pub use partition::{clean_partition, cleanliness, fit_interval_count, path_clean, CleanCollection, PartitionError};
pub use pipeline::{extend_path, hamilton_rotation, splitmix, ClosingCounts, RotationRun, StageRecord};

use crate::graph::{Graph, PathError, PathState};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RotationError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("vertex {0} is not an endpoint")]
    NotEndpoint(usize),
    #[error("no witness for endpoint {0}")]
    UnknownEndpoint(usize),
    #[error("replay reached {got}, expected {expected}")]
    ReplayMismatch { expected: usize, got: usize },
    #[error("stage {stage} stalled after {found} candidates")]
    Stall { stage: &'static str, found: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

/// Constants of the rotation pipeline. [`RotationConfig::asymptotic`] gives the
/// asymptotic values; the default is tuned for a few thousand vertices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RotationConfig {
    /// `δ = delta_frac · d`.
    pub delta_frac: f64,
    /// Number of intervals per clean collection; `None` means
    /// `⌈k_scale · log₂ n⌉`.
    pub k: Option<usize>,
    pub k_scale: f64,
    /// Spread parameter; `None` means `gamma_const / (log₂ n)^{1/3}`.
    pub gamma: Option<f64>,
    pub gamma_const: f64,
    /// Rotations per expansion; `None` means `⌈log₂ n⌉`.
    pub depth_cap: Option<usize>,
    /// Endpoints collected per expansion when no smaller target applies.
    pub explore_limit: usize,
    pub retries: usize,
    pub seed: u64,
    /// Graphs up to this order fall back to exact search.
    pub exact_below: usize,
    /// Try the clean-collection route before the plain double rotation.
    pub collections: bool,
    /// Paths shorter than this skip the clean-collection route.
    pub collections_min: usize,
}

impl Default for RotationConfig {
    fn default() -> Self {
        RotationConfig {
            delta_frac: 0.01,
            k: None,
            k_scale: 1.0,
            gamma: Some(0.5),
            gamma_const: 1.0,
            depth_cap: None,
            explore_limit: 512,
            retries: 50,
            seed: 0,
            exact_below: 16,
            collections: true,
            collections_min: 64,
        }
    }
}

impl RotationConfig {
    /// `δ = d/100`, `k = 30 log₂ n`, `γ = C/(log₂ n)^{1/3}` with `C = 1`.
    pub fn asymptotic() -> Self {
        RotationConfig { k_scale: 30.0, gamma: None, ..Self::default() }
    }

    pub fn k_for(&self, n: usize) -> usize {
        self.k.unwrap_or_else(|| (self.k_scale * log2(n)).ceil().max(1.0) as usize)
    }

    pub fn gamma_for(&self, n: usize) -> f64 {
        self.gamma.unwrap_or_else(|| (self.gamma_const / log2(n).max(1.0).cbrt()).min(1.0))
    }

    pub fn cap_for(&self, n: usize) -> usize {
        self.depth_cap.unwrap_or_else(|| log2(n).ceil().max(1.0) as usize)
    }
}

fn log2(n: usize) -> f64 {
    (n.max(2) as f64).log2()
}

/// A single rotation with the given fixed endpoint. A pivot adjacent to the
/// far endpoint leaves the path unchanged.
pub fn rotate(g: &Graph, p: &PathState, fixed: usize, pivot: usize) -> Result<PathState, RotationError> {
    Ok(p.rotate(g, fixed, pivot)?)
}
