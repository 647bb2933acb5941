//! Alternating paths with respect to a list of vertex pairs: the random
//! auxiliary digraph, long paths found by depth-first search, good
//! embeddings of directed forests, and disjoint connection of terminal
//! pairs.

mod aux;
mod connect;
mod dfs;
mod embed;

pub use aux::{build_aux, AuxDigraph, AuxVertex};
pub use connect::{connect_pairs, ConnectConfig, Connection};
pub use dfs::{alt_path_spanning, dfs_long_path, sample_st_hypothesis, AltPath, StSample};
pub use embed::{EmbedError, EmbedHost, GoodEmbedding, Node, EXHAUSTIVE_MAX};

use crate::graph::Graph;
use crate::pairs::PairList;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConnectorError {
    #[error("pair vertex {0} is outside the scope")]
    ScopeMissesPair(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("terminal pair {pair} could not be connected after {colourings} colourings: {reason}")]
    PairFailed { pair: usize, reason: String, partial: Vec<Vec<usize>>, colourings: usize },
}

/// Required kind of the first and last step of an alternating path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ends {
    /// Starts and ends inside a pair.
    Pairs,
    /// Starts and ends with a host edge.
    Edges,
    Any,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AltError {
    #[error("vertex {0} repeats")]
    Repeated(usize),
    #[error("{0} and {1} are neither a pair nor adjacent")]
    Gap(usize, usize),
    #[error("two steps of the same kind meet at position {0}")]
    NotAlternating(usize),
    #[error("vertex {0} is on the path without its partner")]
    Unpartnered(usize),
    #[error("path has the wrong kind of end step")]
    WrongEnds,
}

/// Checks that `path` alternates host edges and pairs, where a single-vertex
/// pair counts as a pair step at its vertex.
pub fn validate_alternating(g: &Graph, m: &PairList, path: &[usize], ends: Ends) -> Result<(), AltError> {
    let n = g.n();
    let owner = m.owners(n);
    let mut seen = vec![false; n];
    // true: pair step, false: host edge
    let mut steps: Vec<bool> = Vec::new();
    for (i, &v) in path.iter().enumerate() {
        if std::mem::replace(&mut seen[v], true) {
            return Err(AltError::Repeated(v));
        }
        if i > 0 {
            let u = path[i - 1];
            if owner[u].is_some() && owner[u] == owner[v] {
                steps.push(true);
            } else if g.has_edge(u, v) {
                steps.push(false);
            } else {
                return Err(AltError::Gap(u, v));
            }
        }
        if let Some(p) = owner[v] {
            let (x, y) = m.get(p);
            if x == y {
                steps.push(true);
            } else {
                let partner = if v == x { y } else { x };
                let near = |j: Option<usize>| j.and_then(|j| path.get(j)) == Some(&partner);
                if !near(i.checked_sub(1)) && !near(Some(i + 1)) {
                    return Err(AltError::Unpartnered(v));
                }
            }
        }
    }
    if let Some(i) = steps.windows(2).position(|w| w[0] == w[1]) {
        return Err(AltError::NotAlternating(i + 1));
    }
    let end_ok = |want: bool| steps.first().is_none_or(|&s| s == want) && steps.last().is_none_or(|&s| s == want);
    let ok = match ends {
        Ends::Pairs => end_ok(true),
        Ends::Edges => path.len() >= 2 && end_ok(false),
        Ends::Any => true,
    };
    if ok {
        Ok(())
    } else {
        Err(AltError::WrongEnds)
    }
}
