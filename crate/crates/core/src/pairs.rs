//! Collections of vertex-disjoint pairs. A pair `(x, x)` stands for a single
//! vertex playing both roles.

use crate::graph::VertexSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("vertex {0} occurs in more than one pair")]
    Overlap(usize),
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairList {
    pairs: Vec<(usize, usize)>,
}

impl PairList {
    pub fn new(universe: usize, pairs: Vec<(usize, usize)>) -> Result<Self, PairError> {
        let mut seen = vec![false; universe];
        for &(x, y) in &pairs {
            for v in if x == y { vec![x] } else { vec![x, y] } {
                if v >= universe {
                    return Err(PairError::OutOfRange(v));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(PairError::Overlap(v));
                }
            }
        }
        Ok(PairList { pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn as_slice(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn vertices(&self, universe: usize) -> VertexSet {
        VertexSet::from_iter(universe, self.pairs.iter().flat_map(|&(x, y)| [x, y]))
    }

    /// `owner[v] = Some(i)` when `v` belongs to pair `i`.
    pub fn owners(&self, universe: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; universe];
        for (i, &(x, y)) in self.pairs.iter().enumerate() {
            owner[x] = Some(i);
            owner[y] = Some(i);
        }
        owner
    }

    pub fn subset(&self, keep: &[usize]) -> PairList {
        PairList { pairs: keep.iter().map(|&i| self.pairs[i]).collect() }
    }
}
