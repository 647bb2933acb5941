use super::ForestError;
use crate::digraph::Digraph;
use crate::matching::max_matching;

/// An `r`-regular spanning subdigraph as `r` arc-disjoint 1-factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubdigraph {
    /// `factors[j][v]` is the out-neighbour of `v` in factor `j`.
    pub factors: Vec<Vec<usize>>,
}

impl RegularSubdigraph {
    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn union(&self) -> Digraph {
        let n = self.factors.first().map_or(0, Vec::len);
        Digraph::from_arcs(n, self.factors.iter().flat_map(|f| f.iter().enumerate().map(|(u, &v)| (u, v))))
    }
}

/// `r` rounds of perfect matching between out-copies and in-copies, each
/// round avoiding the arcs already taken.
pub fn regular_subdigraph(h: &Digraph, r: usize) -> Result<RegularSubdigraph, ForestError> {
    let n = h.n();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| h.out(v).to_vec()).collect();
    let mut factors = Vec::with_capacity(r);
    for round in 0..r {
        let m = max_matching(&adj, n);
        if !m.is_left_perfect() {
            return Err(ForestError::Factor { round, witness: m.hall_violator(&adj) });
        }
        let succ: Vec<usize> = m.left.iter().map(|t| t.unwrap()).collect();
        for (u, &v) in succ.iter().enumerate() {
            adj[u].retain(|&w| w != v);
        }
        factors.push(succ);
    }
    Ok(RegularSubdigraph { factors })
}
