use super::{Graph, VertexSet};
use thiserror::Error;

const ABSENT: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("vertex {0} appears twice")]
    Repeated(usize),
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("vertex {0} is not on the path")]
    NotOnPath(usize),
    #[error("vertex {0} is not an endpoint")]
    NotEndpoint(usize),
    #[error("{0}-{1} is neither a graph edge nor a declared virtual edge")]
    MissingEdge(usize, usize),
    #[error("pivot {0} is an endpoint")]
    PivotIsEndpoint(usize),
}

/// A simple path stored as a vertex order plus an inverse position table.
///
/// Some consecutive pairs may be declared *virtual*: they stand for a longer
/// detour that an absorbing structure can substitute later.
#[derive(Clone, PartialEq, Eq)]
pub struct PathState {
    order: Vec<usize>,
    pos: Vec<usize>,
    virtual_edges: Vec<(usize, usize)>,
}

impl PathState {
    pub fn new(universe: usize, order: Vec<usize>) -> Result<Self, PathError> {
        let mut pos = vec![ABSENT; universe];
        for (i, &v) in order.iter().enumerate() {
            if v >= universe {
                return Err(PathError::OutOfRange(v));
            }
            if pos[v] != ABSENT {
                return Err(PathError::Repeated(v));
            }
            pos[v] = i;
        }
        Ok(PathState { order, pos, virtual_edges: Vec::new() })
    }

    pub fn single(universe: usize, v: usize) -> Self {
        Self::new(universe, vec![v]).expect("single vertex path")
    }

    pub fn universe(&self) -> usize {
        self.pos.len()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.order
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.order
    }

    pub fn first(&self) -> usize {
        self.order[0]
    }

    pub fn last(&self) -> usize {
        self.order[self.order.len() - 1]
    }

    pub fn is_endpoint(&self, v: usize) -> bool {
        !self.order.is_empty() && (v == self.first() || v == self.last())
    }

    /// The endpoint opposite `v`.
    pub fn other_end(&self, v: usize) -> Option<usize> {
        if self.order.is_empty() {
            None
        } else if v == self.first() {
            Some(self.last())
        } else if v == self.last() {
            Some(self.first())
        } else {
            None
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.pos.len() && self.pos[v] != ABSENT
    }

    #[inline]
    pub fn position(&self, v: usize) -> Option<usize> {
        self.contains(v).then(|| self.pos[v])
    }

    /// Next vertex in path order.
    pub fn succ(&self, v: usize) -> Option<usize> {
        self.position(v).and_then(|i| self.order.get(i + 1).copied())
    }

    /// Previous vertex in path order.
    pub fn pred(&self, v: usize) -> Option<usize> {
        self.position(v).and_then(|i| i.checked_sub(1).map(|j| self.order[j]))
    }

    /// Path neighbours of `v`, sorted, without gaps.
    pub fn path_neighbors(&self, v: usize) -> [Option<usize>; 2] {
        let (a, b) = (self.pred(v), self.succ(v));
        match (a, b) {
            (Some(x), Some(y)) => [Some(x.min(y)), Some(x.max(y))],
            (x, None) | (None, x) => [x, None],
        }
    }

    /// The neighbour of `v` one step towards `toward` (an endpoint).
    pub fn step_toward(&self, v: usize, toward: usize) -> Option<usize> {
        if toward == self.last() {
            self.succ(v)
        } else {
            self.pred(v)
        }
    }

    pub fn add_virtual_edge(&mut self, u: usize, v: usize) {
        let e = (u.min(v), u.max(v));
        if !self.virtual_edges.contains(&e) {
            self.virtual_edges.push(e);
        }
    }

    pub fn is_virtual(&self, u: usize, v: usize) -> bool {
        self.virtual_edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn virtual_edges(&self) -> &[(usize, usize)] {
        &self.virtual_edges
    }

    /// Checks that consecutive vertices are joined by graph or virtual edges.
    pub fn validate(&self, g: &Graph) -> Result<(), PathError> {
        for w in self.order.windows(2) {
            if !g.has_edge(w[0], w[1]) && !self.is_virtual(w[0], w[1]) {
                return Err(PathError::MissingEdge(w[0], w[1]));
            }
        }
        Ok(())
    }

    pub fn push_back(&mut self, v: usize) -> Result<(), PathError> {
        self.check_fresh(v)?;
        self.pos[v] = self.order.len();
        self.order.push(v);
        Ok(())
    }

    pub fn push_front(&mut self, v: usize) -> Result<(), PathError> {
        self.check_fresh(v)?;
        self.order.insert(0, v);
        self.reindex(0, self.order.len());
        Ok(())
    }

    fn check_fresh(&self, v: usize) -> Result<(), PathError> {
        if v >= self.pos.len() {
            Err(PathError::OutOfRange(v))
        } else if self.pos[v] != ABSENT {
            Err(PathError::Repeated(v))
        } else {
            Ok(())
        }
    }

    pub fn reverse(&mut self) {
        self.order.reverse();
        self.reindex(0, self.order.len());
    }

    pub fn reversed(&self) -> Self {
        let mut p = self.clone();
        p.reverse();
        p
    }

    fn reindex(&mut self, from: usize, to: usize) {
        for i in from..to {
            self.pos[self.order[i]] = i;
        }
    }

    /// Rotation keeping `fixed` in place: with the far endpoint adjacent to
    /// `pivot`, the segment between the pivot and the far end is reversed.
    /// Returns the new far endpoint. A pivot next to the far endpoint leaves
    /// the path unchanged.
    pub fn rotate_in_place(&mut self, g: &Graph, fixed: usize, pivot: usize) -> Result<usize, PathError> {
        let far = self.other_end(fixed).ok_or(PathError::NotEndpoint(fixed))?;
        let p = self.position(pivot).ok_or(PathError::NotOnPath(pivot))?;
        if pivot == far || pivot == fixed {
            return Err(PathError::PivotIsEndpoint(pivot));
        }
        if !g.has_edge(far, pivot) {
            return Err(PathError::MissingEdge(far, pivot));
        }
        if self.step_toward(pivot, far) == Some(far) {
            return Ok(far);
        }
        let n = self.order.len();
        if fixed == self.order[0] {
            self.order[p + 1..].reverse();
            self.reindex(p + 1, n);
            Ok(self.order[n - 1])
        } else {
            self.order[..p].reverse();
            self.reindex(0, p);
            Ok(self.order[0])
        }
    }

    pub fn rotate(&self, g: &Graph, fixed: usize, pivot: usize) -> Result<PathState, PathError> {
        let mut p = self.clone();
        p.rotate_in_place(g, fixed, pivot)?;
        Ok(p)
    }
}

impl std::fmt::Debug for PathState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PathState{:?}", self.order)
    }
}

/// Vertices whose set of path neighbours differs between `p` and `q`.
pub fn dif(p: &PathState, q: &PathState) -> VertexSet {
    let mut out = VertexSet::new(p.universe());
    for &v in p.vertices().iter().chain(q.vertices()) {
        if p.path_neighbors(v) != q.path_neighbors(v) || p.contains(v) != q.contains(v) {
            out.insert(v);
        }
    }
    out
}

/// Vertices of `x` on the path whose two path neighbours both lie in `x`.
pub fn interior(p: &PathState, x: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new(p.universe());
    let ord = p.vertices();
    for i in 1..ord.len().saturating_sub(1) {
        if x.contains(ord[i - 1]) && x.contains(ord[i]) && x.contains(ord[i + 1]) {
            out.insert(ord[i]);
        }
    }
    out
}

/// Maximal runs of path positions lying in `a`, as inclusive index ranges.
pub fn components_on(p: &PathState, a: &VertexSet) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = None;
    for (i, &v) in p.vertices().iter().enumerate() {
        match (a.contains(v), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                runs.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((s, p.len() - 1));
    }
    runs
}
