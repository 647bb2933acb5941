//! Minimal directed graph with sorted out-lists.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { out: vec![Vec::new(); n] }
    }

    /// Builds from arcs, dropping loops and duplicates.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u != v {
                out[u].push(v);
            }
        }
        for l in out.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        Digraph { out }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    pub fn in_lists(&self) -> Vec<Vec<usize>> {
        let mut inn = vec![Vec::new(); self.n()];
        for (u, v) in self.arcs() {
            inn[v].push(u);
        }
        inn
    }

    pub fn min_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).min().unwrap_or(0)
    }
}
