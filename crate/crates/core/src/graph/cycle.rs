use super::Graph;
use serde::{Deserialize, Serialize};

/// A cycle as a cyclic vertex order; the closing edge is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cycle {
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CycleDefect {
    TooShort { len: usize },
    WrongLength { expected: usize, got: usize },
    OutOfRange { vertex: usize },
    Repeated { vertex: usize },
    MissingEdge { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub defect: Option<CycleDefect>,
}

impl Cycle {
    pub fn new(order: Vec<usize>) -> Self {
        Cycle { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.order.len();
        (0..k).map(move |i| (self.order[i], self.order[(i + 1) % k]))
    }

    /// Checks that this is a simple cycle of `g` (not necessarily spanning).
    pub fn check(&self, g: &Graph) -> Result<(), CycleDefect> {
        if self.order.len() < 3 {
            return Err(CycleDefect::TooShort { len: self.order.len() });
        }
        let mut seen = vec![false; g.n()];
        for &v in &self.order {
            if v >= g.n() {
                return Err(CycleDefect::OutOfRange { vertex: v });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(CycleDefect::Repeated { vertex: v });
            }
        }
        match self.edges().find(|&(u, v)| !g.has_edge(u, v)) {
            Some((u, v)) => Err(CycleDefect::MissingEdge { u, v }),
            None => Ok(()),
        }
    }
}

/// Independent check that `c` is a Hamilton cycle of `g`.
pub fn verify_hamilton_cycle(g: &Graph, c: &Cycle) -> Verdict {
    let defect = if c.len() != g.n() && c.len() >= 3 {
        Some(CycleDefect::WrongLength { expected: g.n(), got: c.len() })
    } else {
        c.check(g).err()
    };
    Verdict { ok: defect.is_none(), defect }
}
