use super::AbsorbError;
use crate::connector::alt_path_spanning;
use crate::graph::{Cycle, Graph, PathState, VertexSet};
use crate::pairs::PairList;
use crate::spectral::{pair_clean_with_threshold, HostParams};

/// Rotates and orients `c` so that it starts with its lexicographically
/// smallest edge `(b, e)`, `b < e`.
pub fn normalize_cycle(c: &Cycle) -> Cycle {
    let k = c.len();
    let key = |i: usize| {
        let (u, v) = (c.order[i], c.order[(i + 1) % k]);
        (u.min(v), u.max(v))
    };
    let i = (0..k).min_by_key(|&i| key(i)).expect("non-empty cycle");
    let order = if c.order[i] < c.order[(i + 1) % k] {
        (0..k).map(|j| c.order[(i + j) % k]).collect()
    } else {
        (0..k).map(|j| c.order[(i + 1 + k - j) % k]).collect()
    };
    Cycle::new(order)
}

/// The vertices nearest to the chosen edge of a normalized cycle but not on
/// it: the neighbour of `order[0]` first, that of `order[1]` second. They
/// coincide on a triangle.
pub fn flexible_pair(c: &Cycle) -> (usize, usize) {
    (c.order[c.len() - 1], c.order[2])
}

/// Checks that `spine` contains the chosen edge of every normalized cycle
/// and no other vertex of it.
pub fn check_connects(g: &Graph, spine: &PathState, cycles: &[Cycle]) -> Result<(), String> {
    spine.validate(g).map_err(|e| e.to_string())?;
    for (i, c) in cycles.iter().enumerate() {
        match (spine.position(c.order[0]), spine.position(c.order[1])) {
            (Some(p), Some(q)) if p.abs_diff(q) == 1 => {}
            _ => return Err(format!("edge of cycle {i} is not on the spine")),
        }
        if let Some(&v) = c.order[2..].iter().find(|&&v| spine.contains(v)) {
            return Err(format!("vertex {v} of cycle {i} is on the spine"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Threaded {
    pub spine: PathState,
    /// Connected cycles, normalized, in spine order.
    pub cycles: Vec<Cycle>,
    /// Cycles the spine missed.
    pub missed: Vec<Cycle>,
}

/// Colourings tried by [`thread_cycles`]; the longest path wins.
pub const THREAD_COLOURINGS: u64 = 16;

/// Threads the cycles on one path: the chosen edges form a pair list and
/// a long alternating path through it becomes the spine.
pub fn thread_cycles(g: &Graph, cycles: &[Cycle], k: usize, seed: u64) -> Result<Threaded, AbsorbError> {
    let n = g.n();
    let normal: Vec<Cycle> = cycles.iter().map(normalize_cycle).collect();
    let pairs = PairList::new(n, normal.iter().map(|c| (c.order[0], c.order[1])).collect())
        .map_err(|e| AbsorbError::Precondition(format!("cycles are not disjoint: {e}")))?;
    let mut alt = alt_path_spanning(g, &pairs, k, seed)?;
    for i in 1..THREAD_COLOURINGS {
        if alt.pairs.len() == pairs.len() {
            break;
        }
        let next = alt_path_spanning(g, &pairs, k, seed.wrapping_add(i))?;
        if next.pairs.len() > alt.pairs.len() {
            alt = next;
        }
    }
    if alt.pairs.is_empty() {
        return Err(AbsorbError::TooFewCycles { stage: "thread", found: 0, needed: 1 });
    }
    let spine = PathState::new(n, alt.vertices).map_err(|e| AbsorbError::Connects(e.to_string()))?;
    let mut on = vec![false; normal.len()];
    for &i in &alt.pairs {
        on[i] = true;
    }
    let used: Vec<Cycle> = alt.pairs.iter().map(|&i| normal[i].clone()).collect();
    let missed = normal.iter().zip(&on).filter(|(_, &o)| !o).map(|(c, _)| c.clone()).collect();
    check_connects(g, &spine, &used).map_err(AbsorbError::Connects)?;
    Ok(Threaded { spine, cycles: used, missed })
}

#[derive(Debug, Clone)]
pub struct Trimmed {
    pub spine: PathState,
    pub cycles: Vec<Cycle>,
    pub flexible: PairList,
    /// Minimum flexible degree inside the flexible set.
    pub delta: f64,
    /// Minimum flexible degree at both spine ends, at least `delta`.
    pub end_delta: f64,
    /// Cycles dropped at the ends of the spine.
    pub trimmed: usize,
    /// Cycles dropped by pair cleaning.
    pub cleaned: usize,
}

/// Keeps the cycles in the middle of the spine, cleans their flexible
/// pairs, then moves both spine ends inward to vertices with at least
/// `max(δ, end_frac · d|V_flex|/n)` flexible neighbours. The new ends lie outside the span of the kept
/// edges, so the spine still connects the kept cycles.
pub fn trim_and_clean(
    g: &Graph,
    threaded: &Threaded,
    host: &HostParams,
    trim_frac: f64,
    flex_lambda: Option<f64>,
    end_frac: f64,
) -> Result<Trimmed, AbsorbError> {
    let n = g.n();
    let t = threaded.cycles.len();
    let cut = (trim_frac * t as f64).floor() as usize;
    let middle: Vec<Cycle> = threaded.cycles[cut..t - cut].to_vec();
    if middle.is_empty() {
        return Err(AbsorbError::TooFewCycles { stage: "trim", found: 0, needed: 1 });
    }
    let pairs = PairList::new(n, middle.iter().map(flexible_pair).collect()).expect("cycles are disjoint");
    let base = host.d * pairs.vertices(n).len() as f64 / (4.0 * n as f64);
    let delta = flex_lambda.map_or(base, |c| (c * host.lambda).max(base));
    let clean = pair_clean_with_threshold(g, &pairs, host, delta)?;
    let cycles: Vec<Cycle> = clean.kept.iter().map(|&i| middle[i].clone()).collect();
    let flexible = clean.pairs;
    let flex = flexible.vertices(n);
    let end_delta = delta.max(end_frac * host.d * flex.len() as f64 / n as f64);
    let spine = &threaded.spine;
    let span: Vec<usize> = cycles.iter().flat_map(|c| [c.order[0], c.order[1]]).map(|v| spine.position(v).unwrap()).collect();
    let (lo, hi) = (*span.iter().min().unwrap(), *span.iter().max().unwrap());
    let good = |i: usize| g.degree_into(spine.vertices()[i], &flex) as f64 >= end_delta;
    let start = (0..=lo).find(|&i| good(i)).ok_or(AbsorbError::NoEndpoint { side: "first", needed: end_delta })?;
    let end = (hi..spine.len()).rev().find(|&i| good(i)).ok_or(AbsorbError::NoEndpoint { side: "last", needed: end_delta })?;
    let spine = PathState::new(n, spine.vertices()[start..=end].to_vec()).expect("sub-path of a path");
    check_connects(g, &spine, &cycles).map_err(AbsorbError::Connects)?;
    Ok(Trimmed { spine, cycles, flexible, delta, end_delta, trimmed: t - middle.len(), cleaned: clean.removed.len() })
}

/// Vertices covered by the spine and the cycles.
pub(crate) fn occupied(n: usize, spine: &PathState, cycles: &[Cycle]) -> VertexSet {
    let mut on = VertexSet::from_iter(n, spine.vertices().iter().copied());
    for c in cycles {
        for &v in &c.order {
            on.insert(v);
        }
    }
    on
}
