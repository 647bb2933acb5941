use super::RotationError;
use crate::graph::{interior, Graph, PathState, VertexSet};
use serde::Serialize;
use std::collections::{HashMap, VecDeque};

/// One rotation in a witness script: the pivot and the endpoint it created.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Step {
    pub pivot: usize,
    pub new_end: usize,
}

/// Whether the robust-rotation hypothesis relative to a base path was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    NotApplicable,
    Verified,
    Violated,
    Trusted,
}

/// Parameters of one endpoint expansion.
#[derive(Debug, Clone)]
pub struct ExpansionSpec<'a> {
    pub fixed: usize,
    /// Pivots must lie in the interior of this set on the rotated path and
    /// broken edges must be edges of that path.
    pub restrict: Option<&'a VertexSet>,
    /// New endpoints may not lie here.
    pub avoid: Option<&'a VertexSet>,
    /// Reference path for the robust hypothesis; only audited.
    pub base: Option<&'a PathState>,
    /// Damage set `Y`: each witness keeps `|dif ∩ Y| ≤ 3 log₂|Y|`.
    pub budget_set: Option<&'a VertexSet>,
    /// Cleanliness parameter of `restrict`, used by the hypothesis audit.
    pub delta: Option<f64>,
    /// Stop as soon as an endpoint of this set is discovered.
    pub stop_on: Option<&'a VertexSet>,
    pub cap: usize,
    pub target: usize,
}

impl<'a> ExpansionSpec<'a> {
    pub fn new(fixed: usize, cap: usize, target: usize) -> Self {
        ExpansionSpec {
            fixed,
            restrict: None,
            avoid: None,
            base: None,
            budget_set: None,
            delta: None,
            stop_on: None,
            cap,
            target,
        }
    }

    pub fn restrict(mut self, x: &'a VertexSet) -> Self {
        self.restrict = Some(x);
        self
    }

    pub fn avoid(mut self, a: &'a VertexSet) -> Self {
        self.avoid = Some(a);
        self
    }

    pub fn base(mut self, b: &'a PathState, delta: f64) -> Self {
        self.base = Some(b);
        self.delta = Some(delta);
        self
    }

    pub fn budget(mut self, y: &'a VertexSet) -> Self {
        self.budget_set = Some(y);
        self
    }

    pub fn stop_on(mut self, s: &'a VertexSet) -> Self {
        self.stop_on = Some(s);
        self
    }
}

/// Default number of endpoints an expansion aims for: `δn/200d` when
/// restricted to a clean set, `n/100` otherwise.
pub fn default_target(n: usize, d: f64, delta: Option<f64>) -> usize {
    let t = match delta {
        Some(delta) if d > 0.0 => delta * n as f64 / (200.0 * d),
        _ => n as f64 / 100.0,
    };
    (t.ceil() as usize).max(1)
}

/// The nested endpoint sets reached by rotations with a fixed endpoint,
/// each with a replayable script.
#[derive(Debug, Clone, Serialize)]
pub struct RotationOutcome {
    pub fixed: usize,
    /// Moving endpoint of the source path.
    pub source_end: usize,
    /// New endpoints reached by at least one rotation.
    pub endpoints: VertexSet,
    #[serde(skip)]
    pub witness: HashMap<usize, Vec<Step>>,
    /// Discovery order of the endpoints.
    pub order: Vec<usize>,
    /// `|Z_i|` after each round, starting with round 1.
    pub layers: Vec<usize>,
    pub depth: usize,
    pub target: usize,
    pub stalled: bool,
    pub rotations: usize,
    pub hypothesis: Hypothesis,
}

impl RotationOutcome {
    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn script(&self, z: usize) -> Option<&[Step]> {
        if z == self.source_end {
            return Some(&[]);
        }
        self.witness.get(&z).map(Vec::as_slice)
    }

    /// Rebuilds the path ending at `z` from the source path.
    pub fn replay(&self, g: &Graph, source: &PathState, z: usize) -> Result<PathState, RotationError> {
        let script = self.script(z).ok_or(RotationError::UnknownEndpoint(z))?;
        replay(g, source, self.fixed, script)
    }
}

/// Applies a script of rotations with the given fixed endpoint.
pub fn replay(g: &Graph, source: &PathState, fixed: usize, script: &[Step]) -> Result<PathState, RotationError> {
    let mut p = source.clone();
    for s in script {
        let end = p.rotate_in_place(g, fixed, s.pivot)?;
        if end != s.new_end {
            return Err(RotationError::ReplayMismatch { expected: s.new_end, got: end });
        }
    }
    Ok(p)
}

/// Vertices whose path neighbourhood differs, restricted to a candidate set.
fn dif_among(a: &PathState, b: &PathState, candidates: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = candidates.into_iter().filter(|&v| a.path_neighbors(v) != b.path_neighbors(v)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn ball(g: &Graph, src: usize, radius: usize) -> VertexSet {
    let mut seen = VertexSet::new(g.n());
    seen.insert(src);
    let mut queue = VecDeque::from([(src, 0)]);
    while let Some((v, r)) = queue.pop_front() {
        if r == radius {
            continue;
        }
        for &w in g.neighbors(v) {
            if seen.insert(w) {
                queue.push_back((w, r + 1));
            }
        }
    }
    seen
}

/// Audits "at most δ/2 lost interior vertices near the moving endpoint".
fn audit_hypothesis(g: &Graph, p: &PathState, spec: &ExpansionSpec<'_>, end: usize) -> Hypothesis {
    let (Some(base), Some(x), Some(delta)) = (spec.base, spec.restrict, spec.delta) else {
        return Hypothesis::NotApplicable;
    };
    if base == p {
        return Hypothesis::NotApplicable;
    }
    let changed = crate::graph::dif(base, p).len();
    if changed > 32 {
        log::debug!("robust rotation hypothesis trusted (|dif| = {changed})");
        return Hypothesis::Trusted;
    }
    let radius = (2.0 * (changed.max(1) as f64).log2()).floor() as usize;
    let near = ball(g, end, radius);
    let lost = interior(base, x).difference(&interior(p, x));
    if lost.intersection_len(&near) as f64 <= delta / 2.0 {
        Hypothesis::Verified
    } else {
        Hypothesis::Violated
    }
}

/// Breadth-first search over rotation endpoints.
///
/// Round `i + 1` tries, for every endpoint `z` found in round `i` (in
/// increasing order) and every neighbour pivot `v` of `z` (in increasing
/// order), the rotation of the path ending at `z` with pivot `v`.
pub fn endpoint_expansion(g: &Graph, p: &PathState, spec: &ExpansionSpec<'_>) -> Result<RotationOutcome, RotationError> {
    let fixed = spec.fixed;
    let source_end = p.other_end(fixed).ok_or(RotationError::NotEndpoint(fixed))?;
    let n = g.n();
    let pivots = spec.restrict.map(|x| interior(p, x));
    let budget = spec.budget_set.map(|y| 3.0 * (y.len().max(1) as f64).log2());
    let mut out = RotationOutcome {
        fixed,
        source_end,
        endpoints: VertexSet::new(n),
        witness: HashMap::new(),
        order: Vec::new(),
        layers: Vec::new(),
        depth: 0,
        target: spec.target,
        stalled: false,
        rotations: 0,
        hypothesis: audit_hypothesis(g, p, spec, source_end),
    };
    if spec.stop_on.is_some_and(|s| s.contains(source_end)) {
        return Ok(out);
    }
    let mut seen = VertexSet::new(n);
    seen.insert(source_end);
    // frontier entries: (endpoint, script, dif against the source)
    let mut frontier: Vec<(usize, Vec<Step>, Vec<usize>)> = vec![(source_end, Vec::new(), Vec::new())];
    'rounds: for round in 0..spec.cap {
        let mut next = Vec::new();
        for (z, script, difs) in &frontier {
            let q = replay(g, p, fixed, script)?;
            for &v in g.neighbors(*z) {
                if v == fixed || v == *z || !q.contains(v) {
                    continue;
                }
                if let Some(piv) = &pivots {
                    if !piv.contains(v) {
                        continue;
                    }
                }
                let Some(w) = q.step_toward(v, *z) else { continue };
                if w == *z || seen.contains(w) || spec.avoid.is_some_and(|a| a.contains(w)) {
                    continue;
                }
                if spec.restrict.is_some() && p.succ(v) != Some(w) && p.pred(v) != Some(w) {
                    continue;
                }
                let mut r = q.clone();
                r.rotate_in_place(g, fixed, v)?;
                out.rotations += 1;
                let new_dif = dif_among(&r, p, difs.iter().copied().chain([*z, v, w]));
                if let (Some(y), Some(b)) = (spec.budget_set, budget) {
                    if new_dif.iter().filter(|&&u| y.contains(u)).count() as f64 > b {
                        continue;
                    }
                }
                seen.insert(w);
                out.endpoints.insert(w);
                out.order.push(w);
                let mut s = script.clone();
                s.push(Step { pivot: v, new_end: w });
                out.witness.insert(w, s.clone());
                out.depth = round + 1;
                let stop = spec.stop_on.is_some_and(|st| st.contains(w)) || out.endpoints.len() >= spec.target;
                next.push((w, s, new_dif));
                if stop {
                    out.layers.push(out.endpoints.len());
                    break 'rounds;
                }
            }
        }
        out.layers.push(out.endpoints.len());
        if next.is_empty() {
            break;
        }
        next.sort_by_key(|e| e.0);
        frontier = next;
    }
    let reached_stop = spec.stop_on.is_some_and(|st| out.order.last().is_some_and(|&w| st.contains(w)));
    out.stalled = out.endpoints.len() < spec.target && !reached_stop;
    Ok(out)
}

/// Tries one more rotation, with pivot in `pivots`, from every path in
/// `outcome` (source end first, then discovery order). Returns the first
/// path whose new endpoint lies in `accept`.
pub fn hop_into(
    g: &Graph,
    source: &PathState,
    outcome: &RotationOutcome,
    pivots: &VertexSet,
    accept: &VertexSet,
) -> Result<Option<(PathState, usize)>, RotationError> {
    let fixed = outcome.fixed;
    for z in std::iter::once(outcome.source_end).chain(outcome.order.iter().copied()) {
        if !g.neighbors(z).iter().any(|&v| pivots.contains(v)) {
            continue;
        }
        let q = outcome.replay(g, source, z)?;
        for &v in g.neighbors(z) {
            if !pivots.contains(v) || v == fixed || !q.contains(v) {
                continue;
            }
            match q.step_toward(v, z) {
                Some(w) if w != z && accept.contains(w) => {}
                _ => continue,
            }
            let mut r = q.clone();
            let w = r.rotate_in_place(g, fixed, v)?;
            return Ok(Some((r, w)));
        }
    }
    Ok(None)
}

/// Moves the far endpoint into `r` with at most `cap` rotations, taking the
/// first endpoint of `r` found in breadth-first order. Returns the rotated
/// path, its new endpoint and the number of rotations used.
pub fn rotate_into_set(
    g: &Graph,
    p: &PathState,
    fixed: usize,
    r: &VertexSet,
    cap: usize,
) -> Result<(PathState, usize, usize), RotationError> {
    let far = p.other_end(fixed).ok_or(RotationError::NotEndpoint(fixed))?;
    if r.contains(far) {
        return Ok((p.clone(), far, 0));
    }
    let spec = ExpansionSpec::new(fixed, cap, usize::MAX).stop_on(r);
    let out = endpoint_expansion(g, p, &spec)?;
    match out.order.last() {
        Some(&w) if r.contains(w) => {
            let q = out.replay(g, p, w)?;
            let used = out.script(w).map_or(0, <[Step]>::len);
            Ok((q, w, used))
        }
        _ => Err(RotationError::Stall { stage: "rotate-into-set", found: out.len() }),
    }
}
