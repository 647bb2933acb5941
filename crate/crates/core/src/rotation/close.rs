use super::expansion::{endpoint_expansion, replay, ExpansionSpec, RotationOutcome};
use super::RotationError;
use crate::graph::{components_on, Cycle, Graph, PathState, VertexSet};
use std::collections::BTreeMap;

/// Inputs of the two-sided closing procedure. `a_clean ⊆ a` must contain
/// the first endpoint of the path and `b_clean ⊆ b` the last one.
#[derive(Debug, Clone, Copy)]
pub struct CloseSets<'a> {
    pub a: &'a VertexSet,
    pub b: &'a VertexSet,
    pub a_clean: &'a VertexSet,
    pub b_clean: &'a VertexSet,
}

/// Number of components of `P[A]`.
pub fn component_count(p: &PathState, a: &VertexSet) -> usize {
    components_on(p, a).len()
}

/// Direction of every component of `P[B]` in `q`: `true` when the
/// component's first vertex (in `p` order) precedes its last vertex in `q`.
fn direction_class(p: &PathState, q: &PathState, runs: &[(usize, usize)]) -> Vec<bool> {
    let ord = p.vertices();
    runs.iter()
        .map(|&(s, e)| s == e || q.position(ord[s]) < q.position(ord[e]))
        .collect()
}

/// Closes `p` into a cycle on `V(P)` by two rounds of restricted rotations:
/// endpoints reached inside `A'` are grouped by how they orient the
/// components of `P[B]`; inside the largest group, the second round of
/// rotations inside `B'` is shared, and an edge between the two endpoint
/// sets closes the cycle.
pub fn close_path(g: &Graph, p: &PathState, sets: CloseSets<'_>, cap: usize, limit: usize) -> Result<Cycle, RotationError> {
    let x = p.first();
    let y = p.last();
    if !sets.a_clean.contains(x) || !sets.b_clean.contains(y) {
        return Err(RotationError::Precondition("endpoints must lie in the clean sets"));
    }
    if sets.a.intersection_len(sets.b) > 0 || !sets.a_clean.is_subset(sets.a) || !sets.b_clean.is_subset(sets.b) {
        return Err(RotationError::Precondition("A and B must be disjoint and contain A', B'"));
    }
    if g.has_edge(x, y) && p.len() >= 3 {
        return Ok(Cycle::new(p.vertices().to_vec()));
    }
    // Orient so that c_P(A) ≥ c_P(B).
    let (p, a_clean, b, b_clean) = if component_count(p, sets.a) >= component_count(p, sets.b) {
        (p.clone(), sets.a_clean, sets.b, sets.b_clean)
    } else {
        (p.reversed(), sets.b_clean, sets.a, sets.a_clean)
    };
    let y = p.last();
    let spec = ExpansionSpec::new(y, cap, limit).restrict(a_clean);
    let z1 = endpoint_expansion(g, &p, &spec)?;
    let runs = components_on(&p, b);
    let mut classes: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for z in std::iter::once(z1.source_end).chain(z1.order.iter().copied()) {
        let q = z1.replay(g, &p, z)?;
        classes.entry(direction_class(&p, &q, &runs)).or_default().push(z);
    }
    let (_, class) = classes
        .into_iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| b.0.cmp(&a.0)))
        .ok_or(RotationError::Stall { stage: "close-first-round", found: 0 })?;
    let z0 = *class.iter().min().unwrap();
    let p_z0 = z1.replay(g, &p, z0)?;
    let spec_w = ExpansionSpec::new(z0, cap, limit).restrict(b_clean);
    let w_out = endpoint_expansion(g, &p_z0, &spec_w)?;
    let w_list: Vec<usize> = std::iter::once(w_out.source_end).chain(w_out.order.iter().copied()).collect();
    let w_set = VertexSet::from_iter(g.n(), w_list.iter().copied());
    let mut sorted_class = class.clone();
    sorted_class.sort_unstable();
    for &z in &sorted_class {
        let Some(&w) = g.neighbors(z).iter().find(|&&w| w_set.contains(w)) else { continue };
        let p_z = z1.replay(g, &p, z)?;
        let closed = splice(g, &p_z, z, &w_out, w)?;
        if closed.first() == z && closed.last() == w {
            return Ok(Cycle::new(closed.into_vertices()));
        }
    }
    Err(RotationError::Stall { stage: "close-no-edge", found: sorted_class.len() * w_list.len() })
}

/// Replays the second-round script of `w` (computed on another path of the
/// same class) on the path ending at `z`.
fn splice(g: &Graph, p_z: &PathState, z: usize, w_out: &RotationOutcome, w: usize) -> Result<PathState, RotationError> {
    let script = w_out.script(w).ok_or(RotationError::UnknownEndpoint(w))?;
    replay(g, p_z, z, script)
}

pub enum Closing {
    Closed(Cycle),
    Extendable(PathState),
    Stuck { explored: usize },
}

/// Rotation closer without cleanliness requirements: rotates the far end
/// with the first endpoint fixed, then for every endpoint found rotates the
/// other end, looking for a closing edge. Also reports a path that can be
/// extended because some endpoint has a neighbour off the path.
pub fn close_by_rotation(g: &Graph, p: &PathState, on_path: &VertexSet, cap: usize, limit: usize) -> Result<Closing, RotationError> {
    let off_path = |v: usize| g.neighbors(v).iter().any(|&u| !on_path.contains(u));
    if p.len() >= 3 && g.has_edge(p.first(), p.last()) {
        return Ok(Closing::Closed(Cycle::new(p.vertices().to_vec())));
    }
    let x = p.first();
    let first = endpoint_expansion(g, p, &ExpansionSpec::new(x, cap, limit))?;
    let mut explored = first.len() + 1;
    for z in std::iter::once(first.source_end).chain(first.order.iter().copied()) {
        let q = first.replay(g, p, z)?;
        if off_path(z) {
            return Ok(Closing::Extendable(q));
        }
        if q.len() >= 3 && g.has_edge(x, z) {
            return Ok(Closing::Closed(Cycle::new(q.into_vertices())));
        }
    }
    for z in std::iter::once(first.source_end).chain(first.order.iter().copied()) {
        let q = first.replay(g, p, z)?;
        let second = endpoint_expansion(g, &q, &ExpansionSpec::new(z, cap, limit))?;
        explored += second.len();
        for w in second.order.iter().copied() {
            if off_path(w) {
                return Ok(Closing::Extendable(second.replay(g, &q, w)?));
            }
            if g.has_edge(z, w) {
                return Ok(Closing::Closed(Cycle::new(second.replay(g, &q, w)?.into_vertices())));
            }
        }
        if explored > limit.saturating_mul(8) {
            break;
        }
    }
    Ok(Closing::Stuck { explored })
}
