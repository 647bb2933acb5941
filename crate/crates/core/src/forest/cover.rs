use super::{ForestError, LinearForest};
use crate::graph::{Graph, VertexSet};
use crate::matching::max_matching;

/// Orders `x` so that each vertex has at least `delta/2` neighbours among
/// earlier vertices and `y \ x`; lowest label first among the eligible.
pub fn bad_set_order(g: &Graph, x: &VertexSet, y: &VertexSet, delta: f64) -> Result<Vec<usize>, ForestError> {
    let n = g.n();
    let need = delta / 2.0;
    let mut good = vec![0usize; n];
    for v in x.iter() {
        good[v] = g.neighbors(v).iter().filter(|&&w| y.contains(w) && !x.contains(w)).count();
    }
    let mut left: Vec<usize> = x.to_vec();
    let mut order = Vec::with_capacity(left.len());
    while !left.is_empty() {
        let Some(i) = left.iter().position(|&v| good[v] as f64 >= need) else {
            return Err(ForestError::OrderingStall { placed: order.len(), remaining: left.len() });
        };
        let v = left.remove(i);
        for &w in g.neighbors(v) {
            good[w] += 1;
        }
        order.push(v);
    }
    Ok(order)
}

/// Paths covering `x` with both endpoints in `y \ x` and every inner
/// vertex in `x`.
///
/// Two copies of every bad vertex are matched to distinct neighbours that
/// come earlier in the order or lie outside `x`; read as children, the
/// matched edges form binary trees with leaves outside `x`. Root-to-leaf
/// paths through both children of a root are then peeled off.
pub fn cover_bad_set(g: &Graph, x: &VertexSet, y: &VertexSet, delta: f64) -> Result<LinearForest, ForestError> {
    let n = g.n();
    let order = bad_set_order(g, x, y, delta)?;
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let adj: Vec<Vec<usize>> = order
        .iter()
        .flat_map(|&v| {
            let eligible: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| y.contains(w) && (!x.contains(w) || rank[w] < rank[v]))
                .collect();
            [eligible.clone(), eligible]
        })
        .collect();
    let m = max_matching(&adj, n);
    if !m.is_left_perfect() {
        return Err(ForestError::MatchingIncomplete {
            matched: m.size,
            needed: adj.len(),
            witness: m.hall_violator(&adj),
        });
    }
    let children: Vec<[usize; 2]> = (0..order.len()).map(|i| [m.left[2 * i].unwrap(), m.left[2 * i + 1].unwrap()]).collect();
    let mut is_child = vec![false; n];
    for c in children.iter().flatten() {
        is_child[*c] = true;
    }
    let kids = |v: usize| children[rank[v]];
    let mut roots: Vec<usize> = order.iter().rev().copied().filter(|&v| !is_child[v]).collect();
    let mut paths = Vec::new();
    while let Some(r) = roots.pop() {
        let [a, b] = kids(r);
        let mut path = descend(a, x, &kids, &mut roots);
        path.reverse();
        path.push(r);
        path.extend(descend(b, x, &kids, &mut roots));
        paths.push(path);
    }
    LinearForest::new(n, paths)
}

/// Follows first children down to a leaf; the second child of every bad
/// vertex passed becomes a new root when it is bad itself.
fn descend(start: usize, x: &VertexSet, kids: &impl Fn(usize) -> [usize; 2], roots: &mut Vec<usize>) -> Vec<usize> {
    let mut out = vec![start];
    let mut v = start;
    while x.contains(v) {
        let [a, b] = kids(v);
        if x.contains(b) {
            roots.push(b);
        }
        out.push(a);
        v = a;
    }
    out
}

/// Checks the cover contract: disjoint host paths covering `x`, endpoints
/// in `y \ x`, inner vertices in `x`.
pub fn validate_cover(g: &Graph, x: &VertexSet, y: &VertexSet, f: &LinearForest) -> Result<(), String> {
    let fresh = LinearForest::new(g.n(), f.paths.clone()).map_err(|e| e.to_string())?;
    fresh.check_edges(g).map_err(|e| e.to_string())?;
    if !x.is_subset(&fresh.cover) || !fresh.cover.is_subset(y) {
        return Err("cover is not between X and Y".into());
    }
    for p in &f.paths {
        if p.len() < 3 {
            return Err(format!("path {p:?} is shorter than three vertices"));
        }
        if x.contains(p[0]) || x.contains(*p.last().unwrap()) {
            return Err(format!("path {p:?} ends in X"));
        }
        if let Some(v) = p[1..p.len() - 1].iter().find(|&&v| !x.contains(v)) {
            return Err(format!("inner vertex {v} is outside X"));
        }
    }
    Ok(())
}
