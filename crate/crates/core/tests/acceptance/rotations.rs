use crate::oracle;
use crate::Verdict;
use expham::generators::gnp;
use expham::graph::{dif, interior, Graph, PathError, PathState, VertexSet};
use expham::rotation::{endpoint_expansion, ExpansionSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashSet};

const ROTATIONS: usize = 100_000;
const CHAIN: usize = 8;

#[derive(Default)]
struct Counts {
    rotations: usize,
    interior_checks: usize,
    chains: usize,
    replays: usize,
    restricted_replays: usize,
    violations: Vec<String>,
}

impl Counts {
    fn fail(&mut self, what: String) {
        if self.violations.len() < 20 {
            self.violations.push(what);
        }
    }
}

fn random_path(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.n();
    let mut used = vec![false; n];
    let mut path = vec![rng.gen_range(0..n)];
    used[path[0]] = true;
    loop {
        let end = *path.last().unwrap();
        let free: Vec<usize> = g.neighbors(end).iter().copied().filter(|&w| !used[w]).collect();
        let Some(&w) = free.choose(rng) else { break };
        used[w] = true;
        path.push(w);
    }
    path
}

fn as_set(s: &VertexSet) -> BTreeSet<usize> {
    s.iter().collect()
}

fn random_subset(order: &[usize], keep: f64, rng: &mut ChaCha8Rng) -> HashSet<usize> {
    order.iter().copied().filter(|_| rng.gen_bool(keep)).collect()
}

fn to_vs(n: usize, x: &HashSet<usize>) -> VertexSet {
    VertexSet::from_iter(n, x.iter().copied())
}

/// One chain of rotations with a fixed endpoint, every step cross-checked.
fn chain(g: &Graph, start: &[usize], rng: &mut ChaCha8Rng, c: &mut Counts) {
    let n = g.n();
    let fixed = if rng.gen_bool(0.5) { start[0] } else { *start.last().unwrap() };
    let mut lib = PathState::new(n, start.to_vec()).unwrap();
    let mut plain = start.to_vec();
    let base = lib.clone();
    let mut done = 0;
    for _ in 0..CHAIN {
        let far = lib.other_end(fixed).unwrap();
        let pivots: Vec<usize> = g.neighbors(far).iter().copied().filter(|&v| lib.contains(v)).collect();
        let Some(&pivot) = pivots.choose(rng) else { break };
        if pivot == fixed {
            if lib.rotate(g, fixed, pivot) != Err(PathError::PivotIsEndpoint(fixed)) {
                c.fail(format!("pivot at the fixed end accepted on {start:?}"));
            }
            continue;
        }
        let next = lib.rotate(g, fixed, pivot).unwrap();
        let expected = oracle::rotate(&plain, fixed, pivot);
        c.rotations += 1;
        if next.vertices() != expected.as_slice() {
            c.fail(format!("rotation of {plain:?} at {pivot}: got {:?}", next.vertices()));
            return;
        }
        if next.validate(g).is_err() || !oracle::is_path(g, &expected) {
            c.fail(format!("rotation left an invalid path at {pivot}"));
        }
        // only v_i, v_{i+1}, v_l may change
        let w = lib.step_toward(pivot, far).unwrap();
        let changed = oracle::dif(&plain, &expected);
        if as_set(&dif(&lib, &next)) != changed || !changed.iter().all(|v| [pivot, w, far].contains(v)) {
            c.fail(format!("dif {changed:?} outside {{{pivot}, {w}, {far}}}"));
        }
        // new endpoint in X, or interiors unchanged, whenever v_l ∉ X
        let mut x = random_subset(&plain, 0.7, rng);
        x.remove(&far);
        let (before, after) = (oracle::interior(&plain, &x), oracle::interior(&expected, &x));
        let xs = to_vs(n, &x);
        if as_set(&interior(&lib, &xs)) != before || as_set(&interior(&next, &xs)) != after {
            c.fail("library interior disagrees with the plain one".into());
        }
        let new_end = next.other_end(fixed).unwrap();
        if !x.contains(&new_end) && before != after {
            c.fail(format!("interior moved although the new end {new_end} is outside X"));
        }
        // interiors agree on any X avoiding dif
        let calm: HashSet<usize> = random_subset(&plain, 0.8, rng).into_iter().filter(|v| !changed.contains(v)).collect();
        if oracle::interior(&plain, &calm) != oracle::interior(&expected, &calm) {
            c.fail("interior changed on a set avoiding dif".into());
        }
        c.interior_checks += 2;
        lib = next;
        plain = expected;
        done += 1;
        let total = oracle::dif(base.vertices(), &plain);
        if total.len() > 3 * done {
            c.fail(format!("|dif| = {} after {done} rotations", total.len()));
        }
    }
    c.chains += 1;
}

/// Every witness script rebuilds a path on the same vertex set ending at
/// its endpoint, within the dif budget; restricted scripts pivot inside X.
fn replays(g: &Graph, start: &[usize], rng: &mut ChaCha8Rng, c: &mut Counts) {
    let n = g.n();
    let p = PathState::new(n, start.to_vec()).unwrap();
    let fixed = p.first();
    let verts: BTreeSet<usize> = start.iter().copied().collect();
    let x = random_subset(start, 0.8, rng);
    let xs = to_vs(n, &x);
    let int_x = oracle::interior(start, &x);
    let path_edge = |a: usize, b: usize| start.windows(2).any(|w| (w[0] == a && w[1] == b) || (w[0] == b && w[1] == a));
    for restricted in [false, true] {
        let mut spec = ExpansionSpec::new(fixed, 4, n);
        if restricted {
            spec = spec.restrict(&xs);
        }
        let out = endpoint_expansion(g, &p, &spec).unwrap();
        for z in out.endpoints.iter() {
            let script = out.script(z).unwrap();
            let q = match out.replay(g, &p, z) {
                Ok(q) => q,
                Err(e) => {
                    c.fail(format!("replay to {z} failed: {e}"));
                    continue;
                }
            };
            let order = q.vertices();
            let same = order.iter().copied().collect::<BTreeSet<_>>() == verts;
            let ends = order[0] == fixed && *order.last().unwrap() == z;
            let budget = oracle::dif(start, order).len() <= 3 * script.len();
            if !(same && ends && budget && oracle::is_path(g, order) && script.len() <= 4) {
                c.fail(format!("replay to {z}: same set {same}, ends {ends}, budget {budget}"));
            }
            if restricted {
                let inside = script.iter().all(|s| int_x.contains(&s.pivot) && path_edge(s.pivot, s.new_end) && x.contains(&s.new_end));
                if !inside {
                    c.fail(format!("restricted script to {z} leaves int(X) or breaks a non-path edge"));
                }
                c.restricted_replays += 1;
            } else {
                c.replays += 1;
            }
        }
    }
}

pub fn invariants() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut c = Counts::default();
    while c.rotations < ROTATIONS {
        let n = rng.gen_range(20..=80);
        let avg = rng.gen_range(3.0..12.0);
        let g = gnp(n, avg / n as f64, &mut rng).unwrap();
        let start = random_path(&g, &mut rng);
        if start.len() < 5 {
            continue;
        }
        for _ in 0..4 {
            chain(&g, &start, &mut rng, &mut c);
        }
        if c.chains % 16 == 0 {
            replays(&g, &start, &mut rng, &mut c);
        }
    }
    let mut detail = format!(
        "{} rotations in {} chains, {} interior checks, {} witness replays ({} restricted to X), {} violations",
        c.rotations,
        c.chains,
        c.interior_checks,
        c.replays + c.restricted_replays,
        c.restricted_replays,
        c.violations.len()
    );
    for v in c.violations.iter().take(3) {
        detail += &format!("; {v}");
    }
    Verdict::new(c.violations.is_empty() && c.rotations >= ROTATIONS, detail)
}
