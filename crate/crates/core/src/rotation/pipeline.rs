use super::close::{close_by_rotation, close_path, CloseSets, Closing};
use super::expansion::{endpoint_expansion, hop_into, rotate_into_set, ExpansionSpec};
use super::partition::{clean_partition, fit_interval_count, path_clean, CleanCollection};
use super::{RotationConfig, RotationError};
use crate::exact;
use crate::graph::{components_on, interior, Cycle, Graph, PathState, VertexSet};
use crate::spectral::HostParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::VecDeque;
use std::time::Instant;

/// Greedy path growth that keeps, for every vertex, its number of
/// neighbours off the path.
pub(crate) struct Extender {
    on: VertexSet,
    free: Vec<usize>,
}

impl Extender {
    pub(crate) fn new(g: &Graph, p: &PathState) -> Self {
        let on = VertexSet::from_iter(g.n(), p.vertices().iter().copied());
        let free = (0..g.n()).map(|v| g.neighbors(v).iter().filter(|&&w| !on.contains(w)).count()).collect();
        Extender { on, free }
    }

    fn add(&mut self, g: &Graph, v: usize) {
        self.on.insert(v);
        for &w in g.neighbors(v) {
            self.free[w] -= 1;
        }
    }

    /// Off-path neighbour of `v` with the fewest off-path neighbours itself.
    fn best_step(&self, g: &Graph, v: usize) -> Option<usize> {
        if self.free[v] == 0 {
            return None;
        }
        g.neighbors(v).iter().copied().filter(|&w| !self.on.contains(w)).min_by_key(|&w| (self.free[w], w))
    }

    /// Extends at both ends until neither endpoint has an off-path neighbour.
    pub(crate) fn run(&mut self, g: &Graph, p: &mut PathState) {
        loop {
            if let Some(w) = self.best_step(g, p.last()) {
                p.push_back(w).expect("fresh vertex");
                self.add(g, w);
            } else if let Some(w) = self.best_step(g, p.first()) {
                p.reverse();
                p.push_back(w).expect("fresh vertex");
                self.add(g, w);
            } else {
                return;
            }
        }
    }

    fn track(&mut self, g: &Graph, v: usize) {
        if !self.on.contains(v) {
            self.add(g, v);
        }
    }
}

fn reopen(g: &Graph, c: &Cycle, on: &VertexSet) -> Option<PathState> {
    let k = c.len();
    for i in 0..k {
        let v = c.order[i];
        if let Some(&u) = g.neighbors(v).iter().find(|&&u| !on.contains(u)) {
            let mut order: Vec<usize> = c.order[i + 1..].iter().chain(&c.order[..=i]).copied().collect();
            order.push(u);
            return PathState::new(g.n(), order).ok();
        }
    }
    None
}

/// One extension step: append an off-path neighbour of an endpoint (the one
/// with fewest off-path neighbours), or, when the path closes into a cycle,
/// reopen the cycle at a vertex with an off-path neighbour.
pub fn extend_path(g: &Graph, p: &PathState) -> Option<PathState> {
    let ext = Extender::new(g, p);
    if let Some(w) = ext.best_step(g, p.last()) {
        let mut q = p.clone();
        q.push_back(w).ok()?;
        return Some(q);
    }
    if let Some(w) = ext.best_step(g, p.first()) {
        let mut q = p.reversed();
        q.push_back(w).ok()?;
        return Some(q);
    }
    if p.len() >= 3 && g.has_edge(p.first(), p.last()) {
        return reopen(g, &Cycle::new(p.vertices().to_vec()), &ext.on);
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct StageRecord {
    pub attempt: usize,
    pub stage: String,
    pub ok: bool,
    pub micros: u64,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ClosingCounts {
    pub direct: usize,
    /// Closed by the clean-collection pipeline.
    pub pipeline: usize,
    /// Closed by unrestricted double rotation.
    pub fallback: usize,
    pub exact: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RotationRun {
    pub cycle: Option<Cycle>,
    /// Longest cycle found, when there is no Hamilton cycle.
    pub longest: Option<Cycle>,
    pub attempts: usize,
    pub closings: ClosingCounts,
    pub stages: Vec<StageRecord>,
}

impl RotationRun {
    pub fn success(&self) -> bool {
        self.cycle.is_some()
    }

    pub fn longest_len(&self) -> usize {
        self.cycle.as_ref().or(self.longest.as_ref()).map_or(0, Cycle::len)
    }
}

struct Recorder {
    attempt: usize,
    stages: Vec<StageRecord>,
}

impl Recorder {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T, RotationError>) -> Result<T, RotationError> {
        let t0 = Instant::now();
        let out = f();
        let detail = match &out {
            Ok(_) => String::new(),
            Err(e) => e.to_string(),
        };
        self.stages.push(StageRecord {
            attempt: self.attempt,
            stage: stage.to_string(),
            ok: out.is_ok(),
            micros: t0.elapsed().as_micros() as u64,
            detail,
        });
        out
    }
}

/// Mixes a master seed with an index into an independent stream seed.
pub fn splitmix(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn ball(g: &Graph, src: usize, radius: usize) -> VertexSet {
    let mut seen = VertexSet::new(g.n());
    seen.insert(src);
    let mut queue = VecDeque::from([(src, 0)]);
    while let Some((v, r)) = queue.pop_front() {
        if r < radius {
            for &w in g.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back((w, r + 1));
                }
            }
        }
    }
    seen
}

fn sub_path(n: usize, order: &[usize]) -> PathState {
    PathState::new(n, order.to_vec()).expect("subpath of a path")
}

/// Moves both endpoints into the two clean sets, one in each.
fn land_endpoints(
    g: &Graph,
    p: &PathState,
    s: [&VertexSet; 2],
    cfg: &RotationConfig,
) -> Result<(PathState, usize), RotationError> {
    let n = g.n();
    let cap = cfg.cap_for(n);
    let both = s[0].union(s[1]);
    let (p1, x1, _) = rotate_into_set(g, p, p.last(), &both, cap)?;
    let a = if s[0].contains(x1) { 0 } else { 1 };
    let (p2, z, _) = rotate_into_set(g, &p1, x1, &both, cap)?;
    if s[1 - a].contains(z) {
        return Ok((p2, a));
    }
    // both endpoints in S_a: rotate inside S_a, then hop into int(S_b)
    let radius = (2.0 * (n.max(4) as f64).log2().log2()).ceil() as usize;
    let y = ball(g, x1, radius).intersection(s[a]);
    let spec = ExpansionSpec::new(x1, cap, cfg.explore_limit).restrict(s[a]).budget(&y);
    let out = endpoint_expansion(g, &p2, &spec)?;
    let int_b = interior(&p2, s[1 - a]);
    match hop_into(g, &p2, &out, &int_b, s[1 - a])? {
        Some((q, _)) => Ok((q, a)),
        None => Err(RotationError::Stall { stage: "land-endpoints", found: out.len() }),
    }
}

/// A maximal run of positions of `P'` belonging to one collection interval.
struct Part {
    start: usize,
    end: usize,
    unbroken: bool,
}

/// Two disjoint subpaths of `p`, each made of `width` consecutive interval
/// parts of which at least `need` are unbroken.
fn choose_windows(p: &PathState, intervals: &[&Vec<usize>], width: usize, need: usize) -> Option<[(usize, usize); 2]> {
    let mut parts = Vec::new();
    for q in intervals {
        let set = VertexSet::from_iter(p.universe(), q.iter().copied());
        let runs = components_on(p, &set);
        let unbroken = runs.len() == 1;
        parts.extend(runs.into_iter().map(|(start, end)| Part { start, end, unbroken }));
    }
    parts.sort_by_key(|part| part.start);
    let mut found = Vec::new();
    let mut i = 0;
    while i + width <= parts.len() && found.len() < 2 {
        let window = &parts[i..i + width];
        if window.iter().filter(|part| part.unbroken).count() >= need {
            found.push((window[0].start, window[width - 1].end));
            i += width;
        } else {
            i += 1;
        }
    }
    (found.len() == 2).then(|| [found[0], found[1]])
}

fn range_set(p: &PathState, (s, e): (usize, usize)) -> VertexSet {
    VertexSet::from_iter(p.universe(), p.vertices()[s..=e].iter().copied())
}

/// Closes a path into a cycle on its vertex set by the clean-collection
/// route: clean collections on both halves, endpoints landed in them, two
/// windows of interval parts cleaned into `A'` and `B'`, endpoints moved
/// into `A'` and `B'`, then the two-sided closing.
fn close_by_collections(
    g: &Graph,
    p: &PathState,
    host: &HostParams,
    cfg: &RotationConfig,
    rec: &mut Recorder,
) -> Result<Cycle, RotationError> {
    let n = g.n();
    let cap = cfg.cap_for(n);
    let delta = cfg.delta_frac * host.d;
    let half = p.len() / 2;
    let k = fit_interval_count(half, cfg.k_for(n));
    let gamma = cfg.gamma_for(n);
    let ord = p.vertices();
    let halves = [sub_path(n, &ord[..half]), sub_path(n, &ord[half..])];
    let cc: [CleanCollection; 2] = rec.time("clean-partition", || {
        let a = clean_partition(g, &halves[0], k, delta, gamma)?;
        let b = clean_partition(g, &halves[1], k, delta, gamma)?;
        Ok([a, b])
    })?;
    let s = [&cc[0].set, &cc[1].set];
    let (p1, a) = rec.time("land-endpoints", || land_endpoints(g, p, s, cfg))?;
    let b = 1 - a;
    // orient P' from S_a to S_b
    let p1 = if s[a].contains(p1.first()) && s[b].contains(p1.last()) { p1 } else { p1.reversed() };
    let k_min = cc[0].k.min(cc[1].k);
    let width = ((gamma * k_min as f64 / 4.0).round() as usize).max(1);
    let need = ((gamma * k_min as f64 / 8.0).ceil() as usize).clamp(1, width);
    let intervals: Vec<&Vec<usize>> = cc[0].intervals.iter().chain(&cc[1].intervals).collect();
    let [wa, wb] = rec.time("windows", || {
        choose_windows(&p1, &intervals, width, need).ok_or(RotationError::Stall { stage: "windows", found: 0 })
    })?;
    let set_a = range_set(&p1, wa);
    let set_b = range_set(&p1, wb);
    let (a_clean, b_clean) = rec.time("path-clean", || {
        let ta = host.d * set_a.len() as f64 / (4.0 * n as f64);
        let tb = host.d * set_b.len() as f64 / (4.0 * n as f64);
        let ac = path_clean(g, &p1, &set_a, ta);
        let bc = path_clean(g, &p1, &set_b, tb);
        if ac.is_empty() || bc.is_empty() {
            return Err(RotationError::Stall { stage: "path-clean", found: ac.len().min(bc.len()) });
        }
        Ok((ac, bc))
    })?;
    let ab = set_a.union(&set_b);
    let x_a = s[a].difference(&ab);
    let x_b = s[b].difference(&ab);
    let p2 = rec.time("reach-clean-sets", || {
        let spec = ExpansionSpec::new(p1.last(), cap, cfg.explore_limit).restrict(&x_a).base(p, delta);
        let out = endpoint_expansion(g, &p1, &spec)?;
        let int_a = interior(&p1, &a_clean);
        let (pa, _) = hop_into(g, &p1, &out, &int_a, &a_clean)?.ok_or(RotationError::Stall { stage: "reach-a", found: out.len() })?;
        let spec = ExpansionSpec::new(pa.first(), cap, cfg.explore_limit).restrict(&x_b);
        let out = endpoint_expansion(g, &pa, &spec)?;
        let int_b = interior(&pa, &b_clean);
        let (pb, _) = hop_into(g, &pa, &out, &int_b, &b_clean)?.ok_or(RotationError::Stall { stage: "reach-b", found: out.len() })?;
        Ok(pb)
    })?;
    rec.time("close-path", || {
        let sets = CloseSets { a: &set_a, b: &set_b, a_clean: &a_clean, b_clean: &b_clean };
        close_path(g, &p2, sets, cap, cfg.explore_limit)
    })
}

/// Rotation-extension search for a Hamilton cycle: grow a maximal path,
/// close it into a cycle (clean-collection route first, unrestricted double
/// rotation as fallback), reopen the cycle through a fresh vertex, repeat.
/// Restarts from a random vertex on failure; small graphs finish with an
/// exact search.
pub fn hamilton_rotation(g: &Graph, host: Option<&HostParams>, cfg: &RotationConfig) -> RotationRun {
    let n = g.n();
    let mut run = RotationRun { cycle: None, longest: None, attempts: 0, closings: ClosingCounts::default(), stages: Vec::new() };
    if n < 3 {
        return run;
    }
    if !g.is_connected() {
        log::warn!("graph is disconnected; no Hamilton cycle");
        if n <= cfg.exact_below {
            run.longest = exact::longest_cycle(g);
        }
        return run;
    }
    let estimated;
    let host = match host {
        Some(h) => *h,
        None => {
            estimated = HostParams { n, d: g.average_degree(), lambda: 0.0, regular: g.regular_degree().is_some() };
            estimated
        }
    };
    if host.lambda > 0.0 && host.d <= 2.0 * host.lambda {
        log::debug!("d ≤ 2λ: connectivity is not certified by the spectrum");
    }
    let cap = cfg.cap_for(n);
    for attempt in 0..cfg.retries.max(1) {
        run.attempts = attempt + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(cfg.seed, attempt as u64));
        let start = if attempt == 0 { 0 } else { rng.gen_range(0..n) };
        let mut path = PathState::single(n, start);
        let mut ext = Extender::new(g, &path);
        let mut rec = Recorder { attempt, stages: Vec::new() };
        let mut guard = 0;
        loop {
            guard += 1;
            if guard > 4 * n + 8 {
                break;
            }
            ext.run(g, &mut path);
            let cycle = if path.len() >= 3 && g.has_edge(path.first(), path.last()) {
                run.closings.direct += 1;
                Some(Cycle::new(path.vertices().to_vec()))
            } else {
                let mut closed = None;
                if cfg.collections && path.len() >= cfg.collections_min.max(n / 3) {
                    if let Ok(c) = close_by_collections(g, &path, &host, cfg, &mut rec) {
                        run.closings.pipeline += 1;
                        closed = Some(c);
                    }
                }
                if closed.is_none() {
                    let on = ext.on.clone();
                    match rec.time("fallback-close", || close_by_rotation(g, &path, &on, cap, cfg.explore_limit)) {
                        Ok(Closing::Closed(c)) => {
                            run.closings.fallback += 1;
                            closed = Some(c);
                        }
                        Ok(Closing::Extendable(q)) => {
                            path = q;
                            continue;
                        }
                        Ok(Closing::Stuck { .. }) | Err(_) => {}
                    }
                }
                closed
            };
            let Some(c) = cycle else { break };
            debug_assert!(c.check(g).is_ok());
            if run.longest.as_ref().is_none_or(|l| c.len() > l.len()) {
                run.longest = Some(c.clone());
            }
            if c.len() == n {
                run.cycle = Some(c);
                run.stages.extend(rec.stages);
                return run;
            }
            match reopen(g, &c, &ext.on) {
                Some(q) => {
                    ext.track(g, q.last());
                    path = q;
                }
                None => break,
            }
        }
        run.stages.extend(rec.stages);
    }
    if n <= cfg.exact_below {
        let t0 = Instant::now();
        let found = exact::hamilton_cycle(g);
        let ok = found.is_some();
        run.stages.push(StageRecord {
            attempt: run.attempts,
            stage: "exact".into(),
            ok,
            micros: t0.elapsed().as_micros() as u64,
            detail: String::new(),
        });
        if let Some(c) = found {
            run.closings.exact += 1;
            run.cycle = Some(c);
        } else {
            run.longest = exact::longest_cycle(g);
        }
    }
    run
}
