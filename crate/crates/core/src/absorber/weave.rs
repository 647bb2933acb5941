use super::cycles::{find_disjoint_cycles, sparsify_cycles};
use super::spine::{occupied, thread_cycles, trim_and_clean};
use super::{AbsorbConfig, AbsorbError, GoodCollection};
use crate::connector::{connect_pairs, validate_alternating, ConnectConfig, Ends};
use crate::exact;
use crate::forest::{spanning_forest_good_endpoints, ForestConfig, LinearForest};
use crate::graph::{verify_hamilton_cycle, Cycle, Graph, PathState, VertexSet};
use crate::rotation::{close_by_rotation, hamilton_rotation, splitmix, Closing, RotationConfig, RotationRun, StageRecord};
use crate::spectral::{clean_with_threshold, HostParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

/// Sizes seen along one assembly, for reports and failure forensics.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Assembly {
    pub found: usize,
    pub sparsified: usize,
    pub threaded: usize,
    pub trimmed: usize,
    pub cleaned: usize,
    /// Cycles in the collection.
    pub cycles: usize,
    pub flexible: usize,
    pub spine: usize,
    /// Vertices left for the residual paths.
    pub residual_vertices: usize,
    /// Residual vertices with few flexible neighbours, after enlargement.
    pub bad: usize,
    pub paths: usize,
    pub path_limit: usize,
    pub delta: f64,
    pub end_delta: f64,
}

/// Builds a good collection from scratch: short disjoint cycles, sparsified,
/// threaded, trimmed and cleaned, then a forest with good endpoints on the
/// rest of the graph.
pub fn assemble_good_collection(
    g: &Graph,
    host: &HostParams,
    cfg: &AbsorbConfig,
    seed: u64,
) -> Result<(GoodCollection, Assembly), AbsorbError> {
    let n = g.n();
    let cycles = find_disjoint_cycles(g, cfg.max_len_for(n), target(n, cfg), seed);
    let mut report = Assembly::default();
    assemble_from(g, host, cfg, &cycles, seed, &mut report).map(|c| (c, report))
}

fn target(n: usize, cfg: &AbsorbConfig) -> usize {
    (cfg.cycle_frac * n as f64).ceil() as usize
}

fn assemble_from(
    g: &Graph,
    host: &HostParams,
    cfg: &AbsorbConfig,
    cycles: &[Cycle],
    seed: u64,
    report: &mut Assembly,
) -> Result<GoodCollection, AbsorbError> {
    let n = g.n();
    report.found = cycles.len();
    if cycles.is_empty() {
        return Err(AbsorbError::TooFewCycles { stage: "find", found: 0, needed: 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sparse = sparsify_cycles(g, cycles, &cfg.sparsify(), &mut rng)?;
    report.sparsified = sparse.len();
    let k = if cfg.k_scale > 0.0 && host.scale().is_finite() { (cfg.k_scale * host.scale()).ceil() as usize } else { 0 };
    let threaded = thread_cycles(g, &sparse, k, seed)?;
    report.threaded = threaded.cycles.len();
    let trimmed = trim_and_clean(g, &threaded, host, cfg.trim_frac, cfg.flex_lambda, cfg.end_frac)?;
    report.trimmed = trimmed.trimmed;
    report.cleaned = trimmed.cleaned;
    report.cycles = trimmed.cycles.len();
    report.spine = trimmed.spine.len();
    report.delta = trimmed.delta;
    report.end_delta = trimmed.end_delta;
    let flex = trimmed.flexible.vertices(n);
    report.flexible = flex.len();

    let on = occupied(n, &trimmed.spine, &trimmed.cycles);
    let y = VertexSet::from_iter(n, (0..n).filter(|&v| !on.contains(v)));
    let mut x = VertexSet::from_iter(n, y.iter().filter(|&v| (g.degree_into(v, &flex) as f64) < trimmed.end_delta));
    let rest = y.difference(&x);
    let (_, deleted) = clean_with_threshold(g, &rest, host.d * rest.len() as f64 / (4.0 * n as f64));
    for v in deleted {
        x.insert(v);
    }
    report.residual_vertices = y.len();
    report.bad = x.len();
    let residual = if y.is_empty() {
        LinearForest::empty(n)
    } else {
        let fcfg = ForestConfig { seed, ..cfg.forest.clone() };
        spanning_forest_good_endpoints(g, &x, &y, cfg.forest_delta_frac * host.d, &fcfg)?.forest
    };
    let l = trimmed.cycles.len();
    let limit = ((cfg.residual_slack * l as f64 / (100.0 * (n.max(2) as f64).log2())).ceil() as usize).max(1);
    report.paths = residual.len();
    report.path_limit = limit;
    if residual.len() > limit {
        return Err(AbsorbError::TooManyPaths { paths: residual.len(), limit });
    }
    let col = GoodCollection {
        spine: trimmed.spine,
        r: 1 + residual.len(),
        l,
        cycles: trimmed.cycles,
        flexible: trimmed.flexible,
        residual,
        delta: trimmed.delta,
    };
    col.check(g)?;
    Ok(col)
}

/// The spine with the detour `C_i − e_i` spliced in for every cycle `i`
/// not marked as used.
fn absorb_into_spine(col: &GoodCollection, used: &[bool]) -> Vec<usize> {
    let n = col.spine.universe();
    let mut first_of = vec![usize::MAX; n];
    for (i, c) in col.cycles.iter().enumerate() {
        first_of[c.order[0]] = i;
    }
    let s = col.spine.vertices();
    let mut out = Vec::with_capacity(n);
    for t in 0..s.len() {
        let (v, next) = (s[t], s.get(t + 1).copied());
        out.push(v);
        let Some(w) = next else { break };
        let i = if first_of[v] != usize::MAX { first_of[v] } else { first_of[w] };
        if i == usize::MAX || used[i] {
            continue;
        }
        let c = &col.cycles[i].order;
        if c[0] == v && c[1] == w {
            out.extend(c[2..].iter().rev());
        } else if c[1] == v && c[0] == w {
            out.extend(&c[2..]);
        }
    }
    out
}

/// Weaves a Hamilton cycle out of a good collection: consecutive path ends
/// are joined through the flexible pairs, every pair a join passes through
/// is opened into the rest of its cycle, and every other cycle is absorbed
/// into the spine.
pub fn hamilton_from_collection(g: &Graph, col: &GoodCollection, cfg: &ConnectConfig) -> Result<Cycle, AbsorbError> {
    col.check(g)?;
    let n = g.n();
    let paths = col.paths();
    let r = paths.len();
    let terminals: Vec<(usize, usize)> = (0..r).map(|j| (*paths[j].last().unwrap(), paths[(j + 1) % r][0])).collect();
    let conn = connect_pairs(g, &col.flexible, &terminals, cfg)?;
    let owner = col.flexible.owners(n);
    let mut used = vec![false; col.cycles.len()];
    for (p, &(a, b)) in conn.paths.iter().zip(&terminals) {
        validate_alternating(g, &col.flexible, p, Ends::Edges).map_err(|e| AbsorbError::Weave(e.to_string()))?;
        if p.first() != Some(&a) || p.last() != Some(&b) {
            return Err(AbsorbError::Weave(format!("join does not run from {a} to {b}")));
        }
        for &v in p {
            if let Some(i) = owner[v] {
                used[i] = true;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    for (j, link) in conn.paths.iter().enumerate() {
        if j == 0 {
            order.extend(absorb_into_spine(col, &used));
        } else {
            order.extend_from_slice(paths[j]);
        }
        let inner = &link[1..link.len() - 1];
        for (t, &v) in inner.iter().enumerate() {
            order.push(v);
            let Some(&w) = inner.get(t + 1) else { break };
            match (owner[v], owner[w]) {
                (Some(i), Some(k)) if i == k => {
                    let c = &col.cycles[i].order;
                    let middle = &c[3..c.len() - 1];
                    if v == c[2] {
                        order.extend(middle);
                    } else {
                        order.extend(middle.iter().rev());
                    }
                }
                _ => {}
            }
        }
    }
    let cycle = Cycle::new(order);
    let verdict = verify_hamilton_cycle(g, &cycle);
    match verdict.defect {
        None => Ok(cycle),
        Some(d) => Err(AbsorbError::Weave(format!("{d:?}"))),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AbsorbRun {
    pub cycle: Option<Cycle>,
    /// Longest cycle found, when there is no Hamilton cycle.
    pub longest: Option<Cycle>,
    pub attempts: usize,
    /// Solved by exact search.
    pub exact: bool,
    /// Sizes of the last assembly that produced a collection.
    pub assembly: Option<Assembly>,
    pub stages: Vec<StageRecord>,
    /// One line per failed attempt.
    pub failures: Vec<String>,
}

impl AbsorbRun {
    pub fn success(&self) -> bool {
        self.cycle.is_some()
    }

    pub fn longest_len(&self) -> usize {
        self.cycle.as_ref().or(self.longest.as_ref()).map_or(0, Cycle::len)
    }

    fn offer(&mut self, c: Cycle) {
        if self.longest.as_ref().is_none_or(|l| c.len() > l.len()) {
            self.longest = Some(c);
        }
    }
}

fn timed<T, E: ToString>(stages: &mut Vec<StageRecord>, attempt: usize, stage: &str, f: impl FnOnce() -> Result<T, E>) -> Result<T, E> {
    let t0 = Instant::now();
    let out = f();
    stages.push(StageRecord {
        attempt,
        stage: stage.into(),
        ok: out.is_ok(),
        micros: t0.elapsed().as_micros() as u64,
        detail: out.as_ref().err().map(E::to_string).unwrap_or_default(),
    });
    out
}

fn exact_run(g: &Graph) -> AbsorbRun {
    let mut run = AbsorbRun {
        cycle: None,
        longest: None,
        attempts: 1,
        exact: true,
        assembly: None,
        stages: Vec::new(),
        failures: Vec::new(),
    };
    let found = timed(&mut run.stages, 0, "exact", || exact::hamilton_cycle(g).ok_or("no Hamilton cycle"));
    match found {
        Ok(c) => run.cycle = Some(c),
        Err(e) => {
            run.failures.push(e.into());
            run.longest = exact::longest_cycle(g);
        }
    }
    run
}

/// Absorbing search for a Hamilton cycle with retries. Each attempt draws
/// a fresh seed for sparsifying, threading, the forest and the joins;
/// cycles are searched again only when an attempt runs short of them.
/// Small graphs are solved exactly. A failed run reports the longest cycle
/// seen, including a rotation closure of the fully absorbed spine.
pub fn hamilton_absorb(g: &Graph, host: Option<&HostParams>, cfg: &AbsorbConfig) -> AbsorbRun {
    let n = g.n();
    if n >= 3 && n <= cfg.exact_below.min(exact::MAX_EXACT) {
        return exact_run(g);
    }
    let mut run =
        AbsorbRun { cycle: None, longest: None, attempts: 0, exact: false, assembly: None, stages: Vec::new(), failures: Vec::new() };
    if n < 3 {
        return run;
    }
    if !g.is_connected() {
        run.failures.push("graph is disconnected".into());
        return run;
    }
    let host = match host {
        Some(h) => *h,
        None => match HostParams::estimate(g, 1e-6) {
            Ok(h) => h,
            Err(e) => {
                run.failures.push(format!("spectral estimate: {e}"));
                return run;
            }
        },
    };
    let cap = (n as f64).log2().ceil() as usize;
    let mut cycles: Option<Vec<Cycle>> = None;
    for attempt in 0..cfg.retries.max(1) {
        run.attempts = attempt + 1;
        let seed = splitmix(cfg.seed, attempt as u64);
        let found = cycles.get_or_insert_with(|| {
            let t0 = Instant::now();
            let c = find_disjoint_cycles(g, cfg.max_len_for(n), target(n, cfg), seed);
            run.stages.push(StageRecord {
                attempt,
                stage: "cycles".into(),
                ok: !c.is_empty(),
                micros: t0.elapsed().as_micros() as u64,
                detail: format!("{} cycles", c.len()),
            });
            c
        });
        if let Some(c) = found.iter().max_by_key(|c| c.len()) {
            let c = c.clone();
            run.offer(c);
        }
        let found = cycles.as_deref().unwrap();
        let mut report = Assembly::default();
        let col = match timed(&mut run.stages, attempt, "assemble", || assemble_from(g, &host, cfg, found, seed, &mut report)) {
            Ok(col) => col,
            Err(e) => {
                if matches!(e, AbsorbError::TooFewCycles { .. } | AbsorbError::Sparsify { .. }) {
                    cycles = None;
                }
                run.failures.push(format!("attempt {attempt}: {e}"));
                continue;
            }
        };
        run.assembly = Some(report);
        let ccfg = ConnectConfig { seed, ..cfg.connect.clone() };
        match timed(&mut run.stages, attempt, "weave", || hamilton_from_collection(g, &col, &ccfg)) {
            Ok(c) => {
                run.cycle = Some(c);
                return run;
            }
            Err(e) => {
                run.failures.push(format!("attempt {attempt}: {e}"));
                let spine = PathState::new(n, absorb_into_spine(&col, &vec![false; col.cycles.len()])).expect("absorbed spine is a path");
                let on = VertexSet::from_iter(n, spine.vertices().iter().copied());
                if let Ok(Closing::Closed(c)) = close_by_rotation(g, &spine, &on, cap, 256) {
                    run.offer(c);
                }
            }
        }
    }
    run
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Rotation,
    Absorb,
    Auto,
}

/// The cycle-supply test behind the `auto` strategy.
#[derive(Debug, Clone, Serialize)]
pub struct Supply {
    /// `d/λ`.
    pub ratio: f64,
    /// `supply_ratio · log_d n`.
    pub ratio_needed: f64,
    pub cycles: usize,
    /// `⌈n / (4 log_d n)⌉`, the count greedy search always reaches in a
    /// good expander.
    pub cycles_needed: usize,
    pub passes: bool,
}

pub fn cycle_supply(g: &Graph, host: &HostParams, cfg: &AbsorbConfig) -> Supply {
    let n = g.n();
    let log_d = if host.d > 1.0 { (n.max(2) as f64).ln() / host.d.ln() } else { f64::INFINITY };
    let ratio = if host.lambda > 0.0 { host.d / host.lambda } else { f64::INFINITY };
    let ratio_needed = cfg.supply_ratio * log_d;
    let cycles_needed = if log_d.is_finite() { (n as f64 / (4.0 * log_d)).ceil() as usize } else { usize::MAX };
    let cycles = if ratio >= ratio_needed {
        find_disjoint_cycles(g, cfg.max_len_for(n), cycles_needed, cfg.seed).len()
    } else {
        0
    };
    let passes = n > cfg.exact_below && ratio >= ratio_needed && cycles >= cycles_needed;
    Supply { ratio, ratio_needed, cycles, cycles_needed, passes }
}

#[derive(Debug, Clone, Serialize)]
pub struct AutoRun {
    /// Strategy that produced the final answer.
    pub strategy: Strategy,
    pub supply: Option<Supply>,
    pub absorb: Option<AbsorbRun>,
    pub rotation: Option<RotationRun>,
    pub cycle: Option<Cycle>,
    pub longest: Option<Cycle>,
}

impl AutoRun {
    pub fn success(&self) -> bool {
        self.cycle.is_some()
    }
}

/// Absorbs when the cycle supply test passes and falls back to rotation
/// otherwise or when absorption fails.
pub fn hamilton_auto(g: &Graph, host: Option<&HostParams>, absorb: &AbsorbConfig, rotation: &RotationConfig) -> AutoRun {
    let n = g.n();
    let host = match host {
        Some(h) => Some(*h),
        None if n > absorb.exact_below && g.is_connected() => HostParams::estimate(g, 1e-6).ok(),
        None => None,
    };
    let supply = host.as_ref().map(|h| cycle_supply(g, h, absorb));
    let mut out = AutoRun { strategy: Strategy::Rotation, supply: supply.clone(), absorb: None, rotation: None, cycle: None, longest: None };
    if supply.as_ref().is_some_and(|s| s.passes) {
        log::info!("auto: cycle supply passes, absorbing");
        let run = hamilton_absorb(g, host.as_ref(), absorb);
        out.strategy = Strategy::Absorb;
        out.cycle = run.cycle.clone();
        out.longest = run.longest.clone();
        out.absorb = Some(run);
        if out.success() {
            return out;
        }
        log::info!("auto: absorption failed, rotating");
    } else {
        log::info!("auto: cycle supply fails, rotating");
    }
    let run = hamilton_rotation(g, host.as_ref(), rotation);
    out.strategy = Strategy::Rotation;
    out.cycle = run.cycle.clone();
    if run.longest_len() > out.longest.as_ref().map_or(0, Cycle::len) {
        out.longest = run.longest.clone();
    }
    out.rotation = Some(run);
    out
}
