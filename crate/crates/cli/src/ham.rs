use crate::report::{emit, emit_cycle, load_cycle, load_graph, to_json, CliError, Exit, RunReport, StageView, Timings};
use clap::{Args, ValueEnum};
use expham::absorber::{hamilton_absorb, hamilton_auto, AbsorbConfig, Strategy, Supply};
use expham::graph::{verify_hamilton_cycle, Cycle, Graph};
use expham::rotation::{hamilton_rotation, RotationConfig, StageRecord};
use expham::spectral::HostParams;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Rotation,
    Absorb,
    Auto,
}

impl StrategyArg {
    pub fn name(self) -> &'static str {
        match self {
            StrategyArg::Rotation => "rotation",
            StrategyArg::Absorb => "absorb",
            StrategyArg::Auto => "auto",
        }
    }
}

#[derive(Args, Debug)]
pub struct HamArgs {
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Restarts before giving up.
    #[arg(long)]
    pub retries: Option<usize>,
    /// Tolerance of the λ estimate.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Report file; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Write the cycle found here.
    #[arg(long)]
    pub cycle_out: Option<PathBuf>,
}

/// Outcome of one search, whatever the strategy.
#[derive(Debug, Clone)]
pub struct Solved {
    pub cycle: Option<Cycle>,
    pub longest: Option<Cycle>,
    pub attempts: usize,
    pub chosen: &'static str,
    pub host: Option<HostParams>,
    pub supply: Option<Supply>,
    pub stages: Vec<(StageView, u64)>,
    pub failures: Vec<String>,
    pub spectral_micros: u64,
}

fn stages<'a>(records: &'a [StageRecord], strategy: &'static str) -> impl Iterator<Item = (StageView, u64)> + 'a {
    records.iter().map(move |r| {
        let view = StageView { attempt: r.attempt, strategy, stage: r.stage.clone(), ok: r.ok, detail: r.detail.clone() };
        (view, r.micros)
    })
}

/// Runs `strategy` on `g`. The spectral parameters are estimated once, for
/// connected graphs beyond exact-search size.
pub fn solve(g: &Graph, strategy: StrategyArg, seed: u64, retries: Option<usize>, tol: f64) -> Solved {
    let mut absorb = AbsorbConfig { seed, ..AbsorbConfig::default() };
    let mut rotation = RotationConfig { seed, ..RotationConfig::default() };
    if let Some(r) = retries {
        absorb.retries = r;
        rotation.retries = r;
    }
    let t0 = Instant::now();
    let host = if g.n() > absorb.exact_below && g.is_connected() {
        match HostParams::estimate(g, tol) {
            Ok(h) => Some(h),
            Err(e) => {
                log::warn!("spectral estimate failed: {e}");
                None
            }
        }
    } else {
        None
    };
    let spectral_micros = t0.elapsed().as_micros() as u64;
    let mut out = Solved {
        cycle: None,
        longest: None,
        attempts: 0,
        chosen: strategy.name(),
        host,
        supply: None,
        stages: Vec::new(),
        failures: Vec::new(),
        spectral_micros,
    };
    match strategy {
        StrategyArg::Rotation => {
            let run = hamilton_rotation(g, host.as_ref(), &rotation);
            out.stages.extend(stages(&run.stages, "rotation"));
            (out.cycle, out.longest, out.attempts) = (run.cycle, run.longest, run.attempts);
        }
        StrategyArg::Absorb => {
            let run = hamilton_absorb(g, host.as_ref(), &absorb);
            out.stages.extend(stages(&run.stages, "absorb"));
            (out.cycle, out.longest, out.attempts, out.failures) = (run.cycle, run.longest, run.attempts, run.failures);
        }
        StrategyArg::Auto => {
            let run = hamilton_auto(g, host.as_ref(), &absorb, &rotation);
            out.chosen = match run.strategy {
                Strategy::Absorb => "absorb",
                _ => "rotation",
            };
            log::info!("auto chose {} (cycle supply passes: {:?})", out.chosen, run.supply.as_ref().map(|s| s.passes));
            if let Some(a) = &run.absorb {
                out.stages.extend(stages(&a.stages, "absorb"));
                out.failures.extend(a.failures.iter().cloned());
                out.attempts += a.attempts;
            }
            if let Some(r) = &run.rotation {
                out.stages.extend(stages(&r.stages, "rotation"));
                out.attempts += r.attempts;
            }
            (out.cycle, out.longest, out.supply) = (run.cycle, run.longest, run.supply);
        }
    }
    if let Some(c) = &out.cycle {
        let verdict = verify_hamilton_cycle(g, c);
        if !verdict.ok {
            // never hand out a cycle the verifier rejects
            out.failures.push(format!("discarded cycle: {:?}", verdict.defect));
            out.cycle = None;
        }
    }
    if out.cycle.is_none() && out.longest.as_ref().is_some_and(|c| c.check(g).is_err()) {
        out.longest = None;
    }
    out
}

pub fn run(args: HamArgs, echo: Vec<String>) -> Result<Exit, CliError> {
    let g = load_graph(&args.graph)?;
    let t0 = Instant::now();
    let solved = solve(&g, args.strategy, args.seed, args.retries, args.tol);
    let total_micros = t0.elapsed().as_micros() as u64;
    let mut artifacts = Vec::new();
    if let (Some(path), Some(c)) = (&args.cycle_out, &solved.cycle) {
        emit_cycle(path, c)?;
        artifacts.push(path.clone());
    }
    if let Some(p) = &args.out {
        artifacts.push(p.clone());
    }
    let (stages, stage_micros) = solved.stages.into_iter().unzip();
    let report = RunReport {
        command: echo,
        seed: args.seed,
        n: g.n(),
        edges: g.edge_count(),
        strategy: args.strategy.name().into(),
        chosen: solved.chosen.into(),
        success: solved.cycle.is_some(),
        cycle_len: solved.cycle.as_ref().or(solved.longest.as_ref()).map_or(0, Cycle::len),
        cycle: solved.cycle.map(|c| c.order),
        longest: solved.longest.map(|c| c.order),
        attempts: solved.attempts,
        host: solved.host,
        supply: solved.supply,
        artifacts,
        stages,
        failures: solved.failures,
        timings: Timings { total_micros, spectral_micros: solved.spectral_micros, stage_micros },
    };
    emit(args.out.as_deref(), &to_json(&report))?;
    Ok(if report.success { Exit::Success } else { Exit::Failure })
}

pub fn verify(graph: &Path, cycle: &Path) -> Result<Exit, CliError> {
    let g = load_graph(graph)?;
    let c = load_cycle(cycle)?;
    let verdict = verify_hamilton_cycle(&g, &c);
    println!("{}", serde_json::to_string(&verdict).expect("verdict serialises"));
    Ok(if verdict.ok { Exit::Success } else { Exit::Failure })
}
