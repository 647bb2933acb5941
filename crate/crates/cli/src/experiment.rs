use crate::gen::parse_group;
use crate::ham::{solve, StrategyArg};
use crate::report::{emit, to_json, CliError, Exit};
use anyhow::anyhow;
use clap::{Args, ValueEnum};
use expham::generators::{cayley_sum_subgroup, gnp, one_factorization, random_cayley, sample_factor_union, CayleySum};
use expham::graph::{Cycle, Graph};
use expham::rotation::splitmix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Cayley graph on a uniform random generating set.
    RandomCayley,
    /// Union of random colour classes of the round-robin colouring of K_n.
    ColourUnion,
    /// Cyclic ordering of a multiplicative subgroup with consecutive sums
    /// inside it.
    CayleySum,
    /// G(n, p) at `p = c · ln n / n`.
    GnpThreshold,
}

impl Preset {
    fn name(self) -> &'static str {
        match self {
            Preset::RandomCayley => "random-cayley",
            Preset::ColourUnion => "colour-union",
            Preset::CayleySum => "cayley-sum",
            Preset::GnpThreshold => "gnp-threshold",
        }
    }

    fn default_strategy(self) -> StrategyArg {
        match self {
            Preset::GnpThreshold => StrategyArg::Rotation,
            _ => StrategyArg::Auto,
        }
    }
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    #[arg(long, value_enum)]
    pub preset: Preset,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Master seed; trial `i` uses `splitmix(seed, i)`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Defaults to `rotation` for gnp-threshold and `auto` otherwise.
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    #[arg(long)]
    pub retries: Option<usize>,
    /// random-cayley group.
    #[arg(long, default_value = "z2^10")]
    pub group: String,
    /// random-cayley generating set size.
    #[arg(long, default_value_t = 46)]
    pub d: usize,
    /// colour-union and gnp-threshold order.
    #[arg(long)]
    pub n: Option<usize>,
    /// colour-union colour classes drawn.
    #[arg(long, default_value_t = 92)]
    pub k: usize,
    /// cayley-sum field size.
    #[arg(long, default_value_t = 101)]
    pub q: u64,
    /// cayley-sum subgroup size.
    #[arg(long, default_value_t = 25)]
    pub size: u64,
    /// gnp-threshold constant `c`.
    #[arg(long, default_value_t = 100.0)]
    pub c: f64,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, env = "EXPHAM_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// CSV file; stdout when omitted.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// JSON summary with per-trial details.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trial {
    pub index: usize,
    pub seed: u64,
    pub n: usize,
    pub d: f64,
    pub lambda: Option<f64>,
    pub strategy: String,
    pub success: bool,
    pub cycle_len: usize,
    pub wall_ms: f64,
    /// Distinct colours on the cycle found (colour-union).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colours: Option<usize>,
    /// Colour classes in the host (colour-union).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colours_drawn: Option<usize>,
    /// The ordering passed the sum check (cayley-sum).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering_valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize)]
struct Summary {
    preset: Preset,
    trials: usize,
    seed: u64,
    successes: usize,
    success_rate: f64,
    mean_wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_colours: Option<usize>,
    records: Vec<Trial>,
}

/// Host of one trial, with what the preset needs to interpret a cycle.
enum Host {
    Plain(Graph),
    Coloured { graph: Graph, colour: HashMap<(usize, usize), usize>, drawn: usize },
    Sums(CayleySum, Graph),
}

fn build(args: &ExperimentArgs, rng: &mut ChaCha8Rng) -> Result<Host, CliError> {
    let bad = |e: expham::generators::GenError| CliError::usage(e);
    Ok(match args.preset {
        Preset::RandomCayley => Host::Plain(random_cayley(&parse_group(&args.group)?, args.d, rng).map_err(bad)?.0),
        Preset::ColourUnion => {
            let n = args.n.unwrap_or(1024);
            let f = one_factorization(n).map_err(bad)?;
            let u = sample_factor_union(n, &f.matchings, args.k, None, rng).map_err(bad)?;
            let picked: BTreeSet<usize> = u.picks.iter().copied().collect();
            let colour = picked.iter().flat_map(|&i| f.matchings[i].iter().map(move |&e| (e, i))).collect();
            Host::Coloured { graph: u.graph, colour, drawn: u.distinct }
        }
        Preset::CayleySum => {
            let cs = cayley_sum_subgroup(args.q, args.size).map_err(bad)?;
            let h = cs.on_subgroup();
            Host::Sums(cs, h)
        }
        Preset::GnpThreshold => {
            let n = args.n.unwrap_or(2000);
            let p = (args.c * (n.max(2) as f64).ln() / n as f64).min(1.0);
            Host::Plain(gnp(n, p, rng).map_err(bad)?)
        }
    })
}

/// Distinct colours on the edges of `c`.
pub fn colours_used(c: &Cycle, colour: &HashMap<(usize, usize), usize>) -> Option<usize> {
    let used: Option<BTreeSet<usize>> = c.edges().map(|(u, v)| colour.get(&(u.min(v), u.max(v))).copied()).collect();
    used.map(|s| s.len())
}

/// Checks with field arithmetic that `order` lists every subgroup element
/// once and consecutive elements, cyclically, sum into the subgroup.
pub fn valid_sum_ordering(q: u64, subgroup: &[u64], order: &[u64]) -> bool {
    let members: BTreeSet<u64> = subgroup.iter().copied().collect();
    let listed: BTreeSet<u64> = order.iter().copied().collect();
    let k = order.len();
    k == members.len()
        && listed == members
        && (0..k).all(|i| members.contains(&((order[i] + order[(i + 1) % k]) % q)))
}

fn trial(args: &ExperimentArgs, strategy: StrategyArg, index: usize) -> Result<Trial, CliError> {
    let seed = splitmix(args.seed, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let host = build(args, &mut rng)?;
    let g = match &host {
        Host::Plain(g) | Host::Coloured { graph: g, .. } | Host::Sums(_, g) => g,
    };
    let t0 = Instant::now();
    let solved = solve(g, strategy, seed, args.retries, 1e-6);
    let wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    let mut record = Trial {
        index,
        seed,
        n: g.n(),
        d: solved.host.map_or(g.average_degree(), |h| h.d),
        lambda: solved.host.map(|h| h.lambda),
        strategy: if strategy == StrategyArg::Auto { format!("auto:{}", solved.chosen) } else { strategy.name().into() },
        success: solved.cycle.is_some(),
        cycle_len: solved.cycle.as_ref().or(solved.longest.as_ref()).map_or(0, Cycle::len),
        wall_ms,
        colours: None,
        colours_drawn: None,
        ordering_valid: None,
        ordering: None,
        failures: solved.failures,
    };
    match (&host, &solved.cycle) {
        (Host::Coloured { colour, drawn, .. }, c) => {
            record.colours_drawn = Some(*drawn);
            record.colours = c.as_ref().and_then(|c| colours_used(c, colour));
        }
        (Host::Sums(cs, _), Some(c)) => {
            let order: Vec<u64> = c.order.iter().map(|&i| cs.subgroup[i]).collect();
            let ok = valid_sum_ordering(cs.q, &cs.subgroup, &order);
            record.success &= ok;
            record.ordering_valid = Some(ok);
            record.ordering = Some(order);
        }
        (Host::Sums(..), None) => record.ordering_valid = Some(false),
        _ => {}
    }
    Ok(record)
}

pub fn run_trials(args: &ExperimentArgs) -> Result<Vec<Trial>, CliError> {
    let strategy = args.strategy.unwrap_or(args.preset.default_strategy());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| CliError::usage(anyhow!(e)))?;
    pool.install(|| (0..args.trials).into_par_iter().map(|i| trial(args, strategy, i)).collect())
}

pub fn csv(preset: Preset, trials: &[Trial]) -> String {
    let mut out = String::from("preset,n,d,lambda,strategy,seed,success,cycle_len,wall_ms\n");
    for t in trials {
        let lambda = t.lambda.map_or(String::new(), |l| format!("{l:.6}"));
        let _ = writeln!(
            out,
            "{},{},{:.3},{},{},{},{},{},{:.3}",
            preset.name(),
            t.n,
            t.d,
            lambda,
            t.strategy,
            t.seed,
            t.success,
            t.cycle_len,
            t.wall_ms
        );
    }
    out
}

pub fn run(args: ExperimentArgs) -> Result<Exit, CliError> {
    if args.trials == 0 {
        return Err(CliError::usage(anyhow!("at least one trial is needed")));
    }
    let trials = run_trials(&args)?;
    emit(args.csv.as_deref(), &csv(args.preset, &trials))?;
    let successes = trials.iter().filter(|t| t.success).count();
    let summary = Summary {
        preset: args.preset,
        trials: trials.len(),
        seed: args.seed,
        successes,
        success_rate: successes as f64 / trials.len() as f64,
        mean_wall_ms: trials.iter().map(|t| t.wall_ms).sum::<f64>() / trials.len() as f64,
        max_colours: trials.iter().filter_map(|t| t.colours).max(),
        records: trials,
    };
    eprintln!(
        "{}: {}/{} succeeded, mean {:.1} ms{}",
        args.preset.name(),
        successes,
        summary.trials,
        summary.mean_wall_ms,
        summary.max_colours.map_or(String::new(), |c| format!(", at most {c} colours per cycle"))
    );
    if let Some(path) = &args.summary {
        emit(Some(path), &to_json(&summary))?;
    }
    Ok(if successes == summary.trials { Exit::Success } else { Exit::Failure })
}
