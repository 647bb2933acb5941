use crate::report::{emit, graph_text, CliError, Exit, Format};
use anyhow::anyhow;
use clap::{Args, Subcommand};
use expham::generators::{
    cayley, cayley_sum_subgroup, gnp, one_factorization, paley, random_cayley, random_regular, sample_factor_union, Group,
    GroupSpec,
};
use expham::graph::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::EdgeList)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Random d-regular graph.
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Binomial random graph G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Cayley graph with the given generators.
    Cayley {
        /// `z12`, `z2^8`, `d5`, `s4`, or a product such as `z2^3xz5`.
        #[arg(long)]
        group: String,
        /// Comma-separated element labels; `e<i>` names the i-th basis
        /// vector of `z2^k`.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Cayley graph on a uniform random generating set of size `d`.
    RandomCayley {
        #[arg(long)]
        group: String,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Paley graph on F_q.
    Paley {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Cayley sum graph of a multiplicative subgroup of F_q.
    CayleySum {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        size: u64,
        /// Keep only the subgraph induced on the subgroup.
        #[arg(long)]
        induced: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Union of `k` random perfect matchings of the round-robin
    /// factorisation of K_n.
    FactorUnion {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
}

pub fn parse_group(spec: &str) -> Result<Group, CliError> {
    let spec: GroupSpec = spec.parse().map_err(CliError::usage)?;
    Group::new(&spec).map_err(CliError::usage)
}

fn parse_generator(group: &Group, tok: &str) -> Result<usize, CliError> {
    let tok = tok.trim();
    if let Some(i) = tok.strip_prefix('e') {
        let GroupSpec::ElementaryAbelian2(k) = group.spec() else {
            return Err(CliError::usage(anyhow!("basis names like `{tok}` need a group z2^k")));
        };
        return match i.parse::<u32>() {
            Ok(i) if (1..=*k).contains(&i) => Ok(1 << (i - 1)),
            _ => Err(CliError::usage(anyhow!("`{tok}` is not a basis vector of z2^{k}"))),
        };
    }
    tok.parse().map_err(|_| CliError::usage(anyhow!("bad generator `{tok}`")))
}

fn build(cmd: &GenCommand, rng: &mut ChaCha8Rng) -> Result<Graph, CliError> {
    let g = match cmd {
        GenCommand::Regular { n, d, .. } => random_regular(*n, *d, rng),
        GenCommand::Gnp { n, p, .. } => gnp(*n, *p, rng),
        GenCommand::Cayley { group, gens, .. } => {
            let group = parse_group(group)?;
            let gens = gens.iter().map(|t| parse_generator(&group, t)).collect::<Result<Vec<_>, _>>()?;
            cayley(&group, &gens)
        }
        GenCommand::RandomCayley { group, d, .. } => random_cayley(&parse_group(group)?, *d, rng).map(|(g, gens)| {
            log::info!("generators {gens:?}");
            g
        }),
        GenCommand::Paley { q, .. } => paley(*q),
        GenCommand::CayleySum { q, size, induced, .. } => {
            cayley_sum_subgroup(*q, *size).map(|cs| if *induced { cs.on_subgroup() } else { cs.graph })
        }
        GenCommand::FactorUnion { n, k, .. } => one_factorization(*n).and_then(|f| {
            let u = sample_factor_union(*n, &f.matchings, *k, None, rng)?;
            log::info!("{} distinct matchings of {k} drawn", u.distinct);
            Ok(u.graph)
        }),
    };
    g.map_err(CliError::usage)
}

pub fn run(cmd: GenCommand) -> Result<Exit, CliError> {
    let out = match &cmd {
        GenCommand::Regular { out, .. }
        | GenCommand::Gnp { out, .. }
        | GenCommand::Cayley { out, .. }
        | GenCommand::RandomCayley { out, .. }
        | GenCommand::Paley { out, .. }
        | GenCommand::CayleySum { out, .. }
        | GenCommand::FactorUnion { out, .. } => out.clone(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(out.seed);
    let g = build(&cmd, &mut rng)?;
    emit(out.out.as_deref(), &graph_text(&g, out.format))?;
    Ok(Exit::Success)
}
