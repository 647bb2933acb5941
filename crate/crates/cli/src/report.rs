use anyhow::Context;
use expham::graph::io::{read_cycle, read_graph, write_cycle, write_edge_list, write_json};
use expham::graph::{Cycle, Graph};
use serde::Serialize;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success,
    Failure,
    Usage,
    Invalid,
}

impl Exit {
    pub fn code(self) -> ExitCode {
        ExitCode::from(match self {
            Exit::Success => 0,
            Exit::Failure => 1,
            Exit::Usage => 2,
            Exit::Invalid => 3,
        })
    }
}

/// An error with the exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    exit: Exit,
    source: anyhow::Error,
}

impl CliError {
    pub fn usage(e: impl Into<anyhow::Error>) -> Self {
        CliError { exit: Exit::Usage, source: e.into() }
    }

    pub fn invalid(e: impl Into<anyhow::Error>) -> Self {
        CliError { exit: Exit::Invalid, source: e.into() }
    }

    pub fn exit(&self) -> Exit {
        self.exit
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.source)
    }
}

/// I/O trouble is reported as invalid input.
impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::invalid(e)
    }
}

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_graph(&text).with_context(|| format!("parsing {}", path.display())).map_err(CliError::invalid)
}

pub fn load_cycle(path: &Path) -> Result<Cycle, CliError> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_cycle(&text).with_context(|| format!("parsing {}", path.display())).map_err(CliError::invalid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    EdgeList,
    Json,
}

pub fn graph_text(g: &Graph, format: Format) -> String {
    match format {
        Format::EdgeList => write_edge_list(g),
        Format::Json => write_json(g) + "\n",
    }
}

/// Writes to `path`, or stdout when it is absent or `-`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(CliError::usage)
        }
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn emit_cycle(path: &Path, c: &Cycle) -> Result<(), CliError> {
    emit(Some(path), &write_cycle(c))
}

pub fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("report serialises") + "\n"
}

#[derive(Debug, Clone, Serialize)]
pub struct StageView {
    pub attempt: usize,
    pub strategy: &'static str,
    pub stage: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Everything timing-dependent lives here so that dropping this one field
/// leaves a reproducible report.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub total_micros: u64,
    pub spectral_micros: u64,
    /// Parallel to `stages`.
    pub stage_micros: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub seed: u64,
    pub n: usize,
    pub edges: usize,
    pub strategy: String,
    /// The strategy that produced the answer under `auto`.
    pub chosen: String,
    pub success: bool,
    pub cycle_len: usize,
    pub cycle: Option<Vec<usize>>,
    /// Longest cycle found when there is no Hamilton cycle.
    pub longest: Option<Vec<usize>>,
    pub attempts: usize,
    pub host: Option<expham::spectral::HostParams>,
    pub supply: Option<expham::absorber::Supply>,
    pub artifacts: Vec<PathBuf>,
    pub stages: Vec<StageView>,
    /// One line per failed absorbing attempt, and anything else that
    /// explains a failure.
    pub failures: Vec<String>,
    pub timings: Timings,
}
