use crate::report::{emit, load_graph, to_json, CliError, Exit};
use clap::{Args, ValueEnum};
use expham::spectral::{estimate_lambda_with, mixing_audit, LambdaOptions, Method, MixingReport, SpectralCertificate};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Auto,
    Exact,
    Iterative,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    pub graph: PathBuf,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Also run the mixing audit on this many sampled set pairs.
    #[arg(long)]
    pub audit: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Certified {
    #[serde(flatten)]
    certificate: SpectralCertificate<f64>,
    ratio: f64,
    consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<MixingReport>,
}

pub fn run(args: CertifyArgs) -> Result<Exit, CliError> {
    let g = load_graph(&args.graph)?;
    let force = match args.method {
        MethodArg::Auto => None,
        MethodArg::Exact => Some(Method::ExactDense),
        MethodArg::Iterative => Some(Method::IterativeDeflated),
    };
    let opts = LambdaOptions { force, seed: args.seed, ..LambdaOptions::default() };
    let certificate = estimate_lambda_with(&g, args.tol, &opts).map_err(CliError::invalid)?;
    let audit = args.audit.map(|t| mixing_audit(&g, &certificate, t, args.seed));
    let passed = audit.as_ref().is_none_or(MixingReport::passed);
    let out = Certified {
        ratio: certificate.d as f64 / certificate.lambda,
        consistent: certificate.is_consistent(),
        certificate,
        audit,
    };
    emit(args.out.as_deref(), &to_json(&out))?;
    Ok(if passed { Exit::Success } else { Exit::Failure })
}
