//! Spectral certification of (n, d, λ) parameters, mixing audits and the
//! cleaning processes that extract well-connected subsets.

mod clean;
pub mod eigen;
mod mixing;

pub use clean::{
    clean_subset, clean_with_threshold, expansion_check, pair_clean, pair_clean_with_threshold, CleanOutcome, CleaningWarning,
    ExpansionError, PairCleanOutcome,
};
pub use mixing::{mixing_audit, AuditPolicy, MixingPart, MixingReport, MixingViolation};

use crate::graph::Graph;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactDense,
    IterativeDeflated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SpectralCertificate<T: Scalar> {
    pub n: usize,
    pub d: usize,
    pub lambda: T,
    pub tolerance: T,
    pub method: Method,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub converged: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("dense eigensolver failed: {0}")]
    Dense(&'static str),
    #[error("cleaning removed every vertex of the {size}-vertex input")]
    Exhausted { size: usize },
}

#[derive(Debug, Clone)]
pub struct LambdaOptions {
    /// Largest n handled by the dense solver.
    pub exact_threshold: usize,
    pub window: usize,
    pub restarts: usize,
    pub seed: u64,
    pub force: Option<Method>,
}

impl Default for LambdaOptions {
    fn default() -> Self {
        LambdaOptions { exact_threshold: 600, window: 240, restarts: 12, seed: 0x5eed, force: None }
    }
}

impl<T: Scalar> SpectralCertificate<T> {
    /// Lower bound on λ for any d-regular graph with d < n/2.
    pub fn alon_boppana_floor(&self) -> Option<f64> {
        let (n, d) = (self.n as f64, self.d as f64);
        (2 * self.d < self.n && self.n > 1).then(|| (d * (n - d) / (n - 1.0)).sqrt())
    }

    /// Checks λ ≤ d and the spectral lower bound, up to the tolerance.
    pub fn is_consistent(&self) -> bool {
        let lam = self.lambda.as_f64();
        let tol = self.tolerance.as_f64();
        lam <= self.d as f64 + tol && self.alon_boppana_floor().map_or(true, |f| lam >= f - tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialises")
    }
}

pub fn estimate_lambda<T: Scalar>(g: &Graph, tol: T) -> Result<SpectralCertificate<T>, SpectralError> {
    estimate_lambda_with(g, tol, &LambdaOptions::default())
}

pub fn estimate_lambda_with<T: Scalar>(
    g: &Graph,
    tol: T,
    opts: &LambdaOptions,
) -> Result<SpectralCertificate<T>, SpectralError> {
    let d = g.regular_degree().ok_or(SpectralError::NotRegular)?;
    let n = g.n();
    let method = opts.force.unwrap_or(if n <= opts.exact_threshold {
        Method::ExactDense
    } else {
        Method::IterativeDeflated
    });
    let (lambda, converged) = match method {
        Method::ExactDense => (dense_lambda::<T>(g, T::of_usize(d))?, true),
        Method::IterativeDeflated => {
            let ext = lanczos_adjacency::<T>(g, None, tol, opts);
            (ext.min.abs().max(ext.max.abs()), ext.converged)
        }
    };
    if !converged {
        log::warn!("iterative λ estimate did not reach tolerance {tol}");
    }
    Ok(SpectralCertificate { n, d, lambda, tolerance: tol, method, converged })
}

/// Spectral norm of `A − (d/n)J` computed densely, `d` given.
fn dense_lambda<T: Scalar>(g: &Graph, d: T) -> Result<T, SpectralError> {
    let n = g.n();
    if n == 0 {
        return Ok(T::zero());
    }
    let shift = d / T::of_usize(n);
    let mut a = vec![-shift; n * n];
    for (u, v) in g.edges() {
        a[u * n + v] = a[u * n + v] + T::one();
        a[v * n + u] = a[v * n + u] + T::one();
    }
    let ev = eigen::symmetric_eigenvalues(a, n).map_err(SpectralError::Dense)?;
    Ok(ev.iter().fold(T::zero(), |m, &x| m.max(x.abs())))
}

/// Lanczos on `A − (d/n)J`. With `shift = None` the graph is regular and
/// the all-ones direction is projected out; otherwise `J` is applied
/// explicitly with the given average degree.
fn lanczos_adjacency<T: Scalar>(
    g: &Graph,
    shift: Option<T>,
    tol: T,
    opts: &LambdaOptions,
) -> eigen::Extremes<T> {
    let n = g.n();
    let apply = |x: &[T], y: &mut [T]| {
        let total = shift.map(|d| d / T::of_usize(n) * x.iter().fold(T::zero(), |a, &b| a + b));
        for (v, yv) in y.iter_mut().enumerate() {
            let mut s = g.neighbors(v).iter().fold(T::zero(), |a, &w| a + x[w]);
            if let Some(t) = total {
                s = s - t;
            }
            *yv = s;
        }
    };
    eigen::lanczos_extremes(n, apply, shift.is_none(), tol, opts.window, opts.restarts, opts.seed)
}

/// Degree and mixing parameter used by the Hamiltonicity engines.
///
/// For a regular host this is the certified λ. For an irregular host `d`
/// is the average degree and `lambda` is `‖A − (d/n)J‖`, which still bounds
/// every deviation `|e(A,B) − d|A||B|/n|` by `lambda·√(|A||B|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HostParams {
    pub n: usize,
    pub d: f64,
    pub lambda: f64,
    pub regular: bool,
}

impl<T: Scalar> From<&SpectralCertificate<T>> for HostParams {
    fn from(c: &SpectralCertificate<T>) -> Self {
        HostParams { n: c.n, d: c.d as f64, lambda: c.lambda.as_f64(), regular: true }
    }
}

impl HostParams {
    pub fn estimate(g: &Graph, tol: f64) -> Result<HostParams, SpectralError> {
        if g.regular_degree().is_some() {
            return estimate_lambda::<f64>(g, tol).map(|c| HostParams::from(&c));
        }
        let d = g.average_degree();
        let opts = LambdaOptions::default();
        let lambda = if g.n() <= opts.exact_threshold {
            dense_lambda::<f64>(g, d)?
        } else {
            let ext = lanczos_adjacency::<f64>(g, Some(d), tol, &opts);
            ext.min.abs().max(ext.max.abs())
        };
        Ok(HostParams { n: g.n(), d, lambda, regular: false })
    }

    /// The ratio `λn/d` that appears in every size threshold.
    pub fn scale(&self) -> f64 {
        if self.d > 0.0 {
            self.lambda * self.n as f64 / self.d
        } else {
            f64::INFINITY
        }
    }
}
