use crate::oracle;
use crate::Verdict;
use expham::generators::{paley, random_regular};
use expham::graph::Graph;
use expham::spectral::{estimate_lambda_with, mixing_audit, LambdaOptions, Method, MixingReport, SpectralCertificate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PAIRS: usize = 10_000;

fn forced(g: &Graph, method: Method, tol: f64) -> SpectralCertificate<f64> {
    let opts = LambdaOptions { force: Some(method), ..LambdaOptions::default() };
    estimate_lambda_with(g, tol, &opts).unwrap()
}

/// Audits until every applicable part has been sampled `PAIRS` times.
fn audit(g: &Graph, cert: &SpectralCertificate<f64>) -> ([usize; 4], [usize; 4]) {
    let (mut checked, mut violated) = ([0; 4], [0; 4]);
    for seed in 0.. {
        let r: MixingReport = mixing_audit(g, cert, PAIRS, seed);
        for k in 0..4 {
            checked[k] += r.checked[k];
            violated[k] += r.violated[k];
        }
        if checked.iter().all(|&c| c >= PAIRS) || seed == 9 {
            break;
        }
    }
    (checked, violated)
}

pub fn paley_mixing() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [13u64, 101, 109] {
        let g = paley(q).unwrap();
        let cert = forced(&g, Method::ExactDense, 1e-9);
        let closed = (1.0 + (q as f64).sqrt()) / 2.0;
        let independent = oracle::lambda(&g);
        let (checked, violated) = audit(&g, &cert);
        let ok = (cert.lambda - closed).abs() <= 1e-9
            && (independent - closed).abs() <= 1e-9
            && checked.iter().all(|&c| c >= PAIRS)
            && violated.iter().all(|&v| v == 0);
        pass &= ok;
        parts.push(format!("q={q}: λ={:.9} (closed form {closed:.9}), checked {checked:?}, violated {violated:?}", cert.lambda));
    }
    Verdict::new(pass, parts.join("; "))
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges_dedup(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn accuracy() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_gap: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    let mut unconverged = 0;
    for _ in 0..50 {
        let n = rng.gen_range(20..=500);
        let mut d = rng.gen_range(3..=24.min(n - 1));
        if n * d % 2 == 1 {
            d -= 1;
        }
        let g = random_regular(n, d, &mut rng).unwrap();
        let exact = forced(&g, Method::ExactDense, 1e-10);
        let iterative = forced(&g, Method::IterativeDeflated, 1e-8);
        unconverged += !iterative.converged as usize;
        worst_gap = worst_gap.max((exact.lambda - iterative.lambda).abs());
        worst_oracle = worst_oracle.max((exact.lambda - oracle::lambda(&g)).abs());
    }
    let k4 = Graph::from_edges_dedup(4, (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))));
    let named = [("Petersen", crate::small::petersen(), 2.0), ("K4", k4, 1.0), ("C4", cycle(4), 2.0)];
    let tol = 1e-9;
    let mut named_ok = true;
    let mut got = Vec::new();
    for (name, g, want) in &named {
        for method in [Method::ExactDense, Method::IterativeDeflated] {
            let lam = forced(g, method, tol).lambda;
            named_ok &= (lam - want).abs() <= tol;
            got.push(format!("{name} {method:?} {lam:.12}"));
        }
    }
    let pass = worst_gap <= 1e-6 && worst_oracle <= 1e-8 && named_ok;
    Verdict::new(
        pass,
        format!(
            "50 random regular graphs: max |iterative − exact| = {worst_gap:.2e}, max |exact − nalgebra| = {worst_oracle:.2e}, \
             {unconverged} unconverged; {}",
            got.join(", ")
        ),
    )
}
