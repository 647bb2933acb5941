use super::SpectralCertificate;
use crate::graph::{Graph, VertexSet};
use crate::scalar::Scalar;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixingPart {
    /// `|e(A,B) − d|A||B|/n| ≤ λ√(|A||B|)`
    Pairs,
    /// `|e(A) − d|A|²/2n| ≤ λ|A|/2`
    Inside,
    /// `e(A) ≤ λ|A|` for `|A| ≤ λn/d`
    SmallSet,
    /// an A–B edge exists when `|A||B| > (λn/d)²`
    EdgeExists,
}

#[derive(Debug, Clone, Serialize)]
pub struct MixingViolation {
    pub part: MixingPart,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub observed: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditPolicy {
    Warn,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct MixingReport {
    pub checked: [usize; 4],
    pub violated: [usize; 4],
    /// The first few violations in full.
    pub examples: Vec<MixingViolation>,
    pub slack: f64,
}

impl MixingReport {
    pub fn passed(&self) -> bool {
        self.violated.iter().all(|&v| v == 0)
    }

    pub fn total_checks(&self) -> usize {
        self.checked.iter().sum()
    }

    pub fn enforce(&self, policy: AuditPolicy) -> Result<(), String> {
        if self.passed() {
            return Ok(());
        }
        let msg = format!("mixing audit found {:?} violations (pairs/inside/small/edge)", self.violated);
        match policy {
            AuditPolicy::Warn => {
                log::warn!("{msg}");
                Ok(())
            }
            AuditPolicy::Fail => Err(msg),
        }
    }
}

const KEEP: usize = 20;

/// Samples `trials` rounds of set pairs and checks each consequence of the
/// mixing lemma against the certificate. Bounds use `λ + tolerance` and an
/// absolute float slack of `1e-9`.
pub fn mixing_audit<T: Scalar>(g: &Graph, cert: &SpectralCertificate<T>, trials: usize, seed: u64) -> MixingReport {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = cert.d as f64;
    let lam = cert.lambda.as_f64() + cert.tolerance.as_f64().abs();
    let slack = 1e-9;
    let mut report = MixingReport { checked: [0; 4], violated: [0; 4], examples: Vec::new(), slack };
    if n == 0 {
        return report;
    }
    let scale = if d > 0.0 { lam * n as f64 / d } else { f64::INFINITY };
    let nf = n as f64;
    let record = |report: &mut MixingReport, part: MixingPart, ok: bool, a: &VertexSet, b: &VertexSet, observed: f64, bound: f64| {
        let k = part as usize;
        report.checked[k] += 1;
        if !ok {
            report.violated[k] += 1;
            if report.examples.len() < KEEP {
                report.examples.push(MixingViolation { part, a: a.to_vec(), b: b.to_vec(), observed, bound });
            }
        }
    };
    for _ in 0..trials {
        let (ka, kb) = (rng_size(&mut rng, n), rng_size(&mut rng, n));
        let a = random_set(&mut rng, n, ka);
        let b = random_set(&mut rng, n, kb);
        let (sa, sb) = (a.len() as f64, b.len() as f64);
        let e_ab = ordered_edges(g, &a, &b) as f64;
        let dev = (e_ab - d * sa * sb / nf).abs();
        let bound = lam * (sa * sb).sqrt() + slack;
        record(&mut report, MixingPart::Pairs, dev <= bound, &a, &b, dev, bound);

        let e_a = ordered_edges(g, &a, &a) as f64 / 2.0;
        let dev = (e_a - d * sa * sa / (2.0 * nf)).abs();
        let bound = lam * sa / 2.0 + slack;
        record(&mut report, MixingPart::Inside, dev <= bound, &a, &a, dev, bound);

        let small_cap = scale.floor().min(nf) as usize;
        if small_cap >= 1 {
            let k = rng.gen_range(1..=small_cap);
            let s = random_set(&mut rng, n, k);
            let e_s = ordered_edges(g, &s, &s) as f64 / 2.0;
            let bound = lam * s.len() as f64 + slack;
            record(&mut report, MixingPart::SmallSet, e_s <= bound, &s, &s, e_s, bound);
        }

        let target = scale * scale;
        if target < nf * nf {
            let sa = rng.gen_range(1..=n);
            let need = (target / sa as f64).floor() as usize + 1;
            if need <= n {
                let sb = rng.gen_range(need..=n);
                let a4 = random_set(&mut rng, n, sa);
                let b4 = random_set(&mut rng, n, sb);
                let e = ordered_edges(g, &a4, &b4) as f64;
                record(&mut report, MixingPart::EdgeExists, e > 0.0, &a4, &b4, e, 0.0);
            }
        }
    }
    report
}

fn rng_size(rng: &mut ChaCha8Rng, n: usize) -> usize {
    // Half the draws favour small sets, where the bounds are tightest.
    if rng.gen_bool(0.5) {
        rng.gen_range(1..=n.min(8).max(1))
    } else {
        rng.gen_range(1..=n)
    }
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, k: usize) -> VertexSet {
    VertexSet::from_iter(n, sample(rng, n, k.min(n)).into_iter())
}

fn ordered_edges(g: &Graph, a: &VertexSet, b: &VertexSet) -> usize {
    a.iter().map(|v| g.degree_into(v, b)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{estimate_lambda, Method};

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn true_certificate_passes() {
        let g = cycle(9);
        let cert = estimate_lambda::<f64>(&g, 1e-9).unwrap();
        let r = mixing_audit(&g, &cert, 2000, 3);
        assert!(r.passed(), "{:?}", r.examples);
        assert!(r.checked.iter().all(|&c| c > 0));
    }

    #[test]
    fn trivial_lambda_passes_part_one() {
        let g = cycle(8);
        let cert = SpectralCertificate { n: 8, d: 2, lambda: 2.0f64, tolerance: 0.0, method: Method::ExactDense, converged: true };
        let r = mixing_audit(&g, &cert, 500, 9);
        assert_eq!(r.violated[MixingPart::Pairs as usize], 0);
    }

    #[test]
    fn forged_certificate_is_caught() {
        let g = cycle(4);
        let cert = SpectralCertificate { n: 4, d: 2, lambda: 0.1f64, tolerance: 0.0, method: Method::ExactDense, converged: true };
        let r = mixing_audit(&g, &cert, 500, 1);
        assert!(r.violated[MixingPart::Pairs as usize] > 0);
        assert!(r.enforce(AuditPolicy::Fail).is_err());
        assert!(r.enforce(AuditPolicy::Warn).is_ok());
    }
}
