use crate::oracle;
use crate::Verdict;
use expham::connector::{connect_pairs, validate_alternating, ConnectConfig, Ends};
use expham::forest::{spanning_forest_good_endpoints, validate_spanning, ForestConfig};
use expham::generators::random_regular;
use expham::graph::{Graph, VertexSet};
use expham::pairs::PairList;
use rand::seq::{index::sample, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Spans `y`, disjoint, host edges only, no endpoint in `x`.
fn plain_forest_check(g: &Graph, x: &VertexSet, y: &VertexSet, paths: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; g.n()];
    for p in paths {
        if p.is_empty() || !oracle::is_path(g, p) || x.contains(p[0]) || x.contains(*p.last().unwrap()) {
            return false;
        }
        for &v in p {
            if seen[v] || !y.contains(v) {
                return false;
            }
            seen[v] = true;
        }
    }
    y.iter().all(|v| seen[v])
}

pub fn forest_contract() -> Verdict {
    let n = 3000;
    let limit = 4.0 * n as f64 / (100.0 * (n as f64).log2());
    let y = VertexSet::full(n);
    let (mut ok, mut most, mut errors) = (0, 0, Vec::new());
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(700 + seed);
        let g = random_regular(n, 40, &mut rng).unwrap();
        let x = VertexSet::from_iter(n, sample(&mut rng, n, 25));
        let cfg = ForestConfig { seed, ..ForestConfig::default() };
        match spanning_forest_good_endpoints(&g, &x, &y, 0.4, &cfg) {
            Ok(out) => {
                let count = out.forest.len();
                most = most.max(count);
                let valid = validate_spanning(&g, &x, &y, &out.forest).is_ok();
                let plain = plain_forest_check(&g, &x, &y, &out.forest.paths);
                if valid && plain && count as f64 <= limit {
                    ok += 1;
                } else {
                    errors.push(format!("seed {seed}: validator {valid}, plain {plain}, {count} paths"));
                }
            }
            Err(e) => errors.push(format!("seed {seed}: {e}")),
        }
    }
    let mut detail = format!("{ok}/100 seeds valid, most paths {most} (limit {limit:.2})");
    for e in errors.iter().take(3) {
        detail += &format!("; {e}");
    }
    Verdict::new(ok == 100, detail)
}

pub fn connector_throughput() -> Verdict {
    let n = 4000;
    let (mut ok, mut slowest, mut errors) = (0, 0.0f64, Vec::new());
    let hosts = 5;
    for seed in 0..hosts {
        let mut rng = ChaCha8Rng::seed_from_u64(900 + seed);
        let g = random_regular(n, 40, &mut rng).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let m = PairList::new(n, (0..600).map(|i| (order[2 * i], order[2 * i + 1])).collect()).unwrap();
        let terminals: Vec<(usize, usize)> = (0..10).map(|i| (order[1200 + 2 * i], order[1201 + 2 * i])).collect();
        let mut partner = vec![None; n];
        for &(a, b) in m.as_slice() {
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        let t0 = Instant::now();
        let result = connect_pairs(&g, &m, &terminals, &ConnectConfig { seed, ..ConnectConfig::default() });
        let secs = t0.elapsed().as_secs_f64();
        slowest = slowest.max(secs);
        let c = match result {
            Ok(c) => c,
            Err(e) => {
                errors.push(format!("host {seed}: {e}"));
                continue;
            }
        };
        let mut seen = vec![false; n];
        let mut disjoint = true;
        for p in &c.paths {
            for &v in p {
                disjoint &= !std::mem::replace(&mut seen[v], true);
            }
        }
        let library = c.paths.iter().all(|p| validate_alternating(&g, &m, p, Ends::Edges).is_ok());
        let plain = c.paths.len() == terminals.len()
            && c.paths.iter().zip(&terminals).all(|(p, &(a, b))| oracle::alternates(&g, &partner, p, a, b));
        if library && plain && disjoint && secs < 5.0 {
            ok += 1;
        } else {
            errors.push(format!("host {seed}: validator {library}, plain {plain}, disjoint {disjoint}, {secs:.2} s"));
        }
    }
    let mut detail = format!("{ok}/{hosts} hosts: 10 pairs through 600 flexible pairs, slowest {slowest:.2} s");
    for e in errors.iter().take(3) {
        detail += &format!("; {e}");
    }
    Verdict::new(ok == hosts, detail)
}
