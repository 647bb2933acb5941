use crate::{Emitted, Verdict};
use expham::absorber::{hamilton_auto, AbsorbConfig, Strategy};
use expham::generators::{cayley_sum_subgroup, gnp, one_factorization, random_cayley, sample_factor_union, Group, GroupSpec};
use expham::graph::{Cycle, Graph};
use expham::rotation::{hamilton_rotation, RotationConfig};
use expham::spectral::HostParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

const SEEDS: u64 = 20;
const LIMIT_SECS: f64 = 60.0;

struct Family {
    name: &'static str,
    wins: usize,
    slowest: f64,
    notes: Vec<String>,
}

impl Family {
    fn new(name: &'static str) -> Self {
        Family { name, wins: 0, slowest: 0.0, notes: Vec::new() }
    }

    fn passes(&self) -> bool {
        self.wins as f64 >= 0.9 * SEEDS as f64 && self.slowest < LIMIT_SECS
    }

    fn line(&self) -> String {
        let mut s = format!("{} {}/{SEEDS} (slowest {:.2} s)", self.name, self.wins, self.slowest);
        for n in self.notes.iter().take(2) {
            s += &format!(" [{n}]");
        }
        s
    }
}

fn auto(g: &Graph, seed: u64) -> (Option<Cycle>, Strategy) {
    let run = hamilton_auto(
        g,
        None,
        &AbsorbConfig { seed, ..AbsorbConfig::default() },
        &RotationConfig { seed, ..RotationConfig::default() },
    );
    (run.cycle, run.strategy)
}

fn gnp_rotation(emitted: &mut Emitted) -> Family {
    let mut fam = Family::new("gnp");
    let n = 2000;
    let p = 100.0 * (n as f64).ln() / n as f64;
    for seed in 0..SEEDS {
        let g = gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let t0 = Instant::now();
        let host = HostParams::estimate(&g, 1e-6).ok();
        let run = hamilton_rotation(&g, host.as_ref(), &RotationConfig { seed, ..RotationConfig::default() });
        fam.slowest = fam.slowest.max(t0.elapsed().as_secs_f64());
        if let Some(c) = &run.cycle {
            fam.wins += emitted.record(&g, c, &format!("gnp seed {seed}")) as usize;
        }
    }
    fam
}

fn random_cayley_auto(emitted: &mut Emitted) -> Family {
    let mut fam = Family::new("random Cayley Z2^10");
    let group = Group::new(&"z2^10".parse::<GroupSpec>().unwrap()).unwrap();
    let mut absorbed = 0;
    for seed in 0..SEEDS {
        let (g, _) = random_cayley(&group, 46, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let t0 = Instant::now();
        let (cycle, strategy) = auto(&g, seed);
        fam.slowest = fam.slowest.max(t0.elapsed().as_secs_f64());
        absorbed += (strategy == Strategy::Absorb) as usize;
        if let Some(c) = &cycle {
            fam.wins += emitted.record(&g, c, &format!("random Cayley seed {seed}")) as usize;
        }
    }
    fam.notes.push(format!("{absorbed} absorbed"));
    fam
}

fn colour_union(emitted: &mut Emitted) -> Family {
    let mut fam = Family::new("colour-union K1024, k=92");
    let n = 1024;
    let k = 92;
    let factors = one_factorization(n).unwrap();
    let mut most = 0;
    for seed in 0..SEEDS {
        let u = sample_factor_union(n, &factors.matchings, k, None, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let colour: HashMap<(usize, usize), usize> =
            u.picks.iter().flat_map(|&i| factors.matchings[i].iter().map(move |&(a, b)| ((a.min(b), a.max(b)), i))).collect();
        let t0 = Instant::now();
        let (cycle, _) = auto(&u.graph, seed);
        fam.slowest = fam.slowest.max(t0.elapsed().as_secs_f64());
        let Some(c) = cycle else { continue };
        if !emitted.record(&u.graph, &c, &format!("colour-union seed {seed}")) {
            continue;
        }
        let used: Option<BTreeSet<usize>> = c.edges().map(|(a, b)| colour.get(&(a.min(b), a.max(b))).copied()).collect();
        match used {
            Some(used) if used.len() <= k => {
                most = most.max(used.len());
                fam.wins += 1;
            }
            other => fam.notes.push(format!("seed {seed}: colours {:?}", other.map(|u| u.len()))),
        }
    }
    fam.notes.insert(0, format!("at most {most} colours"));
    fam
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

fn cayley_sum(emitted: &mut Emitted) -> Family {
    let mut fam = Family::new("Cayley-sum q=101, |A|=25");
    let (q, size) = (101u64, 25u64);
    let cs = cayley_sum_subgroup(q, size).unwrap();
    let g = cs.on_subgroup();
    // the subgroup of order 25 is the set of 25th roots of unity
    let roots: BTreeSet<u64> = (1..q).filter(|&x| pow_mod(x, size, q) == 1).collect();
    for seed in 0..SEEDS {
        let t0 = Instant::now();
        let (cycle, _) = auto(&g, seed);
        fam.slowest = fam.slowest.max(t0.elapsed().as_secs_f64());
        let Some(c) = cycle else { continue };
        if !emitted.record(&g, &c, &format!("Cayley-sum seed {seed}")) {
            continue;
        }
        let order: Vec<u64> = c.order.iter().map(|&i| cs.subgroup[i]).collect();
        let spans = order.iter().copied().collect::<BTreeSet<_>>() == roots;
        let sums = (0..order.len()).all(|i| roots.contains(&((order[i] + order[(i + 1) % order.len()]) % q)));
        if spans && sums {
            fam.wins += 1;
        } else {
            fam.notes.push(format!("seed {seed}: ordering invalid"));
        }
    }
    fam
}

pub fn hamiltonicity(emitted: &mut Emitted) -> Verdict {
    let families = [gnp_rotation(emitted), random_cayley_auto(emitted), colour_union(emitted), cayley_sum(emitted)];
    let pass = families.iter().all(Family::passes);
    Verdict::new(pass, families.iter().map(Family::line).collect::<Vec<_>>().join("; "))
}
