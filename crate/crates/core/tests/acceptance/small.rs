use crate::oracle;
use crate::{Emitted, Verdict};
use expham::absorber::{hamilton_absorb, AbsorbConfig};
use expham::generators::gnp;
use expham::graph::{Cycle, Graph};
use expham::rotation::{hamilton_rotation, RotationConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOM_TARGET: usize = 520;

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges_dedup(n, edges.iter().copied())
}

fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

pub fn petersen() -> Graph {
    let mut e = cycle_edges(5);
    e.extend((0..5).map(|i| (i, i + 5)));
    e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    graph(10, &e)
}

fn structured() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=9 {
        out.push((format!("C{n}"), graph(n, &cycle_edges(n))));
        let all: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        out.push((format!("K{n}"), graph(n, &all)));
        out.push((format!("P{n}"), graph(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())));
        out.push((format!("star{n}"), graph(n, &(1..n).map(|i| (0, i)).collect::<Vec<_>>())));
        // wheel: hub 0 on the cycle 1..n
        let mut w: Vec<_> = (1..n).map(|i| (0, i)).collect();
        w.extend((1..n).map(|i| (i, if i + 1 == n { 1 } else { i + 1 })));
        if n >= 4 {
            out.push((format!("W{n}"), graph(n, &w)));
        }
        // theta: two hubs joined by three internally disjoint paths
        if n >= 5 {
            let mut t = Vec::new();
            let inner: Vec<usize> = (2..n).collect();
            let chunks = [&inner[..1], &inner[1..2], &inner[2..]];
            for ch in chunks {
                t.push((0, ch[0]));
                t.extend(ch.windows(2).map(|w| (w[0], w[1])));
                t.push((*ch.last().unwrap(), 1));
            }
            out.push((format!("theta{n}"), graph(n, &t)));
        }
    }
    for a in 1..=4 {
        for b in a..=9 - a {
            let e: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
            out.push((format!("K{a},{b}"), graph(a + b, &e)));
        }
    }
    for k in 3..=4 {
        // prism C_k x K_2 and ladder P_k x K_2
        let mut e: Vec<_> = cycle_edges(k);
        e.extend(cycle_edges(k).iter().map(|&(u, v)| (u + k, v + k)));
        e.extend((0..k).map(|i| (i, i + k)));
        out.push((format!("prism{k}"), graph(2 * k, &e)));
    }
    for k in 2..=4 {
        let mut e: Vec<_> = (0..k - 1).flat_map(|i| [(i, i + 1), (i + k, i + k + 1)]).collect();
        e.extend((0..k).map(|i| (i, i + k)));
        out.push((format!("ladder{k}"), graph(2 * k, &e)));
    }
    let cube: Vec<_> = (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ 1 << b))).collect();
    out.push(("Q3".into(), graph(8, &cube)));
    out.push(("bowtie".into(), graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])));
    for n in [6, 8] {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| v != u + n / 2).collect();
        out.push((format!("cocktail{n}"), graph(n, &e)));
    }
    out
}

fn corpus(rng: &mut ChaCha8Rng) -> Vec<(String, Graph)> {
    let mut out = structured();
    let mut made = 0;
    while made < RANDOM_TARGET {
        let n = rng.gen_range(3..=9);
        let p = rng.gen_range(0.2..0.9);
        let g = gnp(n, p, rng).unwrap();
        if g.is_connected() {
            out.push((format!("gnp{made}"), g));
            made += 1;
        }
    }
    out
}

struct Tally {
    hamiltonian: usize,
    rotation: usize,
    absorb: usize,
}

fn check(
    name: &str,
    g: &Graph,
    hamiltonian: bool,
    found: Option<&Cycle>,
    longest: Option<&Cycle>,
    strategy: &str,
    emitted: &mut Emitted,
    errors: &mut Vec<String>,
) -> bool {
    match found {
        Some(c) => {
            emitted.record(g, c, &format!("{strategy} on {name}"));
            if !hamiltonian {
                errors.push(format!("{strategy} emitted a cycle on non-Hamiltonian {name}"));
            }
            true
        }
        None => {
            if let Some(c) = longest {
                if c.check(g).is_err() || c.len() > oracle::longest_cycle_len(g) {
                    errors.push(format!("{strategy} reported a bad longest cycle on {name}"));
                }
            }
            false
        }
    }
}

fn sweep(
    graphs: &[(String, Graph)],
    rotation: &RotationConfig,
    absorb: &AbsorbConfig,
    emitted: &mut Emitted,
    errors: &mut Vec<String>,
) -> Tally {
    let mut t = Tally { hamiltonian: 0, rotation: 0, absorb: 0 };
    for (i, (name, g)) in graphs.iter().enumerate() {
        let ham = oracle::has_hamilton_cycle(g);
        t.hamiltonian += ham as usize;
        let rc = RotationConfig { seed: i as u64, ..rotation.clone() };
        let r = hamilton_rotation(g, None, &rc);
        t.rotation += check(name, g, ham, r.cycle.as_ref(), r.longest.as_ref(), "rotation", emitted, errors) as usize;
        let ac = AbsorbConfig { seed: i as u64, ..absorb.clone() };
        let a = hamilton_absorb(g, None, &ac);
        t.absorb += check(name, g, ham, a.cycle.as_ref(), a.longest.as_ref(), "absorb", emitted, errors) as usize;
    }
    t
}

pub fn oracle_equivalence(emitted: &mut Emitted) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let graphs = corpus(&mut rng);
    let mut errors = Vec::new();
    let rotation = RotationConfig { retries: 50, ..RotationConfig::default() };
    let absorb = AbsorbConfig { retries: 50, ..AbsorbConfig::default() };
    let t = sweep(&graphs, &rotation, &absorb, emitted, &mut errors);
    let mut pass = t.rotation == t.hamiltonian && t.absorb == t.hamiltonian && errors.is_empty();

    let pet = petersen();
    let ham = oracle::has_hamilton_cycle(&pet);
    let longest = oracle::longest_cycle_len(&pet);
    let r = hamilton_rotation(&pet, None, &rotation);
    let a = hamilton_absorb(&pet, None, &absorb);
    let lens = (r.longest.as_ref().map_or(0, Cycle::len), a.longest.as_ref().map_or(0, Cycle::len));
    let petersen_ok = !ham
        && longest == 9
        && r.cycle.is_none()
        && a.cycle.is_none()
        && lens == (9, 9)
        && r.longest.as_ref().is_some_and(|c| c.check(&pet).is_ok())
        && a.longest.as_ref().is_some_and(|c| c.check(&pet).is_ok());
    pass &= petersen_ok;

    // heuristics alone, exact search disabled; informational
    let mut scratch = Vec::new();
    let h = sweep(
        &graphs,
        &RotationConfig { exact_below: 0, ..rotation.clone() },
        &AbsorbConfig { exact_below: 0, ..absorb.clone() },
        emitted,
        &mut scratch,
    );
    let unsound = scratch.iter().filter(|e| e.contains("emitted")).count();
    pass &= unsound == 0;

    let mut detail = format!(
        "{} graphs, {} Hamiltonian; rotation {}/{}, absorb {}/{}; Petersen: oracle longest {longest}, reported {lens:?}; \
         heuristics only: rotation {}/{}, absorb {}/{}, unsound {unsound}",
        graphs.len(),
        t.hamiltonian,
        t.rotation,
        t.hamiltonian,
        t.absorb,
        t.hamiltonian,
        h.rotation,
        h.hamiltonian,
        h.absorb,
        h.hamiltonian,
    );
    for e in errors.iter().take(5) {
        detail += &format!("; {e}");
    }
    Verdict::new(pass, detail)
}
