use crate::oracle::{self, Embedded};
use crate::Verdict;
use expham::connector::{EmbedHost, GoodEmbedding};
use expham::digraph::Digraph;
use rand::seq::{index::sample, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SCHEDULES: usize = 1000;
const OPS: usize = 40;

#[derive(Default)]
struct Counts {
    checks: usize,
    extends: usize,
    refused: usize,
    rollbacks: usize,
    roots_dropped: usize,
    violations: Vec<String>,
}

fn random_digraph(n: usize, out_deg: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    (0..n)
        .map(|v| {
            let mut outs: Vec<usize> = sample(rng, n - 1, out_deg.min(n - 1)).into_iter().map(|w| if w >= v { w + 1 } else { w }).collect();
            outs.sort_unstable();
            outs
        })
        .collect()
}

fn nodes(emb: &GoodEmbedding) -> Vec<(usize, usize)> {
    emb.live_nodes().map(|(_, node)| (node.image, node.children.len())).collect()
}

/// Independent goodness check plus structural sanity of the forest.
fn audit(out: &[Vec<usize>], emb: &GoodEmbedding, s: usize, d: usize, op: &str, c: &mut Counts) {
    c.checks += 1;
    let e = Embedded { out, nodes: nodes(emb) };
    if let Err(x) = oracle::is_good(&e, s, d) {
        if c.violations.len() < 10 {
            c.violations.push(format!("after {op}: set {x:?} breaks goodness"));
        }
    }
    let mut images: Vec<usize> = e.nodes.iter().map(|&(img, _)| img).collect();
    images.sort_unstable();
    images.dedup();
    let arcs_ok = emb.live_nodes().all(|(_, node)| {
        node.children.len() <= d
            && node.parent.is_none_or(|p| emb.node(p).is_some_and(|pn| out[pn.image].contains(&node.image)))
    });
    if images.len() != e.nodes.len() || !arcs_ok {
        c.violations.push(format!("after {op}: images repeat or a tree arc is missing from the host"));
    }
}

fn schedule(rng: &mut ChaCha8Rng, c: &mut Counts) -> bool {
    let n = rng.gen_range(6..=14);
    let s = rng.gen_range(1..=3);
    let d = rng.gen_range(1..=3);
    let out_deg = (d * s + rng.gen_range(0..=4)).min(n - 1);
    let out = random_digraph(n, out_deg, rng);
    let host = EmbedHost::new(Digraph::from_arcs(n, out.iter().enumerate().flat_map(|(v, ws)| ws.iter().map(move |&w| (v, w)))));
    let mut emb = GoodEmbedding::new(&host, s, d);
    if oracle::is_good(&Embedded { out: &out, nodes: Vec::new() }, s, d).is_err() {
        return false;
    }
    for _ in 0..OPS {
        let live: Vec<(usize, usize, bool)> =
            emb.live_nodes().map(|(id, node)| (id, node.children.len(), node.parent.is_some())).collect();
        match rng.gen_range(0..10) {
            0..=1 => {
                let free: Vec<usize> = (0..n).filter(|&v| !emb.is_used(v)).collect();
                let Some(&v) = free.choose(rng) else { continue };
                let id = emb.add_root(&host, v).unwrap();
                if oracle::is_good(&Embedded { out: &out, nodes: nodes(&emb) }, s, d).is_err() {
                    emb.remove_root(&host, id).unwrap();
                    c.roots_dropped += 1;
                }
                audit(&out, &emb, s, d, "add_root", c);
            }
            2..=6 => {
                let open: Vec<usize> = live.iter().filter(|&&(_, ch, _)| ch < d).map(|&(id, _, _)| id).collect();
                let Some(&parent) = open.choose(rng) else { continue };
                let before = emb.images();
                match emb.extend(&host, parent) {
                    Ok(_) => c.extends += 1,
                    Err(_) => {
                        c.refused += 1;
                        if emb.images() != before {
                            c.violations.push("refused extend changed the embedding".into());
                        }
                    }
                }
                audit(&out, &emb, s, d, "extend", c);
            }
            _ => {
                let leaves: Vec<usize> = live.iter().filter(|&&(_, ch, p)| ch == 0 && p).map(|&(id, _, _)| id).collect();
                let Some(&leaf) = leaves.choose(rng) else { continue };
                emb.rollback(&host, leaf).unwrap();
                c.rollbacks += 1;
                audit(&out, &emb, s, d, "rollback", c);
            }
        }
    }
    // demolish leaf by leaf
    while !emb.is_empty() {
        let (id, parent) = emb
            .live_nodes()
            .find(|(_, node)| node.children.is_empty())
            .map(|(id, node)| (id, node.parent))
            .expect("a forest has a leaf");
        if parent.is_some() {
            emb.rollback(&host, id).unwrap();
            c.rollbacks += 1;
            audit(&out, &emb, s, d, "rollback", c);
        } else {
            emb.remove_root(&host, id).unwrap();
            audit(&out, &emb, s, d, "remove_root", c);
        }
    }
    true
}

pub fn schedules() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut c = Counts::default();
    let (mut accepted, mut skipped) = (0, 0);
    while accepted < SCHEDULES {
        if schedule(&mut rng, &mut c) {
            accepted += 1;
        } else {
            skipped += 1;
        }
    }
    let mut detail = format!(
        "{accepted} schedules ({skipped} hosts not good when empty), {} exhaustive checks, {} extends, {} refused, {} rollbacks, \
         {} roots dropped, {} violations",
        c.checks,
        c.extends,
        c.refused,
        c.rollbacks,
        c.roots_dropped,
        c.violations.len()
    );
    for v in c.violations.iter().take(3) {
        detail += &format!("; {v}");
    }
    Verdict::new(c.violations.is_empty() && c.extends > 0, detail)
}
