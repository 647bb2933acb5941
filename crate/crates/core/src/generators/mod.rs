//! Host-graph constructors: Cayley graphs, Cayley sum graphs over prime
//! fields, Paley graphs, 1-factorisations of K_n and their random unions,
//! random regular graphs and G(n, p).

mod field;
mod group;

pub use field::{is_prime, primitive_root, subgroup};
pub use group::{Group, GroupSpec};

use crate::graph::Graph;
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("the identity may not be a generator")]
    IdentityGenerator,
    #[error("element {0} is not in the group")]
    NotAnElement(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup size {size} does not divide {q} - 1")]
    SizeNotDivisor { q: u64, size: u64 },
    #[error("{0}")]
    BadParameters(String),
}

/// Cayley graph with edges `{g, g·a}` for `a ∈ S ∪ S⁻¹`.
pub fn cayley(group: &Group, gens: &[usize]) -> Result<Graph, GenError> {
    for &a in gens {
        if a >= group.order() {
            return Err(GenError::NotAnElement(a));
        }
        if a == group.identity() {
            return Err(GenError::IdentityGenerator);
        }
    }
    let edges = (0..group.order()).flat_map(|g| gens.iter().map(move |&a| (g, group.mul(g, a))));
    Ok(Graph::from_edges_dedup(group.order(), edges.collect::<Vec<_>>()))
}

/// Uniform `d`-subset of the non-identity elements and its Cayley graph.
pub fn random_cayley(group: &Group, d: usize, rng: &mut impl Rng) -> Result<(Graph, Vec<usize>), GenError> {
    let order = group.order();
    if d >= order {
        return Err(GenError::BadParameters(format!("need d < |G| = {order}")));
    }
    let mut gens: Vec<usize> = sample(rng, order - 1, d).into_iter().map(|i| i + 1).collect();
    gens.sort_unstable();
    Ok((cayley(group, &gens)?, gens))
}

/// Cayley sum graph on `F_q`: `x ~ y` iff `x ≠ y` and `x + y` lies in the
/// multiplicative subgroup of the given size.
#[derive(Debug, Clone)]
pub struct CayleySum {
    pub graph: Graph,
    pub subgroup: Vec<u64>,
    pub q: u64,
    /// Common degree when the graph is regular.
    pub regular: Option<usize>,
}

impl CayleySum {
    /// The subgraph induced on the subgroup, vertex `i` standing for
    /// `subgroup[i]`.
    pub fn on_subgroup(&self) -> Graph {
        let idx: Vec<usize> = self.subgroup.iter().map(|&a| a as usize).collect();
        self.graph.induced(&idx)
    }
}

pub fn cayley_sum_subgroup(q: u64, size: u64) -> Result<CayleySum, GenError> {
    if !is_prime(q) {
        return Err(GenError::NotPrime(q));
    }
    if size == 0 || (q - 1) % size != 0 {
        return Err(GenError::SizeNotDivisor { q, size });
    }
    let subgroup = subgroup(q, size);
    let mut member = vec![false; q as usize];
    for &a in &subgroup {
        member[a as usize] = true;
    }
    let mut edges = Vec::new();
    for x in 0..q {
        for y in x + 1..q {
            if member[((x + y) % q) as usize] {
                edges.push((x as usize, y as usize));
            }
        }
    }
    let graph = Graph::from_edges(q as usize, &edges).expect("simple by construction");
    let regular = graph.regular_degree();
    if regular.is_none() {
        log::debug!("cayley sum graph over F_{q} with |A| = {size} is not regular");
    }
    Ok(CayleySum { graph, subgroup, q, regular })
}

/// Paley graph on `F_q`, `q ≡ 1 (mod 4)` prime.
pub fn paley(q: u64) -> Result<Graph, GenError> {
    if !is_prime(q) {
        return Err(GenError::NotPrime(q));
    }
    if q % 4 != 1 {
        return Err(GenError::BadParameters(format!("Paley graphs need q ≡ 1 mod 4, got {q}")));
    }
    let mut square = vec![false; q as usize];
    for x in 1..q {
        square[(x * x % q) as usize] = true;
    }
    let mut edges = Vec::new();
    for x in 0..q {
        for y in x + 1..q {
            if square[(y - x) as usize] {
                edges.push((x as usize, y as usize));
            }
        }
    }
    Ok(Graph::from_edges(q as usize, &edges).expect("simple by construction"))
}

/// Perfect matchings partitioning `E(K_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: usize,
    pub matchings: Vec<Vec<(usize, usize)>>,
}

/// Round-robin 1-factorisation of `K_n`, `n` even.
pub fn one_factorization(n: usize) -> Result<Factorization, GenError> {
    if n == 0 || n % 2 == 1 {
        return Err(GenError::BadParameters(format!("1-factorisation needs even n, got {n}")));
    }
    let m = n - 1;
    let matchings = (0..m)
        .map(|r| {
            let mut round = vec![(r.min(m), r.max(m))];
            for i in 1..n / 2 {
                let (a, b) = ((r + i) % m, (r + m - i) % m);
                round.push((a.min(b), a.max(b)));
            }
            round
        })
        .collect();
    Ok(Factorization { n, matchings })
}

/// Each non-identity element class `{a, a⁻¹}` gives one factor of the
/// Cayley graph: a perfect matching for involutions, a 2-factor otherwise.
pub fn cayley_factors(group: &Group) -> (Vec<usize>, Vec<Vec<(usize, usize)>>) {
    let mut reps = Vec::new();
    let mut factors = Vec::new();
    for a in 1..group.order() {
        if group.inv(a) < a {
            continue;
        }
        reps.push(a);
        factors.push((0..group.order()).map(|g| (g, group.mul(g, a))).collect());
    }
    (reps, factors)
}

#[derive(Debug, Clone)]
pub struct FactorUnion {
    pub graph: Graph,
    /// Sampled factor indices in draw order.
    pub picks: Vec<usize>,
    pub distinct: usize,
    pub duplicates: usize,
}

/// Union of `k` factors drawn independently with replacement, uniformly or
/// by `weights`.
pub fn sample_factor_union(
    n: usize,
    factors: &[Vec<(usize, usize)>],
    k: usize,
    weights: Option<&[f64]>,
    rng: &mut impl Rng,
) -> Result<FactorUnion, GenError> {
    if factors.is_empty() {
        return Err(GenError::BadParameters("no factors to sample".into()));
    }
    let picks: Vec<usize> = match weights {
        Some(w) => {
            let dist = WeightedIndex::new(w).map_err(|e| GenError::BadParameters(e.to_string()))?;
            (0..k).map(|_| dist.sample(rng)).collect()
        }
        None => (0..k).map(|_| rng.gen_range(0..factors.len())).collect(),
    };
    let mut uniq = picks.clone();
    uniq.sort_unstable();
    uniq.dedup();
    let edges = uniq.iter().flat_map(|&i| factors[i].iter().copied());
    let graph = Graph::from_edges_dedup(n, edges.collect::<Vec<_>>());
    Ok(FactorUnion { graph, distinct: uniq.len(), duplicates: k - uniq.len(), picks })
}

/// Uniform-ish random d-regular graph: random pairing of `nd` points that
/// never creates loops or repeated edges, restarting when stuck.
pub fn random_regular(n: usize, d: usize, rng: &mut impl Rng) -> Result<Graph, GenError> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(GenError::BadParameters(format!("no simple {d}-regular graph on {n} vertices")));
    }
    'attempt: for _ in 0..1000 {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
        while !points.is_empty() {
            let mut chosen = None;
            for _ in 0..64 {
                let i = rng.gen_range(0..points.len());
                let j = rng.gen_range(0..points.len());
                let (u, v) = (points[i], points[j]);
                if i != j && u != v && !adj[u].contains(&v) {
                    chosen = Some((i, j));
                    break;
                }
            }
            if chosen.is_none() {
                let valid: Vec<(usize, usize)> = (0..points.len())
                    .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| points[i] != points[j] && !adj[points[i]].contains(&points[j]))
                    .collect();
                if valid.is_empty() {
                    continue 'attempt;
                }
                chosen = Some(valid[rng.gen_range(0..valid.len())]);
            }
            let (i, j) = chosen.expect("a pair was chosen");
            let (u, v) = (points[i], points[j]);
            adj[u].push(v);
            adj[v].push(u);
            let (hi, lo) = (i.max(j), i.min(j));
            points.swap_remove(hi);
            points.swap_remove(lo);
        }
        let edges = adj.iter().enumerate().flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)));
        return Ok(Graph::from_edges(n, &edges.collect::<Vec<_>>()).expect("simple by construction"));
    }
    Err(GenError::BadParameters("random pairing kept getting stuck".into()))
}

/// Binomial random graph G(n, p).
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadParameters(format!("p = {p} is not a probability")));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("simple by construction"))
}
