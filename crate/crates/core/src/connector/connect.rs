use super::aux::{build_aux, AuxDigraph};
use super::embed::{EmbedHost, GoodEmbedding};
use super::ConnectorError;
use crate::graph::Graph;
use crate::pairs::PairList;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConnectConfig {
    /// Each tree stops growing at this fraction of `|V(H)|`.
    pub tree_frac: f64,
    /// Goodness is kept for sets of size up to this fraction of `|V(H)|`.
    pub goodness_frac: f64,
    /// Out-degree bound `D` of the embedded forest.
    pub degree: usize,
    /// Colourings tried before giving up.
    pub colourings: usize,
    pub seed: u64,
}

impl Default for ConnectConfig {
    fn default() -> Self {
        ConnectConfig { tree_frac: 0.1, goodness_frac: 0.1, degree: 3, colourings: 20, seed: 0 }
    }
}

impl ConnectConfig {
    /// Trees of `|V(H)|/50` vertices.
    pub fn asymptotic() -> Self {
        ConnectConfig { tree_frac: 1.0 / 50.0, ..Self::default() }
    }
}

/// Vertex-disjoint alternating paths, one per terminal pair.
#[derive(Debug, Clone, Serialize)]
pub struct Connection {
    /// Host vertices from `a_i` to `b_i`.
    pub paths: Vec<Vec<usize>>,
    /// Seed of the colouring that worked.
    pub seed: u64,
    pub colourings_tried: usize,
    pub aux_order: usize,
    /// Auxiliary vertices used by each path, roots excluded.
    pub aux_per_path: Vec<usize>,
    /// Largest live forest seen, in vertices.
    pub peak_forest: usize,
    /// Extensions accepted by the local goodness check despite a tight set.
    pub tolerated: usize,
}

struct Attempt<'a> {
    g: &'a Graph,
    aux: AuxDigraph,
    host: EmbedHost,
    emb: GoodEmbedding,
    roots: HashMap<usize, usize>,
    tree_of: Vec<u8>,
    cap: usize,
    peak: usize,
}

/// Where a pair attempt ended.
enum Grown {
    Path(Vec<usize>, usize),
    Stalled(String),
}

impl<'a> Attempt<'a> {
    fn new(g: &'a Graph, m: &PairList, terminals: &[(usize, usize)], cfg: &ConnectConfig, seed: u64) -> Result<Self, ConnectorError> {
        let mut scope = m.vertices(g.n());
        for &(a, b) in terminals {
            scope.insert(a);
            scope.insert(b);
        }
        let aux = build_aux(g, m, Some(&scope), seed)?;
        let host = EmbedHost::new(aux.digraph.clone());
        let order = aux.order();
        let s = ((cfg.goodness_frac * order as f64) as usize).max(1);
        let mut emb = GoodEmbedding::new(&host, s, cfg.degree);
        let mut roots = HashMap::new();
        for &v in terminals.iter().flat_map(|(a, b)| [a, b]) {
            if let std::collections::hash_map::Entry::Vacant(e) = roots.entry(v) {
                let local = aux.local_of(v).expect("terminal in scope");
                e.insert(emb.add_root(&host, local).expect("distinct roots"));
            }
        }
        let cap = ((cfg.tree_frac * order as f64).ceil() as usize).max(2);
        let peak = emb.len();
        Ok(Attempt { g, aux, host, emb, roots, tree_of: vec![0; order], cap, peak })
    }

    /// A vertex of the other tree adjacent in the host graph to `local`.
    fn crossing(&self, local: usize, other: u8) -> Option<usize> {
        let v = self.aux.host_vertex(local);
        self.g.neighbors(v).iter().find_map(|&w| self.aux.local_of(w).filter(|&l| self.tree_of[l] == other))
    }

    fn connect(&mut self, a: usize, b: usize) -> Grown {
        let ends = [self.roots[&a], self.roots[&b]];
        let mut trees: [Vec<usize>; 2] = [vec![ends[0]], vec![ends[1]]];
        let mut queues: [VecDeque<usize>; 2] = [VecDeque::from([ends[0]]), VecDeque::from([ends[1]])];
        let mut added: HashMap<usize, usize> = HashMap::new();
        for t in 0..2 {
            self.tree_of[self.emb.image(ends[t])] = t as u8 + 1;
        }
        let mut found = None;
        while found.is_none() {
            let pick = (0..2)
                .filter(|&t| trees[t].len() < self.cap && !queues[t].is_empty())
                .min_by_key(|&t| trees[t].len());
            let Some(t) = pick else { break };
            let f = *queues[t].front().unwrap();
            if added.get(&f).copied().unwrap_or(0) >= 2 {
                queues[t].pop_front();
                continue;
            }
            match self.emb.extend(&self.host, f) {
                Ok(c) => {
                    *added.entry(f).or_default() += 1;
                    trees[t].push(c);
                    queues[t].push_back(c);
                    let image = self.emb.image(c);
                    self.tree_of[image] = t as u8 + 1;
                    self.peak = self.peak.max(self.emb.len());
                    if let Some(l) = self.crossing(image, 2 - t as u8) {
                        let other = self.emb.node_at(l).unwrap();
                        found = Some(if t == 0 { (c, other) } else { (other, c) });
                    }
                }
                Err(_) => {
                    queues[t].pop_front();
                }
            }
        }
        let kept: Vec<usize> = match found {
            Some((u, w)) => [self.emb.root_path(u), self.emb.root_path(w)].concat(),
            None => Vec::new(),
        };
        let result = match found {
            Some((u, w)) => {
                let first: Vec<usize> = self.emb.root_path(u).iter().map(|&id| self.emb.image(id)).collect();
                let second: Vec<usize> = self.emb.root_path(w).iter().map(|&id| self.emb.image(id)).collect();
                Grown::Path(self.aux.lift_pair(&first, &second), first.len() + second.len() - 2)
            }
            None => Grown::Stalled(format!(
                "trees stopped at {} and {} vertices without a crossing edge",
                trees[0].len(),
                trees[1].len()
            )),
        };
        for tree in &trees {
            for &id in tree.iter().skip(1).rev() {
                self.tree_of[self.emb.image(id)] = 0;
                if !kept.contains(&id) {
                    self.emb.rollback(&self.host, id).expect("tree vertices leave leaf-first");
                }
            }
            self.tree_of[self.emb.image(tree[0])] = 0;
        }
        result
    }
}

fn check_terminals(g: &Graph, m: &PairList, terminals: &[(usize, usize)]) -> Result<(), ConnectorError> {
    let in_m = m.vertices(g.n());
    for (i, &(a, b)) in terminals.iter().enumerate() {
        if a == b {
            return Err(ConnectorError::Precondition(format!("pair {i} joins a vertex to itself")));
        }
        for v in [a, b] {
            if v >= g.n() {
                return Err(ConnectorError::Precondition(format!("terminal {v} is out of range")));
            }
            if in_m.contains(v) {
                return Err(ConnectorError::Precondition(format!("terminal {v} lies on a pair")));
            }
        }
    }
    Ok(())
}

/// Joins each terminal pair `(a_i, b_i)` by an alternating path through the
/// pairs of `m`, all paths disjoint apart from shared terminals.
///
/// Pairs are handled in order: two binary out-trees grow from `a_i` and
/// `b_i` in the auxiliary digraph until a host edge joins them; everything
/// off the joining path is then removed leaf by leaf. A failed colouring is
/// retried with the next seed.
pub fn connect_pairs(
    g: &Graph,
    m: &PairList,
    terminals: &[(usize, usize)],
    cfg: &ConnectConfig,
) -> Result<Connection, ConnectorError> {
    check_terminals(g, m, terminals)?;
    let mut best: Option<(usize, String, Vec<Vec<usize>>)> = None;
    for attempt in 0..cfg.colourings.max(1) {
        let seed = cfg.seed.wrapping_add(attempt as u64);
        let mut run = Attempt::new(g, m, terminals, cfg, seed)?;
        let mut paths = Vec::with_capacity(terminals.len());
        let mut aux_per_path = Vec::with_capacity(terminals.len());
        let mut failed = None;
        for (i, &(a, b)) in terminals.iter().enumerate() {
            match run.connect(a, b) {
                Grown::Path(p, used) => {
                    paths.push(p);
                    aux_per_path.push(used);
                }
                Grown::Stalled(reason) => {
                    failed = Some((i, reason));
                    break;
                }
            }
        }
        match failed {
            None => {
                return Ok(Connection {
                    paths,
                    seed,
                    colourings_tried: attempt + 1,
                    aux_order: run.aux.order(),
                    aux_per_path,
                    peak_forest: run.peak,
                    tolerated: run.emb.tolerated,
                })
            }
            Some((i, reason)) => {
                log::debug!("colouring {seed}: pair {i} failed: {reason}");
                if best.as_ref().is_none_or(|b| i > b.0) {
                    best = Some((i, reason, paths));
                }
            }
        }
    }
    let (pair, reason, partial) = best.expect("at least one attempt");
    Err(ConnectorError::PairFailed { pair, reason, partial, colourings: cfg.colourings.max(1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connector::{validate_alternating, Ends};
    use crate::generators::random_regular;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn through_one_pair() {
        // a=0, b=3, pair (1, 2); both orientations give a-y-x-b
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)]).unwrap();
        let m = PairList::new(4, vec![(1, 2)]).unwrap();
        let c = connect_pairs(&g, &m, &[(0, 3)], &ConnectConfig::default()).unwrap();
        assert_eq!(c.paths[0].len(), 4);
        assert_eq!((c.paths[0][0], c.paths[0][3]), (0, 3));
        validate_alternating(&g, &m, &c.paths[0], Ends::Edges).unwrap();
    }

    #[test]
    fn adjacent_terminals_still_use_pairs() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let m = PairList::new(3, vec![(1, 1)]).unwrap();
        let c = connect_pairs(&g, &m, &[(0, 2)], &ConnectConfig::default()).unwrap();
        assert_eq!(c.paths[0], vec![0, 1, 2]);
        validate_alternating(&g, &m, &c.paths[0], Ends::Edges).unwrap();
    }

    #[test]
    fn isolated_terminal_fails_with_pair_index() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5)]).unwrap();
        let m = PairList::new(6, vec![(1, 1), (3, 3)]).unwrap();
        let cfg = ConnectConfig { colourings: 2, ..Default::default() };
        let err = connect_pairs(&g, &m, &[(0, 2), (4, 5)], &cfg).unwrap_err();
        match err {
            ConnectorError::PairFailed { pair, partial, .. } => {
                assert_eq!(pair, 1);
                assert_eq!(partial.len(), 1);
                validate_alternating(&g, &m, &partial[0], Ends::Edges).unwrap();
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn terminals_on_pairs_are_rejected() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let m = PairList::new(3, vec![(1, 1)]).unwrap();
        assert!(matches!(
            connect_pairs(&g, &m, &[(0, 1)], &ConnectConfig::default()),
            Err(ConnectorError::Precondition(_))
        ));
    }

    #[test]
    fn many_pairs_in_a_random_regular_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 1000;
        let g = random_regular(n, 30, &mut rng).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let m = PairList::new(n, (0..200).map(|i| (order[2 * i], order[2 * i + 1])).collect()).unwrap();
        let terminals: Vec<(usize, usize)> = (0..5).map(|i| (order[400 + 2 * i], order[401 + 2 * i])).collect();
        let c = connect_pairs(&g, &m, &terminals, &ConnectConfig::default()).unwrap();
        let mut seen = vec![false; n];
        for (p, &(a, b)) in c.paths.iter().zip(&terminals) {
            assert_eq!((p[0], *p.last().unwrap()), (a, b));
            validate_alternating(&g, &m, p, Ends::Edges).unwrap();
            for &v in p {
                assert!(!std::mem::replace(&mut seen[v], true));
            }
        }
        let bound = terminals.len() as f64 * 2.0 * (n as f64).log2() + 2.0 * 0.1 * c.aux_order as f64;
        assert!((c.peak_forest as f64) <= bound);
    }
}
