use crate::digraph::Digraph;
use serde::Serialize;
use thiserror::Error;

/// Largest host order for which goodness is checked over every small set.
pub const EXHAUSTIVE_MAX: usize = 18;

/// Most in-neighbours of a new image considered by the local check.
const LOCAL_SPAN: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("host vertex {0} is already used")]
    ImageTaken(usize),
    #[error("forest vertex {0} does not exist")]
    UnknownNode(usize),
    #[error("forest vertex {0} already has the maximum out-degree")]
    DegreeCap(usize),
    #[error("no image for a child of {parent} keeps the embedding good ({candidates} candidates)")]
    NoGoodImage { parent: usize, candidates: usize },
    #[error("forest vertex {0} is not a leaf with a parent")]
    NotLeaf(usize),
}

/// Host digraph with the lookups the embedding needs.
#[derive(Debug, Clone)]
pub struct EmbedHost {
    pub digraph: Digraph,
    inn: Vec<Vec<usize>>,
    masks: Option<Vec<u32>>,
}

impl EmbedHost {
    pub fn new(digraph: Digraph) -> Self {
        let inn = digraph.in_lists();
        let masks = (digraph.n() <= EXHAUSTIVE_MAX)
            .then(|| (0..digraph.n()).map(|v| digraph.out(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect());
        EmbedHost { digraph, inn, masks }
    }

    pub fn n(&self) -> usize {
        self.digraph.n()
    }

    pub fn is_small(&self) -> bool {
        self.masks.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub image: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// Embedding of a directed forest into a host digraph, kept `(s, D)`-good.
///
/// `deg_F` counts children: a complete binary out-tree has `Δ = 2`.
#[derive(Debug, Clone, Serialize)]
pub struct GoodEmbedding {
    pub s: usize,
    pub d: usize,
    nodes: Vec<Option<Node>>,
    vacant: Vec<usize>,
    #[serde(skip)]
    at: Vec<Option<usize>>,
    /// `|N⁺(v) \ φ(F)|`
    #[serde(skip)]
    free_out: Vec<usize>,
    live: usize,
    /// Extensions accepted by the local check while some checked set was
    /// already tight.
    pub tolerated: usize,
}

impl GoodEmbedding {
    pub fn new(host: &EmbedHost, s: usize, d: usize) -> Self {
        let n = host.n();
        GoodEmbedding {
            s,
            d,
            nodes: Vec::new(),
            vacant: Vec::new(),
            at: vec![None; n],
            free_out: (0..n).map(|v| host.digraph.out(v).len()).collect(),
            live: 0,
            tolerated: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn node(&self, id: usize) -> Option<&Node> {
        self.nodes.get(id).and_then(Option::as_ref)
    }

    pub fn image(&self, id: usize) -> usize {
        self.node(id).expect("live node").image
    }

    pub fn node_at(&self, host_vertex: usize) -> Option<usize> {
        self.at[host_vertex]
    }

    pub fn is_used(&self, host_vertex: usize) -> bool {
        self.at[host_vertex].is_some()
    }

    /// Sorted images of the live forest.
    pub fn images(&self) -> Vec<usize> {
        (0..self.at.len()).filter(|&v| self.at[v].is_some()).collect()
    }

    /// Live nodes as `(id, node)`.
    pub fn live_nodes(&self) -> impl Iterator<Item = (usize, &Node)> {
        self.nodes.iter().enumerate().filter_map(|(i, n)| n.as_ref().map(|n| (i, n)))
    }

    fn deg_at(&self, v: usize) -> usize {
        self.at[v].map_or(0, |id| self.image_children(id))
    }

    fn image_children(&self, id: usize) -> usize {
        self.nodes[id].as_ref().map_or(0, |n| n.children.len())
    }

    fn insert(&mut self, host: &EmbedHost, image: usize, parent: Option<usize>) -> usize {
        let node = Node { image, parent, children: Vec::new() };
        let id = match self.vacant.pop() {
            Some(id) => {
                self.nodes[id] = Some(node);
                id
            }
            None => {
                self.nodes.push(Some(node));
                self.nodes.len() - 1
            }
        };
        if let Some(p) = parent {
            self.nodes[p].as_mut().unwrap().children.push(id);
        }
        self.at[image] = Some(id);
        for &u in &host.inn[image] {
            self.free_out[u] -= 1;
        }
        self.live += 1;
        id
    }

    fn erase(&mut self, host: &EmbedHost, id: usize) {
        let node = self.nodes[id].take().unwrap();
        if let Some(p) = node.parent {
            self.nodes[p].as_mut().unwrap().children.retain(|&c| c != id);
        }
        self.at[node.image] = None;
        for &u in &host.inn[node.image] {
            self.free_out[u] += 1;
        }
        self.vacant.push(id);
        self.live -= 1;
    }

    /// Embeds a new root (in-degree 0) at `image`, without a goodness check.
    pub fn add_root(&mut self, host: &EmbedHost, image: usize) -> Result<usize, EmbedError> {
        if self.is_used(image) {
            return Err(EmbedError::ImageTaken(image));
        }
        Ok(self.insert(host, image, None))
    }

    /// Adds a leaf below `parent`, trying unused out-neighbours of its
    /// image in ascending order. A good embedding must stay good; one that
    /// is already bad (the host expands too little) may not get worse,
    /// counted over the sets the check examines.
    pub fn extend(&mut self, host: &EmbedHost, parent: usize) -> Result<usize, EmbedError> {
        let p_image = self.node(parent).ok_or(EmbedError::UnknownNode(parent))?.image;
        if self.image_children(parent) >= self.d {
            return Err(EmbedError::DegreeCap(parent));
        }
        let candidates: Vec<usize> = host.digraph.out(p_image).iter().copied().filter(|&c| !self.is_used(c)).collect();
        let global = host.is_small().then(|| self.violation_count(host));
        for &c in &candidates {
            let family = if global.is_none() { self.local_family(host, c, p_image) } else { Vec::new() };
            let before = global.unwrap_or_else(|| self.count_violations(host, &family));
            let id = self.insert(host, c, Some(parent));
            let after = if global.is_some() { self.violation_count(host) } else { self.count_violations(host, &family) };
            if after <= before {
                if before > 0 {
                    self.tolerated += 1;
                }
                return Ok(id);
            }
            self.erase(host, id);
        }
        Err(EmbedError::NoGoodImage { parent, candidates: candidates.len() })
    }

    /// Removes a leaf that has a parent.
    pub fn rollback(&mut self, host: &EmbedHost, leaf: usize) -> Result<(), EmbedError> {
        let node = self.node(leaf).ok_or(EmbedError::UnknownNode(leaf))?;
        if node.parent.is_none() || !node.children.is_empty() {
            return Err(EmbedError::NotLeaf(leaf));
        }
        self.erase(host, leaf);
        Ok(())
    }

    /// Removes a root with no children.
    pub fn remove_root(&mut self, host: &EmbedHost, root: usize) -> Result<(), EmbedError> {
        let node = self.node(root).ok_or(EmbedError::UnknownNode(root))?;
        if node.parent.is_some() || !node.children.is_empty() {
            return Err(EmbedError::NotLeaf(root));
        }
        self.erase(host, root);
        Ok(())
    }

    /// Node ids from the root of `id`'s tree down to `id`.
    pub fn root_path(&self, id: usize) -> Vec<usize> {
        let mut out = vec![id];
        let mut cur = id;
        while let Some(p) = self.node(cur).and_then(|n| n.parent) {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    /// `|Γ⁺(X) \ φ(F)| − Σ_{v∈X}(D − deg_F(v)) − |φ(F) ∩ X|`.
    pub fn slack(&self, host: &EmbedHost, x: &[usize]) -> i64 {
        let demand: i64 = x.iter().map(|&v| self.d as i64 - self.deg_at(v) as i64 + self.is_used(v) as i64).sum();
        if let [v] = x {
            return self.free_out[*v] as i64 - demand;
        }
        let mut reach: Vec<usize> =
            x.iter().flat_map(|&v| host.digraph.out(v).iter().copied()).filter(|&w| !self.is_used(w)).collect();
        reach.sort_unstable();
        reach.dedup();
        reach.len() as i64 - demand
    }

    /// A set of at most `s` host vertices breaking goodness, searched over
    /// all such sets. Only for hosts with at most [`EXHAUSTIVE_MAX`] vertices.
    pub fn violation(&self, host: &EmbedHost) -> Option<Vec<usize>> {
        let (masks, weight, used) = self.exhaustive_inputs(host);
        let mut chosen = Vec::new();
        search(masks, &weight, used, self.s.min(host.n()), 0, 0, 0, &mut chosen)
    }

    /// Number of sets of at most `s` host vertices breaking goodness. Only
    /// for hosts with at most [`EXHAUSTIVE_MAX`] vertices.
    pub fn violation_count(&self, host: &EmbedHost) -> usize {
        let (masks, weight, used) = self.exhaustive_inputs(host);
        count(masks, &weight, used, self.s.min(host.n()), 0, 0, 0)
    }

    fn exhaustive_inputs<'h>(&self, host: &'h EmbedHost) -> (&'h [u32], Vec<i64>, u32) {
        let masks = host.masks.as_deref().expect("exhaustive check needs a small host");
        let used = self.at.iter().enumerate().filter(|(_, a)| a.is_some()).fold(0u32, |m, (v, _)| m | 1 << v);
        let weight =
            (0..host.n()).map(|v| self.d as i64 - self.deg_at(v) as i64 + (used >> v & 1) as i64).collect();
        (masks, weight, used)
    }

    fn local_family(&self, host: &EmbedHost, c: usize, parent_image: usize) -> Vec<Vec<usize>> {
        let mut touched: Vec<usize> = host.inn[c].iter().copied().take(LOCAL_SPAN).collect();
        touched.push(c);
        if !touched.contains(&parent_image) {
            touched.push(parent_image);
        }
        let mut family: Vec<Vec<usize>> = touched.iter().map(|&v| vec![v]).collect();
        if self.s >= 2 {
            for (i, &a) in touched.iter().enumerate() {
                for &b in &touched[i + 1..] {
                    family.push(vec![a, b]);
                }
            }
        }
        family
    }

    fn count_violations(&self, host: &EmbedHost, family: &[Vec<usize>]) -> usize {
        family.iter().filter(|x| self.slack(host, x) < 0).count()
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    masks: &[u32],
    weight: &[i64],
    used: u32,
    left: usize,
    from: usize,
    reach: u32,
    demand: i64,
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if left == 0 {
        return None;
    }
    for v in from..masks.len() {
        let r = reach | masks[v];
        let dm = demand + weight[v];
        chosen.push(v);
        if ((r & !used).count_ones() as i64) < dm {
            return Some(chosen.clone());
        }
        if let Some(x) = search(masks, weight, used, left - 1, v + 1, r, dm, chosen) {
            return Some(x);
        }
        chosen.pop();
    }
    None
}

fn count(masks: &[u32], weight: &[i64], used: u32, left: usize, from: usize, reach: u32, demand: i64) -> usize {
    if left == 0 {
        return 0;
    }
    let mut total = 0;
    for v in from..masks.len() {
        let r = reach | masks[v];
        let dm = demand + weight[v];
        total += (((r & !used).count_ones() as i64) < dm) as usize;
        total += count(masks, weight, used, left - 1, v + 1, r, dm);
    }
    total
}
