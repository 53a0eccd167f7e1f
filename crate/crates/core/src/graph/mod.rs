//! Probabilistic contact graphs.
//!
//! A [`ProbGraph`] is a directed graph whose arcs carry independent
//! transmission probabilities, together with per-node utilities and the set
//! of initially infected seed nodes. Undirected graphs are stored expanded
//! into two arcs per edge, each with its own coin.

mod generate;
mod io;
mod transform;

pub use generate::{generate, random_seed_set, GenConfig, GraphModel};
pub use io::{load, parse, save, write};
pub use transform::{
    build_households, build_layered, household_partition, split_for_link_immunization, thin_by_susceptibility,
    HouseholdSpec, LayeredGraph, LayeredSpec, LinkSplit, ThinnedGraph, UtilityMode,
};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// One directed transmission channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub src: NodeId,
    pub dst: NodeId,
    pub p: f64,
    /// Bookkeeping arcs (layered-graph collectors) that never count towards
    /// the degree of an immunization candidate.
    pub collector: bool,
}

/// Incident-arc summary used by the effective-degree bounds.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Incidence {
    /// Largest probability over incident (in or out) arcs.
    pub max_p: f64,
    /// Number of distinct neighbours in the undirected view.
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbGraph {
    n: usize,
    directed: bool,
    arcs: Vec<Arc>,
    out_offsets: Vec<usize>,
    utility: Vec<f64>,
    seeds: Vec<NodeId>,
}

impl ProbGraph {
    pub fn builder(n: usize, directed: bool) -> GraphBuilder {
        GraphBuilder::new(n, directed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// All arcs, sorted by `(src, dst)`. The position of an arc in this slice
    /// is its arc index.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_arcs(&self, u: NodeId) -> &[Arc] {
        &self.arcs[self.out_offsets[u]..self.out_offsets[u + 1]]
    }

    /// Arc index range of the out-arcs of `u`.
    pub fn out_range(&self, u: NodeId) -> std::ops::Range<usize> {
        self.out_offsets[u]..self.out_offsets[u + 1]
    }

    pub fn find_arc(&self, src: NodeId, dst: NodeId) -> Option<usize> {
        let range = self.out_range(src);
        self.arcs[range.clone()].binary_search_by_key(&dst, |a| a.dst).ok().map(|i| range.start + i)
    }

    pub fn utility(&self, u: NodeId) -> f64 {
        self.utility[u]
    }

    pub fn utilities(&self) -> &[f64] {
        &self.utility
    }

    pub fn total_utility(&self) -> f64 {
        self.utility.iter().sum()
    }

    /// Seed (initially infected) nodes in ascending order.
    pub fn seeds(&self) -> &[NodeId] {
        &self.seeds
    }

    pub fn is_seed(&self, u: NodeId) -> bool {
        self.seeds.binary_search(&u).is_ok()
    }

    /// Mean over nodes of the summed out-arc probabilities, i.e. the basic
    /// reproduction number of a uniformly chosen infected node. Collector arcs
    /// are excluded.
    pub fn mean_expected_degree(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let total: f64 = self.arcs.iter().filter(|a| !a.collector).map(|a| a.p).sum();
        total / self.n as f64
    }

    /// Per-node `(max incident p, distinct neighbour count)` over non-collector arcs.
    pub fn incidence(&self) -> Vec<Incidence> {
        let mut neighbours: Vec<Vec<NodeId>> = vec![Vec::new(); self.n];
        let mut max_p = vec![0.0f64; self.n];
        for a in self.arcs.iter().filter(|a| !a.collector) {
            neighbours[a.src].push(a.dst);
            neighbours[a.dst].push(a.src);
            max_p[a.src] = max_p[a.src].max(a.p);
            max_p[a.dst] = max_p[a.dst].max(a.p);
        }
        neighbours
            .into_iter()
            .zip(max_p)
            .map(|(mut nb, max_p)| {
                nb.sort_unstable();
                nb.dedup();
                Incidence { max_p, degree: nb.len() }
            })
            .collect()
    }

    /// Undirected degree sequence (distinct neighbours, collectors excluded).
    pub fn degrees(&self) -> Vec<usize> {
        self.incidence().iter().map(|i| i.degree).collect()
    }

    /// Rebuilds the graph with a different seed set.
    pub fn with_seeds(&self, seeds: &[NodeId]) -> Result<ProbGraph> {
        let mut b = self.to_builder();
        b.seeds.clear();
        for &s in seeds {
            b.seed(s);
        }
        b.build()
    }

    pub fn with_utilities(&self, utility: Vec<f64>) -> Result<ProbGraph> {
        if utility.len() != self.n {
            return Err(Error::invariant(format!("utility vector has {} entries for {} nodes", utility.len(), self.n)));
        }
        let mut b = self.to_builder();
        b.utility = utility;
        b.build()
    }

    /// Same topology with every non-collector arc set to probability `p`.
    pub fn with_uniform_probability(&self, p: f64) -> Result<ProbGraph> {
        let mut b = self.to_builder();
        b.arcs.iter_mut().filter(|a| !a.collector).for_each(|a| a.p = p);
        b.build()
    }

    /// A builder holding this graph's contents. Undirected graphs come back as
    /// raw arcs, so callers adding edges must keep both directions in step.
    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            n: self.n,
            directed: self.directed,
            arcs: self.arcs.clone(),
            utility: self.utility.clone(),
            seeds: self.seeds.clone(),
            stray_node: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    directed: bool,
    arcs: Vec<Arc>,
    utility: Vec<f64>,
    seeds: Vec<NodeId>,
    stray_node: Option<NodeId>,
}

impl GraphBuilder {
    pub fn new(n: usize, directed: bool) -> Self {
        GraphBuilder { n, directed, arcs: Vec::new(), utility: vec![1.0; n], seeds: Vec::new(), stray_node: None }
    }

    /// Adds an edge. For undirected builders this inserts both arcs.
    pub fn edge(&mut self, u: NodeId, v: NodeId, p: f64) -> &mut Self {
        self.arcs.push(Arc { src: u, dst: v, p, collector: false });
        if !self.directed {
            self.arcs.push(Arc { src: v, dst: u, p, collector: false });
        }
        self
    }

    /// Adds a single arc regardless of directedness.
    pub fn arc(&mut self, arc: Arc) -> &mut Self {
        self.arcs.push(arc);
        self
    }

    pub fn utility(&mut self, u: NodeId, a: f64) -> &mut Self {
        if u < self.n {
            self.utility[u] = a;
        } else {
            self.stray_node.get_or_insert(u);
        }
        self
    }

    pub fn seed(&mut self, u: NodeId) -> &mut Self {
        self.seeds.push(u);
        self
    }

    pub fn build(self) -> Result<ProbGraph> {
        let GraphBuilder { n, directed, mut arcs, utility, mut seeds, stray_node } = self;
        if let Some(u) = stray_node {
            return Err(Error::invariant(format!("utility given for node {u} outside 0..{n}")));
        }
        for a in &arcs {
            if a.src >= n || a.dst >= n {
                return Err(Error::invariant(format!("arc ({}, {}) references a node outside 0..{n}", a.src, a.dst)));
            }
            if a.src == a.dst {
                return Err(Error::invariant(format!("self-loop on node {}", a.src)));
            }
            if !(0.0..=1.0).contains(&a.p) {
                return Err(Error::InvalidProbability { value: a.p, context: format!("arc ({}, {})", a.src, a.dst) });
            }
        }
        for (u, &x) in utility.iter().enumerate() {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::invariant(format!("utility of node {u} is {x}")));
            }
        }
        arcs.sort_by_key(|a| (a.src, a.dst));
        if let Some(w) = arcs.windows(2).find(|w| w[0].src == w[1].src && w[0].dst == w[1].dst) {
            return Err(Error::invariant(format!("duplicate arc ({}, {})", w[0].src, w[0].dst)));
        }
        seeds.sort_unstable();
        seeds.dedup();
        if let Some(&s) = seeds.iter().find(|&&s| s >= n) {
            return Err(Error::invariant(format!("seed {s} is not a node (n = {n})")));
        }

        let mut out_offsets = vec![0usize; n + 1];
        for a in &arcs {
            out_offsets[a.src + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }
        let g = ProbGraph { n, directed, arcs, out_offsets, utility, seeds };

        if !directed {
            for a in &g.arcs {
                match g.find_arc(a.dst, a.src) {
                    Some(j) if g.arcs[j].p == a.p && g.arcs[j].collector == a.collector => {}
                    _ => {
                        return Err(Error::invariant(format!(
                            "undirected graph lacks a matching reverse arc for ({}, {})",
                            a.src, a.dst
                        )))
                    }
                }
            }
        }
        Ok(g)
    }
}
