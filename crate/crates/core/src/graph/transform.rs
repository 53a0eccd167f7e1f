//! Graph constructions that reduce richer immunization settings (waning
//! vaccines, link removal, household structure, partial immunity) to node or
//! group immunization on a derived graph.

use rand::Rng;

use super::{Arc, NodeId, ProbGraph};
use crate::error::{Error, Result};
use crate::immunize::{Group, Policy};
use crate::rng::{self, Domain};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UtilityMode {
    /// Only the copies in the last layer carry utility.
    FinalLayer,
    /// A collector node per base node is infected iff any of its layer copies
    /// is; collectors carry the utility.
    AnyTime,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayeredSpec {
    /// Number of time steps `T`; the layered graph has `T + 1` layers.
    pub steps: usize,
    /// Per-step probability that a vaccinated node loses protection.
    pub eps: f64,
    pub utility_mode: UtilityMode,
    /// Optional time-varying rates: `temporal_rates[tau][arc]` is the
    /// probability of base arc `arc` between layers `tau` and `tau + 1`.
    pub temporal_rates: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone)]
pub struct LayeredGraph {
    pub graph: ProbGraph,
    /// One leaky-chain group per base node, with group id equal to the base
    /// node id. Members are the layer copies in layer order.
    pub groups: Vec<Group>,
    base_n: usize,
    steps: usize,
}

impl LayeredGraph {
    pub fn copy_of(&self, u: NodeId, layer: usize) -> NodeId {
        debug_assert!(u < self.base_n && layer <= self.steps);
        layer * self.base_n + u
    }

    /// Collector node of `u` (only in [`UtilityMode::AnyTime`] graphs).
    pub fn collector_of(&self, u: NodeId) -> Option<NodeId> {
        let id = (self.steps + 1) * self.base_n + u;
        (id < self.graph.n()).then_some(id)
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn steps(&self) -> usize {
        self.steps
    }
}

/// Unrolls `g` over `spec.steps` time steps for leaky (waning) immunization.
///
/// Copy `u(tau)` links to `v(tau + 1)` for every base arc `(u, v)`. Seeds map
/// to layer 0. A seed's group omits its layer-0 copy, which is infected from
/// the start.
pub fn build_layered(g: &ProbGraph, spec: &LayeredSpec) -> Result<LayeredGraph> {
    if spec.steps == 0 {
        return Err(Error::config("layered construction needs at least one time step"));
    }
    if !(0.0..=1.0).contains(&spec.eps) {
        return Err(Error::InvalidProbability { value: spec.eps, context: "leaky epsilon".into() });
    }
    if let Some(rates) = &spec.temporal_rates {
        if rates.len() != spec.steps || rates.iter().any(|r| r.len() != g.arc_count()) {
            return Err(Error::config(format!("temporal rates must be {} steps x {} arcs", spec.steps, g.arc_count())));
        }
    }
    let n = g.n();
    let t = spec.steps;
    let collectors = spec.utility_mode == UtilityMode::AnyTime;
    let total = (t + 1) * n + if collectors { n } else { 0 };

    let mut b = ProbGraph::builder(total, true);
    for tau in 0..t {
        for (idx, a) in g.arcs().iter().enumerate() {
            let p = match &spec.temporal_rates {
                Some(rates) => rates[tau][idx],
                None => a.p,
            };
            b.arc(Arc { src: tau * n + a.src, dst: (tau + 1) * n + a.dst, p, collector: a.collector });
        }
    }
    for u in 0..n {
        for tau in 0..=t {
            let copy = tau * n + u;
            let a = match spec.utility_mode {
                UtilityMode::FinalLayer if tau == t => g.utility(u),
                _ => 0.0,
            };
            b.utility(copy, a);
            if collectors {
                b.arc(Arc { src: copy, dst: (t + 1) * n + u, p: 1.0, collector: true });
            }
        }
        if collectors {
            b.utility((t + 1) * n + u, g.utility(u));
        }
    }
    for &s in g.seeds() {
        b.seed(s);
    }
    let graph = b.build()?;

    let groups = (0..n)
        .map(|u| {
            let first = usize::from(g.is_seed(u));
            let members = (first..=t).map(|tau| tau * n + u).collect();
            Group::new(u, members, Policy::LeakyChain { eps: spec.eps })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LayeredGraph { graph, groups, base_n: n, steps: t })
}

#[derive(Debug, Clone)]
pub struct LinkSplit {
    pub graph: ProbGraph,
    /// Inserted relay nodes, one per base arc, in base arc order.
    pub candidates: Vec<NodeId>,
}

/// Replaces every arc `(u, v)` by `u -> w` (original probability) and
/// `w -> v` (probability 1) through a fresh zero-utility relay node `w`, so
/// immunizing `w` removes the link.
pub fn split_for_link_immunization(g: &ProbGraph) -> Result<LinkSplit> {
    if g.arc_count() == 0 {
        return Ok(LinkSplit { graph: g.clone(), candidates: Vec::new() });
    }
    let n = g.n();
    let mut b = ProbGraph::builder(n + g.arc_count(), true);
    for u in 0..n {
        b.utility(u, g.utility(u));
    }
    let mut candidates = Vec::with_capacity(g.arc_count());
    for (idx, a) in g.arcs().iter().enumerate() {
        let w = n + idx;
        b.utility(w, 0.0);
        b.arc(Arc { src: a.src, dst: w, p: a.p, collector: a.collector });
        b.arc(Arc { src: w, dst: a.dst, p: 1.0, collector: a.collector });
        candidates.push(w);
    }
    for &s in g.seeds() {
        b.seed(s);
    }
    Ok(LinkSplit { graph: b.build()?, candidates })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HouseholdSpec {
    /// Household size `a`.
    pub size: usize,
    /// Within-household edges are `strength` times as likely as outside ones.
    pub strength: f64,
    /// Mean expected degree after rescaling.
    pub r0: f64,
}

/// Consecutive-id households of `size` nodes; the last one takes the remainder.
pub fn household_partition(n: usize, size: usize) -> Vec<Vec<NodeId>> {
    let size = size.max(1);
    (0..n).step_by(size).map(|start| (start..(start + size).min(n)).collect()).collect()
}

/// Turns each household into a clique, weights household arcs `strength`
/// times the others, and rescales so the mean expected degree is `r0`.
pub fn build_households(g: &ProbGraph, spec: &HouseholdSpec) -> Result<ProbGraph> {
    if spec.size == 0 {
        return Err(Error::config("household size must be at least 1"));
    }
    if !(spec.strength > 0.0) || !spec.strength.is_finite() {
        return Err(Error::config(format!("household strength {} must be positive", spec.strength)));
    }
    if !(spec.r0 >= 0.0) || !spec.r0.is_finite() {
        return Err(Error::config(format!("target R0 {} must be non-negative", spec.r0)));
    }
    let n = g.n();
    let household = |u: NodeId| u / spec.size;

    // (src, dst, relative weight, collector)
    let mut weighted: Vec<(NodeId, NodeId, f64, bool)> = g
        .arcs()
        .iter()
        .map(|a| {
            let w = if household(a.src) == household(a.dst) { spec.strength } else { 1.0 };
            (a.src, a.dst, w, a.collector)
        })
        .collect();
    for members in household_partition(n, spec.size) {
        for &u in &members {
            for &v in &members {
                if u != v && g.find_arc(u, v).is_none() {
                    weighted.push((u, v, spec.strength, false));
                }
            }
        }
    }
    let total: f64 = weighted.iter().filter(|w| !w.3).map(|w| w.2).sum();
    let scale = if total > 0.0 { spec.r0 * n as f64 / total } else { 0.0 };

    let mut b = ProbGraph::builder(n, g.is_directed());
    for u in 0..n {
        b.utility(u, g.utility(u));
    }
    for (src, dst, w, collector) in weighted {
        let p = if collector { 1.0 } else { w * scale };
        if p > 1.0 {
            return Err(Error::InvalidProbability {
                value: p,
                context: format!("household-scaled arc ({src}, {dst})"),
            });
        }
        b.arc(Arc { src, dst, p, collector });
    }
    for &s in g.seeds() {
        b.seed(s);
    }
    b.build()
}

#[derive(Debug, Clone)]
pub struct ThinnedGraph {
    pub graph: ProbGraph,
    /// `original_ids[i]` is the id of node `i` in the input graph.
    pub original_ids: Vec<NodeId>,
}

/// Removes each non-seed node independently with probability `1 - s_u`
/// (it is already immune) and compacts the remaining ids. The mean expected
/// degree of the result is the effective reproduction number of the input.
pub fn thin_by_susceptibility(g: &ProbGraph, susceptibility: &[f64], rng_seed: u64) -> Result<ThinnedGraph> {
    if susceptibility.len() != g.n() {
        return Err(Error::config(format!("{} susceptibilities given for {} nodes", susceptibility.len(), g.n())));
    }
    if let Some((u, &s)) = susceptibility.iter().enumerate().find(|(_, s)| !(0.0..=1.0).contains(*s)) {
        return Err(Error::InvalidProbability { value: s, context: format!("susceptibility of node {u}") });
    }
    let mut rng = rng::stream(rng_seed, Domain::Thinning, 0);
    let mut new_id = vec![None; g.n()];
    let mut original_ids = Vec::new();
    for u in 0..g.n() {
        let draw: f64 = rng.gen();
        if g.is_seed(u) || draw < susceptibility[u] {
            new_id[u] = Some(original_ids.len());
            original_ids.push(u);
        }
    }
    let mut b = ProbGraph::builder(original_ids.len(), g.is_directed());
    for (i, &u) in original_ids.iter().enumerate() {
        b.utility(i, g.utility(u));
    }
    for a in g.arcs() {
        if let (Some(src), Some(dst)) = (new_id[a.src], new_id[a.dst]) {
            b.arc(Arc { src, dst, ..*a });
        }
    }
    for &s in g.seeds() {
        b.seed(new_id[s].expect("seeds are always kept"));
    }
    Ok(ThinnedGraph { graph: b.build()?, original_ids })
}
