//! Live-edge sampling and Monte Carlo estimation of spread and saved utility.
//!
//! A live-edge sample fixes, up front, which arcs would transmit. Everything
//! reachable from the seeds along live arcs gets infected. Immunized
//! ("removed") nodes are deleted from the sample: they neither catch nor pass
//! on the infection. The saved utility of a removal set is the utility of the
//! nodes infected without it but not with it; removed nodes that would have
//! been infected count as saved.

mod sir;

pub use sir::{direct_sir_outbreak, infection_probabilities, infection_probabilities_direct};

use rand::Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{NodeId, ProbGraph};
use crate::immunize::{self, Group, Multiset};
use crate::rng::{self, Domain};

#[derive(Debug, Clone, PartialEq)]
pub enum Recovery {
    Uniform(f64),
    PerNode(Vec<f64>),
}

/// Spread model. Under SIR the arc probability is the per-step infection
/// probability and an infected node stays infectious for a geometric number
/// of steps.
#[derive(Debug, Clone, PartialEq)]
pub enum CascadeModel {
    IndependentCascade,
    Sir(Recovery),
}

impl CascadeModel {
    pub fn sir(gamma: f64) -> Self {
        CascadeModel::Sir(Recovery::Uniform(gamma))
    }

    pub fn validate(&self, g: &ProbGraph) -> Result<()> {
        let check = |gamma: f64| {
            if gamma > 0.0 && gamma <= 1.0 {
                Ok(())
            } else {
                Err(Error::config(format!("recovery probability {gamma} must lie in (0, 1]")))
            }
        };
        match self {
            CascadeModel::IndependentCascade => Ok(()),
            CascadeModel::Sir(Recovery::Uniform(gamma)) => check(*gamma),
            CascadeModel::Sir(Recovery::PerNode(gammas)) => {
                if gammas.len() != g.n() {
                    return Err(Error::config(format!("{} recovery probabilities for {} nodes", gammas.len(), g.n())));
                }
                gammas.iter().try_for_each(|&x| check(x))
            }
        }
    }

    pub(crate) fn gamma(&self, u: NodeId) -> f64 {
        match self {
            CascadeModel::IndependentCascade => 1.0,
            CascadeModel::Sir(Recovery::Uniform(gamma)) => *gamma,
            CascadeModel::Sir(Recovery::PerNode(gammas)) => gammas[u],
        }
    }
}

/// One realized cascade instance.
#[derive(Debug, Clone, PartialEq)]
pub struct LiveEdgeSample {
    /// Per arc: whether it transmits (under SIR, whether any attempt succeeded).
    pub live: Vec<bool>,
    /// Infectious periods `tau_u` (SIR only).
    pub attempts: Option<Vec<u32>>,
    pub replicate_index: u64,
    pub master_seed: u64,
}

impl LiveEdgeSample {
    /// A sample with explicitly given arc outcomes (used by exact enumeration).
    pub fn from_live(live: Vec<bool>) -> Self {
        LiveEdgeSample { live, attempts: None, replicate_index: 0, master_seed: 0 }
    }
}

pub fn sample_live_edges(
    g: &ProbGraph,
    model: &CascadeModel,
    replicate_index: u64,
    master_seed: u64,
) -> LiveEdgeSample {
    let mut rng = rng::stream(master_seed, Domain::LiveEdges, replicate_index);
    let (live, attempts) = match model {
        CascadeModel::IndependentCascade => (g.arcs().iter().map(|a| rng.gen::<f64>() < a.p).collect(), None),
        CascadeModel::Sir(_) => {
            let attempts: Vec<u32> = (0..g.n())
                .map(|u| {
                    let gamma = model.gamma(u);
                    if gamma >= 1.0 {
                        1
                    } else {
                        let extra = Geometric::new(gamma).expect("validated gamma").sample(&mut rng);
                        1 + extra.min(u32::MAX as u64 - 1) as u32
                    }
                })
                .collect();
            let live = g.arcs().iter().map(|a| (0..attempts[a.src]).any(|_| rng.gen::<f64>() < a.p)).collect();
            (live, Some(attempts))
        }
    };
    LiveEdgeSample { live, attempts, replicate_index, master_seed }
}

/// Reusable reachability workspace.
#[derive(Debug, Clone)]
pub struct Reach {
    mark: Vec<u32>,
    epoch: u32,
    stack: Vec<NodeId>,
}

impl Reach {
    pub fn new(n: usize) -> Self {
        Reach { mark: vec![0; n], epoch: 0, stack: Vec::new() }
    }

    /// Marks every node reachable from the non-removed seeds along live arcs
    /// that avoid removed nodes.
    pub fn run(&mut self, g: &ProbGraph, sample: &LiveEdgeSample, removed: &[bool]) {
        if self.mark.len() != g.n() {
            self.mark = vec![0; g.n()];
            self.epoch = 0;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.stack.clear();
        for &s in g.seeds() {
            if !removed[s] && self.mark[s] != epoch {
                self.mark[s] = epoch;
                self.stack.push(s);
            }
        }
        while let Some(u) = self.stack.pop() {
            for idx in g.out_range(u) {
                let v = g.arcs()[idx].dst;
                if sample.live[idx] && !removed[v] && self.mark[v] != epoch {
                    self.mark[v] = epoch;
                    self.stack.push(v);
                }
            }
        }
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.mark[u] == self.epoch && self.epoch != 0
    }
}

pub(crate) fn mask(n: usize, nodes: &[NodeId]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &u in nodes {
        if u >= n {
            return Err(Error::config(format!("node {u} outside 0..{n}")));
        }
        m[u] = true;
    }
    Ok(m)
}

/// Nodes infected in `sample` when `removed` is immunized, ascending.
pub fn reachable(sample: &LiveEdgeSample, g: &ProbGraph, removed: &[NodeId]) -> Result<Vec<NodeId>> {
    let removed = mask(g.n(), removed)?;
    let mut reach = Reach::new(g.n());
    reach.run(g, sample, &removed);
    Ok((0..g.n()).filter(|&u| reach.contains(u)).collect())
}

pub fn saved_utility(sample: &LiveEdgeSample, g: &ProbGraph, removed: &[NodeId]) -> Result<f64> {
    let removed = mask(g.n(), removed)?;
    let mut ctx = SampleContext::new(g, sample.clone());
    Ok(ctx.saved(g, &removed))
}

/// A sample together with its unimmunized outbreak, for evaluating many
/// removal sets against the same realization.
pub(crate) struct SampleContext {
    pub(crate) sample: LiveEdgeSample,
    pub(crate) baseline: Vec<NodeId>,
    reach: Reach,
}

impl SampleContext {
    pub(crate) fn new(g: &ProbGraph, sample: LiveEdgeSample) -> Self {
        let mut reach = Reach::new(g.n());
        reach.run(g, &sample, &vec![false; g.n()]);
        let baseline = (0..g.n()).filter(|&u| reach.contains(u)).collect();
        SampleContext { sample, baseline, reach }
    }

    pub(crate) fn spread(&self, g: &ProbGraph) -> f64 {
        self.baseline.iter().map(|&t| g.utility(t)).sum()
    }

    pub(crate) fn saved(&mut self, g: &ProbGraph, removed: &[bool]) -> f64 {
        if !self.baseline.iter().any(|&t| removed[t]) {
            // nothing removed lies on the outbreak, so nothing changes
            return 0.0;
        }
        self.reach.run(g, &self.sample, removed);
        let reach = &self.reach;
        self.baseline.iter().filter(|&&t| !reach.contains(t)).map(|&t| g.utility(t)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    pub replicates: usize,
    pub master_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateResult {
    pub mean: f64,
    pub stderr: f64,
    pub replicates: usize,
    pub master_seed: u64,
}

impl EstimateResult {
    /// Mean and standard error of per-replicate values, reduced in index order.
    pub fn from_values(values: &[f64], master_seed: u64) -> Self {
        let r = values.len();
        let mean = values.iter().sum::<f64>() / r as f64;
        let stderr = if r > 1 {
            let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (r - 1) as f64;
            (var / r as f64).sqrt()
        } else {
            0.0
        };
        EstimateResult { mean, stderr, replicates: r, master_seed }
    }
}

/// What gets immunized in each replicate.
#[derive(Debug, Clone, Copy)]
pub enum Intervention<'a> {
    /// A fixed node set, removed in every replicate.
    Nodes(&'a [NodeId]),
    /// Chosen groups; acceptance is realized independently per replicate.
    Groups { groups: &'a [Group], chosen: &'a Multiset },
}

impl Intervention<'_> {
    pub(crate) fn removed(&self, n: usize, replicate: u64, master_seed: u64) -> Result<Vec<bool>> {
        match self {
            Intervention::Nodes(nodes) => mask(n, nodes),
            Intervention::Groups { groups, chosen } => {
                let mut removed = vec![false; n];
                immunize::realize_into(groups, chosen, replicate, master_seed, &mut removed);
                Ok(removed)
            }
        }
    }
}

fn check_config(g: &ProbGraph, model: &CascadeModel, cfg: &EstimatorConfig) -> Result<()> {
    if cfg.replicates == 0 {
        return Err(Error::config("at least one replicate is required"));
    }
    model.validate(g)
}

/// Monte Carlo estimate of the expected saved utility. The result depends
/// only on `cfg.master_seed`, not on how replicates are scheduled.
pub fn estimate_pi(
    g: &ProbGraph,
    model: &CascadeModel,
    intervention: Intervention<'_>,
    cfg: &EstimatorConfig,
) -> Result<EstimateResult> {
    check_config(g, model, cfg)?;
    if let Intervention::Groups { groups, chosen } = intervention {
        immunize::check_multiset(g, groups, chosen)?;
    }
    let seed = cfg.master_seed;
    let values = (0..cfg.replicates as u64)
        .into_par_iter()
        .map(|r| {
            let removed = intervention.removed(g.n(), r, seed)?;
            let mut ctx = SampleContext::new(g, sample_live_edges(g, model, r, seed));
            Ok(ctx.saved(g, &removed))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(EstimateResult::from_values(&values, seed))
}

/// Monte Carlo estimate of the expected infected utility (spread).
pub fn estimate_sigma(g: &ProbGraph, model: &CascadeModel, cfg: &EstimatorConfig) -> Result<EstimateResult> {
    check_config(g, model, cfg)?;
    let seed = cfg.master_seed;
    let values: Vec<f64> = (0..cfg.replicates as u64)
        .into_par_iter()
        .map(|r| SampleContext::new(g, sample_live_edges(g, model, r, seed)).spread(g))
        .collect();
    Ok(EstimateResult::from_values(&values, seed))
}
