//! Greedy selection of immunization groups.
//!
//! The objective is neither submodular nor supermodular, so there is no lazy
//! evaluation: every iteration scores every candidate.

use rayon::prelude::*;

use super::{check_groups, node_groups, realize_into, Group, GroupId, Multiset};
use crate::bounds::EffectiveDegreeProfile;
use crate::cascade::{sample_live_edges, CascadeModel, EstimateResult, EstimatorConfig, SampleContext};
use crate::error::{Error, Result};
use crate::graph::{NodeId, ProbGraph};
use crate::rng;

/// Objective values of the current selection and of each one-group extension.
#[derive(Debug, Clone)]
pub struct Scores {
    pub base: EstimateResult,
    /// Value of `current + candidates[j]`.
    pub extended: Vec<EstimateResult>,
    /// Marginal gain `extended[j] - base`; the standard error is that of the
    /// paired per-replicate differences.
    pub gains: Vec<EstimateResult>,
    /// Seed under which these scores were computed.
    pub seed: u64,
}

/// Scores candidate extensions of a selection. Implementations must be
/// deterministic in `(current, candidates, iteration)`.
pub trait Evaluator: Sync {
    fn score(
        &self,
        g: &ProbGraph,
        groups: &[Group],
        current: &Multiset,
        candidates: &[usize],
        iteration: u64,
    ) -> Result<Scores>;
}

/// Monte Carlo scoring with common random numbers: within one iteration every
/// candidate sees the same live-edge samples and the same acceptance draws;
/// each iteration uses a fresh seed derived from the master seed.
#[derive(Debug, Clone)]
pub struct MonteCarloEvaluator {
    pub model: CascadeModel,
    pub config: EstimatorConfig,
}

impl MonteCarloEvaluator {
    pub fn new(model: CascadeModel, config: EstimatorConfig) -> Self {
        MonteCarloEvaluator { model, config }
    }

    pub fn iteration_seed(&self, iteration: u64) -> u64 {
        rng::derive_seed(self.config.master_seed, iteration)
    }
}

impl Evaluator for MonteCarloEvaluator {
    fn score(
        &self,
        g: &ProbGraph,
        groups: &[Group],
        current: &Multiset,
        candidates: &[usize],
        iteration: u64,
    ) -> Result<Scores> {
        if self.config.replicates == 0 {
            return Err(Error::config("at least one replicate is required"));
        }
        self.model.validate(g)?;
        let seed = self.iteration_seed(iteration);
        let rows: Vec<Vec<f64>> = (0..self.config.replicates as u64)
            .into_par_iter()
            .map(|r| {
                let mut ctx = SampleContext::new(g, sample_live_edges(g, &self.model, r, seed));
                let mut base = vec![false; g.n()];
                realize_into(groups, current, r, seed, &mut base);
                let mut row = Vec::with_capacity(candidates.len() + 1);
                row.push(ctx.saved(g, &base));
                let mut removed = base.clone();
                for &c in candidates {
                    removed.copy_from_slice(&base);
                    groups[c].accept_into(current.count(c) + 1, r, seed, &mut removed);
                    row.push(ctx.saved(g, &removed));
                }
                row
            })
            .collect();
        Ok(reduce(&rows, seed))
    }
}

/// Column-wise reduction in replicate order.
fn reduce(rows: &[Vec<f64>], seed: u64) -> Scores {
    let column = |j: usize| rows.iter().map(|row| row[j]).collect::<Vec<f64>>();
    let base_values = column(0);
    let base = EstimateResult::from_values(&base_values, seed);
    let width = rows.first().map_or(1, Vec::len);
    let mut extended = Vec::with_capacity(width - 1);
    let mut gains = Vec::with_capacity(width - 1);
    for j in 1..width {
        let values = column(j);
        let ext = EstimateResult::from_values(&values, seed);
        let diffs: Vec<f64> = values.iter().zip(&base_values).map(|(a, b)| a - b).collect();
        let paired = EstimateResult::from_values(&diffs, seed);
        gains.push(EstimateResult { mean: ext.mean - base.mean, ..paired });
        extended.push(ext);
    }
    Scores { base, extended, gains, seed }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionStep {
    pub group_id: GroupId,
    /// Position of the group in the candidate list.
    pub group_index: usize,
    /// Multiplicity of this group after the step.
    pub multiplicity: u32,
    pub gain: EstimateResult,
    /// Objective value after the step, under the same seed as `gain`.
    pub value: EstimateResult,
    /// Picked by the high-effective-degree prefix rather than by gain.
    pub forced: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub steps: Vec<SelectionStep>,
    /// Budget the selection was run with (`k`).
    pub budget: usize,
    chosen: Multiset,
}

impl Selection {
    pub fn chosen(&self) -> &Multiset {
        &self.chosen
    }

    /// Multiset after the first `len` steps.
    pub fn prefix(&self, len: usize) -> Multiset {
        self.steps[..len].iter().map(|s| s.group_index).collect()
    }

    pub fn group_ids(&self) -> Vec<GroupId> {
        self.steps.iter().map(|s| s.group_id).collect()
    }

    pub fn forced_count(&self) -> usize {
        self.steps.iter().filter(|s| s.forced).count()
    }

    /// Estimated objective of the full selection (last step's value).
    pub fn value(&self) -> Option<EstimateResult> {
        self.steps.last().map(|s| s.value)
    }

    /// `(group id, multiplicity)` pairs in ascending group id.
    pub fn multiplicities(&self, groups: &[Group]) -> Vec<(GroupId, u32)> {
        let mut v: Vec<_> = self.chosen.iter().map(|(i, c)| (groups[i].id(), c)).collect();
        v.sort_unstable();
        v
    }
}

fn run(
    g: &ProbGraph,
    groups: &[Group],
    forced: &[usize],
    free_steps: usize,
    budget: usize,
    evaluator: &impl Evaluator,
    allow_multiset: bool,
) -> Result<Selection> {
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&i| groups[i].id());

    let mut chosen = Multiset::new();
    let mut steps = Vec::with_capacity(forced.len() + free_steps);
    let mut iteration = 0u64;
    let mut record = |chosen: &mut Multiset, idx: usize, scores: &Scores, j: usize, forced: bool| {
        chosen.add(idx);
        steps.push(SelectionStep {
            group_id: groups[idx].id(),
            group_index: idx,
            multiplicity: chosen.count(idx),
            gain: scores.gains[j],
            value: scores.extended[j],
            forced,
            seed: scores.seed,
        });
    };

    for &idx in forced {
        let scores = evaluator.score(g, groups, &chosen, &[idx], iteration)?;
        record(&mut chosen, idx, &scores, 0, true);
        iteration += 1;
    }
    for _ in 0..free_steps {
        let candidates: Vec<usize> =
            order.iter().copied().filter(|&i| allow_multiset || chosen.count(i) == 0).collect();
        if candidates.is_empty() {
            return Err(Error::Budget { k: budget, available: groups.len() });
        }
        let scores = evaluator.score(g, groups, &chosen, &candidates, iteration)?;
        // strict comparison keeps the smallest group id on ties
        let mut best = 0;
        for j in 1..candidates.len() {
            if scores.gains[j].mean > scores.gains[best].mean {
                best = j;
            }
        }
        record(&mut chosen, candidates[best], &scores, best, false);
        iteration += 1;
    }
    Ok(Selection { steps, budget, chosen })
}

/// Picks `k` groups one at a time, each maximizing the estimated marginal
/// gain. With `allow_multiset`, chosen groups stay candidates and a repeat
/// pick adds another independent acceptance draw.
pub fn greedy(
    g: &ProbGraph,
    groups: &[Group],
    k: usize,
    evaluator: &impl Evaluator,
    allow_multiset: bool,
) -> Result<Selection> {
    if k == 0 {
        return Err(Error::config("budget k must be at least 1"));
    }
    if groups.is_empty() {
        return Err(Error::config("no candidate groups"));
    }
    check_groups(g, groups)?;
    if !allow_multiset && k > groups.len() {
        return Err(Error::Budget { k, available: groups.len() });
    }
    run(g, groups, &[], k, k, evaluator, allow_multiset)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixMode {
    /// Force the `n_s` high-degree nodes, then greedily fill up to `k`.
    Budgeted,
    /// Force the `n_s` nodes and then pick `k` more greedily.
    Bicriteria,
}

/// Node immunization that first takes every non-seed node whose effective
/// degree exceeds `lambda_prime` (largest first, ties by id) and then runs
/// greedy on the remaining singleton groups.
pub fn prefix_greedy(
    g: &ProbGraph,
    k: usize,
    lambda_prime: f64,
    model: &CascadeModel,
    evaluator: &impl Evaluator,
    mode: PrefixMode,
) -> Result<Selection> {
    if k == 0 {
        return Err(Error::config("budget k must be at least 1"));
    }
    let groups = node_groups(g);
    let profile = EffectiveDegreeProfile::for_model(g, model);
    let mut high: Vec<NodeId> = (0..g.n()).filter(|&u| !g.is_seed(u) && profile.lambdas[u] > lambda_prime).collect();
    high.sort_by(|&a, &b| profile.lambdas[b].total_cmp(&profile.lambdas[a]).then(a.cmp(&b)));
    let n_s = high.len();
    let index_of = |u: NodeId| groups.binary_search_by_key(&u, Group::id).expect("non-seed node has a group");
    let forced: Vec<usize> = high.iter().map(|&u| index_of(u)).collect();

    let (free, budget) = match mode {
        PrefixMode::Budgeted => {
            if n_s >= k {
                return Err(Error::Threshold { n_s, k });
            }
            (k - n_s, k)
        }
        PrefixMode::Bicriteria => (k, k),
    };
    if n_s + free > groups.len() {
        return Err(Error::Budget { k: n_s + free, available: groups.len() });
    }
    run(g, &groups, &forced, free, budget, evaluator, false)
}
