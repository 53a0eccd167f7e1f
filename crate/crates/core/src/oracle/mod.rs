//! Exact computation on tiny instances by enumerating every live-edge graph.
//!
//! Arcs with probability 0 or 1 are fixed; only the remaining "uncertain"
//! arcs are enumerated, so an instance with `m` uncertain arcs costs `2^m`
//! reachability passes per batch of removal sets.

mod fixtures;

pub use fixtures::{counterexample_a, counterexample_b, random_instance};

use rayon::prelude::*;

use crate::bounds::{phi, EffectiveDegreeProfile};
use crate::cascade::{mask, EstimateResult, LiveEdgeSample, SampleContext};
use crate::error::{Error, Result};
use crate::graph::{NodeId, ProbGraph};
use crate::immunize::{realize_into, Evaluator, Group, Multiset, Policy, Scores};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleLimits {
    pub max_uncertain_arcs: usize,
    pub max_subsets: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_uncertain_arcs: 22, max_subsets: 1_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactResult {
    pub value: f64,
    pub enumerated_realizations: u64,
    /// Total probability of the enumerated realizations (1 up to rounding).
    pub probability_mass: f64,
}

/// The realization space of one graph.
#[derive(Debug, Clone)]
pub struct Enumeration<'g> {
    g: &'g ProbGraph,
    uncertain: Vec<usize>,
    fixed_live: Vec<bool>,
}

const CHUNK: u64 = 1 << 10;

impl<'g> Enumeration<'g> {
    pub fn new(g: &'g ProbGraph, limits: &OracleLimits) -> Result<Self> {
        let uncertain: Vec<usize> =
            g.arcs().iter().enumerate().filter(|(_, a)| a.p > 0.0 && a.p < 1.0).map(|(i, _)| i).collect();
        if uncertain.len() > limits.max_uncertain_arcs {
            return Err(Error::SizeCap {
                what: "number of uncertain arcs m".into(),
                value: uncertain.len() as u64,
                cap: limits.max_uncertain_arcs as u64,
            });
        }
        let fixed_live = g.arcs().iter().map(|a| a.p >= 1.0).collect();
        Ok(Enumeration { g, uncertain, fixed_live })
    }

    pub fn realizations(&self) -> u64 {
        1u64 << self.uncertain.len()
    }

    fn realization(&self, bits: u64) -> (f64, LiveEdgeSample) {
        let mut live = self.fixed_live.clone();
        let mut prob = 1.0;
        for (j, &idx) in self.uncertain.iter().enumerate() {
            let p = self.g.arcs()[idx].p;
            if bits >> j & 1 == 1 {
                live[idx] = true;
                prob *= p;
            } else {
                prob *= 1.0 - p;
            }
        }
        (prob, LiveEdgeSample::from_live(live))
    }

    /// Exact expected saved utility of each removal mask, plus the total
    /// probability mass. Chunks are reduced in order, so the result does not
    /// depend on the thread count.
    pub fn saved_many(&self, removals: &[Vec<bool>]) -> (Vec<f64>, f64) {
        let total = self.realizations();
        let chunks: Vec<(Vec<f64>, f64)> = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut sums = vec![0.0; removals.len()];
                let mut mass = 0.0;
                for bits in (c * CHUNK)..((c + 1) * CHUNK).min(total) {
                    let (prob, sample) = self.realization(bits);
                    mass += prob;
                    let mut ctx = SampleContext::new(self.g, sample);
                    for (s, removed) in sums.iter_mut().zip(removals) {
                        *s += prob * ctx.saved(self.g, removed);
                    }
                }
                (sums, mass)
            })
            .collect();
        let mut sums = vec![0.0; removals.len()];
        let mut mass = 0.0;
        for (c, m) in chunks {
            sums.iter_mut().zip(c).for_each(|(s, x)| *s += x);
            mass += m;
        }
        (sums, mass)
    }

    /// Visits every realization with its probability, in enumeration order.
    pub fn for_each(&self, mut f: impl FnMut(f64, &LiveEdgeSample)) {
        for bits in 0..self.realizations() {
            let (prob, sample) = self.realization(bits);
            f(prob, &sample);
        }
    }
}

/// Exact expected saved utility of immunizing `removed`.
pub fn exact_pi(g: &ProbGraph, removed: &[NodeId]) -> Result<ExactResult> {
    exact_pi_with(g, removed, &OracleLimits::default())
}

pub fn exact_pi_with(g: &ProbGraph, removed: &[NodeId], limits: &OracleLimits) -> Result<ExactResult> {
    let e = Enumeration::new(g, limits)?;
    let (values, mass) = e.saved_many(&[mask(g.n(), removed)?]);
    Ok(ExactResult { value: values[0], enumerated_realizations: e.realizations(), probability_mass: mass })
}

/// Exact expected infected utility.
pub fn exact_sigma(g: &ProbGraph) -> Result<ExactResult> {
    let e = Enumeration::new(g, &OracleLimits::default())?;
    let mut value = 0.0;
    let mut mass = 0.0;
    e.for_each(|prob, sample| {
        mass += prob;
        value += prob * SampleContext::new(g, sample.clone()).spread(g);
    });
    Ok(ExactResult { value, enumerated_realizations: e.realizations(), probability_mass: mass })
}

fn combinations(items: &[NodeId], size: usize, out: &mut Vec<Vec<NodeId>>) {
    fn rec(items: &[NodeId], size: usize, start: usize, cur: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut Vec::new(), out);
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn nearly_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Best set of at most `k` non-seed nodes by exact evaluation. Ties within
/// rounding go to the lexicographically smallest set.
pub fn exhaustive_opt(g: &ProbGraph, k: usize) -> Result<(Vec<NodeId>, f64)> {
    exhaustive_opt_with(g, k, &OracleLimits::default())
}

pub fn exhaustive_opt_with(g: &ProbGraph, k: usize, limits: &OracleLimits) -> Result<(Vec<NodeId>, f64)> {
    let candidates: Vec<NodeId> = (0..g.n()).filter(|&u| !g.is_seed(u)).collect();
    let k = k.min(candidates.len());
    let count: u64 = (0..=k as u64).map(|s| binomial(candidates.len() as u64, s)).fold(0, u64::saturating_add);
    if count > limits.max_subsets {
        return Err(Error::SizeCap {
            what: "number of candidate subsets".into(),
            value: count,
            cap: limits.max_subsets,
        });
    }
    let e = Enumeration::new(g, limits)?;
    let mut sets = Vec::new();
    for size in 0..=k {
        combinations(&candidates, size, &mut sets);
    }
    let masks = sets.iter().map(|s| mask(g.n(), s)).collect::<Result<Vec<_>>>()?;
    let (values, _) = e.saved_many(&masks);
    let mut best = 0;
    for i in 1..sets.len() {
        let better = values[i] > values[best] && !nearly_equal(values[i], values[best]);
        let tie_smaller = nearly_equal(values[i], values[best]) && sets[i] < sets[best];
        if better || tie_smaller {
            best = i;
        }
    }
    Ok((sets.swap_remove(best), values[best]))
}

/// Plugs exact evaluation into greedy. Only deterministic policies are
/// supported; the candidate gains are exact and carry zero standard error.
#[derive(Debug, Clone, Default)]
pub struct ExactEvaluator {
    pub limits: OracleLimits,
}

impl Evaluator for ExactEvaluator {
    fn score(
        &self,
        g: &ProbGraph,
        groups: &[Group],
        current: &Multiset,
        candidates: &[usize],
        _iteration: u64,
    ) -> Result<Scores> {
        if let Some(gr) = groups.iter().find(|gr| gr.policy() != &Policy::Deterministic) {
            return Err(Error::config(format!("exact evaluation needs deterministic groups (group {})", gr.id())));
        }
        let e = Enumeration::new(g, &self.limits)?;
        let mut base = vec![false; g.n()];
        realize_into(groups, current, 0, 0, &mut base);
        let mut masks = vec![base.clone()];
        for &c in candidates {
            let mut m = base.clone();
            realize_into(groups, &Multiset::from_iter([c]), 0, 0, &mut m);
            masks.push(m);
        }
        let (values, _) = e.saved_many(&masks);
        let exact =
            |mean: f64| EstimateResult { mean, stderr: 0.0, replicates: e.realizations() as usize, master_seed: 0 };
        Ok(Scores {
            base: exact(values[0]),
            extended: values[1..].iter().map(|&v| exact(v)).collect(),
            gains: values[1..].iter().map(|&v| exact(v - values[0])).collect(),
            seed: 0,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSubsetReport {
    /// `distribution[l]` = P(D = 1 and the smallest critical subset has size `l`).
    pub distribution: Vec<f64>,
    /// P(D(S* | S_i) = 1).
    pub p_marginal: f64,
    pub lambda: f64,
    /// `(1 - phi(lambda)) * P(D = 1)`.
    pub bound: f64,
    pub p_at_least_two: f64,
    pub bound_holds: bool,
}

/// Exact distribution of the smallest `S' ⊆ S*` that, added to `S_i`, cuts
/// target `t` off from the seeds, over realizations where `S* ∪ S_i` blocks
/// `t` and `S_i` alone does not. Checks `P(|S'| >= 2) <= (1 - phi(lambda)) P(D = 1)`
/// with `lambda` the largest effective degree in the graph.
pub fn critical_subset_check(
    g: &ProbGraph,
    target: NodeId,
    s_star: &[NodeId],
    s_i: &[NodeId],
) -> Result<CriticalSubsetReport> {
    if target >= g.n() {
        return Err(Error::config(format!("target {target} is not a node")));
    }
    let e = Enumeration::new(g, &OracleLimits::default())?;
    let mut star = s_star.to_vec();
    star.sort_unstable();
    star.dedup();
    let mut subsets: Vec<Vec<NodeId>> = Vec::new();
    for size in 1..=star.len() {
        combinations(&star, size, &mut subsets);
    }
    let base = mask(g.n(), s_i)?;
    let union_mask = |extra: &[NodeId]| {
        let mut m = base.clone();
        extra.iter().for_each(|&u| m[u] = true);
        m
    };
    let subset_masks: Vec<Vec<bool>> = subsets.iter().map(|s| union_mask(s)).collect();
    let full = union_mask(&star);

    let mut distribution = vec![0.0; star.len() + 1];
    let mut p_marginal = 0.0;
    let mut reach = crate::cascade::Reach::new(g.n());
    e.for_each(|prob, sample| {
        let blocked = |reach: &mut crate::cascade::Reach, m: &[bool]| {
            reach.run(g, sample, m);
            !reach.contains(target)
        };
        if blocked(&mut reach, &base) || !blocked(&mut reach, &full) {
            return;
        }
        p_marginal += prob;
        let size = subsets
            .iter()
            .zip(&subset_masks)
            .find(|(_, m)| blocked(&mut reach, m))
            .map(|(s, _)| s.len())
            .expect("the full set blocks");
        distribution[size] += prob;
    });
    if p_marginal == 0.0 {
        return Err(Error::Domain("S* never blocks the target where S_i does not".into()));
    }
    let lambda = EffectiveDegreeProfile::ic(g).max();
    let bound = (1.0 - phi(lambda)?) * p_marginal;
    let p_at_least_two: f64 = distribution.iter().skip(2).sum();
    Ok(CriticalSubsetReport {
        distribution,
        p_marginal,
        lambda,
        bound,
        p_at_least_two,
        bound_holds: p_at_least_two <= bound + 1e-12,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapCheck {
    /// `(1 - alpha)(f(S* ∪ S) - f(S))`
    pub lhs: f64,
    /// `sum_{v in S*} (f(S ∪ {v}) - f(S)) + beta`
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates the approximate-submodularity inequality with exact `f = pi`.
pub fn submodularity_gap_check(
    g: &ProbGraph,
    s_star: &[NodeId],
    s: &[NodeId],
    alpha: f64,
    beta: f64,
) -> Result<GapCheck> {
    let e = Enumeration::new(g, &OracleLimits::default())?;
    let base = mask(g.n(), s)?;
    let mut union = base.clone();
    let mut masks = vec![base.clone()];
    for &v in s_star {
        let mut m = base.clone();
        m[v] = true;
        union[v] = true;
        masks.push(m);
    }
    masks.push(union);
    let (values, _) = e.saved_many(&masks);
    let f_s = values[0];
    let f_union = values[values.len() - 1];
    let singles: f64 = values[1..values.len() - 1].iter().map(|v| v - f_s).sum();
    let lhs = (1.0 - alpha) * (f_union - f_s);
    let rhs = singles + beta;
    Ok(GapCheck { lhs, rhs, holds: lhs <= rhs + 1e-12 * lhs.abs().max(1.0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immunize::{greedy, node_groups};
    use approx::assert_abs_diff_eq;

    #[test]
    fn counterexample_a_values() {
        let g = counterexample_a();
        for (set, want) in [(vec![], 0.0), (vec![1], 1.0), (vec![2], 1.0), (vec![1, 2], 4.0)] {
            assert_eq!(exact_pi(&g, &set).unwrap().value, want, "{set:?}");
        }
    }

    #[test]
    fn counterexample_b_values() {
        let a = 3;
        let g = counterexample_b(a);
        let af = a as f64;
        assert_eq!(exact_pi(&g, &[]).unwrap().value, 0.0);
        assert_eq!(exact_pi(&g, &[1]).unwrap().value, 2.0 + af);
        assert_eq!(exact_pi(&g, &[2]).unwrap().value, 1.0 + af);
        assert_eq!(exact_pi(&g, &[1, 2]).unwrap().value, 2.0 + af);
    }

    #[test]
    fn chain_enumeration() {
        let mut b = ProbGraph::builder(3, true);
        b.edge(0, 1, 0.5).edge(1, 2, 0.5).utility(1, 2.0).utility(2, 3.0).seed(0);
        let g = b.build().unwrap();
        let r = exact_pi(&g, &[1]).unwrap();
        assert_eq!(r.enumerated_realizations, 4);
        assert_abs_diff_eq!(r.value, 0.5 * 2.0 + 0.25 * 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.probability_mass, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(exact_sigma(&g).unwrap().value, 1.0 + 1.0 + 0.75, epsilon = 1e-15);
    }

    #[test]
    fn size_cap() {
        let mut b = ProbGraph::builder(30, true);
        for u in 0..29 {
            b.edge(u, u + 1, 0.5);
        }
        let g = b.build().unwrap();
        match exact_pi(&g, &[]) {
            Err(Error::SizeCap { value, cap, .. }) => assert_eq!((value, cap), (29, 22)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exhaustive_optima() {
        assert_eq!(exhaustive_opt(&counterexample_a(), 2).unwrap(), (vec![1, 2], 4.0));
        assert_eq!(exhaustive_opt(&counterexample_a(), 0).unwrap(), (vec![], 0.0));
        assert_eq!(exhaustive_opt(&counterexample_b(3), 1).unwrap(), (vec![1], 5.0));
        // {1} and {1, 2} tie; the shorter set is lexicographically smaller
        assert_eq!(exhaustive_opt(&counterexample_b(3), 2).unwrap(), (vec![1], 5.0));
        let limits = OracleLimits { max_uncertain_arcs: 22, max_subsets: 3 };
        assert!(matches!(exhaustive_opt_with(&counterexample_a(), 2, &limits), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn exact_greedy_on_fixtures() {
        let b = counterexample_b(3);
        let sel = greedy(&b, &node_groups(&b), 1, &ExactEvaluator::default(), false).unwrap();
        assert_eq!(sel.group_ids(), vec![1]);
        assert_eq!(sel.steps[0].gain.mean, 5.0);

        let a = counterexample_a();
        let sel = greedy(&a, &node_groups(&a), 2, &ExactEvaluator::default(), false).unwrap();
        let mut ids = sel.group_ids();
        ids.sort_unstable();
        assert_eq!(ids, vec![1, 2]);
        assert_eq!(sel.value().unwrap().mean, 4.0);
    }

    #[test]
    fn greedy_can_miss_the_optimum() {
        // node 1 alone saves 5; nodes 2 and 3 save 2 + 6 only together
        let mut b = ProbGraph::builder(14, true);
        b.edge(0, 1, 1.0).edge(0, 2, 1.0).edge(0, 3, 1.0).seed(0);
        for v in 4..8 {
            b.edge(1, v, 1.0);
        }
        for v in 8..14 {
            b.edge(2, v, 1.0).edge(3, v, 1.0);
        }
        let g = b.build().unwrap();
        let (opt_set, opt) = exhaustive_opt(&g, 2).unwrap();
        assert_eq!((opt_set, opt), (vec![2, 3], 8.0));
        let sel = greedy(&g, &node_groups(&g), 2, &ExactEvaluator::default(), false).unwrap();
        assert_eq!(sel.group_ids(), vec![1, 2]);
        assert_eq!(sel.value().unwrap().mean, 6.0);
    }

    #[test]
    fn critical_subset_on_fixture_a() {
        let g = counterexample_a();
        let r = critical_subset_check(&g, 3, &[1, 2], &[]).unwrap();
        assert_eq!(r.p_marginal, 1.0);
        assert_eq!(r.distribution[2], 1.0);
        assert_eq!(r.lambda, f64::INFINITY);
        assert!(r.bound_holds);
    }

    #[test]
    fn critical_subset_single_path() {
        let g = counterexample_b(2);
        let r = critical_subset_check(&g, 3, &[1], &[]).unwrap();
        assert_eq!(r.distribution[1], 1.0);
        assert!(r.bound_holds);
        assert!(critical_subset_check(&g, 3, &[1], &[2]).is_err());
    }

    #[test]
    fn gap_checks() {
        let a = counterexample_a();
        let violated = submodularity_gap_check(&a, &[1, 2], &[], 0.0, 0.0).unwrap();
        assert!(!violated.holds);
        assert_eq!((violated.lhs, violated.rhs), (4.0, 2.0));
        let vacuous = submodularity_gap_check(&a, &[1, 2], &[], 1.0, 0.0).unwrap();
        assert!(vacuous.holds && vacuous.lhs == 0.0);

        // a tree of certain single paths is submodular
        let mut b = ProbGraph::builder(6, true);
        b.edge(0, 1, 1.0).edge(1, 2, 1.0).edge(1, 3, 1.0).edge(0, 4, 1.0).edge(4, 5, 1.0).seed(0);
        let tree = b.build().unwrap();
        assert!(submodularity_gap_check(&tree, &[1, 2, 4], &[3], 0.0, 0.0).unwrap().holds);
    }

    #[test]
    fn exact_pi_monotone() {
        for seed in 0..20 {
            let g = random_instance(7, 10, &[0.3, 0.6], seed).unwrap();
            let free: Vec<NodeId> = (0..g.n()).filter(|&u| !g.is_seed(u)).collect();
            let mut prev = exact_pi(&g, &[]).unwrap().value;
            assert_eq!(prev, 0.0);
            for i in 1..=free.len() {
                let v = exact_pi(&g, &free[..i]).unwrap().value;
                assert!(v >= prev - 1e-12);
                prev = v;
            }
        }
    }
}
