//! Effective degrees and the data-dependent approximation factors of greedy
//! immunization.
//!
//! The effective degree of a node `u` is `(1 - p_u)^(-d_u / 2) - 1`, where
//! `p_u` is its largest incident arc probability and `d_u` its number of
//! distinct neighbours. With `phi(x) = x / (e^x - 1)`, greedy selection
//! achieves `1 - exp(-phi(lambda))` of the optimum when every node has
//! effective degree at most `lambda`. [`optimize_threshold`] trades a few
//! forced high-degree picks for a smaller `lambda`.

use std::fmt;

use crate::cascade::{CascadeModel, Recovery};
use crate::error::{Error, Result};
use crate::graph::{NodeId, ProbGraph};

/// `x / (e^x - 1)`, continuous at 0 (value 1) and at infinity (value 0).
pub fn phi(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::Domain(format!("phi is defined for lambda >= 0, got {lambda}")));
    }
    Ok(phi_unchecked(lambda))
}

fn phi_unchecked(lambda: f64) -> f64 {
    if lambda == 0.0 {
        1.0
    } else if lambda.is_infinite() {
        0.0
    } else {
        lambda / lambda.exp_m1()
    }
}

/// `1 - exp(-x)`.
fn one_minus_exp_neg(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// Greedy guarantee `1 - exp(-phi(lambda))` for maximum effective degree `lambda`.
pub fn greedy_factor(lambda: f64) -> Result<f64> {
    Ok(one_minus_exp_neg(phi(lambda)?))
}

/// Factor after forcing `n_s` of `k` picks: `1 - exp(-(1 - n_s/k) phi(lambda'))`.
pub fn threshold_factor(n_s: usize, k: usize, lambda_prime: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let share = 1.0 - n_s as f64 / k as f64;
    Ok(one_minus_exp_neg(share.max(0.0) * phi(lambda_prime)?))
}

/// `(1 - p)^(-d/2) - 1` with `d` used as a real exponent.
pub fn effective_degree(p: f64, d: f64) -> f64 {
    if p <= 0.0 || d <= 0.0 {
        0.0
    } else if p >= 1.0 {
        f64::INFINITY
    } else {
        // (1-p)^(-d/2) - 1 = exp(-(d/2) ln(1-p)) - 1
        (-(d / 2.0) * (-p).ln_1p()).exp_m1()
    }
}

/// Effective degree under SIR emulation with recovery probability `gamma`:
/// with `B = (1-p)^(-d/2)`, `gamma B / (1 - (1-gamma) B) - 1`, or infinity once
/// the underlying geometric series diverges.
pub fn effective_degree_sir_raw(p: f64, d: f64, gamma: f64) -> f64 {
    if gamma >= 1.0 {
        return effective_degree(p, d);
    }
    let base = 1.0 + effective_degree(p, d);
    let ratio = (1.0 - gamma) * base;
    if !base.is_finite() || ratio >= 1.0 {
        return f64::INFINITY;
    }
    (gamma * base / (1.0 - ratio) - 1.0).max(0.0)
}

pub fn effective_degree_ic(g: &ProbGraph, u: NodeId) -> f64 {
    let inc = g.incidence()[u];
    effective_degree(inc.max_p, inc.degree as f64)
}

pub fn effective_degree_sir(g: &ProbGraph, u: NodeId, gamma: f64) -> f64 {
    let inc = g.incidence()[u];
    effective_degree_sir_raw(inc.max_p, inc.degree as f64, gamma)
}

/// Effective degree of the relay node inserted for link `(u, v)`: `p / (1 - p)`.
pub fn effective_degree_link(p: f64) -> f64 {
    if p >= 1.0 {
        f64::INFINITY
    } else if p <= 0.0 {
        0.0
    } else {
        p / (1.0 - p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    IndependentCascade,
    Sir(Recovery),
    Link,
}

/// Effective degree of every immunization candidate (nodes, or arcs for link
/// immunization).
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveDegreeProfile {
    pub lambdas: Vec<f64>,
    pub kind: ProfileKind,
}

impl EffectiveDegreeProfile {
    pub fn ic(g: &ProbGraph) -> Self {
        let lambdas = g.incidence().iter().map(|i| effective_degree(i.max_p, i.degree as f64)).collect();
        EffectiveDegreeProfile { lambdas, kind: ProfileKind::IndependentCascade }
    }

    pub fn sir(g: &ProbGraph, recovery: &Recovery) -> Self {
        let lambdas = g
            .incidence()
            .iter()
            .enumerate()
            .map(|(u, i)| {
                let gamma = match recovery {
                    Recovery::Uniform(x) => *x,
                    Recovery::PerNode(v) => v[u],
                };
                effective_degree_sir_raw(i.max_p, i.degree as f64, gamma)
            })
            .collect();
        EffectiveDegreeProfile { lambdas, kind: ProfileKind::Sir(recovery.clone()) }
    }

    /// One entry per arc of `g`, in arc order.
    pub fn link(g: &ProbGraph) -> Self {
        let lambdas = g.arcs().iter().filter(|a| !a.collector).map(|a| effective_degree_link(a.p)).collect();
        EffectiveDegreeProfile { lambdas, kind: ProfileKind::Link }
    }

    pub fn for_model(g: &ProbGraph, model: &CascadeModel) -> Self {
        match model {
            CascadeModel::IndependentCascade => Self::ic(g),
            CascadeModel::Sir(r) => Self::sir(g, r),
        }
    }

    pub fn max(&self) -> f64 {
        self.lambdas.iter().copied().fold(0.0, f64::max)
    }

    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.lambdas.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Number of entries strictly above `lambda_prime`.
    pub fn count_above(&self, lambda_prime: f64) -> usize {
        self.lambdas.iter().filter(|&&l| l > lambda_prime).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdRow {
    pub i: usize,
    pub lambda_prime: f64,
    pub n_s: usize,
    pub factor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lambda_prime: f64,
    pub n_s: usize,
    pub k: usize,
    pub factor: f64,
    /// `(1 + n_s/k, 1 - exp(-phi(lambda')))`: spend the extra `n_s` picks on
    /// top of `k` and keep the unscaled factor.
    pub bicriteria: (f64, f64),
    pub table: Vec<ThresholdRow>,
}

impl BoundReport {
    /// CSV with columns `i,lambda_prime,n_s,factor`, one row per threshold
    /// plus a final `best` row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["i", "lambda_prime", "n_s", "factor"]).unwrap();
        for row in &self.table {
            w.write_record([
                row.i.to_string(),
                row.lambda_prime.to_string(),
                row.n_s.to_string(),
                row.factor.to_string(),
            ])
            .unwrap();
        }
        w.write_record([
            "best".to_string(),
            self.lambda_prime.to_string(),
            self.n_s.to_string(),
            self.factor.to_string(),
        ])
        .unwrap();
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} lambda_prime={} n_s={} factor={:.6} bicriteria=({:.4}, {:.6})",
            self.k, self.lambda_prime, self.n_s, self.factor, self.bicriteria.0, self.bicriteria.1
        )
    }
}

/// Best threshold over the `k` largest effective degrees: at position `i`
/// the threshold is the `i`-th largest value and the `i - 1` nodes above it
/// are forced. Ties go to the smallest `n_s`.
pub fn optimize_threshold(profile: &EffectiveDegreeProfile, k: usize) -> Result<BoundReport> {
    if profile.lambdas.is_empty() {
        return Err(Error::Domain("effective-degree profile is empty".into()));
    }
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let sorted = profile.sorted_desc();
    let table: Vec<ThresholdRow> = sorted
        .iter()
        .take(k)
        .enumerate()
        .map(|(idx, &lambda_prime)| ThresholdRow {
            i: idx + 1,
            lambda_prime,
            n_s: idx,
            factor: threshold_factor(idx, k, lambda_prime).expect("profile entries are non-negative"),
        })
        .collect();
    let best = table.iter().fold(table[0], |best, row| if row.factor > best.factor { *row } else { best });
    Ok(BoundReport {
        lambda_prime: best.lambda_prime,
        n_s: best.n_s,
        k,
        factor: best.factor,
        bicriteria: (1.0 + best.n_s as f64 / k as f64, one_minus_exp_neg(phi_unchecked(best.lambda_prime))),
        table,
    })
}

/// Closed-form factor for uniform edge probability `R0 / dbar` and maximum
/// degree `s * dbar`.
pub fn factor_vs_r0(dbar: f64, s: f64, r0: f64) -> Result<f64> {
    if !(dbar > 0.0) || !(r0 >= 0.0) || r0 >= dbar {
        return Err(Error::Domain(format!("need 0 <= R0 < dbar, got R0={r0}, dbar={dbar}")));
    }
    if !(s >= 1.0) {
        return Err(Error::Domain(format!("degree skew s must be >= 1, got {s}")));
    }
    greedy_factor(effective_degree(r0 / dbar, s * dbar))
}

/// Household effective degree `(1 - p)^(-d_H/2) - 1` where `d_H` counts the
/// arcs leaving the household and `p` bounds their probabilities.
pub fn household_lambda(p: f64, external_degree: f64) -> f64 {
    effective_degree(p, external_degree)
}

/// Guarantee for greedily picking `k / a` households of size `a`:
/// `1 - exp(-phi(Lambda) / a)`.
pub fn household_factor(lambda: f64, size: usize) -> Result<f64> {
    if size == 0 {
        return Err(Error::Domain("household size must be at least 1".into()));
    }
    Ok(one_minus_exp_neg(phi(lambda)? / size as f64))
}

/// Household effective degrees for a partition of `g` into households: each
/// household's external arc count and largest external probability.
pub fn household_profile(g: &ProbGraph, households: &[Vec<NodeId>]) -> Vec<f64> {
    let mut owner = vec![usize::MAX; g.n()];
    for (h, members) in households.iter().enumerate() {
        for &u in members {
            owner[u] = h;
        }
    }
    let mut degree = vec![0usize; households.len()];
    let mut max_p = vec![0.0f64; households.len()];
    for a in g.arcs().iter().filter(|a| !a.collector) {
        let (hs, hd) = (owner[a.src], owner[a.dst]);
        if hs == hd {
            continue;
        }
        for h in [hs, hd] {
            if h != usize::MAX {
                degree[h] += 1;
                max_p[h] = max_p[h].max(a.p);
            }
        }
    }
    // an undirected edge is stored as two arcs; count it once
    let per_edge = if g.is_directed() { 1.0 } else { 0.5 };
    degree.iter().zip(&max_p).map(|(&d, &p)| household_lambda(p, d as f64 * per_edge)).collect()
}

/// Replicates sufficient for every one of `m * k` marginal-gain estimates of
/// a `[0, total_utility]`-bounded statistic to be within `eps_abs` with
/// probability `1 - delta` (Hoeffding plus a union bound).
pub fn recommended_replicates(total_utility: f64, k: usize, m: usize, eps_abs: f64, delta: f64) -> Result<u64> {
    if !(eps_abs > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps_abs}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    let evaluations = (m.max(1) * k.max(1)) as f64;
    let r = total_utility * total_utility * (2.0 * evaluations / delta).ln() / (2.0 * eps_abs * eps_abs);
    Ok(r.ceil().max(1.0) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn phi_anchors() {
        assert_eq!(phi(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(phi(1.0).unwrap(), 1.0 / (std::f64::consts::E - 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(phi(1.0).unwrap(), 0.581977, epsilon = 1e-6);
        assert_eq!(phi(f64::INFINITY).unwrap(), 0.0);
        assert_eq!(phi(1e6).unwrap(), 0.0);
        assert!(matches!(phi(-0.1), Err(Error::Domain(_))));
        assert!(phi(f64::NAN).is_err());
    }

    #[test]
    fn effective_degree_values() {
        assert_eq!(effective_degree(0.0, 10.0), 0.0);
        assert_eq!(effective_degree(0.3, 0.0), 0.0);
        assert_abs_diff_eq!(effective_degree(0.1, 10.0), 0.9f64.powi(-5) - 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(effective_degree(0.1, 10.0), 0.69351, epsilon = 1e-5);
        assert_eq!(effective_degree(1.0, 2.0), f64::INFINITY);
        assert_eq!(greedy_factor(f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn sir_effective_degree_values() {
        assert_eq!(effective_degree_sir_raw(0.1, 10.0, 1.0), effective_degree(0.1, 10.0));
        let b = 0.9f64.powi(-5);
        let want = 0.5 * b / (1.0 - 0.5 * b) - 1.0;
        assert_abs_diff_eq!(effective_degree_sir_raw(0.1, 10.0, 0.5), want, epsilon = 1e-12);
        assert_abs_diff_eq!(effective_degree_sir_raw(0.1, 10.0, 0.5), 4.5254, epsilon = 1e-3);
        // (1 - gamma) B >= 1 diverges
        assert_eq!(effective_degree_sir_raw(0.1, 10.0, 0.4), f64::INFINITY);
    }

    #[test]
    fn link_values() {
        assert_eq!(effective_degree_link(0.0), 0.0);
        assert_eq!(effective_degree_link(0.5), 1.0);
        assert_abs_diff_eq!(effective_degree_link(0.9), 9.0, epsilon = 1e-12);
        assert_eq!(effective_degree_link(1.0), f64::INFINITY);
        assert_abs_diff_eq!(greedy_factor(1.0).unwrap(), 0.4412, epsilon = 1e-4);
    }

    #[test]
    fn threshold_uniform_profile() {
        let p = EffectiveDegreeProfile { lambdas: vec![0.8; 20], kind: ProfileKind::IndependentCascade };
        let r = optimize_threshold(&p, 5).unwrap();
        assert_eq!(r.n_s, 0);
        assert_eq!(r.lambda_prime, 0.8);
        assert_abs_diff_eq!(r.factor, greedy_factor(0.8).unwrap(), epsilon = 1e-15);
        assert_eq!(r.table.len(), 5);
    }

    #[test]
    fn threshold_two_branch_example() {
        let p = EffectiveDegreeProfile { lambdas: vec![0.7, 5.0, 0.7, 0.7], kind: ProfileKind::IndependentCascade };
        let r = optimize_threshold(&p, 2).unwrap();
        // independent evaluation of both branches
        let first = 1.0 - (-(5.0 / (5.0f64.exp() - 1.0))).exp();
        let second = 1.0 - (-0.5 * (0.7 / (0.7f64.exp() - 1.0))).exp();
        assert_abs_diff_eq!(r.table[0].factor, first, epsilon = 1e-12);
        assert_abs_diff_eq!(r.table[1].factor, second, epsilon = 1e-12);
        assert_abs_diff_eq!(first, 0.0334, epsilon = 1e-4);
        assert_abs_diff_eq!(second, 0.2920, epsilon = 1e-4);
        assert_eq!((r.n_s, r.lambda_prime), (1, 0.7));
        assert_abs_diff_eq!(r.bicriteria.0, 1.5, epsilon = 1e-15);
    }

    #[test]
    fn threshold_small_lambda_limit() {
        let p = EffectiveDegreeProfile { lambdas: vec![1e-12; 3], kind: ProfileKind::IndependentCascade };
        let r = optimize_threshold(&p, 3).unwrap();
        assert_abs_diff_eq!(r.factor, 1.0 - (-1.0f64).exp(), epsilon = 1e-9);
        let empty = EffectiveDegreeProfile { lambdas: vec![], kind: ProfileKind::Link };
        assert!(optimize_threshold(&empty, 3).is_err());
    }

    #[test]
    fn factor_vs_r0_anchors() {
        assert_abs_diff_eq!(factor_vs_r0(10.0, 1.0, 1.0).unwrap(), 0.50, epsilon = 0.005);
        assert_abs_diff_eq!(factor_vs_r0(10.0, 1.0, 2.0).unwrap(), 0.26, epsilon = 0.005);
        assert_abs_diff_eq!(factor_vs_r0(10.0, 1.0, 1e-9).unwrap(), 1.0 - (-1.0f64).exp(), epsilon = 1e-6);
        assert!(factor_vs_r0(10.0, 1.0, 10.0).is_err());
        assert!(factor_vs_r0(10.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn household_limits() {
        for (a, want) in [(2, 0.393), (3, 0.283), (4, 0.221)] {
            assert_abs_diff_eq!(household_factor(0.0, a).unwrap(), want, epsilon = 0.001);
        }
        assert_eq!(household_factor(0.7, 1).unwrap(), greedy_factor(0.7).unwrap());
        assert_abs_diff_eq!(household_lambda(0.1, 10.0), 0.69351, epsilon = 1e-5);
    }

    #[test]
    fn household_profile_counts_external_edges() {
        let mut b = ProbGraph::builder(4, false);
        b.edge(0, 1, 0.9).edge(1, 2, 0.1).edge(2, 3, 0.9).edge(0, 3, 0.2);
        let g = b.build().unwrap();
        let prof = household_profile(&g, &[vec![0, 1], vec![2, 3]]);
        assert_abs_diff_eq!(prof[0], effective_degree(0.2, 2.0), epsilon = 1e-15);
        assert_abs_diff_eq!(prof[1], effective_degree(0.2, 2.0), epsilon = 1e-15);
    }

    #[test]
    fn replicate_counts() {
        assert_eq!(recommended_replicates(100.0, 3, 10, 5.0, 0.05).unwrap(), 1419);
        let scale_free = recommended_replicates(100.0, 3, 10, 100.0, 0.05).unwrap();
        assert_eq!(scale_free, ((1200f64).ln() / 2.0).ceil() as u64);
        let a = recommended_replicates(50.0, 4, 20, 1.0, 0.1).unwrap() as f64;
        let b = recommended_replicates(50.0, 4, 20, 2.0, 0.1).unwrap() as f64;
        assert!((a / b - 4.0).abs() < 0.01);
        assert!(recommended_replicates(1.0, 1, 1, 0.0, 0.1).is_err());
        assert!(recommended_replicates(1.0, 1, 1, 0.1, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn phi_in_unit_interval_and_decreasing(a in 0.0f64..50.0, b in 0.0f64..50.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let (plo, phi_hi) = (phi(lo).unwrap(), phi(hi).unwrap());
            prop_assert!(plo > 0.0 && plo <= 1.0);
            if hi - lo > 1e-9 {
                prop_assert!(phi_hi < plo);
            }
            prop_assert!(greedy_factor(lo).unwrap() <= 1.0 - (-1.0f64).exp() + 1e-15);
        }

        #[test]
        fn effective_degree_monotone(p in 0.0f64..0.99, dp in 0.0f64..0.01, d in 0.0f64..40.0, dd in 0.0f64..5.0) {
            prop_assert!(effective_degree(p + dp, d) >= effective_degree(p, d));
            prop_assert!(effective_degree(p, d + dd) >= effective_degree(p, d));
        }

        #[test]
        fn sir_degree_nonincreasing_in_gamma(p in 0.001f64..0.3, d in 1.0f64..30.0, g1 in 0.05f64..1.0, g2 in 0.05f64..1.0) {
            let (lo, hi) = if g1 < g2 { (g1, g2) } else { (g2, g1) };
            prop_assert!(effective_degree_sir_raw(p, d, hi) <= effective_degree_sir_raw(p, d, lo) + 1e-12);
        }

        #[test]
        fn optimum_dominates_every_threshold(lambdas in proptest::collection::vec(0.0f64..10.0, 1..40), k in 1usize..30) {
            let p = EffectiveDegreeProfile { lambdas, kind: ProfileKind::IndependentCascade };
            let r = optimize_threshold(&p, k).unwrap();
            for row in &r.table {
                prop_assert!(r.factor >= row.factor);
            }
            prop_assert!(r.factor <= 1.0 - (-1.0f64).exp());
            prop_assert!(r.factor >= 0.0);
        }

        #[test]
        fn closed_form_decreasing(r0 in 0.1f64..3.0, dr in 0.01f64..1.0, s in 1.0f64..3.0, ds in 0.01f64..1.0) {
            let base = factor_vs_r0(10.0, s, r0).unwrap();
            prop_assert!(factor_vs_r0(10.0, s, r0 + dr).unwrap() <= base);
            prop_assert!(factor_vs_r0(10.0, s + ds, r0).unwrap() <= base);
        }
    }
}
