//! Agreement between independent computations of the same quantity:
//! exact enumeration, Monte Carlo, graph transformations and closed forms.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use netimmune::bounds::{effective_degree, effective_degree_ic, greedy_factor, EffectiveDegreeProfile};
use netimmune::cascade::{estimate_pi, estimate_sigma, saved_utility, CascadeModel, EstimatorConfig, Intervention};
use netimmune::graph::{
    build_households, build_layered, generate, split_for_link_immunization, GenConfig, GraphModel, HouseholdSpec,
    LayeredSpec, ProbGraph, UtilityMode,
};
use netimmune::immunize::{greedy, node_groups};
use netimmune::oracle::{
    exact_pi, exact_sigma, exhaustive_opt, random_instance, Enumeration, ExactEvaluator, OracleLimits,
};

fn small_undirected() -> ProbGraph {
    let mut b = ProbGraph::builder(5, false);
    b.edge(0, 1, 0.6).edge(0, 2, 0.3).edge(1, 3, 0.5).edge(2, 3, 0.7).edge(3, 4, 0.4).utility(4, 2.5).seed(0);
    b.build().unwrap()
}

#[test]
fn link_split_preserves_spread_on_original_nodes() {
    for g in [small_undirected(), random_instance(6, 9, &[0.2, 0.5, 0.8], 3).unwrap()] {
        let split = split_for_link_immunization(&g).unwrap();
        // relays carry no utility, so total spread over original nodes is unchanged
        assert_abs_diff_eq!(exact_sigma(&split.graph).unwrap().value, exact_sigma(&g).unwrap().value, epsilon = 1e-12);
        // cutting a link equals deleting that arc from the base graph
        let mut b = ProbGraph::builder(g.n(), true);
        for a in &g.arcs()[1..] {
            b.arc(*a);
        }
        for u in 0..g.n() {
            b.utility(u, g.utility(u));
        }
        for &s in g.seeds() {
            b.seed(s);
        }
        let without = b.build().unwrap();
        let cut = exact_pi(&split.graph, &[split.candidates[0]]).unwrap().value;
        let direct = exact_sigma(&g).unwrap().value - exact_sigma(&without).unwrap().value;
        assert_abs_diff_eq!(cut, direct, epsilon = 1e-12);
    }
}

#[test]
fn exact_sigma_matches_monte_carlo() {
    let g = small_undirected();
    let exact = exact_sigma(&g).unwrap().value;
    let mc =
        estimate_sigma(&g, &CascadeModel::IndependentCascade, &EstimatorConfig { replicates: 20_000, master_seed: 8 })
            .unwrap();
    assert!((mc.mean - exact).abs() <= 4.0 * mc.stderr, "{} vs {exact}", mc.mean);
}

#[test]
fn enumerated_realizations_average_to_exact_pi() {
    let g = random_instance(6, 10, &[0.25, 0.5, 0.75], 12).unwrap();
    let removed = [2, 4];
    let e = Enumeration::new(&g, &OracleLimits::default()).unwrap();
    let mut weighted = 0.0;
    let mut mass = 0.0;
    e.for_each(|prob, sample| {
        weighted += prob * saved_utility(sample, &g, &removed).unwrap();
        mass += prob;
    });
    let exact = exact_pi(&g, &removed).unwrap();
    assert_abs_diff_eq!(weighted, exact.value, epsilon = 1e-12);
    assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(exact.probability_mass, 1.0, epsilon = 1e-12);
}

#[test]
fn layered_copies_keep_base_effective_degree_for_one_step() {
    let g = small_undirected();
    let lg = build_layered(
        &g,
        &LayeredSpec { steps: 1, eps: 0.2, utility_mode: UtilityMode::FinalLayer, temporal_rates: None },
    )
    .unwrap();
    for u in 0..g.n() {
        for layer in 0..=1 {
            let copy = effective_degree_ic(&lg.graph, lg.copy_of(u, layer));
            assert!(copy <= effective_degree_ic(&g, u) + 1e-12);
        }
    }
}

#[test]
fn layered_boundary_and_middle_layers() {
    let g = small_undirected();
    let lg = build_layered(
        &g,
        &LayeredSpec { steps: 3, eps: 0.2, utility_mode: UtilityMode::AnyTime, temporal_rates: None },
    )
    .unwrap();
    for (u, inc) in g.incidence().iter().enumerate() {
        let base = effective_degree_ic(&g, u);
        // collector arcs never count towards a copy's degree
        assert_abs_diff_eq!(effective_degree_ic(&lg.graph, lg.copy_of(u, 0)), base, epsilon = 1e-12);
        assert_abs_diff_eq!(effective_degree_ic(&lg.graph, lg.copy_of(u, 3)), base, epsilon = 1e-12);
        // a middle copy sees its neighbours both one step earlier and one later
        let doubled = effective_degree(inc.max_p, 2.0 * inc.degree as f64);
        for layer in 1..=2 {
            assert_abs_diff_eq!(effective_degree_ic(&lg.graph, lg.copy_of(u, layer)), doubled, epsilon = 1e-12);
        }
    }
}

#[test]
fn households_hit_target_reproduction_number() {
    let base =
        generate(&GenConfig { model: GraphModel::ErdosRenyi, n: 400, avg_degree: 6.0, r0: 1.0, rng_seed: 2 }).unwrap();
    for (size, strength, r0) in [(2, 5.0, 1.5), (3, 3.0, 2.0), (4, 10.0, 0.8), (7, 2.0, 1.2)] {
        let h = build_households(&base, &HouseholdSpec { size, strength, r0 }).unwrap();
        assert_abs_diff_eq!(h.mean_expected_degree(), r0, epsilon = 1e-9);
    }
}

#[test]
fn greedy_estimates_track_exact_values() {
    let g = random_instance(7, 11, &[0.3, 0.6], 21).unwrap();
    let groups = node_groups(&g);
    let eval = netimmune::immunize::MonteCarloEvaluator::new(
        CascadeModel::IndependentCascade,
        EstimatorConfig { replicates: 20_000, master_seed: 5 },
    );
    let sel = greedy(&g, &groups, 2, &eval, false).unwrap();
    let nodes = sel.group_ids();
    let exact = exact_pi(&g, &nodes).unwrap().value;
    let v = sel.value().unwrap();
    assert!((v.mean - exact).abs() <= 4.0 * v.stderr.max(1e-9));
    let again = estimate_pi(
        &g,
        &CascadeModel::IndependentCascade,
        Intervention::Nodes(&nodes),
        &EstimatorConfig { replicates: 20_000, master_seed: 6 },
    )
    .unwrap();
    assert!((again.mean - exact).abs() <= 4.0 * again.stderr.max(1e-9));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exact_greedy_meets_guarantee(seed in 0u64..10_000, n in 5usize..=7, extra in 0usize..=4, k in 1usize..=3) {
        let g = random_instance(n, (n + extra).min(10), &[0.2, 0.5, 0.8], seed).unwrap();
        let factor = greedy_factor(EffectiveDegreeProfile::ic(&g).max()).unwrap();
        let (_, opt) = exhaustive_opt(&g, k).unwrap();
        let sel = greedy(&g, &node_groups(&g), k, &ExactEvaluator::default(), false).unwrap();
        prop_assert!(sel.value().unwrap().mean >= factor * opt - 1e-12);
    }

    #[test]
    fn exact_pi_monotone_in_removed_set(seed in 0u64..10_000, mask in 0u32..64, extra in 0usize..6) {
        let g = random_instance(7, 10, &[0.3, 0.7], seed).unwrap();
        let small: Vec<usize> = (1..7).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let mut large = small.clone();
        if !large.contains(&(extra + 1)) {
            large.push(extra + 1);
        }
        let a = exact_pi(&g, &small).unwrap().value;
        let b = exact_pi(&g, &large).unwrap().value;
        prop_assert!(a <= b + 1e-12);
    }
}
