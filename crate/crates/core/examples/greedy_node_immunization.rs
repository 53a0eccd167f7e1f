//! Greedy choice of nodes to immunize, scored by Monte Carlo simulation.

use netimmune::bounds::{optimize_threshold, EffectiveDegreeProfile};
use netimmune::cascade::{estimate_pi, estimate_sigma, CascadeModel, EstimatorConfig, Intervention};
use netimmune::graph::{generate, random_seed_set, GenConfig, GraphModel};
use netimmune::immunize::{greedy, node_groups, MonteCarloEvaluator};

fn main() -> netimmune::Result<()> {
    let n = 500;
    let g = generate(&GenConfig { model: GraphModel::ErdosRenyi, n, avg_degree: 8.0, r0: 1.6, rng_seed: 42 })?;
    let g = g.with_seeds(&random_seed_set(n, 0.01, 42))?;
    let model = CascadeModel::IndependentCascade;
    let cfg = EstimatorConfig { replicates: 1000, master_seed: 7 };

    let sigma = estimate_sigma(&g, &model, &cfg)?;
    println!("outbreak seeds {:?}, expected infections {:.1} ± {:.1}", g.seeds(), sigma.mean, sigma.stderr);

    let k = 10;
    let selection = greedy(&g, &node_groups(&g), k, &MonteCarloEvaluator::new(model.clone(), cfg), false)?;
    for (i, step) in selection.steps.iter().enumerate() {
        println!(
            "  pick {:>2}: node {:>3}  gain {:>6.2} ± {:.2}",
            i + 1,
            step.group_id,
            step.gain.mean,
            step.gain.stderr
        );
    }
    let chosen = selection.group_ids();
    let fresh = EstimatorConfig { replicates: 5000, master_seed: 99 };
    let saved = estimate_pi(&g, &model, Intervention::Nodes(&chosen), &fresh)?;
    println!("saved on fresh samples: {:.1} ± {:.1}", saved.mean, saved.stderr);

    let bound = optimize_threshold(&EffectiveDegreeProfile::ic(&g), k)?;
    println!("guaranteed fraction of the optimum: {:.3}", bound.factor);
    Ok(())
}
