//! Waning protection: a vaccinated node loses immunity with probability eps
//! at each step. Unrolling the graph over time turns this into group
//! immunization with leaky chains.

use netimmune::cascade::{CascadeModel, EstimatorConfig};
use netimmune::graph::{build_layered, generate, GenConfig, GraphModel, LayeredSpec, UtilityMode};
use netimmune::immunize::{greedy, MonteCarloEvaluator};

fn main() -> netimmune::Result<()> {
    let g = generate(&GenConfig { model: GraphModel::watts_strogatz(), n: 60, avg_degree: 4.0, r0: 2.0, rng_seed: 3 })?;
    let g = g.with_seeds(&[0])?;
    let eval =
        MonteCarloEvaluator::new(CascadeModel::IndependentCascade, EstimatorConfig { replicates: 400, master_seed: 2 });

    for eps in [0.0, 0.3, 0.7] {
        let spec = LayeredSpec { steps: 4, eps, utility_mode: UtilityMode::AnyTime, temporal_rates: None };
        let lg = build_layered(&g, &spec)?;
        let sel = greedy(&lg.graph, &lg.groups, 5, &eval, false)?;
        let v = sel.value().expect("five picks");
        println!("eps = {eps}: vaccinate {:?}, saved {:.2} ± {:.2}", sel.group_ids(), v.mean, v.stderr);
    }
    Ok(())
}
