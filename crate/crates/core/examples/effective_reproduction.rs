//! Partial immunity from earlier waves: dropping already-immune nodes yields
//! a smaller graph whose mean expected degree is the effective reproduction
//! number, and whose bound is better.

use netimmune::bounds::{optimize_threshold, EffectiveDegreeProfile};
use netimmune::graph::{generate, thin_by_susceptibility, GenConfig, GraphModel};

fn main() -> netimmune::Result<()> {
    let n = 3000;
    let g = generate(&GenConfig { model: GraphModel::ErdosRenyi, n, avg_degree: 10.0, r0: 2.0, rng_seed: 12 })?;
    let k = 100;
    let before = optimize_threshold(&EffectiveDegreeProfile::ic(&g), k)?;
    println!("R0 {:.3}, factor {:.4}", g.mean_expected_degree(), before.factor);
    for s in [0.8, 0.5, 0.3] {
        let thinned = thin_by_susceptibility(&g, &vec![s; n], 1)?;
        let after = optimize_threshold(&EffectiveDegreeProfile::ic(&thinned.graph), k)?;
        println!(
            "susceptibility {s}: {} nodes left, effective R {:.3}, factor {:.4}",
            thinned.graph.n(),
            thinned.graph.mean_expected_degree(),
            after.factor
        );
    }
    Ok(())
}
