//! Removing contacts instead of people: each link gets a relay node, and
//! immunizing the relay cuts the link.

use netimmune::bounds::{optimize_threshold, EffectiveDegreeProfile};
use netimmune::cascade::{CascadeModel, EstimatorConfig};
use netimmune::graph::{generate, split_for_link_immunization, GenConfig, GraphModel};
use netimmune::immunize::{greedy, Group, MonteCarloEvaluator};

fn main() -> netimmune::Result<()> {
    let g = generate(&GenConfig { model: GraphModel::ErdosRenyi, n: 80, avg_degree: 5.0, r0: 2.5, rng_seed: 8 })?;
    let g = g.with_seeds(&[0, 1])?;
    let split = split_for_link_immunization(&g)?;
    let groups: Vec<Group> = split.candidates.iter().map(|&w| Group::singleton(w)).collect();

    let k = 8;
    let eval =
        MonteCarloEvaluator::new(CascadeModel::IndependentCascade, EstimatorConfig { replicates: 500, master_seed: 4 });
    let sel = greedy(&split.graph, &groups, k, &eval, false)?;
    for step in &sel.steps {
        let arc = g.arcs()[step.group_id - g.n()];
        println!("  cut {} -> {} (p = {:.2}), gain {:.2}", arc.src, arc.dst, arc.p, step.gain.mean);
    }
    let report = optimize_threshold(&EffectiveDegreeProfile::link(&g), k)?;
    println!("link-removal factor at p = {:.2}: {:.4}", g.arcs()[0].p, report.factor);
    Ok(())
}
