//! Offering vaccines to groups whose members accept independently. A group
//! may be picked more than once; each extra offer is a fresh acceptance draw.

use netimmune::cascade::{CascadeModel, EstimatorConfig};
use netimmune::graph::{generate, GenConfig, GraphModel};
use netimmune::immunize::{greedy, Group, MonteCarloEvaluator, Policy};

fn main() -> netimmune::Result<()> {
    let n = 120;
    let g = generate(&GenConfig { model: GraphModel::watts_strogatz(), n, avg_degree: 6.0, r0: 1.8, rng_seed: 6 })?;
    let g = g.with_seeds(&[0])?;
    // six neighbourhoods of 20 consecutive nodes; acceptance falls with distance from the clinic
    let groups: Vec<Group> = (0..6)
        .map(|id| {
            let members: Vec<usize> = (id * 20..(id + 1) * 20).filter(|&u| u != 0).collect();
            let q = vec![0.8 - 0.1 * id as f64; members.len()];
            Group::new(id, members, Policy::Independent { q })
        })
        .collect::<netimmune::Result<_>>()?;

    let eval =
        MonteCarloEvaluator::new(CascadeModel::IndependentCascade, EstimatorConfig { replicates: 400, master_seed: 3 });
    let sel = greedy(&g, &groups, 8, &eval, true)?;
    for step in &sel.steps {
        println!("  offer to group {} (copy {}), gain {:.2}", step.group_id, step.multiplicity, step.gain.mean);
    }
    println!("offers per group: {:?}", sel.multiplicities(&groups));
    Ok(())
}
