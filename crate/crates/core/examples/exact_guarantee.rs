//! Exact check of the greedy guarantee on small random graphs: greedy with
//! exact evaluation against the exhaustive optimum.

use netimmune::bounds::{greedy_factor, EffectiveDegreeProfile};
use netimmune::immunize::{greedy, node_groups};
use netimmune::oracle::{exhaustive_opt, random_instance, ExactEvaluator};

fn main() -> netimmune::Result<()> {
    println!("{:>4} {:>2} {:>8} {:>8} {:>8}", "seed", "k", "greedy", "optimum", "bound");
    for seed in 0..8 {
        let g = random_instance(7, 11, &[0.2, 0.5, 0.8], seed)?;
        let factor = greedy_factor(EffectiveDegreeProfile::ic(&g).max())?;
        for k in [1, 2] {
            let (_, opt) = exhaustive_opt(&g, k)?;
            let sel = greedy(&g, &node_groups(&g), k, &ExactEvaluator::default(), false)?;
            let got = sel.value().map_or(0.0, |v| v.mean);
            println!("{seed:>4} {k:>2} {got:>8.4} {opt:>8.4} {:>8.4}", factor * opt);
        }
    }
    Ok(())
}
