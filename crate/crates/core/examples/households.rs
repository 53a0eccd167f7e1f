//! Strong ties inside households, weaker ties outside. Bounds computed per
//! household depend only on the external contacts.

use netimmune::bounds::{household_factor, household_lambda, household_profile};
use netimmune::graph::{build_households, generate, household_partition, GenConfig, GraphModel, HouseholdSpec};

fn main() -> netimmune::Result<()> {
    println!("limit of the household factor as external contacts vanish");
    for a in [1, 2, 3, 4] {
        println!("  size {a}: {:.4}", household_factor(0.0, a)?);
    }

    let n = 600;
    let base = generate(&GenConfig { model: GraphModel::ErdosRenyi, n, avg_degree: 4.0, r0: 1.0, rng_seed: 9 })?;
    for size in [2, 3, 4] {
        let spec = HouseholdSpec { size, strength: 4.0, r0: 1.5 };
        let g = build_households(&base, &spec)?;
        let lambdas = household_profile(&g, &household_partition(n, size));
        let worst = lambdas.iter().copied().fold(0.0, f64::max);
        println!(
            "size {size}: mean expected degree {:.3}, largest household lambda {:.3}, factor {:.4}",
            g.mean_expected_degree(),
            worst,
            household_factor(worst, size)?
        );
    }
    println!("single household with 3 external contacts at p = 0.05: lambda {:.4}", household_lambda(0.05, 3.0));
    Ok(())
}
