//! Saved utility is neither submodular nor supermodular.
//!
//! Two tiny certain-edge graphs, evaluated exactly: on the first, two nodes
//! are worth more together than apart; on the second, less.

use netimmune::oracle::{counterexample_a, counterexample_b, exact_pi};

fn main() -> netimmune::Result<()> {
    let a = counterexample_a();
    println!("graph A: seed 0 -> {{1, 2}} -> {{3, 4}}");
    for set in [&[][..], &[1], &[2], &[1, 2]] {
        println!("  pi({set:?}) = {}", exact_pi(&a, set)?.value);
    }
    println!("  pi({{1,2}}) > pi({{1}}) + pi({{2}}): not submodular");

    let fan_out = 3;
    let b = counterexample_b(fan_out);
    println!("graph B: path 0 -> 1 -> 2, then 2 -> {fan_out} more nodes");
    for set in [&[][..], &[1], &[2], &[1, 2]] {
        println!("  pi({set:?}) = {}", exact_pi(&b, set)?.value);
    }
    println!("  pi({{1,2}}) < pi({{1}}) + pi({{2}}): not supermodular");
    Ok(())
}
