use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::ProbGraph;
use crate::rng;

/// Non-submodularity witness. Seed `0` reaches `1` and `2`; both of them reach
/// `3` and `4`; every arc is certain. Immunizing `1` or `2` alone saves only
/// that node, immunizing both saves all four.
pub fn counterexample_a() -> ProbGraph {
    let mut b = ProbGraph::builder(5, true);
    b.edge(0, 1, 1.0).edge(0, 2, 1.0).edge(1, 3, 1.0).edge(2, 3, 1.0).edge(1, 4, 1.0).edge(2, 4, 1.0).seed(0);
    b.build().expect("fixture is valid")
}

/// Non-supermodularity witness: the certain path `0 -> 1 -> 2` with node `2`
/// feeding `a` further nodes `3..3+a`.
pub fn counterexample_b(a: usize) -> ProbGraph {
    let mut b = ProbGraph::builder(3 + a, true);
    b.edge(0, 1, 1.0).edge(1, 2, 1.0).seed(0);
    for v in 3..3 + a {
        b.edge(2, v, 1.0);
    }
    b.build().expect("fixture is valid")
}

/// Random directed instance with `n` nodes, `m` distinct arcs whose
/// probabilities are drawn from `probabilities`, and node 0 as the seed.
pub fn random_instance(n: usize, m: usize, probabilities: &[f64], rng_seed: u64) -> Result<ProbGraph> {
    if n < 2 || m > n * (n - 1) || probabilities.is_empty() {
        return Err(Error::config(format!("cannot place {m} arcs on {n} nodes")));
    }
    let mut rng = rng::seeded(rng_seed);
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut b = ProbGraph::builder(n, true);
    for &(u, v) in &pairs[..m] {
        b.edge(u, v, probabilities[rng.gen_range(0..probabilities.len())]);
    }
    b.seed(0);
    b.build()
}
