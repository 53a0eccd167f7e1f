use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{NodeId, ProbGraph};
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphModel {
    /// Uniform random graph with exactly `round(n * avg_degree / 2)` edges.
    ErdosRenyi,
    /// Ring lattice of degree `avg_degree` (rounded to even) with each lattice
    /// edge rewired with probability `rewire`.
    WattsStrogatz { rewire: f64 },
    /// Preferential attachment; `attach` defaults to `round(avg_degree / 2)`.
    BarabasiAlbert { attach: Option<usize> },
}

impl GraphModel {
    pub const DEFAULT_WS_REWIRE: f64 = 0.1;

    pub fn watts_strogatz() -> Self {
        GraphModel::WattsStrogatz { rewire: Self::DEFAULT_WS_REWIRE }
    }

    pub fn barabasi_albert() -> Self {
        GraphModel::BarabasiAlbert { attach: None }
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            GraphModel::ErdosRenyi => "er",
            GraphModel::WattsStrogatz { .. } => "ws",
            GraphModel::BarabasiAlbert { .. } => "ba",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub model: GraphModel,
    pub n: usize,
    pub avg_degree: f64,
    /// Target basic reproduction number; every arc gets `p = r0 / avg_degree`.
    pub r0: f64,
    pub rng_seed: u64,
}

impl GenConfig {
    pub fn edge_probability(&self) -> f64 {
        self.r0 / self.avg_degree
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config(format!("n must be at least 2, got {}", self.n)));
        }
        if !(self.avg_degree > 0.0) || self.avg_degree >= self.n as f64 {
            return Err(Error::config(format!("average degree {} must lie in (0, n = {})", self.avg_degree, self.n)));
        }
        if !(self.r0 >= 0.0) || !self.r0.is_finite() {
            return Err(Error::config(format!("R0 must be finite and non-negative, got {}", self.r0)));
        }
        let p = self.edge_probability();
        if p > 1.0 {
            return Err(Error::InvalidProbability {
                value: p,
                context: format!("R0 / avg_degree = {} / {}", self.r0, self.avg_degree),
            });
        }
        if let GraphModel::WattsStrogatz { rewire } = self.model {
            if !(0.0..=1.0).contains(&rewire) {
                return Err(Error::config(format!("rewiring probability {rewire} not in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Generates a random undirected contact graph with uniform edge probability
/// `r0 / avg_degree`. The output is a pure function of the configuration.
pub fn generate(config: &GenConfig) -> Result<ProbGraph> {
    config.validate()?;
    let mut rng = rng::seeded(config.rng_seed);
    let edges = match config.model {
        GraphModel::ErdosRenyi => erdos_renyi(config.n, config.avg_degree, &mut rng)?,
        GraphModel::WattsStrogatz { rewire } => watts_strogatz(config.n, config.avg_degree, rewire, &mut rng)?,
        GraphModel::BarabasiAlbert { attach } => {
            let m = attach.unwrap_or_else(|| (config.avg_degree / 2.0).round().max(1.0) as usize);
            barabasi_albert(config.n, m, &mut rng)?
        }
    };
    let p = config.edge_probability();
    let mut b = ProbGraph::builder(config.n, false);
    for (u, v) in edges {
        b.edge(u, v, p);
    }
    b.build()
}

/// Picks `max(1, round(fraction * n))` distinct seed nodes.
pub fn random_seed_set(n: usize, fraction: f64, rng_seed: u64) -> Vec<NodeId> {
    let count = ((fraction * n as f64).round() as usize).clamp(1, n.max(1));
    let mut rng = rng::seeded(rng_seed ^ 0x5eed_5eed_5eed_5eed);
    let mut nodes: Vec<NodeId> = (0..n).collect();
    let (picked, _) = nodes.partial_shuffle(&mut rng, count);
    let mut seeds = picked.to_vec();
    seeds.sort_unstable();
    seeds
}

fn erdos_renyi(n: usize, avg_degree: f64, rng: &mut impl Rng) -> Result<Vec<(NodeId, NodeId)>> {
    let max_edges = n * (n - 1) / 2;
    let m = (n as f64 * avg_degree / 2.0).round() as usize;
    if m > max_edges {
        return Err(Error::config(format!("{m} edges requested but only {max_edges} possible")));
    }
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if seen.insert(e) {
            edges.push(e);
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

fn watts_strogatz(n: usize, avg_degree: f64, rewire: f64, rng: &mut impl Rng) -> Result<Vec<(NodeId, NodeId)>> {
    let half = (avg_degree / 2.0).round() as usize;
    if half == 0 || 2 * half >= n {
        return Err(Error::config(format!("ring lattice degree {} is not achievable with n = {n}", 2 * half)));
    }
    let mut adj: Vec<BTreeSet<NodeId>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    for j in 1..=half {
        for u in 0..n {
            let v = (u + j) % n;
            if !adj[u].contains(&v) || rng.gen::<f64>() >= rewire {
                continue;
            }
            if adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    Ok(adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v))).collect())
}

fn barabasi_albert(n: usize, m: usize, rng: &mut impl Rng) -> Result<Vec<(NodeId, NodeId)>> {
    if m == 0 || m >= n {
        return Err(Error::config(format!("attachment count {m} must lie in [1, n = {n})")));
    }
    let mut edges = Vec::new();
    // endpoint multiset: each node appears once per incident edge
    let mut pool: Vec<NodeId> = Vec::new();
    for u in 0..=m {
        for v in (u + 1)..=m {
            edges.push((u, v));
            pool.push(u);
            pool.push(v);
        }
    }
    let mut targets = BTreeSet::new();
    for v in (m + 1)..n {
        targets.clear();
        while targets.len() < m {
            targets.insert(pool[rng.gen_range(0..pool.len())]);
        }
        for &t in &targets {
            edges.push((t, v));
            pool.push(t);
            pool.push(v);
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(model: GraphModel, n: usize, d: f64, r0: f64) -> GenConfig {
        GenConfig { model, n, avg_degree: d, r0, rng_seed: 7 }
    }

    #[test]
    fn er_uniform_probability() {
        let g = generate(&cfg(GraphModel::ErdosRenyi, 100, 10.0, 1.0)).unwrap();
        assert_eq!(g.arc_count(), 1000);
        assert!(g.arcs().iter().all(|a| a.p == 0.1));
        assert!(!g.is_directed());
    }

    #[test]
    fn ws_has_near_uniform_degrees() {
        let g = generate(&cfg(GraphModel::watts_strogatz(), 500, 10.0, 1.0)).unwrap();
        assert_eq!(g.arc_count(), 500 * 10);
        let deg = g.degrees();
        let max = *deg.iter().max().unwrap();
        assert!(max <= 20, "max degree {max}");
        let zero_rewire = generate(&cfg(GraphModel::WattsStrogatz { rewire: 0.0 }, 50, 4.0, 1.0)).unwrap();
        assert!(zero_rewire.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn ba_degree_distribution_is_skewed() {
        let c = GenConfig {
            model: GraphModel::BarabasiAlbert { attach: Some(5) },
            n: 1000,
            avg_degree: 10.0,
            r0: 1.0,
            rng_seed: 3,
        };
        let g = generate(&c).unwrap();
        let deg = g.degrees();
        let mean = deg.iter().sum::<usize>() as f64 / deg.len() as f64;
        let max = *deg.iter().max().unwrap() as f64;
        assert!((mean - 10.0).abs() < 0.2, "mean {mean}");
        assert!(max / mean > 2.0, "skew {}", max / mean);
        assert!(deg.iter().all(|&d| d >= 5));
    }

    #[test]
    fn same_seed_same_graph() {
        for model in [GraphModel::ErdosRenyi, GraphModel::watts_strogatz(), GraphModel::barabasi_albert()] {
            let a = generate(&cfg(model, 300, 8.0, 1.5)).unwrap();
            let b = generate(&cfg(model, 300, 8.0, 1.5)).unwrap();
            assert_eq!(a, b);
            let mut other = cfg(model, 300, 8.0, 1.5);
            other.rng_seed = 8;
            assert_ne!(a.arcs(), generate(&other).unwrap().arcs());
        }
    }

    #[test]
    fn invalid_configs() {
        assert!(matches!(
            generate(&cfg(GraphModel::ErdosRenyi, 100, 10.0, 11.0)),
            Err(Error::InvalidProbability { .. })
        ));
        assert!(matches!(generate(&cfg(GraphModel::ErdosRenyi, 10, 12.0, 1.0)), Err(Error::Config(_))));
        assert!(matches!(generate(&cfg(GraphModel::ErdosRenyi, 1, 0.5, 0.1)), Err(Error::Config(_))));
        assert!(matches!(generate(&cfg(GraphModel::watts_strogatz(), 10, 9.5, 1.0)), Err(Error::Config(_))));
    }

    #[test]
    fn seed_sets() {
        let s = random_seed_set(1000, 0.01, 1);
        assert_eq!(s.len(), 10);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(random_seed_set(10, 0.0, 1).len(), 1);
        // picks are spread over the id range, not the first ids
        let hits = (0..20).filter(|&seed| random_seed_set(1000, 0.01, seed) != (0..10).collect::<Vec<_>>()).count();
        assert_eq!(hits, 20);
        assert!(random_seed_set(1000, 0.01, 1).iter().any(|&u| u >= 100));
    }
}
