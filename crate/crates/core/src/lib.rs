//! Choosing whom to immunize against an outbreak spreading over a
//! probabilistic contact network.
//!
//! The outbreak is an independent cascade (or an SIR process emulated as one)
//! from a seed set. Immunizing nodes saves the utility of everything that
//! would have been infected and is no longer reachable. The saved utility is
//! monotone but neither submodular nor supermodular, so greedy selection is
//! paired with [`bounds`], which turns the graph's effective degrees into a
//! data-dependent approximation factor, and with [`oracle`], which computes
//! everything exactly on tiny instances.
//!
//! ```
//! use netimmune::bounds::{optimize_threshold, EffectiveDegreeProfile};
//! use netimmune::cascade::{CascadeModel, EstimatorConfig};
//! use netimmune::graph::{generate, GenConfig, GraphModel};
//! use netimmune::immunize::{greedy, node_groups, MonteCarloEvaluator};
//!
//! let cfg = GenConfig { model: GraphModel::watts_strogatz(), n: 200, avg_degree: 6.0, r0: 1.2, rng_seed: 7 };
//! let g = generate(&cfg).unwrap().with_seeds(&[0, 1]).unwrap();
//! let report = optimize_threshold(&EffectiveDegreeProfile::ic(&g), 5).unwrap();
//! let eval = MonteCarloEvaluator::new(CascadeModel::IndependentCascade, EstimatorConfig { replicates: 200, master_seed: 1 });
//! let picked = greedy(&g, &node_groups(&g), 5, &eval, false).unwrap();
//! assert_eq!(picked.steps.len(), 5);
//! assert!(report.factor > 0.0 && report.factor < 1.0);
//! ```

// NaN must fail range checks, so negated comparisons are deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cascade;
pub mod cli;
pub mod graph;
pub mod immunize;
pub mod oracle;

mod error;
mod rng;

pub use error::{Error, Result};
