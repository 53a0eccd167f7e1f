//! Command-line front end and the parameter sweep behind it.
//!
//! Every subcommand writes CSV or `key=value` lines to the given writer and
//! returns an exit code: 0 on success, 2 for usage and validation errors,
//! 3 when an exact computation exceeds its enumeration cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::bounds::{optimize_threshold, recommended_replicates, EffectiveDegreeProfile};
use crate::cascade::{estimate_pi, estimate_sigma, CascadeModel, EstimatorConfig, Intervention, Recovery};
use crate::error::{Error, Result};
use crate::graph::{self, generate, random_seed_set, GenConfig, GraphModel, NodeId, ProbGraph};
use crate::immunize::{
    greedy, load_groups, node_groups, prefix_greedy, Evaluator, Group, MonteCarloEvaluator, Multiset, PrefixMode,
    Selection,
};
use crate::oracle::{self, ExactEvaluator};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum ModelName {
    Er,
    Ws,
    Ba,
}

impl ModelName {
    pub fn graph_model(self) -> GraphModel {
        match self {
            ModelName::Er => GraphModel::ErdosRenyi,
            ModelName::Ws => GraphModel::watts_strogatz(),
            ModelName::Ba => GraphModel::barabasi_albert(),
        }
    }

    fn index(self) -> u64 {
        self as u64
    }
}

/// Inclusive `min:max:step` grid, or a comma-separated list.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [lo, hi, step] = parts[..] else {
                return Err(format!("expected min:max:step, got {s:?}"));
            };
            let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
            if !(step > 0.0) || !(hi >= lo) {
                return Err(format!("grid {s:?} needs step > 0 and max >= min"));
            }
            let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
            // round away accumulated floating-point drift
            Ok(Grid((0..count).map(|i| ((lo + i as f64 * step) * 1e9).round() / 1e9).collect()))
        } else {
            s.split(',').map(num).collect::<std::result::Result<_, _>>().map(Grid)
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "netimmune", version, about = "Network immunization against cascading outbreaks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random graph with uniform edge probability R0 / avg-degree.
    Gen(GenArgs),
    /// Data-dependent approximation factor of a graph.
    Bound(BoundArgs),
    /// Approximation factors over a grid of generated graphs.
    Sweep(SweepArgs),
    /// Greedy immunization.
    Greedy(GreedyArgs),
    /// Monte Carlo spread and saved utility.
    Estimate(EstimateArgs),
    /// Exact optimum on a tiny instance.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    avg_degree: f64,
    #[arg(long)]
    r0: f64,
    /// Watts-Strogatz rewiring probability.
    #[arg(long)]
    rewire: Option<f64>,
    /// Barabasi-Albert edges per new node.
    #[arg(long)]
    attach: Option<usize>,
    /// Fraction of nodes drawn as outbreak seeds.
    #[arg(long, conflicts_with = "seeds")]
    seed_fraction: Option<f64>,
    /// Explicit outbreak seeds.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<NodeId>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Recovery probability; selects the SIR model instead of independent cascade.
    #[arg(long)]
    sir_gamma: Option<f64>,
}

impl ModelArgs {
    fn model(&self) -> CascadeModel {
        self.sir_gamma.map_or(CascadeModel::IndependentCascade, CascadeModel::sir)
    }
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// Bound for removing edges instead of nodes.
    #[arg(long, conflicts_with = "sir_gamma")]
    link: bool,
    #[command(flatten)]
    model: ModelArgs,
    /// Print the full threshold table as CSV.
    #[arg(long)]
    table: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "ws,er,ba")]
    model: Vec<ModelName>,
    #[arg(long, default_value_t = 5000)]
    n: usize,
    #[arg(long, default_value = "10,20,30")]
    avg_degree: Grid,
    #[arg(long, default_value = "0.5:2.0:0.25")]
    r0: Grid,
    #[arg(long, value_delimiter = ',', default_value = "50,100,150,200,250,300")]
    k: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// SIR recovery probabilities; independent cascade when omitted.
    #[arg(long)]
    gamma: Option<Grid>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrefixArg {
    Budgeted,
    Bicriteria,
}

#[derive(Debug, Args)]
struct GreedyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// Candidate groups; singleton node groups when omitted.
    #[arg(long)]
    groups: Option<PathBuf>,
    /// Let a group be chosen more than once.
    #[arg(long)]
    multiset: bool,
    /// Replicates per evaluation; by default enough for 2% of total utility
    /// at 95% confidence across every marginal-gain estimate.
    #[arg(long)]
    replicates: Option<usize>,
    #[command(flatten)]
    model: ModelArgs,
    /// Force nodes with effective degree above this threshold first.
    #[arg(long, conflicts_with_all = ["groups", "multiset"])]
    prefix_lambda: Option<f64>,
    #[arg(long, value_enum, default_value = "budgeted", requires = "prefix_lambda")]
    prefix_mode: PrefixArg,
    /// Exact evaluation by enumeration (tiny independent-cascade graphs only).
    #[arg(long, conflicts_with = "sir_gamma")]
    exact: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Nodes to immunize.
    #[arg(long, value_delimiter = ',', conflicts_with = "groups")]
    remove: Vec<NodeId>,
    #[arg(long, requires = "choose")]
    groups: Option<PathBuf>,
    /// Group ids to immunize; repeat an id to choose it more than once.
    #[arg(long, value_delimiter = ',')]
    choose: Vec<usize>,
    /// Defaults to a count targeting 2% of total utility at 95% confidence.
    #[arg(long)]
    replicates: Option<usize>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fixture {
    CounterexampleA,
    CounterexampleB,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
    fixture: Option<Fixture>,
    /// Size of the fan-out in the second fixture.
    #[arg(long, default_value_t = 3)]
    a: usize,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    k: usize,
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Bound(a) => cmd_bound(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Greedy(a) => cmd_greedy(a, out),
        Command::Estimate(a) => cmd_estimate(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeCap { .. } => 3,
        _ => 2,
    }
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut impl Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
}

fn cmd_gen(a: GenArgs, out: &mut impl Write) -> Result<()> {
    let model = match (a.model, a.rewire, a.attach) {
        (ModelName::Ws, Some(rewire), None) => GraphModel::WattsStrogatz { rewire },
        (ModelName::Ba, None, attach @ Some(_)) => GraphModel::BarabasiAlbert { attach },
        (m, None, None) => m.graph_model(),
        _ => return Err(Error::config("--rewire applies to ws and --attach to ba")),
    };
    let g = generate(&GenConfig { model, n: a.n, avg_degree: a.avg_degree, r0: a.r0, rng_seed: a.seed })?;
    let g = match a.seed_fraction {
        Some(f) if !(f > 0.0 && f <= 1.0) => return Err(Error::config(format!("seed fraction {f} not in (0, 1]"))),
        Some(f) => g.with_seeds(&random_seed_set(a.n, f, a.seed))?,
        None if !a.seeds.is_empty() => g.with_seeds(&a.seeds)?,
        None => g,
    };
    emit(&graph::write(&g), a.out.as_ref(), out)
}

fn cmd_bound(a: BoundArgs, out: &mut impl Write) -> Result<()> {
    let g = graph::load(&a.graph)?;
    let profile = if a.link {
        EffectiveDegreeProfile::link(&g)
    } else {
        let model = a.model.model();
        model.validate(&g)?;
        EffectiveDegreeProfile::for_model(&g, &model)
    };
    let report = optimize_threshold(&profile, a.k)?;
    if a.table {
        out.write_all(report.to_csv().as_bytes())?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(())
}

/// Parameters of a factor sweep over generated graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub models: Vec<ModelName>,
    pub n: usize,
    pub avg_degrees: Vec<f64>,
    pub r0: Vec<f64>,
    pub k: Vec<usize>,
    pub reps: usize,
    /// SIR recovery probabilities; `None` runs independent cascade. Each SIR
    /// run uses transmission probability `R0 * gamma / avg_degree`.
    pub gammas: Option<Vec<f64>>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Graph model, suffixed with `-sir-<gamma>` for SIR runs.
    pub model: String,
    pub n: usize,
    pub avg_degree: f64,
    pub r0: f64,
    pub k: usize,
    pub rep: usize,
    pub factor: f64,
    pub lambda_prime: f64,
    pub n_s: usize,
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        let empty = self.models.is_empty()
            || self.avg_degrees.is_empty()
            || self.r0.is_empty()
            || self.k.is_empty()
            || self.gammas.as_ref().is_some_and(Vec::is_empty);
        if empty {
            return Err(Error::config("sweep grids must be non-empty"));
        }
        if self.reps == 0 {
            return Err(Error::config("at least one repetition is required"));
        }
        if let Some(&k) = self.k.iter().find(|&&k| k == 0) {
            return Err(Error::config(format!("budget k={k} must be at least 1")));
        }
        Ok(())
    }

    /// The topology depends on the model, the average degree and the
    /// repetition only; R0, k and gamma vary on top of it.
    fn graph_seed(&self, model: ModelName, avg_degree: f64, rep: usize) -> u64 {
        let s = rng::derive_seed(self.seed, model.index());
        let s = rng::derive_seed(s, avg_degree.to_bits());
        rng::derive_seed(s, rep as u64)
    }
}

/// Runs every cell of the sweep in parallel. Rows come back sorted by
/// model, average degree, R0, k and repetition.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let cells: Vec<(ModelName, f64, usize)> = cfg
        .models
        .iter()
        .flat_map(|&m| cfg.avg_degrees.iter().flat_map(move |&d| (0..cfg.reps).map(move |rep| (m, d, rep))))
        .collect();
    let per_cell = cells
        .par_iter()
        .map(|&(model, avg_degree, rep)| {
            let topology = generate(&GenConfig {
                model: model.graph_model(),
                n: cfg.n,
                avg_degree,
                r0: cfg.r0[0],
                rng_seed: cfg.graph_seed(model, avg_degree, rep),
            })?;
            let mut rows = Vec::new();
            for &r0 in &cfg.r0 {
                // under SIR the transmission probability is R0 * gamma / avg_degree,
                // so every gamma is compared at the same R0
                let profiles: Vec<(String, EffectiveDegreeProfile)> = match &cfg.gammas {
                    None => {
                        let g = topology.with_uniform_probability(r0 / avg_degree)?;
                        vec![(model.graph_model().short_name().to_string(), EffectiveDegreeProfile::ic(&g))]
                    }
                    Some(gammas) => gammas
                        .iter()
                        .map(|&gamma| {
                            let g = topology.with_uniform_probability(r0 * gamma / avg_degree)?;
                            let recovery = Recovery::Uniform(gamma);
                            CascadeModel::Sir(recovery.clone()).validate(&g)?;
                            let name = format!("{}-sir-{gamma}", model.graph_model().short_name());
                            Ok((name, EffectiveDegreeProfile::sir(&g, &recovery)))
                        })
                        .collect::<Result<_>>()?,
                };
                for (name, profile) in &profiles {
                    for &k in &cfg.k {
                        let report = optimize_threshold(profile, k)?;
                        rows.push(SweepRow {
                            model: name.clone(),
                            n: cfg.n,
                            avg_degree,
                            r0,
                            k,
                            rep,
                            factor: report.factor,
                            lambda_prime: report.lambda_prime,
                            n_s: report.n_s,
                        });
                    }
                }
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<SweepRow> = per_cell.into_iter().flatten().collect();
    rows.sort_by(|a, b| {
        a.model
            .cmp(&b.model)
            .then(a.avg_degree.total_cmp(&b.avg_degree))
            .then(a.r0.total_cmp(&b.r0))
            .then(a.k.cmp(&b.k))
            .then(a.rep.cmp(&b.rep))
    });
    Ok(rows)
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 { values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    (mean, var.sqrt())
}

/// CSV with one row per repetition followed by `mean` and `std` rows for
/// each (model, average degree, R0, k) cell.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut records = Vec::new();
    for cell in rows.chunk_by(|a, b| a.model == b.model && a.avg_degree == b.avg_degree && a.r0 == b.r0 && a.k == b.k) {
        let head = &cell[0];
        let key = |rep: String, factor: f64, lambda_prime: f64, n_s: String| {
            vec![
                head.model.clone(),
                head.n.to_string(),
                head.avg_degree.to_string(),
                head.r0.to_string(),
                head.k.to_string(),
                rep,
                factor.to_string(),
                lambda_prime.to_string(),
                n_s,
            ]
        };
        for r in cell {
            records.push(key(r.rep.to_string(), r.factor, r.lambda_prime, r.n_s.to_string()));
        }
        let column = |f: fn(&SweepRow) -> f64| mean_std(&cell.iter().map(f).collect::<Vec<_>>());
        let (f_mean, f_std) = column(|r| r.factor);
        let (l_mean, l_std) = column(|r| r.lambda_prime);
        let (n_mean, n_std) = column(|r| r.n_s as f64);
        records.push(key("mean".into(), f_mean, l_mean, n_mean.to_string()));
        records.push(key("std".into(), f_std, l_std, n_std.to_string()));
    }
    csv_text(&["model", "n", "avg_degree", "R0", "k", "rep", "factor", "lambda_prime", "n_s"], records)
}

fn cmd_sweep(a: SweepArgs, out: &mut impl Write) -> Result<()> {
    let cfg = SweepConfig {
        models: a.model,
        n: a.n,
        avg_degrees: a.avg_degree.0,
        r0: a.r0.0,
        k: a.k,
        reps: a.reps,
        gammas: a.gamma.map(|g| g.0),
        seed: a.seed,
    };
    let rows = run_sweep(&cfg)?;
    emit(&sweep_csv(&rows), a.out.as_ref(), out)
}

fn selection_csv(sel: &Selection) -> String {
    let mut records: Vec<Vec<String>> = sel
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            vec![
                (i + 1).to_string(),
                s.group_id.to_string(),
                s.multiplicity.to_string(),
                s.forced.to_string(),
                s.gain.mean.to_string(),
                s.gain.stderr.to_string(),
                s.value.mean.to_string(),
                s.value.stderr.to_string(),
            ]
        })
        .collect();
    if let Some(v) = sel.value() {
        let mut total = vec!["total".to_string()];
        total.extend(std::iter::repeat_n(String::new(), 5));
        total.extend([v.mean.to_string(), v.stderr.to_string()]);
        records.push(total);
    }
    csv_text(&["step", "group_id", "multiplicity", "forced", "gain", "gain_stderr", "pi", "pi_stderr"], records)
}

fn replicates_or_default(given: Option<usize>, g: &ProbGraph, k: usize, candidates: usize) -> Result<usize> {
    match given {
        Some(r) => Ok(r),
        None => {
            let total = g.total_utility();
            if total <= 0.0 {
                return Ok(1);
            }
            let r = recommended_replicates(total, k, candidates, 0.02 * total, 0.05)?;
            Ok(r as usize)
        }
    }
}

fn cmd_greedy(a: GreedyArgs, out: &mut impl Write) -> Result<()> {
    let g = graph::load(&a.graph)?;
    let model = a.model.model();
    model.validate(&g)?;
    let groups: Vec<Group> = match &a.groups {
        Some(path) => load_groups(path)?,
        None => node_groups(&g),
    };
    let replicates = replicates_or_default(a.replicates, &g, a.k, groups.len())?;
    let mc = MonteCarloEvaluator::new(model.clone(), EstimatorConfig { replicates, master_seed: a.seed });
    let sel = if a.exact {
        run_greedy(&g, &groups, &a, &model, &ExactEvaluator::default())?
    } else {
        run_greedy(&g, &groups, &a, &model, &mc)?
    };
    emit(&selection_csv(&sel), a.out.as_ref(), out)
}

fn run_greedy(
    g: &ProbGraph,
    groups: &[Group],
    a: &GreedyArgs,
    model: &CascadeModel,
    eval: &impl Evaluator,
) -> Result<Selection> {
    match a.prefix_lambda {
        Some(lambda_prime) => {
            let mode = match a.prefix_mode {
                PrefixArg::Budgeted => PrefixMode::Budgeted,
                PrefixArg::Bicriteria => PrefixMode::Bicriteria,
            };
            prefix_greedy(g, a.k, lambda_prime, model, eval, mode)
        }
        None => greedy(g, groups, a.k, eval, a.multiset),
    }
}

fn cmd_estimate(a: EstimateArgs, out: &mut impl Write) -> Result<()> {
    let g = graph::load(&a.graph)?;
    let model = a.model.model();
    let replicates = replicates_or_default(a.replicates, &g, 1, 1)?;
    let cfg = EstimatorConfig { replicates, master_seed: a.seed };
    let sigma = estimate_sigma(&g, &model, &cfg)?;
    let pi = match &a.groups {
        Some(path) => {
            let groups = load_groups(path)?;
            let mut chosen = Multiset::new();
            for id in &a.choose {
                let idx = groups
                    .iter()
                    .position(|gr| gr.id() == *id)
                    .ok_or_else(|| Error::config(format!("no group with id {id}")))?;
                chosen.add(idx);
            }
            estimate_pi(&g, &model, Intervention::Groups { groups: &groups, chosen: &chosen }, &cfg)?
        }
        None => estimate_pi(&g, &model, Intervention::Nodes(&a.remove), &cfg)?,
    };
    let row = |name: &str, r: crate::cascade::EstimateResult| {
        vec![
            name.to_string(),
            r.mean.to_string(),
            r.stderr.to_string(),
            r.replicates.to_string(),
            r.master_seed.to_string(),
        ]
    };
    let text = csv_text(&["quantity", "mean", "stderr", "replicates", "seed"], [row("sigma", sigma), row("pi", pi)]);
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn format_set(nodes: &[NodeId]) -> String {
    let items: Vec<String> = nodes.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn cmd_oracle(a: OracleArgs, out: &mut impl Write) -> Result<()> {
    let g = match (a.fixture, &a.graph) {
        (Some(Fixture::CounterexampleA), _) => oracle::counterexample_a(),
        (Some(Fixture::CounterexampleB), _) => oracle::counterexample_b(a.a),
        (None, Some(path)) => graph::load(path)?,
        (None, None) => return Err(Error::config("either --fixture or --graph is required")),
    };
    let (best, value) = oracle::exhaustive_opt(&g, a.k)?;
    writeln!(out, "S*={}", format_set(&best))?;
    writeln!(out, "pi={value}")?;
    let k = a.k.min(node_groups(&g).len());
    if k > 0 {
        let sel = greedy(&g, &node_groups(&g), k, &ExactEvaluator::default(), false)?;
        let mut picked = sel.group_ids();
        picked.sort_unstable();
        writeln!(out, "greedy={}", format_set(&picked))?;
        writeln!(out, "greedy_pi={}", sel.value().map_or(0.0, |v| v.mean))?;
    }
    let lambda = EffectiveDegreeProfile::ic(&g).max();
    writeln!(out, "lambda={lambda}")?;
    writeln!(out, "factor={}", crate::bounds::greedy_factor(lambda)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!("0.5:2.0:0.25".parse::<Grid>().unwrap().0, vec![0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]);
        assert_eq!("0.1:0.3:0.1".parse::<Grid>().unwrap().0, vec![0.1, 0.2, 0.3]);
        assert_eq!("10,20".parse::<Grid>().unwrap().0, vec![10.0, 20.0]);
        assert!("1:0:0.5".parse::<Grid>().is_err());
        assert!("1:2".parse::<Grid>().is_err());
        assert!("x".parse::<Grid>().is_err());
    }

    #[test]
    fn sweep_rows_sorted_and_aggregated() {
        let cfg = SweepConfig {
            models: vec![ModelName::Ws],
            n: 300,
            avg_degrees: vec![10.0],
            r0: vec![0.5, 1.0],
            k: vec![5, 20],
            reps: 3,
            gammas: None,
            seed: 4,
        };
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 2 * 2 * 3);
        let csv = sweep_csv(&rows);
        assert_eq!(csv.lines().count(), 1 + 12 + 2 * 4);
        assert!(csv.lines().nth(4).unwrap().contains(",mean,"));
        assert_eq!(rows, run_sweep(&cfg).unwrap());
    }

    #[test]
    fn invalid_sweep() {
        let cfg = SweepConfig {
            models: vec![],
            n: 100,
            avg_degrees: vec![10.0],
            r0: vec![1.0],
            k: vec![5],
            reps: 1,
            gammas: None,
            seed: 0,
        };
        assert!(run_sweep(&cfg).is_err());
    }
}
