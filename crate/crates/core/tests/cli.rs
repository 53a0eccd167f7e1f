use std::path::Path;
use std::process::Command;

use netimmune::cli::run;
use netimmune::graph::{self, ProbGraph};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("netimmune").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn uniform_graph(dir: &Path, p: f64) -> std::path::PathBuf {
    let mut b = ProbGraph::builder(6, false);
    b.edge(0, 1, p).edge(1, 2, p).edge(2, 3, p).edge(3, 4, p).edge(4, 5, p).edge(1, 4, p).seed(0);
    let path = dir.join("g.txt");
    graph::save(&b.build().unwrap(), &path).unwrap();
    path
}

#[test]
fn gen_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ws.txt");
    let args = ["gen", "--model", "ws", "--n", "200", "--avg-degree", "8", "--r0", "1.2", "--seed", "3"];
    let (code, first, _) = invoke(&args);
    assert_eq!(code, 0);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path_str(&path)]);
    assert_eq!(invoke(&with_out).0, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    let g = graph::load(&path).unwrap();
    assert_eq!(g.n(), 200);
    assert!(g.arcs().iter().all(|a| (a.p - 0.15).abs() < 1e-12));
}

#[test]
fn bound_link_at_half() {
    let dir = tempfile::tempdir().unwrap();
    let g = uniform_graph(dir.path(), 0.5);
    let (code, out, _) = invoke(&["bound", "--graph", path_str(&g), "--k", "100", "--link"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains("factor=0.441"), "{out}");
    let (code, table, _) = invoke(&["bound", "--graph", path_str(&g), "--k", "3", "--table"]);
    assert_eq!(code, 0);
    assert!(table.starts_with("i,lambda_prime,n_s,factor\n"));
    assert!(table.lines().last().unwrap().starts_with("best,"));
}

#[test]
fn sweep_row_count_and_monotone_factor() {
    let args = [
        "sweep",
        "--model",
        "ws",
        "--n",
        "1000",
        "--avg-degree",
        "20",
        "--r0",
        "0.5:2.0:0.25",
        "--k",
        "50,300",
        "--reps",
        "5",
    ];
    let (code, out, _) = invoke(&args);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["model", "n", "avg_degree", "R0", "k", "rep", "factor", "lambda_prime", "n_s"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let data: Vec<&csv::StringRecord> = rows.iter().filter(|r| r[5] != *"mean" && r[5] != *"std").collect();
    assert_eq!(data.len(), 2 * 5 * 7);
    for k in ["50", "300"] {
        for rep in 0..5 {
            let series: Vec<f64> =
                data.iter().filter(|r| &r[4] == k && r[5] == *rep.to_string()).map(|r| r[6].parse().unwrap()).collect();
            assert_eq!(series.len(), 7);
            assert!(series.windows(2).all(|w| w[1] <= w[0]));
        }
    }
    assert_eq!(invoke(&args).1, out);
}

#[test]
fn sir_sweep_names_rows_by_gamma() {
    let (code, out, _) = invoke(&[
        "sweep",
        "--model",
        "ba",
        "--n",
        "300",
        "--avg-degree",
        "10",
        "--r0",
        "1.5",
        "--k",
        "20",
        "--reps",
        "1",
        "--gamma",
        "0.5,1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("ba-sir-0.5,"));
    assert!(out.contains("ba-sir-1,"));
}

#[test]
fn oracle_fixture() {
    let (code, out, _) = invoke(&["oracle", "--fixture", "counterexample-a", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("S*={1,2}\n"));
    assert!(out.contains("pi=4\n"));
    let (code, out, _) = invoke(&["oracle", "--fixture", "counterexample-b", "--a", "3", "--k", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("S*={1}\npi=5\n"));
}

#[test]
fn greedy_and_estimate_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let g = uniform_graph(dir.path(), 0.6);
    let (code, out, _) = invoke(&["greedy", "--graph", path_str(&g), "--k", "2", "--replicates", "500", "--seed", "1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "step,group_id,multiplicity,forced,gain,gain_stderr,pi,pi_stderr");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("total,"));
    let (code, exact, _) = invoke(&["greedy", "--graph", path_str(&g), "--k", "2", "--exact"]);
    assert_eq!(code, 0);
    let first: Vec<&str> = exact.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((first[5], first[7]), ("0", "0"));

    let (code, out, _) = invoke(&["estimate", "--graph", path_str(&g), "--remove", "1", "--replicates", "2000"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("quantity,mean,stderr,replicates,seed\nsigma,"));

    let groups = dir.path().join("groups.txt");
    std::fs::write(&groups, "group 7 independent\nmember 7 1 q=0.5\nmember 7 4 q=0.5\n").unwrap();
    let (code, out, _) = invoke(&[
        "greedy",
        "--graph",
        path_str(&g),
        "--k",
        "2",
        "--groups",
        path_str(&groups),
        "--multiset",
        "--replicates",
        "300",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().nth(2).unwrap().starts_with("2,7,2,"));
}

#[test]
fn validation_errors_exit_two() {
    assert_eq!(invoke(&["bound", "--graph", "/nonexistent/g.txt", "--k", "5"]).0, 2);
    assert_eq!(invoke(&["sweep", "--bogus"]).0, 2);
    assert_eq!(invoke(&["sweep", "--r0", "2:1:0.5"]).0, 2);
    assert_eq!(invoke(&["gen", "--model", "er", "--n", "10", "--avg-degree", "4", "--r0", "5"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "graph 2 undirected\nedge 0 1 1.5\n").unwrap();
    let (code, _, err) = invoke(&["bound", "--graph", path_str(&bad), "--k", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("1.5"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_netimmune");
    let dir = tempfile::tempdir().unwrap();
    let mut b = ProbGraph::builder(30, true);
    for u in 0..29 {
        b.edge(u, u + 1, 0.5);
    }
    b.seed(0);
    let big = dir.path().join("big.txt");
    graph::save(&b.build().unwrap(), &big).unwrap();
    let capped = Command::new(bin).args(["oracle", "--graph", path_str(&big), "--k", "1"]).output().unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let usage = Command::new(bin).args(["oracle", "--k", "1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let status = Command::new(bin).args(["oracle", "--fixture", "counterexample-a", "--k", "2"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&status.stdout).starts_with("S*={1,2}"));
}
