use std::process::{Command, Output};

use fqmap::cost::md_edgesum;
use fqmap::schemes::optimal_x_md;
use serde_json::Value;

fn fqmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqmap")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = fqmap(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("fqmap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn map_headers() {
    let v = json(&["map", "--lattice", "6", "--scheme", "m"]);
    assert_eq!(v["hamiltonian"]["terms"].as_array().unwrap().len(), 120);
    assert!((v["header"]["apv"].as_f64().unwrap() - 4.333).abs() < 0.001);
    let v = json(&["map", "--lattice", "6", "--scheme", "m+2"]);
    assert_eq!(v["header"]["total_weight"], 222);
    assert_eq!(v["hamiltonian"]["n_qubits"], 38);
}

#[test]
fn cost_values() {
    assert_eq!(json(&["cost", "--lattice", "20", "--scheme", "m"])["edgesum"], 7140);
    assert_eq!(json(&["cost", "--lattice", "20", "--scheme", "s"])["edgesum"], 7980);
    let v = json(&["cost", "--lattice", "6", "--scheme", "z"]);
    assert_eq!(v["mpv"], 7);
    assert_eq!(v["apv"], 4.5);
    let csv = stdout(&["cost", "--cellular", "2", "2", "--scheme", "cz", "--format", "csv"]);
    assert!(csv.lines().nth(1).unwrap().starts_with("50,"));
}

#[test]
fn exit_codes() {
    // no edges: average undefined
    assert_eq!(fqmap(&["map", "--lattice", "1", "--scheme", "z"]).status.code(), Some(3));
    assert_eq!(fqmap(&["search", "--lattice", "4", "--method", "brute"]).status.code(), Some(3));
    assert_eq!(fqmap(&["cost", "--lattice", "4", "--scheme", "nope"]).status.code(), Some(2));
    assert_eq!(fqmap(&["cost", "--lattice", "4", "--scheme", "czp"]).status.code(), Some(2));
    assert_eq!(fqmap(&["cost", "--lattice", "4", "--graph", "g.json"]).status.code(), Some(2));
    assert_eq!(fqmap(&["sweep", "--n-min", "5", "--n-max", "3"]).status.code(), Some(2));
    assert_eq!(fqmap(&["cost", "--graph", "/nonexistent/g.json"]).status.code(), Some(2));
    let out = fqmap(&["cost", "--lattice", "4", "--scheme", "nope"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn sweep_rows_are_sorted_and_match_the_formula() {
    let csv = stdout(&["sweep", "--n-min", "2", "--n-max", "100", "--patterns", "random,m,s"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "N,pattern,edgesum,apv,mpv,depth,p,p_sum,ratio_s");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3 * 99);
    for (k, r) in rows.iter().enumerate() {
        let n: usize = r[0].parse().unwrap();
        assert_eq!(n, 2 + k / 3);
        assert_eq!(r[1], ["s", "m", "random"][k % 3]);
        if r[1] == "m" {
            let es = md_edgesum(n as i64, optimal_x_md(n) as i64);
            assert_eq!(r[2].parse::<i64>().unwrap(), es);
            let apv = es as f64 / (2 * n * (n - 1)) as f64 + 1.0;
            let printed: f64 = r[3].parse().unwrap();
            assert!((printed - apv).abs() <= 5e-6 * apv, "N={n}");
        }
    }
}

#[test]
fn sweep_ratios_at_large_n() {
    let csv = stdout(&["sweep", "--n-min", "1000", "--n-max", "1000", "--patterns", "m,m+2"]);
    let ratio = |pat: &str| -> f64 {
        let line = csv.lines().find(|l| l.split(',').nth(1) == Some(pat)).unwrap();
        line.rsplit(',').next().unwrap().parse().unwrap()
    };
    assert!((ratio("m") - 0.862).abs() <= 0.005);
    assert!((ratio("m+2") - 0.62).abs() <= 0.01);
    let m2 = csv.lines().find(|l| l.contains(",m+2,")).unwrap();
    let cells: Vec<&str> = m2.split(',').collect();
    assert_eq!((cells[5], cells[7]), ("", ""));
}

#[test]
fn compare_report() {
    let v = json(&["compare", "--lattice", "10", "--format", "json"]);
    let rows = v["rows"].as_array().unwrap();
    let q: Vec<u64> = rows.iter().map(|r| r["qubits"].as_u64().unwrap()).collect();
    assert_eq!(q, vec![100, 100, 102, 180, 200, 190]);
    assert_eq!(rows[0]["avg_hopping_weight"], 6.5);
    assert!(rows[3]["avg_hopping_weight"].is_null());
    let table = stdout(&["compare", "--lattice", "10"]);
    assert!(table.contains("0.31N+1.78"));
    assert!(table.contains("0.31N+1.68"));
}

#[test]
fn files_in_and_out() {
    let g = tmp("g.json");
    fqmap::graph::save_graph(&fqmap::graph::square_lattice(3).unwrap(), &g).unwrap();
    let scheme = tmp("s.json");
    let out = fqmap(&["search", "--graph", g.to_str().unwrap(), "--method", "brute", "--out", scheme.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&scheme).unwrap()).unwrap();
    assert_eq!(v["cost"], 24.0);
    let c = json(&["cost", "--graph", g.to_str().unwrap(), "--scheme", scheme.to_str().unwrap()]);
    assert_eq!(c["edgesum"], 24);
    let h = json(&["map", "--graph", g.to_str().unwrap(), "--scheme", "z", "--quartic", "1.0"]);
    assert_eq!(h["hamiltonian"]["terms"].as_array().unwrap().len(), 12 * 2 + 12 * 4);
    std::fs::remove_dir_all(g.parent().unwrap()).ok();
}

#[test]
fn search_methods() {
    let v = json(&["search", "--lattice", "6", "--method", "local", "--init", "s"]);
    assert!(v["cost"].as_f64().unwrap() <= 210.0);
    let v = json(&["search", "--lattice", "3", "--method", "anneal", "--iterations", "50000", "--seed", "1"]);
    assert_eq!(v["cost"], 24.0);
    assert_eq!(v["method"], "anneal");
}
