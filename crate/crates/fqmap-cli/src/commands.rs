use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use fqmap::auxmap::{aux_term_weights, build_aux_hamiltonian, optimal_x_aux};
use fqmap::cost::{apv, bandwidth, edgesum, hopping_intervals, measurement_depth, p_sum, CostReport};
use fqmap::graph::{cellular_lattice, load_graph, load_scheme, square_lattice};
use fqmap::mappings::build_hamiltonian;
use fqmap::schemes::{
    cellular_pattern, diagonal_pattern, mitchison_durbin, optimal_x_md, random_scheme, s_pattern, z_pattern,
    CellularVariant,
};
use fqmap::search::{anneal, brute_force_min, lattice_local_search, AnnealParams, SearchResult};
use fqmap::{EnumerationScheme, InteractionGraph};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::format::{self, sig6, Format};
use crate::{GraphSource, SchemeArgs};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Lib(fqmap::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Lib(e) if e.is_config() => 2,
            CliError::Lib(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<fqmap::Error> for CliError {
    fn from(e: fqmap::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Lib(e.into())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Config(msg.into()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Lib(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(v: &Value, out: Option<&Path>) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"), out)
}

enum Source {
    Lattice(usize),
    Cellular(usize, usize),
    File,
}

fn load(src: &GraphSource) -> Result<(InteractionGraph, Source)> {
    if let Some(n) = src.lattice {
        return Ok((square_lattice(n)?, Source::Lattice(n)));
    }
    if let Some(c) = &src.cellular {
        return Ok((cellular_lattice(c[0], c[1])?, Source::Cellular(c[0], c[1])));
    }
    match &src.graph {
        Some(path) => Ok((load_graph(path)?, Source::File)),
        None => config("one of --lattice, --cellular, --graph is required"),
    }
}

/// Resolves a scheme name (or file) against the loaded graph. `m+2` is not a
/// plain scheme and is handled by the callers.
fn resolve_scheme(
    name: &str,
    g: &InteractionGraph,
    src: &Source,
    x: Option<usize>,
    seed: u64,
) -> Result<EnumerationScheme> {
    let s = match (name, src) {
        ("random", _) => random_scheme(g.n_modes(), seed),
        ("z", Source::Lattice(n)) => z_pattern(*n)?,
        ("s", Source::Lattice(n)) => s_pattern(*n)?,
        ("d", Source::Lattice(n)) => diagonal_pattern(*n)?,
        ("m", Source::Lattice(n)) => mitchison_durbin(*n, x)?,
        ("z" | "cz", Source::Cellular(c, n)) => cellular_pattern(*c, *n, CellularVariant::Z)?,
        ("s" | "cs", Source::Cellular(c, n)) => cellular_pattern(*c, *n, CellularVariant::S)?,
        ("czp", Source::Cellular(c, n)) => cellular_pattern(*c, *n, CellularVariant::ZPrime)?,
        ("csp", Source::Cellular(c, n)) => cellular_pattern(*c, *n, CellularVariant::SPrime)?,
        ("z", Source::File) => EnumerationScheme::identity(g.n_modes()),
        ("s" | "d" | "m" | "m+2" | "cz" | "czp" | "cs" | "csp", _) => {
            return config(format!("scheme `{name}` does not apply to this graph source"))
        }
        (path, _) if Path::new(path).is_file() => load_scheme(path, g)?,
        _ => return config(format!("unknown scheme `{name}` (not a pattern name or an existing file)")),
    };
    s.check_graph(g)?;
    Ok(s)
}

fn aux_x(n: usize, x: Option<usize>) -> usize {
    x.unwrap_or_else(|| optimal_x_aux(n))
}

fn aux_header(n: usize, x: usize) -> Result<Value> {
    let weights = aux_term_weights(n, x)?;
    let total: usize = weights.iter().sum();
    Ok(json!({
        "scheme": "m+2",
        "x": x,
        "n_qubits": n * n + 2,
        "total_weight": total,
        "apv": total as f64 / weights.len() as f64,
        "mpv": weights.iter().max(),
        "term_count": weights.len(),
    }))
}

fn lattice_side(src: &Source) -> Result<usize> {
    match src {
        Source::Lattice(n) => Ok(*n),
        _ => config("scheme `m+2` needs --lattice"),
    }
}

pub fn map(src: &GraphSource, sa: &SchemeArgs, quartic: Option<f64>, out: Option<&Path>) -> Result<()> {
    let (g, source) = load(src)?;
    if sa.scheme == "m+2" {
        let n = lattice_side(&source)?;
        if quartic.is_some() {
            return config("--quartic is not supported with scheme `m+2`");
        }
        let x = aux_x(n, sa.x);
        let a = build_aux_hamiltonian(n, x)?;
        let mut header = aux_header(n, x)?;
        header["total_weight"] = json!(a.total_weight());
        return emit_json(&json!({ "header": header, "hamiltonian": a.hamiltonian.to_json() }), out);
    }
    let s = resolve_scheme(&sa.scheme, &g, &source, sa.x, sa.seed)?;
    let report = CostReport::compute(&g, &s, 1.0)?;
    let h = build_hamiltonian(&g, &s, quartic)?;
    let mut header = serde_json::to_value(&report)?;
    header["scheme"] = json!(sa.scheme);
    header["n_qubits"] = json!(h.n_qubits);
    emit_json(&json!({ "header": header, "hamiltonian": h.to_json() }), out)
}

pub fn cost(src: &GraphSource, sa: &SchemeArgs, p: f64, fmt: Format, out: Option<&Path>) -> Result<()> {
    let (g, source) = load(src)?;
    let (header, row): (Vec<&str>, Vec<String>) = if sa.scheme == "m+2" {
        let n = lattice_side(&source)?;
        let x = aux_x(n, sa.x);
        let v = aux_header(n, x)?;
        if fmt == Format::Json {
            return emit_json(&v, out);
        }
        (
            vec!["scheme", "x", "n_qubits", "total_weight", "apv", "mpv", "term_count"],
            vec![
                "m+2".into(),
                x.to_string(),
                v["n_qubits"].to_string(),
                v["total_weight"].to_string(),
                sig6(v["apv"].as_f64().unwrap_or(f64::NAN)),
                v["mpv"].to_string(),
                v["term_count"].to_string(),
            ],
        )
    } else {
        let s = resolve_scheme(&sa.scheme, &g, &source, sa.x, sa.seed)?;
        let r = CostReport::compute(&g, &s, p)?;
        if fmt == Format::Json {
            return emit_json(&serde_json::to_value(&r)?, out);
        }
        (
            vec!["edgesum", "p", "p_sum", "bandwidth", "apv", "mpv", "measurement_depth", "term_count"],
            vec![
                r.edgesum.to_string(),
                sig6(r.p),
                sig6(r.p_sum),
                r.bandwidth.to_string(),
                sig6(r.apv),
                r.mpv.to_string(),
                r.measurement_depth.map(|d| d.to_string()).unwrap_or_default(),
                r.term_count.to_string(),
            ],
        )
    };
    let text = match fmt {
        Format::Csv => format::csv(&header, &[row]),
        _ => format::table(&header, &[row]),
    };
    emit(&text, out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Pattern {
    Z,
    S,
    D,
    M,
    MPlus2,
    Random,
}

impl Pattern {
    fn parse(s: &str) -> Result<Pattern> {
        Ok(match s.trim() {
            "z" => Pattern::Z,
            "s" => Pattern::S,
            "d" => Pattern::D,
            "m" => Pattern::M,
            "m+2" => Pattern::MPlus2,
            "random" => Pattern::Random,
            other => return config(format!("unknown sweep pattern `{other}`")),
        })
    }

    fn name(self) -> &'static str {
        match self {
            Pattern::Z => "z",
            Pattern::S => "s",
            Pattern::D => "d",
            Pattern::M => "m",
            Pattern::MPlus2 => "m+2",
            Pattern::Random => "random",
        }
    }
}

struct SweepRow {
    n: usize,
    pattern: Pattern,
    edgesum: u64,
    apv: f64,
    mpv: u64,
    depth: Option<usize>,
    p_sum: Option<f64>,
}

fn sweep_point(n: usize, pat: Pattern, p: f64, seed: u64) -> Result<SweepRow> {
    let g = square_lattice(n)?;
    let s = match pat {
        Pattern::Z => z_pattern(n)?,
        Pattern::S => s_pattern(n)?,
        Pattern::D => diagonal_pattern(n)?,
        Pattern::M => mitchison_durbin(n, None)?,
        Pattern::MPlus2 => {
            let x = optimal_x_aux(n);
            let weights = aux_term_weights(n, x)?;
            let total: usize = weights.iter().sum();
            return Ok(SweepRow {
                n,
                pattern: pat,
                edgesum: edgesum(&g, &mitchison_durbin(n, Some(x))?)?,
                apv: total as f64 / weights.len() as f64,
                mpv: weights.iter().copied().max().unwrap_or(0) as u64,
                depth: None,
                p_sum: None,
            });
        }
        Pattern::Random => random_scheme(n * n, seed.wrapping_add(n as u64)),
    };
    Ok(SweepRow {
        n,
        pattern: pat,
        edgesum: edgesum(&g, &s)?,
        apv: apv(&g, &s)?,
        mpv: bandwidth(&g, &s)? + 1,
        depth: Some(measurement_depth(&hopping_intervals(&g, &s)?)),
        p_sum: Some(p_sum(&g, &s, p)?),
    })
}

#[allow(clippy::too_many_arguments)]
pub fn sweep(
    n_min: usize,
    n_max: usize,
    step: usize,
    patterns: &str,
    p: f64,
    seed: u64,
    fmt: Format,
    out: Option<&Path>,
) -> Result<()> {
    if n_min < 2 || n_max < n_min || step == 0 {
        return config(format!("sweep range must satisfy 2 ≤ n-min ≤ n-max and step ≥ 1 (got {n_min}..{n_max} step {step})"));
    }
    if !(p > 0.0) {
        return config(format!("p must be positive, got {p}"));
    }
    let mut pats = patterns.split(',').map(Pattern::parse).collect::<Result<Vec<_>>>()?;
    pats.sort_unstable();
    pats.dedup();
    let points: Vec<(usize, Pattern)> =
        (n_min..=n_max).step_by(step).flat_map(|n| pats.iter().map(move |&q| (n, q))).collect();
    let mut rows = points.par_iter().map(|&(n, q)| sweep_point(n, q, p, seed)).collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.n, r.pattern));

    let s_apv = |n: usize| 0.5 * n as f64 + 1.5;
    let headers = ["N", "pattern", "edgesum", "apv", "mpv", "depth", "p", "p_sum", "ratio_s"];
    if fmt == Format::Json {
        let v: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "N": r.n, "pattern": r.pattern.name(), "edgesum": r.edgesum, "apv": r.apv,
                    "mpv": r.mpv, "depth": r.depth, "p": p, "p_sum": r.p_sum,
                    "ratio_s": r.apv / s_apv(r.n),
                })
            })
            .collect();
        return emit_json(&Value::Array(v), out);
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.pattern.name().to_string(),
                r.edgesum.to_string(),
                sig6(r.apv),
                r.mpv.to_string(),
                r.depth.map(|d| d.to_string()).unwrap_or_default(),
                if r.p_sum.is_some() { sig6(p) } else { String::new() },
                r.p_sum.map(sig6).unwrap_or_default(),
                sig6(r.apv / s_apv(r.n)),
            ]
        })
        .collect();
    let text = match fmt {
        Format::Table => format::table(&headers, &cells),
        _ => format::csv(&headers, &cells),
    };
    emit(&text, out)
}

pub fn compare(n: usize, fmt: Format, out: Option<&Path>) -> Result<()> {
    if n < 2 {
        return config("compare needs --lattice N with N ≥ 2");
    }
    let g = square_lattice(n)?;
    let nf = n as f64;
    let modes = (n * n) as f64;
    let s_w = apv(&g, &s_pattern(n)?)?;
    let m_w = apv(&g, &mitchison_durbin(n, Some(optimal_x_md(n)))?)?;
    let weights = aux_term_weights(n, optimal_x_aux(n))?;
    let a_w = weights.iter().sum::<usize>() as f64 / weights.len() as f64;
    // (mapping, qubits, live weight, trend, trend value)
    let live = [
        ("JW_fS", n * n, Some(s_w), "N/2+3/2", Some(0.5 * nf + 1.5)),
        ("JW_fM", n * n, Some(m_w), "0.43N+1.78", Some(0.43 * nf + 1.78)),
        ("JW_fM+2", n * n + 2, Some(a_w), "0.31N+1.78 [1]", Some(0.31 * nf + 1.78)),
        ("BK superfast", 2 * n * n - 2 * n, None, "O(1)", None),
        ("VC", 2 * n * n, None, "O(1)", None),
        ("AQM", 2 * n * n - n, None, "O(1)", None),
    ];
    let footnote = "[1] tabulated constant; the derivation of the same mapping gives 0.31N+1.68";
    if fmt == Format::Json {
        let rows: Vec<Value> = live
            .iter()
            .map(|(name, q, w, trend, tv)| {
                json!({
                    "mapping": name, "qubits": q, "qubit_mode_ratio": *q as f64 / modes,
                    "avg_hopping_weight": w, "trend": trend, "trend_value": tv,
                })
            })
            .collect();
        return emit_json(&json!({ "N": n, "rows": rows, "notes": [footnote] }), out);
    }
    let headers = ["mapping", "qubits", "qubit_mode_ratio", "avg_hopping_weight", "trend", "trend_value"];
    let cells: Vec<Vec<String>> = live
        .iter()
        .map(|(name, q, w, trend, tv)| {
            vec![
                name.to_string(),
                q.to_string(),
                sig6(*q as f64 / modes),
                w.map(sig6).unwrap_or_else(|| "O(1)".into()),
                trend.to_string(),
                tv.map(sig6).unwrap_or_default(),
            ]
        })
        .collect();
    let text = match fmt {
        Format::Csv => format::csv(&headers, &cells),
        _ => format!("{}\n{footnote}\n", format::table(&headers, &cells)),
    };
    emit(&text, out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchMethod {
    Brute,
    Anneal,
    Local,
}

#[allow(clippy::too_many_arguments)]
pub fn search(
    src: &GraphSource,
    p: f64,
    method: SearchMethod,
    seed: u64,
    iterations: Option<u64>,
    restarts: u64,
    init: Option<&str>,
    out: Option<&Path>,
) -> Result<()> {
    let (g, source) = load(src)?;
    if restarts == 0 {
        return config("--restarts must be at least 1");
    }
    let start = match init {
        Some("m+2") => return config("`m+2` is not a plain enumeration scheme"),
        Some(name) => Some(resolve_scheme(name, &g, &source, None, seed)?),
        None => None,
    };
    let result: SearchResult = match method {
        SearchMethod::Brute => brute_force_min(&g, p)?,
        SearchMethod::Local => {
            let s = start.unwrap_or_else(|| random_scheme(g.n_modes(), seed));
            lattice_local_search(&g, &s, p)?
        }
        SearchMethod::Anneal => {
            let mut params = AnnealParams::default();
            if let Some(it) = iterations {
                params.iterations = it;
            }
            let runs = (0..restarts)
                .into_par_iter()
                .map(|k| anneal(&g, p, params, seed.wrapping_add(k), start.as_ref()))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            // lowest cost wins; ties go to the earliest restart
            runs.into_iter()
                .reduce(|best, r| if r.best_cost < best.best_cost { r } else { best })
                .expect("at least one restart")
        }
    };
    let mut v = result.best_scheme.to_json(&g)?;
    v["cost"] = json!(result.best_cost);
    v["p"] = json!(p);
    v["method"] = json!(result.method.name());
    v["evaluations"] = json!(result.evaluations);
    v["seed"] = json!(result.seed);
    emit_json(&v, out)
}
