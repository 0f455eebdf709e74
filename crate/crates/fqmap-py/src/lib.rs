//! Python bindings. Graphs cross the boundary as JSON text, schemes as the
//! list of qubit indices assigned to each vertex, and structured results as
//! plain dicts and lists.

use fqmap::cost::CostReport;
use fqmap::graph::{cellular_lattice, path_graph, square_lattice};
use fqmap::schemes::{self, CellularVariant};
use fqmap::search::{self, AnnealParams};
use fqmap::{auxmap, mappings, EnumerationScheme, InteractionGraph};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

fn err(e: fqmap::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn graph(text: &str) -> PyResult<InteractionGraph> {
    let v: Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    InteractionGraph::from_json(&v).map_err(err)
}

fn scheme(f: Vec<usize>) -> PyResult<EnumerationScheme> {
    EnumerationScheme::new(f).map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// JSON text of the N×N square lattice.
#[pyfunction]
fn lattice(side: usize) -> PyResult<String> {
    Ok(square_lattice(side).map_err(err)?.to_json().to_string())
}

/// JSON text of an N×N grid of n×n cells.
#[pyfunction]
fn cellular(cell: usize, grid: usize) -> PyResult<String> {
    Ok(cellular_lattice(cell, grid).map_err(err)?.to_json().to_string())
}

/// JSON text of the path on n vertices.
#[pyfunction]
fn path(n: usize) -> PyResult<String> {
    Ok(path_graph(n).map_err(err)?.to_json().to_string())
}

/// Lattice pattern `z`, `s`, `d` or `m` on an N×N lattice.
#[pyfunction]
#[pyo3(signature = (name, side, x=None))]
fn pattern(name: &str, side: usize, x: Option<usize>) -> PyResult<Vec<usize>> {
    let s = match name {
        "z" => schemes::z_pattern(side),
        "s" => schemes::s_pattern(side),
        "d" => schemes::diagonal_pattern(side),
        "m" => schemes::mitchison_durbin(side, x),
        _ => return Err(PyValueError::new_err(format!("unknown pattern `{name}`"))),
    };
    Ok(s.map_err(err)?.as_slice().to_vec())
}

/// Cellular pattern `z`, `s`, `zp` or `sp` on an N×N grid of n×n cells.
#[pyfunction]
fn cellular_pattern(name: &str, cell: usize, grid: usize) -> PyResult<Vec<usize>> {
    let variant = match name {
        "z" => CellularVariant::Z,
        "s" => CellularVariant::S,
        "zp" => CellularVariant::ZPrime,
        "sp" => CellularVariant::SPrime,
        _ => return Err(PyValueError::new_err(format!("unknown cellular pattern `{name}`"))),
    };
    Ok(schemes::cellular_pattern(cell, grid, variant).map_err(err)?.as_slice().to_vec())
}

/// Cost report of a scheme on a graph.
#[pyfunction]
#[pyo3(signature = (graph_json, scheme_map, p=1.0))]
fn cost<'py>(py: Python<'py>, graph_json: &str, scheme_map: Vec<usize>, p: f64) -> PyResult<Bound<'py, PyAny>> {
    let report = CostReport::compute(&graph(graph_json)?, &scheme(scheme_map)?, p).map_err(err)?;
    to_py(py, &serde_json::to_value(report).map_err(|e| PyValueError::new_err(e.to_string()))?)
}

/// Qubit Hamiltonian as a dict with `n_qubits` and `terms`.
#[pyfunction]
#[pyo3(signature = (graph_json, scheme_map, quartic=None))]
fn hamiltonian<'py>(
    py: Python<'py>,
    graph_json: &str,
    scheme_map: Vec<usize>,
    quartic: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let h = mappings::build_hamiltonian(&graph(graph_json)?, &scheme(scheme_map)?, quartic).map_err(err)?;
    to_py(py, &h.to_json())
}

#[pyfunction]
fn optimal_x_aux(side: usize) -> usize {
    auxmap::optimal_x_aux(side)
}

/// Total Pauli weight of the auxiliary mapping's hopping terms.
#[pyfunction]
#[pyo3(signature = (side, x=None))]
fn aux_total_weight(side: usize, x: Option<usize>) -> PyResult<u64> {
    auxmap::aux_total_weight(side, x.unwrap_or_else(|| auxmap::optimal_x_aux(side))).map_err(err)
}

fn result<'py>(py: Python<'py>, r: search::SearchResult) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::json!({
        "scheme": r.best_scheme.as_slice(),
        "cost": r.best_cost,
        "method": r.method.name(),
        "evaluations": r.evaluations,
        "seed": r.seed,
    });
    to_py(py, &v)
}

/// Exact minimum of the p-sum for small graphs.
#[pyfunction]
#[pyo3(signature = (graph_json, p=1.0))]
fn brute_force<'py>(py: Python<'py>, graph_json: &str, p: f64) -> PyResult<Bound<'py, PyAny>> {
    let r = search::brute_force_min(&graph(graph_json)?, p).map_err(err)?;
    result(py, r)
}

/// Simulated annealing over label swaps.
#[pyfunction]
#[pyo3(signature = (graph_json, p=1.0, seed=0, iterations=None, init=None))]
fn anneal<'py>(
    py: Python<'py>,
    graph_json: &str,
    p: f64,
    seed: u64,
    iterations: Option<u64>,
    init: Option<Vec<usize>>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut params = AnnealParams::default();
    if let Some(it) = iterations {
        params.iterations = it;
    }
    let init = init.map(scheme).transpose()?;
    let r = search::anneal(&graph(graph_json)?, p, params, seed, init.as_ref()).map_err(err)?;
    result(py, r)
}

#[pymodule]
fn fqmap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(lattice, m)?)?;
    m.add_function(wrap_pyfunction!(cellular, m)?)?;
    m.add_function(wrap_pyfunction!(path, m)?)?;
    m.add_function(wrap_pyfunction!(pattern, m)?)?;
    m.add_function(wrap_pyfunction!(cellular_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(cost, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_x_aux, m)?)?;
    m.add_function(wrap_pyfunction!(aux_total_weight, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(anneal, m)?)?;
    Ok(())
}
