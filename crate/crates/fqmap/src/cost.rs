//! Layout costs of (graph, scheme) pairs and closed-form oracles.

use serde::Serialize;

use crate::auxmap;
use crate::error::{Error, Result};
use crate::graph::{EnumerationScheme, InteractionGraph};
use crate::schemes::is_hv_ordered;

fn distances<'a>(
    g: &'a InteractionGraph,
    s: &'a EnumerationScheme,
) -> Result<impl Iterator<Item = u64> + 'a> {
    s.check_graph(g)?;
    Ok(g.edges().iter().map(move |e| s.get(e.a).abs_diff(s.get(e.b)) as u64))
}

/// Σ |f(α) − f(β)| over edges.
pub fn edgesum(g: &InteractionGraph, s: &EnumerationScheme) -> Result<u64> {
    Ok(distances(g, s)?.sum())
}

/// `(Σ |f(α) − f(β)|^p)^(1/p)`; `p = ∞` gives the bandwidth.
pub fn p_sum(g: &InteractionGraph, s: &EnumerationScheme, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::OutOfRange(format!("p must be positive, got {p}")));
    }
    if p.is_infinite() {
        return Ok(bandwidth(g, s)? as f64);
    }
    if p == 1.0 {
        return Ok(edgesum(g, s)? as f64);
    }
    let total: f64 = distances(g, s)?.map(|d| (d as f64).powf(p)).sum();
    Ok(total.powf(1.0 / p))
}

/// Σ |d|^p without the root; the quantity the searches minimise.
pub fn p_power_sum(g: &InteractionGraph, s: &EnumerationScheme, p: f64) -> Result<f64> {
    Ok(distances(g, s)?.map(|d| (d as f64).powf(p)).sum())
}

pub fn bandwidth(g: &InteractionGraph, s: &EnumerationScheme) -> Result<u64> {
    Ok(distances(g, s)?.max().unwrap_or(0))
}

/// Average weight of the hopping strings: edgesum/|E| + 1.
pub fn apv(g: &InteractionGraph, s: &EnumerationScheme) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    Ok(edgesum(g, s)? as f64 / g.edge_count() as f64 + 1.0)
}

/// Maximum weight of a hopping string: bandwidth + 1.
pub fn mpv(g: &InteractionGraph, s: &EnumerationScheme) -> Result<u64> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    Ok(bandwidth(g, s)? + 1)
}

/// `Σ bottom row + Σ right column − Σ left column − Σ top row`; equals the
/// edgesum for any H/V-ordered scheme on the N×N lattice.
pub fn boundary_edgesum(s: &EnumerationScheme, side: usize) -> Result<i64> {
    if !is_hv_ordered(s, side)? {
        return Err(Error::NotOrdered);
    }
    let g = s.as_grid(side)?;
    let n = side;
    let mut total = 0i64;
    for i in 0..n {
        total += g[n - 1][i] as i64 + g[i][n - 1] as i64 - g[i][0] as i64 - g[0][i] as i64;
    }
    Ok(total)
}

/// Qubit-index support `[min f, max f]` of each hopping term.
pub fn hopping_intervals(g: &InteractionGraph, s: &EnumerationScheme) -> Result<Vec<(usize, usize)>> {
    s.check_graph(g)?;
    Ok(g.edges()
        .iter()
        .map(|e| {
            let (a, b) = (s.get(e.a), s.get(e.b));
            (a.min(b), a.max(b))
        })
        .collect())
}

/// Minimum number of groups of pairwise disjoint intervals, i.e. the largest
/// number of intervals covering one point.
pub fn measurement_depth(intervals: &[(usize, usize)]) -> usize {
    let mut events: Vec<(usize, i32)> = Vec::with_capacity(2 * intervals.len());
    for &(lo, hi) in intervals {
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        events.push((lo, 1));
        events.push((hi + 1, -1));
    }
    // closing events sort before opening ones at the same coordinate
    events.sort_unstable();
    let (mut cur, mut best) = (0i32, 0i32);
    for (_, d) in events {
        cur += d;
        best = best.max(cur);
    }
    best as usize
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostReport {
    pub edgesum: u64,
    pub p: f64,
    pub p_sum: f64,
    pub bandwidth: u64,
    pub apv: f64,
    pub mpv: u64,
    pub measurement_depth: Option<usize>,
    pub term_count: usize,
}

impl CostReport {
    pub fn compute(g: &InteractionGraph, s: &EnumerationScheme, p: f64) -> Result<CostReport> {
        let edgesum = edgesum(g, s)?;
        Ok(CostReport {
            edgesum,
            p,
            p_sum: p_sum(g, s, p)?,
            bandwidth: bandwidth(g, s)?,
            apv: apv(g, s)?,
            mpv: mpv(g, s)?,
            measurement_depth: Some(measurement_depth(&hopping_intervals(g, s)?)),
            term_count: g.edge_count(),
        })
    }
}

/// Edgesum of the Z or S pattern on the N×N lattice: `N³ − N`.
pub fn s_pattern_edgesum(side: u64) -> u64 {
    side * side * side - side
}

/// Edgesum of the Mitchison–Durbin pattern,
/// `N³ − xN² + 2x²N − ⅔x³ + N² − xN − 2N + ⅔x`, evaluated exactly.
pub fn md_edgesum(side: i64, x: i64) -> i64 {
    let (n, x) = (side, x);
    let thrice = 3 * n * n * n - 3 * x * n * n + 6 * x * x * n - 2 * x * x * x + 3 * n * n
        - 3 * x * n
        - 6 * n
        + 2 * x;
    debug_assert_eq!(thrice % 3, 0);
    thrice / 3
}

/// Global Z pattern on the (n×n)×(N×N) cellular lattice.
pub fn cellular_z_edgesum(cell: i64, grid: i64) -> i64 {
    let (n, nn) = (cell, grid);
    let m = nn * n;
    m * m * m - m - nn * (nn - 1) * (n - 1) - n * nn * nn * (n - 1) * (nn - 1)
}

/// Cell-by-cell Z′ pattern on the cellular lattice (parity of the cell side
/// selects the branch).
pub fn cellular_zprime_edgesum(cell: i64, grid: i64) -> i64 {
    let (n, nn) = (cell, grid);
    let common = nn * nn * nn * n * n + n * n * n * nn * nn - n * n * nn * nn - n * n * nn + 2 * n * nn
        + n * n
        - 2 * nn;
    if n % 2 == 0 {
        common - 2 * n * nn * nn + 2 * nn * nn - n
    } else {
        common - n * nn * nn + nn * nn - 2 * n + 1
    }
}

/// Global S pattern on the cellular lattice. Every one of the `N − 1`
/// horizontal cell boundaries removes its own set of vertical edges; for
/// `N ≤ 2` this coincides with the single-boundary sum
/// `Σ_k Σ_i (2i − 1)` often quoted for this pattern.
pub fn cellular_s_edgesum(cell: i64, grid: i64) -> i64 {
    let (n, nn) = (cell, grid);
    let m = nn * n;
    let mut total = m * m * m - m - nn * (nn - 1) * (n - 1);
    for bi in 1..nn {
        let row = bi * n - 1;
        for c in 0..m {
            if c % n == 0 {
                continue;
            }
            total -= if row % 2 == 1 { 2 * c + 1 } else { 2 * m - 1 - 2 * c };
        }
    }
    total
}

/// Large-N average Pauli weight of the Mitchison–Durbin pattern,
/// `(4 − √2)/6·N + (20 + √2)/12 ≈ 0.43N + 1.78`.
pub fn apv_md_asymptotic(side: f64) -> f64 {
    let r2 = 2f64.sqrt();
    (4.0 - r2) / 6.0 * side + (20.0 + r2) / 12.0
}

/// `N/2 + 3/2`, exact for the S and Z patterns.
pub fn apv_s(side: f64) -> f64 {
    0.5 * side + 1.5
}

/// Evaluates a closed form by name. Parameters are positional:
///
/// | id | params |
/// |----|--------|
/// | `s`, `z` | N |
/// | `md` | N, x |
/// | `cellular_z`, `cellular_zprime`, `cellular_s` | n, N |
/// | `apv_s`, `apv_md_asymptotic` | N |
/// | `aux_total_weight` | N, x |
/// | `apv_aux_asymptotic` | N (0.31N + 1.68) |
/// | `apv_aux_table` | N (0.31N + 1.78) |
pub fn closed_form(id: &str, params: &[f64]) -> Result<f64> {
    let need = |k: usize| -> Result<()> {
        if params.len() != k {
            return Err(Error::OutOfRange(format!("`{id}` takes {k} parameter(s)")));
        }
        Ok(())
    };
    let int = |v: f64| -> Result<i64> {
        if v.fract() != 0.0 || v < 0.0 {
            return Err(Error::OutOfRange(format!("`{id}` needs non-negative integers, got {v}")));
        }
        Ok(v as i64)
    };
    match id {
        "s" | "z" => {
            need(1)?;
            Ok(s_pattern_edgesum(int(params[0])? as u64) as f64)
        }
        "md" => {
            need(2)?;
            Ok(md_edgesum(int(params[0])?, int(params[1])?) as f64)
        }
        "cellular_z" => {
            need(2)?;
            Ok(cellular_z_edgesum(int(params[0])?, int(params[1])?) as f64)
        }
        "cellular_zprime" => {
            need(2)?;
            Ok(cellular_zprime_edgesum(int(params[0])?, int(params[1])?) as f64)
        }
        "cellular_s" => {
            need(2)?;
            Ok(cellular_s_edgesum(int(params[0])?, int(params[1])?) as f64)
        }
        "apv_s" => {
            need(1)?;
            Ok(apv_s(params[0]))
        }
        "apv_md_asymptotic" => {
            need(1)?;
            Ok(apv_md_asymptotic(params[0]))
        }
        "aux_total_weight" => {
            need(2)?;
            Ok(auxmap::total_weight_formula(int(params[0])? as usize, int(params[1])? as usize)? as f64)
        }
        "apv_aux_asymptotic" => {
            need(1)?;
            Ok(0.31 * params[0] + 1.68)
        }
        "apv_aux_table" => {
            need(1)?;
            Ok(0.31 * params[0] + 1.78)
        }
        other => Err(Error::UnknownFormula(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_small_cases() {
        assert_eq!(measurement_depth(&[(0, 1), (1, 2)]), 2);
        assert_eq!(measurement_depth(&[(0, 1), (2, 3), (0, 2), (1, 3)]), 3);
        assert_eq!(measurement_depth(&[]), 0);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(md_edgesum(20, 6), 7140);
        assert_eq!(closed_form("s", &[6.0]).unwrap(), 210.0);
        assert_eq!(cellular_z_edgesum(2, 2), 50);
        assert!(matches!(closed_form("nope", &[]), Err(Error::UnknownFormula(_))));
    }
}
