//! Fermionic interaction graphs and enumeration schemes.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    /// N×N grid; vertex `r*N + c` sits at (r, c).
    Square { side: usize },
    /// (n×n)×(N×N) cells; vertex `R*(nN) + C` sits at global (R, C).
    Cellular { cell: usize, grid: usize },
    Generic,
}

impl Geometry {
    fn to_json(self) -> Value {
        match self {
            Geometry::Square { side } => json!({ "kind": "square", "side": side }),
            Geometry::Cellular { cell, grid } => {
                json!({ "kind": "cellular", "cell": cell, "grid": grid })
            }
            Geometry::Generic => json!({ "kind": "generic" }),
        }
    }

    fn from_json(v: Option<&Value>) -> Result<Geometry> {
        let Some(v) = v else { return Ok(Geometry::Generic) };
        let get = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("geometry is missing `{k}`")))
        };
        match v.get("kind").and_then(Value::as_str) {
            Some("square") => Ok(Geometry::Square { side: get("side")? }),
            Some("cellular") => Ok(Geometry::Cellular { cell: get("cell")?, grid: get("grid")? }),
            Some("generic") | None => Ok(Geometry::Generic),
            Some(k) => Err(Error::Parse(format!("unknown geometry kind `{k}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub coeff: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InteractionGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    geometry: Geometry,
}

impl InteractionGraph {
    /// Validating constructor: distinct labels, no self-loops, no repeated
    /// undirected edges, endpoints in range.
    pub fn new(labels: Vec<String>, edges: Vec<Edge>, geometry: Geometry) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = HashSet::new();
        for e in &edges {
            if e.a >= labels.len() || e.b >= labels.len() {
                return Err(Error::DanglingEndpoint(format!("#{}", e.a.max(e.b))));
            }
            if e.a == e.b {
                return Err(Error::InvalidEdge(format!("self-loop on `{}`", labels[e.a])));
            }
            if !pairs.insert((e.a.min(e.b), e.a.max(e.b))) {
                return Err(Error::InvalidEdge(format!(
                    "duplicate edge `{}`–`{}`",
                    labels[e.a], labels[e.b]
                )));
            }
        }
        Ok(InteractionGraph { labels, edges, geometry })
    }

    pub fn n_modes(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Adjacency lists (neighbour indices), in edge order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_modes()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        adj
    }

    /// Side length when the graph is a square lattice.
    pub fn square_side(&self) -> Result<usize> {
        match self.geometry {
            Geometry::Square { side } => Ok(side),
            g => Err(Error::Geometry(format!("expected a square lattice, got {g:?}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| json!([self.labels[e.a], self.labels[e.b], [e.coeff.re, e.coeff.im]]))
            .collect();
        json!({ "labels": self.labels, "edges": edges, "geometry": self.geometry.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let labels: Vec<String> = v
            .get("labels")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("graph is missing `labels`".into()))?
            .iter()
            .map(|l| {
                l.as_str().map(str::to_string).ok_or_else(|| Error::Parse(format!("bad label {l}")))
            })
            .collect::<Result<_>>()?;
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut edges = Vec::new();
        let raw = v.get("edges").and_then(Value::as_array).cloned().unwrap_or_default();
        for e in &raw {
            let bad = || Error::Parse(format!("malformed edge {e}"));
            let arr = e.as_array().ok_or_else(bad)?;
            if arr.len() < 2 || arr.len() > 3 {
                return Err(bad());
            }
            let end = |x: &Value| -> Result<usize> {
                let name = x.as_str().ok_or_else(bad)?;
                index.get(name).copied().ok_or_else(|| Error::DanglingEndpoint(name.to_string()))
            };
            let coeff = match arr.get(2) {
                None => Complex64::new(1.0, 0.0),
                Some(Value::Number(n)) => Complex64::new(n.as_f64().ok_or_else(bad)?, 0.0),
                Some(Value::Array(c)) if c.len() == 2 => Complex64::new(
                    c[0].as_f64().ok_or_else(bad)?,
                    c[1].as_f64().ok_or_else(bad)?,
                ),
                Some(_) => return Err(bad()),
            };
            edges.push(Edge { a: end(&arr[0])?, b: end(&arr[1])?, coeff });
        }
        InteractionGraph::new(labels, edges, Geometry::from_json(v.get("geometry"))?)
    }
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<InteractionGraph> {
    let text = std::fs::read_to_string(path)?;
    InteractionGraph::from_json(&serde_json::from_str(&text)?)
}

pub fn save_graph(g: &InteractionGraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(&g.to_json())? + "\n")?;
    Ok(())
}

fn grid_label(r: usize, c: usize) -> String {
    format!("{r},{c}")
}

pub fn square_lattice(side: usize) -> Result<InteractionGraph> {
    if side == 0 {
        return Err(Error::InvalidSize("square lattice side must be at least 1".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut labels = Vec::with_capacity(side * side);
    let mut edges = Vec::with_capacity(2 * side * (side - 1));
    for r in 0..side {
        for c in 0..side {
            labels.push(grid_label(r, c));
            let v = r * side + c;
            if c + 1 < side {
                edges.push(Edge { a: v, b: v + 1, coeff: one });
            }
            if r + 1 < side {
                edges.push(Edge { a: v, b: v + side, coeff: one });
            }
        }
    }
    InteractionGraph::new(labels, edges, Geometry::Square { side })
}

/// Grid of `grid × grid` disjoint `cell × cell` lattices. Each cell's top-left
/// vertex is joined to the nearest vertex of its left neighbour (that cell's
/// top-right corner) and of its upper neighbour (that cell's bottom-left
/// corner), so every pair of adjacent cells shares exactly one edge.
pub fn cellular_lattice(cell: usize, grid: usize) -> Result<InteractionGraph> {
    if cell < 2 || grid == 0 {
        return Err(Error::InvalidSize(format!(
            "cellular lattice needs cell ≥ 2 and grid ≥ 1, got ({cell}, {grid})"
        )));
    }
    let m = cell * grid;
    let one = Complex64::new(1.0, 0.0);
    let mut labels = Vec::with_capacity(m * m);
    let mut edges = Vec::new();
    for r in 0..m {
        for c in 0..m {
            labels.push(grid_label(r, c));
            let v = r * m + c;
            if c + 1 < m && (c + 1) % cell != 0 {
                edges.push(Edge { a: v, b: v + 1, coeff: one });
            }
            if r + 1 < m && (r + 1) % cell != 0 {
                edges.push(Edge { a: v, b: v + m, coeff: one });
            }
        }
    }
    for ci in 0..grid {
        for cj in 0..grid {
            let (r, c) = (ci * cell, cj * cell);
            let tl = r * m + c;
            if cj > 0 {
                edges.push(Edge { a: tl - 1, b: tl, coeff: one });
            }
            if ci > 0 {
                edges.push(Edge { a: tl - m, b: tl, coeff: one });
            }
        }
    }
    InteractionGraph::new(labels, edges, Geometry::Cellular { cell, grid })
}

/// Path graph `0 – 1 – … – n-1`.
pub fn path_graph(n: usize) -> Result<InteractionGraph> {
    if n == 0 {
        return Err(Error::InvalidSize("path needs at least one vertex".into()));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let edges = (1..n).map(|i| Edge { a: i - 1, b: i, coeff: Complex64::new(1.0, 0.0) }).collect();
    InteractionGraph::new(labels, edges, Geometry::Generic)
}

/// Bijection from graph vertices (by index) to qubit indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnumerationScheme {
    f: Vec<usize>,
}

impl EnumerationScheme {
    pub fn new(f: Vec<usize>) -> Result<Self> {
        let n = f.len();
        let mut seen = vec![false; n];
        for &v in &f {
            if v >= n || seen[v] {
                return Err(Error::SchemeMismatch(format!("not a bijection onto 0..{n}")));
            }
            seen[v] = true;
        }
        Ok(EnumerationScheme { f })
    }

    pub fn identity(n: usize) -> Self {
        EnumerationScheme { f: (0..n).collect() }
    }

    /// Row-major grid of labels; `grid[r][c]` is the index of vertex (r, c).
    pub fn from_grid(grid: &[Vec<usize>]) -> Result<Self> {
        EnumerationScheme::new(grid.iter().flatten().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn get(&self, v: usize) -> usize {
        self.f[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.f
    }

    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.f.len()];
        for (v, &i) in self.f.iter().enumerate() {
            inv[i] = v;
        }
        inv
    }

    /// Reshapes as a `side × side` grid.
    pub fn as_grid(&self, side: usize) -> Result<Vec<Vec<usize>>> {
        if side * side != self.f.len() {
            return Err(Error::Geometry(format!(
                "{} labels do not form a {side}×{side} grid",
                self.f.len()
            )));
        }
        Ok(self.f.chunks(side.max(1)).map(<[usize]>::to_vec).collect())
    }

    pub fn check_graph(&self, g: &InteractionGraph) -> Result<()> {
        if self.f.len() != g.n_modes() {
            return Err(Error::SchemeMismatch(format!(
                "scheme has {} entries, graph has {} modes",
                self.f.len(),
                g.n_modes()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self, g: &InteractionGraph) -> Result<Value> {
        self.check_graph(g)?;
        let map: BTreeMap<&str, usize> =
            g.labels().iter().map(String::as_str).zip(self.f.iter().copied()).collect();
        Ok(json!({ "assignment": map }))
    }

    pub fn from_json(v: &Value, g: &InteractionGraph) -> Result<Self> {
        let map = v
            .get("assignment")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("scheme is missing `assignment`".into()))?;
        if map.len() != g.n_modes() {
            return Err(Error::SchemeMismatch(format!(
                "assignment has {} labels, graph has {}",
                map.len(),
                g.n_modes()
            )));
        }
        let mut f = Vec::with_capacity(g.n_modes());
        for l in g.labels() {
            let idx = map
                .get(l)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::SchemeMismatch(format!("label `{l}` is not assigned")))?;
            f.push(idx as usize);
        }
        EnumerationScheme::new(f)
    }
}

pub fn load_scheme(path: impl AsRef<Path>, g: &InteractionGraph) -> Result<EnumerationScheme> {
    let text = std::fs::read_to_string(path)?;
    EnumerationScheme::from_json(&serde_json::from_str(&text)?, g)
}
