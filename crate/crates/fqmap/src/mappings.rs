//! Majorana Gamma-sets (JW, BK, ternary tree) and the operator transforms
//! that lower a fermionic Hamiltonian to Pauli strings.
//!
//! Conventions: `|1⟩` is the occupied state, `a†a = ½(I − Z)`,
//! `Γ_{2i} = a_i + a_i†`, `Γ_{2i+1} = −i(a_i − a_i†)`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{EnumerationScheme, InteractionGraph};
use crate::pauli::{term_from_json, term_json, Pauli, PauliString, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaKind {
    JordanWigner,
    BravyiKitaev,
    TernaryTree,
}

impl fmt::Display for GammaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaKind::JordanWigner => "JW",
            GammaKind::BravyiKitaev => "BK",
            GammaKind::TernaryTree => "TT",
        })
    }
}

impl std::str::FromStr for GammaKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "JW" => Ok(GammaKind::JordanWigner),
            "BK" => Ok(GammaKind::BravyiKitaev),
            "TT" => Ok(GammaKind::TernaryTree),
            _ => Err(Error::Parse(format!("unknown mapping kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub kind: GammaKind,
    pub n_modes: usize,
    pub strings: Vec<PauliString>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Γ_i and Γ_j commute.
    Commute(usize, usize),
    /// Γ_i does not square to the identity.
    NotInvolution(usize),
    WrongCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

fn jw_set(n: usize) -> Vec<PauliString> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        for op in [Pauli::X, Pauli::Y] {
            let mut p = if i == 0 { PauliString::identity(n) } else { PauliString::z_range(n, 0, i - 1) };
            p.set(i, op);
            out.push(p);
        }
    }
    out
}

// Fenwick-tree index sets, 0-based.
fn update_set(j: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = j + 1;
    i += i & i.wrapping_neg();
    while i <= n {
        out.push(i - 1);
        i += i & i.wrapping_neg();
    }
    out
}

fn parity_set(j: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = j;
    while i > 0 {
        out.push(i - 1);
        i &= i - 1;
    }
    out
}

/// Children of `j` in the Fenwick tree (the flip set).
fn flip_set(j: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let i = j + 1;
    let parent = i & (i - 1);
    let mut k = i - 1;
    while k != parent {
        out.push(k - 1);
        k &= k - 1;
    }
    out
}

fn bk_set(n: usize) -> Vec<PauliString> {
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let u = update_set(j, n);
        let p = parity_set(j);
        let flip = flip_set(j);
        let mut even = PauliString::identity(n);
        even.set(j, Pauli::X);
        for &q in &u {
            even.set(q, Pauli::X);
        }
        for &q in &p {
            even.set(q, Pauli::Z);
        }
        // remainder set: parity set minus the flip set
        let mut odd = PauliString::identity(n);
        odd.set(j, Pauli::Y);
        for &q in &u {
            odd.set(q, Pauli::X);
        }
        for &q in p.iter().filter(|q| !flip.contains(q)) {
            odd.set(q, Pauli::Z);
        }
        out.push(even);
        out.push(odd);
    }
    out
}

/// Heap-ordered ternary tree on `n` qubits; node `k` has children
/// `3k+1, 3k+2, 3k+3` reached along X, Y, Z. Every free child slot is a leaf
/// whose string is the product of branch labels on its root path. Leaves are
/// collected left to right, so the last one is the all-Z path; it is dropped,
/// leaving `2n` strings.
fn tt_set(n: usize) -> Vec<PauliString> {
    fn walk(node: usize, prefix: &PauliString, n: usize, out: &mut Vec<PauliString>) {
        for (b, op) in [Pauli::X, Pauli::Y, Pauli::Z].into_iter().enumerate() {
            let mut p = prefix.clone();
            p.set(node, op);
            let child = 3 * node + 1 + b;
            if child < n {
                walk(child, &p, n, out);
            } else {
                out.push(p);
            }
        }
    }
    let mut out = Vec::with_capacity(2 * n + 1);
    walk(0, &PauliString::identity(n), n, &mut out);
    out.pop();
    out
}

pub fn gamma_set(kind: GammaKind, n: usize) -> Result<GammaSet> {
    if n == 0 {
        return Err(Error::InvalidSize("a Gamma-set needs at least one mode".into()));
    }
    let strings = match kind {
        GammaKind::JordanWigner => jw_set(n),
        GammaKind::BravyiKitaev => bk_set(n),
        GammaKind::TernaryTree => tt_set(n),
    };
    let gs = GammaSet { kind, n_modes: n, strings };
    let report = verify_gamma_set(&gs);
    if !report.ok {
        return Err(Error::Unsupported(format!(
            "{kind} construction on {n} modes failed verification: {:?}",
            report.violations
        )));
    }
    Ok(gs)
}

/// Checks that all `2n` strings square to the identity and pairwise
/// anticommute.
pub fn verify_gamma_set(gs: &GammaSet) -> GammaReport {
    let mut violations = Vec::new();
    if gs.strings.len() != 2 * gs.n_modes {
        violations.push(Violation::WrongCount { expected: 2 * gs.n_modes, found: gs.strings.len() });
    }
    for (i, a) in gs.strings.iter().enumerate() {
        match a.multiply(a) {
            Ok(sq) if sq.is_identity_pattern() && sq.phase() == Phase::ONE => {}
            _ => violations.push(Violation::NotInvolution(i)),
        }
        for (j, b) in gs.strings.iter().enumerate().skip(i + 1) {
            if !a.anticommutes(b).unwrap_or(false) {
                violations.push(Violation::Commute(i, j));
            }
        }
    }
    GammaReport { ok: violations.is_empty(), violations }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub string: PauliString,
}

impl Term {
    /// Moves the string's phase into the coefficient.
    pub fn normalized(coeff: Complex64, string: PauliString) -> Term {
        let ph = string.phase().to_complex();
        Term { coeff: coeff * ph, string: string.with_phase(Phase::ONE) }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct QubitHamiltonian {
    pub n_qubits: usize,
    pub terms: Vec<Term>,
}

const ZERO_TOL: f64 = 1e-15;

impl QubitHamiltonian {
    pub fn new(n_qubits: usize) -> Self {
        QubitHamiltonian { n_qubits, terms: Vec::new() }
    }

    pub fn push(&mut self, t: Term) {
        if t.coeff.norm() > ZERO_TOL {
            self.terms.push(t);
        }
    }

    pub fn extend(&mut self, ts: impl IntoIterator<Item = Term>) {
        for t in ts {
            self.push(t);
        }
    }

    /// Sums coefficients of equal strings (first-appearance order).
    pub fn simplified(&self) -> QubitHamiltonian {
        let mut order: Vec<PauliString> = Vec::new();
        let mut acc: BTreeMap<usize, Complex64> = BTreeMap::new();
        let mut index = std::collections::HashMap::new();
        for t in &self.terms {
            let key = t.string.clone().with_phase(Phase::ONE);
            let c = t.coeff * t.string.phase().to_complex();
            let k = *index.entry(key.clone()).or_insert_with(|| {
                order.push(key);
                order.len() - 1
            });
            *acc.entry(k).or_default() += c;
        }
        let mut out = QubitHamiltonian::new(self.n_qubits);
        for (k, c) in acc {
            out.push(Term { coeff: c, string: order[k].clone() });
        }
        out
    }

    /// Hermitian iff, after merging equal strings, every coefficient of a
    /// Hermitian string is real.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.simplified().terms.iter().all(|t| t.coeff.im.abs() <= tol)
    }

    pub fn to_dense(&self) -> Result<Vec<Vec<Complex64>>> {
        let dim = 1usize << self.n_qubits;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for t in &self.terms {
            let d = t.string.to_dense()?;
            for (row, drow) in m.iter_mut().zip(d) {
                for (v, dv) in row.iter_mut().zip(drow) {
                    *v += t.coeff * dv;
                }
            }
        }
        Ok(m)
    }

    pub fn weights(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.string.weight()).collect()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|t| term_json(t.coeff, &t.string)).collect();
        json!({ "n_qubits": self.n_qubits, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<QubitHamiltonian> {
        let n = v
            .get("n_qubits")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("hamiltonian is missing `n_qubits`".into()))? as usize;
        let mut h = QubitHamiltonian::new(n);
        for t in v.get("terms").and_then(Value::as_array).cloned().unwrap_or_default() {
            let (coeff, string) = term_from_json(&t, n)?;
            h.terms.push(Term { coeff, string });
        }
        Ok(h)
    }
}

fn hopping_strings(n: usize, i: usize, j: usize) -> [PauliString; 4] {
    let z = if j > i + 1 { PauliString::z_range(n, i + 1, j - 1) } else { PauliString::identity(n) };
    let mk = |a: Pauli, b: Pauli| {
        let mut p = z.clone();
        p.set(i, a);
        p.set(j, b);
        p
    };
    [mk(Pauli::X, Pauli::X), mk(Pauli::Y, Pauli::Y), mk(Pauli::Y, Pauli::X), mk(Pauli::X, Pauli::Y)]
}

/// `c a†_α a_β + c* a†_β a_α` under the Jordan–Wigner transform with
/// enumeration `scheme`. Real coefficients give the two strings
/// `½c (X Z…Z X + Y Z…Z Y)`; an imaginary part adds `½Im(c)(Y Z…Z X − X Z…Z Y)`
/// (qubit order `min f < max f`).
pub fn transform_hopping(scheme: &EnumerationScheme, alpha: usize, beta: usize, coeff: Complex64) -> Result<Vec<Term>> {
    if alpha == beta {
        return Err(Error::InvalidEdge("a hopping term needs two distinct modes".into()));
    }
    let n = scheme.len();
    if alpha >= n || beta >= n {
        return Err(Error::SchemeMismatch(format!("mode out of range for {n} modes")));
    }
    let (fa, fb) = (scheme.get(alpha), scheme.get(beta));
    // rewrite as c' a†_i a_j + h.c. with i < j
    let (i, j, c) = if fa < fb { (fa, fb, coeff) } else { (fb, fa, coeff.conj()) };
    let [xx, yy, yx, xy] = hopping_strings(n, i, j);
    let half = 0.5;
    let mut out = Vec::with_capacity(4);
    for (k, s) in [(c.re * half, xx), (c.re * half, yy), (c.im * half, yx), (-c.im * half, xy)] {
        if k.abs() > ZERO_TOL {
            out.push(Term { coeff: Complex64::new(k, 0.0), string: s });
        }
    }
    Ok(out)
}

/// `c a†a` on mode α: `½c I − ½c Z_{f(α)}`.
pub fn transform_number(scheme: &EnumerationScheme, alpha: usize, coeff: Complex64) -> Result<Vec<Term>> {
    let n = scheme.len();
    if alpha >= n {
        return Err(Error::SchemeMismatch(format!("mode {alpha} out of range for {n} modes")));
    }
    if coeff.norm() <= ZERO_TOL {
        return Ok(Vec::new());
    }
    Ok(vec![
        Term { coeff: coeff * 0.5, string: PauliString::identity(n) },
        Term { coeff: -coeff * 0.5, string: PauliString::single(n, scheme.get(alpha), Pauli::Z) },
    ])
}

/// `c n_α n_β = ¼c (I − Z_{f(α)})(I − Z_{f(β)})`.
pub fn transform_quartic(scheme: &EnumerationScheme, alpha: usize, beta: usize, coeff: Complex64) -> Result<Vec<Term>> {
    if alpha == beta {
        return Err(Error::InvalidEdge("use transform_number for a single mode".into()));
    }
    let n = scheme.len();
    if alpha >= n || beta >= n {
        return Err(Error::SchemeMismatch(format!("mode out of range for {n} modes")));
    }
    if coeff.norm() <= ZERO_TOL {
        return Ok(Vec::new());
    }
    let (qa, qb) = (scheme.get(alpha), scheme.get(beta));
    let q = coeff * 0.25;
    let mut zz = PauliString::single(n, qa, Pauli::Z);
    zz.set(qb, Pauli::Z);
    Ok(vec![
        Term { coeff: q, string: PauliString::identity(n) },
        Term { coeff: -q, string: PauliString::single(n, qa, Pauli::Z) },
        Term { coeff: -q, string: PauliString::single(n, qb, Pauli::Z) },
        Term { coeff: q, string: zz },
    ])
}

/// Hopping terms of every edge in edge order, followed (when
/// `quartic` is given) by a density–density term of that strength per edge.
pub fn build_hamiltonian(g: &InteractionGraph, scheme: &EnumerationScheme, quartic: Option<f64>) -> Result<QubitHamiltonian> {
    scheme.check_graph(g)?;
    let mut h = QubitHamiltonian::new(g.n_modes());
    for e in g.edges() {
        h.extend(transform_hopping(scheme, e.a, e.b, e.coeff)?);
    }
    if let Some(u) = quartic {
        for e in g.edges() {
            h.extend(transform_quartic(scheme, e.a, e.b, Complex64::new(u, 0.0))?);
        }
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoppingWeights {
    /// Weights of Γ_{f(2i)}Γ_{f(2j)}, Γ_{f(2i)}Γ_{f(2j+1)}, Γ_{f(2i+1)}Γ_{f(2j)},
    /// Γ_{f(2i+1)}Γ_{f(2j+1)}.
    pub products: [usize; 4],
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

/// Weights of the Majorana products making up the hopping term between
/// modes `i` and `j` when Majorana `k` is sent to `Γ_{f(k)}`.
pub fn hopping_weight_under_mapping(kind: GammaKind, majorana_scheme: &[usize], i: usize, j: usize) -> Result<HoppingWeights> {
    let m = majorana_scheme.len();
    if m % 2 != 0 {
        return Err(Error::SchemeMismatch("Majorana scheme must have even length".into()));
    }
    EnumerationScheme::new(majorana_scheme.to_vec())?;
    let n = m / 2;
    if i >= n || j >= n || i == j {
        return Err(Error::OutOfRange(format!("modes ({i}, {j}) on {n} modes")));
    }
    let gs = gamma_set(kind, n)?;
    let g = |k: usize| &gs.strings[majorana_scheme[k]];
    let mut products = [0; 4];
    for (slot, (a, b)) in [(2 * i, 2 * j), (2 * i, 2 * j + 1), (2 * i + 1, 2 * j), (2 * i + 1, 2 * j + 1)]
        .into_iter()
        .enumerate()
    {
        products[slot] = g(a).multiply(g(b))?.weight();
    }
    Ok(HoppingWeights {
        products,
        min: *products.iter().min().unwrap(),
        max: *products.iter().max().unwrap(),
        mean: products.iter().sum::<usize>() as f64 / 4.0,
    })
}
