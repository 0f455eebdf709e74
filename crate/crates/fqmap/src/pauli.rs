//! Phased Pauli strings in symplectic form.
//!
//! A string is `i^k · P_0 ⊗ … ⊗ P_{n-1}` where each factor is one of the
//! Hermitian Paulis `I, X, Y, Z` encoded by an (x, z) bit pair, `Y = (1, 1)`.
//! Inputs written with the convention `Y = iσy` should go through
//! [`PauliString::from_paper_ops`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            _ => Err(Error::Parse(format!("unknown Pauli symbol `{c}`"))),
        }
    }

    /// 2×2 matrix, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }
}

/// Unit phase `i^k`, k in 0..4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Self {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    fn from_complex(c: Complex64) -> Option<Phase> {
        const TOL: f64 = 1e-9;
        [Phase::ONE, Phase::I, Phase::MINUS_ONE, Phase::MINUS_I]
            .into_iter()
            .find(|p| (p.to_complex() - c).norm() < TOL)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Phase,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { n, x: vec![0; words(n)], z: vec![0; words(n)], phase: Phase::ONE }
    }

    /// Builds a string from `(qubit, Pauli)` factors. Repeated qubits are
    /// multiplied left to right.
    pub fn from_ops(n: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut p = PauliString::identity(n);
        for &(q, op) in ops {
            if q >= n {
                return Err(Error::OutOfRange(format!("qubit {q} on {n} qubits")));
            }
            p = p.multiply(&PauliString::single(n, q, op))?;
        }
        Ok(p)
    }

    /// Factors in the convention where `Y` denotes `iσy`; the result is
    /// expressed with Hermitian Paulis and the extra `i` moved into the phase.
    pub fn from_paper_ops(n: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut p = PauliString::from_ops(n, ops)?;
        let ys = ops.iter().filter(|(_, op)| *op == Pauli::Y).count() as i64;
        p.phase = p.phase.mul(Phase::from_exponent(ys));
        Ok(p)
    }

    pub fn single(n: usize, q: usize, op: Pauli) -> Self {
        let mut p = PauliString::identity(n);
        p.set(q, op);
        p
    }

    /// `Z` on every qubit of the inclusive range `lo..=hi` (empty if lo > hi).
    pub fn z_range(n: usize, lo: usize, hi: usize) -> Self {
        let mut p = PauliString::identity(n);
        if lo <= hi {
            for q in lo..=hi {
                p.set(q, Pauli::Z);
            }
        }
        p
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    /// Overwrites the factor on qubit `q`; the phase is left untouched.
    pub fn set(&mut self, q: usize, op: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (xb, zb) = op.bits();
        let (w, b) = (q / 64, 1u64 << (q % 64));
        self.x[w] = if xb { self.x[w] | b } else { self.x[w] & !b };
        self.z[w] = if zb { self.z[w] | b } else { self.z[w] & !b };
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones() as usize).sum()
    }

    pub fn is_identity_pattern(&self) -> bool {
        self.weight() == 0
    }

    /// Non-identity factors in ascending qubit order.
    pub fn support(&self) -> Vec<(usize, Pauli)> {
        let mut out = Vec::new();
        for (w, (x, z)) in self.x.iter().zip(&self.z).enumerate() {
            let mut m = x | z;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                let q = w * 64 + b;
                out.push((q, self.get(q)));
                m &= m - 1;
            }
        }
        out
    }

    /// Same bit pattern, ignoring the phase.
    pub fn same_pattern(&self, other: &PauliString) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut k: i64 = self.phase.exponent() as i64 + other.phase.exponent() as i64;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            // XY = iZ, YZ = iX, ZX = iY and the reverse orders give -i.
            let plus = (x1 & !z1 & x2 & z2) | (x1 & z1 & !x2 & z2) | (!x1 & z1 & x2 & !z2);
            let minus = (x1 & z1 & x2 & !z2) | (!x1 & z1 & x2 & z2) | (x1 & !z1 & !x2 & z2);
            k += plus.count_ones() as i64 - minus.count_ones() as i64;
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        Ok(PauliString { n: self.n, x, z, phase: Phase::from_exponent(k) })
    }

    pub fn anticommutes(&self, other: &PauliString) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let ones: u32 = (0..self.x.len())
            .map(|w| ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones())
            .sum();
        Ok(ones % 2 == 1)
    }

    /// Tensor product `self ⊗ other` (other's qubits appended after self's).
    pub fn tensor(&self, other: &PauliString) -> PauliString {
        let mut out = PauliString::identity(self.n + other.n);
        for (q, op) in self.support() {
            out.set(q, op);
        }
        for (q, op) in other.support() {
            out.set(self.n + q, op);
        }
        out.phase = self.phase.mul(other.phase);
        out
    }

    /// Extends to `n` qubits with identities on the new qubits.
    pub fn extended(&self, n: usize) -> PauliString {
        assert!(n >= self.n);
        let mut out = PauliString::identity(n);
        for (q, op) in self.support() {
            out.set(q, op);
        }
        out.phase = self.phase;
        out
    }

    /// Dense `2^n × 2^n` matrix, qubit 0 being the most significant tensor
    /// factor. Intended for small oracles only.
    pub fn to_dense(&self) -> Result<Vec<Vec<Complex64>>> {
        if self.n > 12 {
            return Err(Error::Unsupported(format!("dense matrix on {} qubits", self.n)));
        }
        let dim = 1usize << self.n;
        let ph = self.phase.to_complex();
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for col in 0..dim {
            let mut row = 0usize;
            let mut amp = ph;
            for q in 0..self.n {
                let bit = self.n - 1 - q;
                let cb = (col >> bit) & 1;
                let mat = self.get(q).matrix();
                let rb = if self.x_bit(q) { cb ^ 1 } else { cb };
                amp *= mat[rb][cb];
                row |= rb << bit;
            }
            m[row][col] = amp;
        }
        Ok(m)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        term_json(self.phase.to_complex(), self)
    }

    pub fn from_json_value(v: &serde_json::Value, n: usize) -> Result<PauliString> {
        let (c, p) = term_from_json(v, n)?;
        let phase = Phase::from_complex(c)
            .ok_or_else(|| Error::Parse(format!("coefficient {c} is not a unit phase")))?;
        Ok(p.with_phase(phase))
    }

    /// Parses the sparse text form on `n` qubits.
    pub fn parse(s: &str, n: usize) -> Result<PauliString> {
        let (phase, body) = match s.split_once('*') {
            Some((c, b)) => {
                let ph = match c.trim() {
                    "1" | "+1" => Phase::ONE,
                    "-1" => Phase::MINUS_ONE,
                    "i" | "+i" => Phase::I,
                    "-i" => Phase::MINUS_I,
                    other => return Err(Error::Parse(format!("bad phase `{other}`"))),
                };
                (ph, b)
            }
            None => (Phase::ONE, s),
        };
        let mut ops = Vec::new();
        for tok in body.split_whitespace() {
            if tok == "I" {
                continue;
            }
            let mut chars = tok.chars();
            let op = Pauli::from_symbol(chars.next().unwrap())?;
            let q: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(format!("bad factor `{tok}`")))?;
            ops.push((q, op));
        }
        let mut p = PauliString::identity(n);
        for (q, op) in ops {
            if q >= n {
                return Err(Error::OutOfRange(format!("qubit {q} on {n} qubits")));
            }
            if p.get(q) != Pauli::I {
                return Err(Error::Parse(format!("qubit {q} repeated")));
            }
            p.set(q, op);
        }
        Ok(p.with_phase(phase))
    }

    /// Factor list without the phase, e.g. `X0 Z1 X2`, or `I`.
    pub fn pattern_string(&self) -> String {
        let s: Vec<String> =
            self.support().iter().map(|(q, op)| format!("{}{}", op.symbol(), q)).collect();
        if s.is_empty() {
            "I".to_string()
        } else {
            s.join(" ")
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}", self.phase, self.pattern_string())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Qubit count is inferred from the highest index present.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.split_once('*').map_or(s, |(_, b)| b);
        let mut n = 0;
        for tok in body.split_whitespace().filter(|t| *t != "I") {
            let q: usize =
                tok[1..].parse().map_err(|_| Error::Parse(format!("bad factor `{tok}`")))?;
            n = n.max(q + 1);
        }
        PauliString::parse(s, n.max(1))
    }
}

pub(crate) fn term_json(coeff: Complex64, p: &PauliString) -> serde_json::Value {
    let paulis: Vec<serde_json::Value> = p
        .support()
        .iter()
        .map(|(q, op)| serde_json::json!([q, op.symbol().to_string()]))
        .collect();
    serde_json::json!({ "coeff": [coeff.re, coeff.im], "paulis": paulis })
}

/// Returns the coefficient and a phase-free string.
pub(crate) fn term_from_json(v: &serde_json::Value, n: usize) -> Result<(Complex64, PauliString)> {
    let bad = || Error::Parse(format!("malformed term {v}"));
    let coeff = v.get("coeff").and_then(|c| c.as_array()).ok_or_else(bad)?;
    if coeff.len() != 2 {
        return Err(bad());
    }
    let re = coeff[0].as_f64().ok_or_else(bad)?;
    let im = coeff[1].as_f64().ok_or_else(bad)?;
    let mut p = PauliString::identity(n);
    for f in v.get("paulis").and_then(|p| p.as_array()).ok_or_else(bad)? {
        let arr = f.as_array().ok_or_else(bad)?;
        if arr.len() != 2 {
            return Err(bad());
        }
        let q = arr[0].as_u64().ok_or_else(bad)? as usize;
        let sym = arr[1].as_str().ok_or_else(bad)?;
        let op = Pauli::from_symbol(sym.chars().next().ok_or_else(bad)?)?;
        if q >= n {
            return Err(Error::OutOfRange(format!("qubit {q} on {n} qubits")));
        }
        p.set(q, op);
    }
    Ok((Complex64::new(re, im), p))
}
