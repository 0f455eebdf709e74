//! Two-ancilla auxiliary Jordan–Wigner mapping on the N×N lattice.
//!
//! Data qubits follow the Mitchison–Durbin enumeration with corner parameter
//! `x`; two ancillas at indices `N²` and `N²+1` carry the stabilisers
//! `p₁ ⊗ Z_{N²}` and `p₂ ⊗ Z_{N²+1}`, where `p₁`, `p₂` are Z-strings that
//! bridge the long vertical gaps next to the two corner regions. Each hopping
//! string is first made to commute with both stabilisers (an X on the
//! ancilla of every stabiliser it anticommutes with) and is then multiplied
//! by whichever stabiliser combination lowers its weight.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::square_lattice;
use crate::mappings::{QubitHamiltonian, Term};
use crate::pauli::{Pauli, PauliString, Phase};
use crate::schemes::mitchison_durbin;

fn check_params(side: usize, x: usize) -> Result<()> {
    if side < 2 {
        return Err(Error::InvalidSize(format!("side must be at least 2, got {side}")));
    }
    if x < 1 || x > side / 2 {
        return Err(Error::OutOfRange(format!("x = {x} not in 1..={}", side / 2)));
    }
    Ok(())
}

/// Inclusive data-qubit spans of `p₁` and `p₂`:
/// `x(x−1)+1 ..= xN−1` and `(N−x)N ..= N²−x²+x−2`.
pub fn stabilizer_spans(side: usize, x: usize) -> Result<[(usize, usize); 2]> {
    check_params(side, x)?;
    let n = side;
    Ok([(x * (x - 1) + 1, x * n - 1), ((n - x) * n, n * n - x * x + x - 2)])
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuxMapping {
    pub side: usize,
    pub x: usize,
    /// `p₁ ⊗ Z_{N²}` on `N²+2` qubits.
    pub p1: PauliString,
    /// `p₂ ⊗ Z_{N²+1}` on `N²+2` qubits.
    pub p2: PauliString,
}

impl AuxMapping {
    pub fn new(side: usize, x: usize) -> Result<AuxMapping> {
        let (p1, p2) = stabilizers(side, x)?;
        Ok(AuxMapping { side, x, p1, p2 })
    }

    pub fn n_qubits(&self) -> usize {
        self.side * self.side + 2
    }

    pub fn aux_qubits(&self) -> [usize; 2] {
        let d = self.side * self.side;
        [d, d + 1]
    }
}

/// The two stabilisers, each including the Z on its own ancilla.
pub fn stabilizers(side: usize, x: usize) -> Result<(PauliString, PauliString)> {
    let spans = stabilizer_spans(side, x)?;
    let d = side * side;
    let n = d + 2;
    let mk = |(lo, hi): (usize, usize), aux: usize| {
        let mut p = PauliString::z_range(n, lo, hi);
        p.set(aux, Pauli::Z);
        p
    };
    Ok((mk(spans[0], d), mk(spans[1], d + 1)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuxHamiltonian {
    pub mapping: AuxMapping,
    pub hamiltonian: QubitHamiltonian,
    /// Weight of each hopping term (both of its strings share it), edge order.
    pub term_weights: Vec<usize>,
    /// Which stabilisers multiplied each hopping term, edge order.
    pub multiplied: Vec<[bool; 2]>,
}

impl AuxHamiltonian {
    pub fn total_weight(&self) -> usize {
        self.term_weights.iter().sum()
    }

    pub fn apv(&self) -> f64 {
        self.total_weight() as f64 / self.term_weights.len() as f64
    }

    pub fn max_weight(&self) -> usize {
        self.term_weights.iter().copied().max().unwrap_or(0)
    }
}

/// Adjusts one hopping string and returns the lightest stabiliser product.
/// Ties prefer fewer multiplications, so a stabiliser is used only when it
/// strictly lowers the weight.
fn reduce_string(h: &PauliString, m: &AuxMapping) -> Result<(PauliString, [bool; 2])> {
    let aux = m.aux_qubits();
    let mut t = h.clone();
    for (stab, q) in [(&m.p1, aux[0]), (&m.p2, aux[1])] {
        if h.anticommutes(stab)? {
            t = t.multiply(&PauliString::single(h.n_qubits(), q, Pauli::X))?;
        }
    }
    let mut best: Option<(usize, usize, PauliString, [bool; 2])> = None;
    for mask in [[false, false], [true, false], [false, true], [true, true]] {
        let mut c = t.clone();
        if mask[0] {
            c = c.multiply(&m.p1)?;
        }
        if mask[1] {
            c = c.multiply(&m.p2)?;
        }
        let key = (c.weight(), mask.iter().filter(|b| **b).count());
        if best.as_ref().is_none_or(|b| key < (b.0, b.1)) {
            best = Some((key.0, key.1, c, mask));
        }
    }
    let (_, _, s, mask) = best.unwrap();
    Ok((s, mask))
}

/// Builds the `N²+2`-qubit hopping Hamiltonian (unit real hoppings).
pub fn build_aux_hamiltonian(side: usize, x: usize) -> Result<AuxHamiltonian> {
    let mapping = AuxMapping::new(side, x)?;
    let g = square_lattice(side)?;
    let f = mitchison_durbin(side, Some(x))?;
    let n = mapping.n_qubits();
    let mut h = QubitHamiltonian::new(n);
    let mut term_weights = Vec::with_capacity(g.edge_count());
    let mut multiplied = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let (a, b) = (f.get(e.a).min(f.get(e.b)), f.get(e.a).max(f.get(e.b)));
        let mut weight = 0;
        let mut used = [false; 2];
        for (pa, pb) in [(Pauli::X, Pauli::X), (Pauli::Y, Pauli::Y)] {
            let mut s = if b > a + 1 { PauliString::z_range(n, a + 1, b - 1) } else { PauliString::identity(n) };
            s.set(a, pa);
            s.set(b, pb);
            let (r, mask) = reduce_string(&s, &mapping)?;
            debug_assert!(matches!(r.phase(), Phase::ONE | Phase::MINUS_ONE));
            weight = weight.max(r.weight());
            used = mask;
            h.push(Term::normalized(Complex64::new(0.5, 0.0), r));
        }
        term_weights.push(weight);
        multiplied.push(used);
    }
    Ok(AuxHamiltonian { mapping, hamiltonian: h, term_weights, multiplied })
}

/// Number of points covered an odd number of times by the inclusive
/// intervals, ignoring the points in `skip`.
fn odd_cover(intervals: &[(usize, usize)], skip: [usize; 2]) -> usize {
    let mut ev: Vec<usize> = Vec::with_capacity(2 * intervals.len());
    for &(lo, hi) in intervals {
        if lo <= hi {
            ev.push(lo);
            ev.push(hi + 1);
        }
    }
    ev.sort_unstable();
    // parity flips at every event; odd stretches sit between pairs
    let mut total = 0;
    for pair in ev.chunks(2) {
        if let [lo, hi] = *pair {
            total += hi - lo;
        }
    }
    let inside = |q: usize| ev.iter().filter(|&&e| e <= q).count() % 2 == 1;
    total - skip.iter().filter(|&&q| inside(q)).count()
}

/// Weight of the reduced hopping string between data qubits `a < b`, and the
/// stabilisers it is multiplied by; interval arithmetic only.
pub fn aux_term_weight(a: usize, b: usize, spans: &[(usize, usize); 2]) -> (usize, [bool; 2]) {
    let inside = |q: usize, s: (usize, usize)| s.0 <= q && q <= s.1;
    let anti = [0, 1].map(|i| inside(a, spans[i]) != inside(b, spans[i]));
    let run = if b > a + 1 { (a + 1, b - 1) } else { (1, 0) };
    let mut best = (usize::MAX, usize::MAX, [false, false]);
    for mask in [[false, false], [true, false], [false, true], [true, true]] {
        let mut iv = vec![run];
        for i in 0..2 {
            if mask[i] {
                iv.push(spans[i]);
            }
        }
        let data = 2 + odd_cover(&iv, [a, b]);
        let aux = (0..2).filter(|&i| anti[i] || mask[i]).count();
        let mults = mask.iter().filter(|m| **m).count();
        if (data + aux, mults) < (best.0, best.1) {
            best = (data + aux, mults, mask);
        }
    }
    (best.0, best.2)
}

/// Weight of every hopping term of the auxiliary mapping, in the edge order of
/// [`square_lattice`], without building strings.
pub fn aux_term_weights(side: usize, x: usize) -> Result<Vec<usize>> {
    let spans = stabilizer_spans(side, x)?;
    let f = mitchison_durbin(side, Some(x))?;
    let n = side;
    let mut out = Vec::with_capacity(2 * n * (n - 1));
    for r in 0..n {
        for c in 0..n {
            let u = f.get(r * n + c);
            for v in [(c + 1 < n).then(|| r * n + c + 1), (r + 1 < n).then(|| (r + 1) * n + c)]
                .into_iter()
                .flatten()
            {
                let w = f.get(v);
                out.push(aux_term_weight(u.min(w), u.max(w), &spans).0);
            }
        }
    }
    Ok(out)
}

/// Total hopping weight of the auxiliary mapping; agrees with
/// [`build_aux_hamiltonian`].
pub fn aux_total_weight(side: usize, x: usize) -> Result<u64> {
    Ok(aux_term_weights(side, x)?.into_iter().map(|w| w as u64).sum())
}

/// Analytic total weight with `K = min(⌊(N−x−1)/2⌋, N−2x+1)`; an upper bound
/// that ignores some savings inside the staircase block.
pub fn total_weight_formula(side: usize, x: usize) -> Result<i64> {
    check_params(side, x)?;
    let (n, x) = (side as i64, x as i64);
    let k = ((n - x - 1) / 2).min(n - 2 * x + 1);
    let span = n * x - x * (x - 1);
    let mut inner = 1 - (span - 1);
    for j in 1..x {
        inner += 2 * j - span;
    }
    for i in 1..=k {
        inner += ((2 + i) * x + i - 2) - (n * x + x + i - (x * x + i * x + 1));
    }
    inner += n + x - k - 1;
    Ok(crate::cost::md_edgesum(n, x) + 2 * n * (n - 1) + 2 * inner)
}

/// Rounded `(7 + N + √((15N² − 18N − 53)/3)) / 8`, clamped to
/// `(⌊(N+4)/3⌋, ⌊N/2⌋]` (to `⌊N/2⌋` when that range is empty). Below `N = 5`
/// the total-weight formula is scanned over every `x` instead.
pub fn optimal_x_aux(side: usize) -> usize {
    let hi = (side / 2).max(1);
    if side < 5 {
        return (1..=hi)
            .min_by_key(|&x| total_weight_formula(side.max(2), x).unwrap_or(i64::MAX))
            .unwrap_or(1);
    }
    let n = side as f64;
    let r = ((7.0 + n + ((15.0 * n * n - 18.0 * n - 53.0) / 3.0).sqrt()) / 8.0).round() as usize;
    let lo = ((side + 4) / 3 + 1).min(hi);
    r.clamp(lo, hi)
}

/// CNOTs in the circuit preparing the stabiliser state: `4(xN − x² + x − 1) + 2`.
pub fn cnot_count_v(side: usize, x: usize) -> Result<usize> {
    check_params(side, x)?;
    Ok(4 * (x * side - x * x + x - 1) + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cover_basics() {
        assert_eq!(odd_cover(&[(3, 7)], [0, 0]), 5);
        assert_eq!(odd_cover(&[(3, 7), (5, 9)], [100, 100]), 4);
        assert_eq!(odd_cover(&[(1, 0)], [0, 0]), 0);
        assert_eq!(odd_cover(&[(3, 7)], [3, 10]), 4);
    }

    #[test]
    fn spans_6_3() {
        assert_eq!(stabilizer_spans(6, 3).unwrap(), [(7, 17), (18, 28)]);
        assert_eq!(cnot_count_v(6, 3).unwrap(), 46);
        assert_eq!(cnot_count_v(2, 1).unwrap(), 6);
    }
}
