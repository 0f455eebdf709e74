//! Named enumeration patterns for lattice graphs and the H/V normaliser.
//!
//! Square-lattice schemes index vertex (r, c) as `r*N + c`, matching
//! [`crate::graph::square_lattice`].

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::EnumerationScheme;

fn check_side(side: usize) -> Result<()> {
    if side == 0 {
        return Err(Error::InvalidSize("lattice side must be at least 1".into()));
    }
    Ok(())
}

/// Row-major order.
pub fn z_pattern(side: usize) -> Result<EnumerationScheme> {
    check_side(side)?;
    Ok(EnumerationScheme::identity(side * side))
}

/// Boustrophedon: even rows left to right, odd rows right to left.
pub fn s_pattern(side: usize) -> Result<EnumerationScheme> {
    check_side(side)?;
    let mut f = vec![0; side * side];
    for r in 0..side {
        for c in 0..side {
            let cc = if r % 2 == 0 { c } else { side - 1 - c };
            f[r * side + c] = r * side + cc;
        }
    }
    EnumerationScheme::new(f)
}

/// Anti-diagonals `r + c = k` in ascending k, ascending row within each.
pub fn diagonal_pattern(side: usize) -> Result<EnumerationScheme> {
    check_side(side)?;
    let mut f = vec![0; side * side];
    let mut label = 0;
    for k in 0..(2 * side - 1) {
        let r0 = k.saturating_sub(side - 1);
        for r in r0..=k.min(side - 1) {
            f[r * side + (k - r)] = label;
            label += 1;
        }
    }
    EnumerationScheme::new(f)
}

/// Nearest integer to `N − ½√(2N² − 2N + 4/3)`, clamped to `[1, ⌊N/2⌋]`.
pub fn optimal_x_md(side: usize) -> usize {
    let n = side as f64;
    let x = (n - 0.5 * (2.0 * n * n - 2.0 * n + 4.0 / 3.0).sqrt()).round();
    (x.max(1.0) as usize).min((side / 2).max(1))
}

/// Corner square: shell k fills column k above the diagonal, then row k.
fn corner_square(x: usize) -> Vec<Vec<usize>> {
    let mut g = vec![vec![0; x]; x];
    let mut l = 0;
    for k in 0..x {
        for row in g.iter_mut().take(k) {
            row[k] = l;
            l += 1;
        }
        for c in 0..=k {
            g[k][c] = l;
            l += 1;
        }
    }
    g
}

/// Lower-left block: top row first, the (x−1)-block below it recursively,
/// the right column last.
fn staircase_block(x: usize) -> Vec<Vec<usize>> {
    if x == 0 {
        return Vec::new();
    }
    let mut g = vec![vec![0; x]; x];
    for (c, v) in g[0].iter_mut().enumerate() {
        *v = c;
    }
    let sub = staircase_block(x - 1);
    for r in 0..x - 1 {
        for c in 0..x - 1 {
            g[r + 1][c] = sub[r][c] + x;
        }
    }
    let base = x * x - (x - 1);
    for r in 1..x {
        g[r][x - 1] = base + r - 1;
    }
    g
}

/// Edgesum-optimal pattern for the N×N lattice.
///
/// The left `x` columns (corner square, middle band, staircase block) take
/// the first `Nx` labels, the middle columns follow top to bottom, and the
/// right `x` columns are the point reflection of the left ones.
pub fn mitchison_durbin(side: usize, x: Option<usize>) -> Result<EnumerationScheme> {
    if side < 2 {
        return Err(Error::InvalidSize(format!("side must be at least 2, got {side}")));
    }
    let x = x.unwrap_or_else(|| optimal_x_md(side));
    if x < 1 || x > side / 2 {
        return Err(Error::OutOfRange(format!("x = {x} not in 1..={}", side / 2)));
    }
    let n = side;
    let mut g = vec![vec![0usize; n]; n];
    for (r, row) in corner_square(x).into_iter().enumerate() {
        g[r][..x].copy_from_slice(&row);
    }
    let mut l = x * x;
    for row in g.iter_mut().take(n - x).skip(x) {
        for v in row.iter_mut().take(x) {
            *v = l;
            l += 1;
        }
    }
    for (r, row) in staircase_block(x).into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            g[n - x + r][c] = v + l;
        }
    }
    l += x * x;
    for c in x..n - x {
        for row in g.iter_mut() {
            row[c] = l;
            l += 1;
        }
    }
    for r in 0..n {
        for c in n - x..n {
            g[r][c] = n * n - 1 - g[n - 1 - r][n - 1 - c];
        }
    }
    EnumerationScheme::from_grid(&g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellularVariant {
    /// Row-major over the whole (nN)×(nN) grid.
    Z,
    /// Boustrophedon over the whole grid.
    S,
    /// Cell by cell, cells in row-major order.
    ZPrime,
    /// Cell by cell, cells in boustrophedon order.
    SPrime,
}

/// Local row pattern (Z or S) after an optional transpose and flips.
fn local_pattern(n: usize, snake: bool, transpose: bool, flip_r: bool, flip_c: bool) -> Vec<usize> {
    let mut g = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            let v = r * n + if !snake || r % 2 == 0 { c } else { n - 1 - c };
            let mut rr = if flip_r { n - 1 - r } else { r };
            let mut cc = if flip_c { n - 1 - c } else { c };
            if transpose {
                std::mem::swap(&mut rr, &mut cc);
            }
            g[rr * n + cc] = v;
        }
    }
    g
}

fn local_edgesum(n: usize, g: &[usize]) -> i64 {
    let mut s = 0i64;
    for r in 0..n {
        for c in 0..n {
            let v = g[r * n + c] as i64;
            if c + 1 < n {
                s += (v - g[r * n + c + 1] as i64).abs();
            }
            if r + 1 < n {
                s += (v - g[(r + 1) * n + c] as i64).abs();
            }
        }
    }
    s
}

/// Enumeration of the cellular lattice built by
/// [`crate::graph::cellular_lattice`].
///
/// The primed variants enumerate each cell completely before the next. Each
/// cell picks its local row pattern (Z or S, any of the eight grid
/// symmetries) so that the labels on its connector corners shorten the
/// inter-cell edges as much as possible, the first candidate winning ties.
pub fn cellular_pattern(cell: usize, grid: usize, variant: CellularVariant) -> Result<EnumerationScheme> {
    if cell < 2 || grid == 0 {
        return Err(Error::InvalidSize("cellular pattern needs cell ≥ 2, grid ≥ 1".into()));
    }
    let m = cell * grid;
    match variant {
        CellularVariant::Z => return z_pattern(m),
        CellularVariant::S => return s_pattern(m),
        _ => {}
    }
    let snake_cells = variant == CellularVariant::SPrime;
    let order = |ci: usize, cj: usize| -> usize {
        let cj = if snake_cells && ci % 2 == 1 { grid - 1 - cj } else { cj };
        ci * grid + cj
    };
    let mut candidates = Vec::new();
    for snake in [false, true] {
        for t in [false, true] {
            for fr in [false, true] {
                for fc in [false, true] {
                    candidates.push(local_pattern(cell, snake, t, fr, fc));
                }
            }
        }
    }
    let n = cell;
    let (tl, tr, bl) = (0, n - 1, (n - 1) * n);
    let mut f = vec![0; m * m];
    for ci in 0..grid {
        for cj in 0..grid {
            let k = order(ci, cj);
            // (corner, neighbour cell order) for every connector at this cell
            let mut links = Vec::new();
            if cj > 0 {
                links.push((tl, order(ci, cj - 1)));
            }
            if ci > 0 {
                links.push((tl, order(ci - 1, cj)));
            }
            if cj + 1 < grid {
                links.push((tr, order(ci, cj + 1)));
            }
            if ci + 1 < grid {
                links.push((bl, order(ci + 1, cj)));
            }
            let score = |g: &Vec<usize>| -> i64 {
                let mut s = local_edgesum(n, g);
                for &(corner, other) in &links {
                    let l = g[corner] as i64;
                    s += if other < k { l } else { -l };
                }
                s
            };
            let mut best = &candidates[0];
            let mut best_score = score(best);
            for cand in &candidates[1..] {
                let sc = score(cand);
                if sc < best_score {
                    best = cand;
                    best_score = sc;
                }
            }
            for r in 0..n {
                for c in 0..n {
                    f[(ci * n + r) * m + cj * n + c] = k * n * n + best[r * n + c];
                }
            }
        }
    }
    EnumerationScheme::new(f)
}

/// Uniformly random bijection on `n` vertices, reproducible per seed.
pub fn random_scheme(n: usize, seed: u64) -> EnumerationScheme {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f: Vec<usize> = (0..n).collect();
    f.shuffle(&mut rng);
    EnumerationScheme::new(f).expect("shuffle is a bijection")
}

/// Rows increase left to right and columns increase top to bottom.
pub fn is_hv_ordered(scheme: &EnumerationScheme, side: usize) -> Result<bool> {
    let g = scheme.as_grid(side)?;
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side && g[r][c] > g[r][c + 1] {
                return Ok(false);
            }
            if r + 1 < side && g[r][c] > g[r + 1][c] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sorts every row ascending, then every column ascending. The result is
/// H/V-ordered and never has a larger p-sum than the input.
pub fn hv_normalize(scheme: &EnumerationScheme, side: usize) -> Result<EnumerationScheme> {
    let mut g = scheme.as_grid(side)?;
    for row in g.iter_mut() {
        row.sort_unstable();
    }
    for c in 0..side {
        let mut col: Vec<usize> = g.iter().map(|row| row[c]).collect();
        col.sort_unstable();
        for (row, v) in g.iter_mut().zip(col) {
            row[c] = v;
        }
    }
    EnumerationScheme::from_grid(&g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids() {
        assert_eq!(z_pattern(2).unwrap().as_slice(), &[0, 1, 2, 3]);
        assert_eq!(s_pattern(2).unwrap().as_slice(), &[0, 1, 3, 2]);
        assert_eq!(diagonal_pattern(2).unwrap().as_slice(), &[0, 1, 2, 3]);
        assert_eq!(diagonal_pattern(3).unwrap().as_slice(), &[0, 1, 3, 2, 4, 6, 5, 7, 8]);
    }

    #[test]
    fn optimal_x_examples() {
        assert_eq!(optimal_x_md(20), 6);
        assert_eq!(optimal_x_md(3), 1);
        assert_eq!(optimal_x_md(7), 2);
        assert_eq!(optimal_x_md(2), 1);
    }

    #[test]
    fn md_rejects_bad_x() {
        assert!(mitchison_durbin(6, Some(4)).is_err());
        assert!(mitchison_durbin(6, Some(0)).is_err());
    }
}
