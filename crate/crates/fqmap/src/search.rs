//! Exact and heuristic minimisation of p-sums over enumeration schemes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::{p_power_sum, p_sum};
use crate::error::{Error, Result};
use crate::graph::{EnumerationScheme, InteractionGraph};
use crate::schemes::{hv_normalize, random_scheme};

pub const BRUTE_FORCE_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    Anneal,
    LocalSearch,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::BruteForce => "brute",
            Method::Anneal => "anneal",
            Method::LocalSearch => "local",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_scheme: EnumerationScheme,
    /// Rooted p-sum of `best_scheme` (the edgesum when p = 1).
    pub best_cost: f64,
    pub method: Method,
    /// Cost evaluations: partial assignments for branch and bound, proposed
    /// moves for the heuristics.
    pub evaluations: u64,
    pub seed: u64,
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0) || p.is_infinite() {
        return Err(Error::OutOfRange(format!("p must be positive and finite, got {p}")));
    }
    Ok(())
}

fn dist_cost(d: usize, p: f64) -> f64 {
    if p == 1.0 {
        d as f64
    } else {
        (d as f64).powf(p)
    }
}

struct Bnb<'a> {
    adj: &'a [Vec<usize>],
    p: f64,
    n: usize,
    f: Vec<usize>,
    used: Vec<bool>,
    best: f64,
    best_f: Vec<usize>,
    evaluations: u64,
}

impl Bnb<'_> {
    /// Lower bound for the edges not yet fully fixed after the first `k`
    /// vertices are placed: each such edge costs at least the distance from
    /// its placed endpoint to the nearest free label, or 1 if neither end is
    /// placed.
    fn bound(&self, k: usize) -> f64 {
        let mut lb = 0.0;
        for v in k..self.n {
            for &u in &self.adj[v] {
                if u < k {
                    let fu = self.f[u];
                    let mut d = usize::MAX;
                    for (lab, &taken) in self.used.iter().enumerate() {
                        if !taken {
                            d = d.min(lab.abs_diff(fu));
                        }
                    }
                    lb += dist_cost(d, self.p);
                } else if u > v {
                    lb += dist_cost(1, self.p);
                }
            }
        }
        lb
    }

    fn go(&mut self, k: usize, partial: f64) {
        if k == self.n {
            if partial < self.best {
                self.best = partial;
                self.best_f = self.f.clone();
            }
            return;
        }
        for lab in 0..self.n {
            if self.used[lab] {
                continue;
            }
            let mut add = 0.0;
            for &u in &self.adj[k] {
                if u < k {
                    add += dist_cost(lab.abs_diff(self.f[u]), self.p);
                }
            }
            let cost = partial + add;
            self.evaluations += 1;
            if cost >= self.best {
                continue;
            }
            self.f[k] = lab;
            self.used[lab] = true;
            if cost + self.bound(k + 1) < self.best {
                self.go(k + 1, cost);
            }
            self.used[lab] = false;
        }
    }
}

/// Exhaustive branch and bound over all `n!` schemes (`n ≤ 10`). Vertices are
/// labelled in index order with labels tried in ascending order, so the
/// lexicographically smallest optimal scheme is returned.
pub fn brute_force_min(g: &InteractionGraph, p: f64) -> Result<SearchResult> {
    check_p(p)?;
    let n = g.n_modes();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded { n, cap: BRUTE_FORCE_CAP });
    }
    let adj = g.adjacency();
    let mut s = Bnb {
        adj: &adj,
        p,
        n,
        f: vec![0; n],
        used: vec![false; n],
        best: f64::INFINITY,
        best_f: (0..n).collect(),
        evaluations: 0,
    };
    if n > 0 {
        s.go(0, 0.0);
    }
    let best_scheme = EnumerationScheme::new(s.best_f)?;
    Ok(SearchResult {
        best_cost: p_sum(g, &best_scheme, p)?,
        best_scheme,
        method: Method::BruteForce,
        evaluations: s.evaluations,
        seed: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealParams {
    pub iterations: u64,
    pub t_start: f64,
    pub t_end: f64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams { iterations: 200_000, t_start: 30.0, t_end: 0.1 }
    }
}

/// Cost change of swapping the labels of `u` and `v`.
fn swap_delta(adj: &[Vec<usize>], f: &[usize], u: usize, v: usize, p: f64) -> f64 {
    let (fu, fv) = (f[u], f[v]);
    let label = |w: usize| if w == u { fv } else if w == v { fu } else { f[w] };
    let mut d = 0.0;
    for &w in &adj[u] {
        if w != v {
            d += dist_cost(fv.abs_diff(label(w)), p) - dist_cost(fu.abs_diff(f[w]), p);
        }
    }
    for &w in &adj[v] {
        if w != u {
            d += dist_cost(fu.abs_diff(label(w)), p) - dist_cost(fv.abs_diff(f[w]), p);
        }
    }
    d
}

/// Simulated annealing over label transpositions with geometric cooling and
/// Metropolis acceptance. Starts from `init` or from a seeded random scheme
/// and returns the best scheme seen.
pub fn anneal(
    g: &InteractionGraph,
    p: f64,
    params: AnnealParams,
    seed: u64,
    init: Option<&EnumerationScheme>,
) -> Result<SearchResult> {
    check_p(p)?;
    let n = g.n_modes();
    let start = match init {
        Some(s) => {
            s.check_graph(g)?;
            s.clone()
        }
        None => random_scheme(n, seed),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let adj = g.adjacency();
    let mut f = start.as_slice().to_vec();
    let mut cur = p_power_sum(g, &start, p)?;
    let mut best = cur;
    let mut best_f = f.clone();
    let mut evaluations = 1u64;
    if n >= 2 && params.iterations > 0 {
        let ratio = (params.t_end / params.t_start).max(f64::MIN_POSITIVE);
        for it in 0..params.iterations {
            let t = params.t_start * ratio.powf(it as f64 / params.iterations as f64);
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            let d = swap_delta(&adj, &f, u, v, p);
            evaluations += 1;
            if d <= 0.0 || rng.gen::<f64>() < (-d / t).exp() {
                f.swap(u, v);
                cur += d;
                if cur < best - 1e-9 {
                    best = cur;
                    best_f.clone_from(&f);
                }
            }
        }
    }
    let best_scheme = EnumerationScheme::new(best_f)?;
    Ok(SearchResult {
        best_cost: p_sum(g, &best_scheme, p)?,
        best_scheme,
        method: Method::Anneal,
        evaluations,
        seed,
    })
}

/// Steepest pairwise-swap descent alternated with H/V normalisation until
/// neither move improves the p-sum. The cost trace is non-increasing.
pub fn lattice_local_search(g: &InteractionGraph, init: &EnumerationScheme, p: f64) -> Result<SearchResult> {
    check_p(p)?;
    let side = g.square_side()?;
    init.check_graph(g)?;
    let adj = g.adjacency();
    let n = g.n_modes();
    let mut cur_s = init.clone();
    let mut cur = p_power_sum(g, &cur_s, p)?;
    let mut evaluations = 1u64;
    const EPS: f64 = 1e-9;
    loop {
        let mut improved = false;
        let mut f = cur_s.as_slice().to_vec();
        loop {
            let mut best = (0.0, 0, 0);
            for u in 0..n {
                for v in u + 1..n {
                    let d = swap_delta(&adj, &f, u, v, p);
                    evaluations += 1;
                    if d < best.0 - EPS {
                        best = (d, u, v);
                    }
                }
            }
            if best.0 < -EPS {
                f.swap(best.1, best.2);
                cur += best.0;
                improved = true;
            } else {
                break;
            }
        }
        cur_s = EnumerationScheme::new(f)?;
        let normal = hv_normalize(&cur_s, side)?;
        let nc = p_power_sum(g, &normal, p)?;
        evaluations += 1;
        if nc < cur - EPS {
            cur_s = normal;
            cur = nc;
            improved = true;
        }
        if !improved {
            break;
        }
    }
    Ok(SearchResult {
        best_cost: p_sum(g, &cur_s, p)?,
        best_scheme: cur_s,
        method: Method::LocalSearch,
        evaluations,
        seed: 0,
    })
}
