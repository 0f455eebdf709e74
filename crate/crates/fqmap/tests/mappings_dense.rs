//! Qubit Hamiltonians compared against operators built directly in the
//! occupation-number basis.

use fqmap::graph::{path_graph, square_lattice, Edge};
use fqmap::mappings::{
    build_hamiltonian, gamma_set, hopping_weight_under_mapping, transform_hopping, transform_number,
    transform_quartic, verify_gamma_set, GammaKind, GammaSet, QubitHamiltonian, Violation,
};
use fqmap::schemes::{mitchison_durbin, random_scheme, s_pattern};
use fqmap::{EnumerationScheme, Geometry, InteractionGraph};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Mat = Vec<Vec<Complex64>>;

const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn zeros(d: usize) -> Mat {
    vec![vec![C0; d]; d]
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    let mut c = zeros(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k] != C0 {
                for j in 0..d {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn add(a: &Mat, b: &Mat, s: Complex64) -> Mat {
    a.iter().zip(b).map(|(r, q)| r.iter().zip(q).map(|(x, y)| x + s * y).collect()).collect()
}

fn dagger(a: &Mat) -> Mat {
    let d = a.len();
    let mut c = zeros(d);
    for i in 0..d {
        for j in 0..d {
            c[j][i] = a[i][j].conj();
        }
    }
    c
}

fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter().zip(b).flat_map(|(r, q)| r.iter().zip(q).map(|(x, y)| (x - y).norm())).fold(0.0, f64::max)
}

/// Annihilator on qubit `q` of `n`, qubit 0 the most significant bit, with
/// the sign set by the occupied qubits before `q`.
fn annihilator(n: usize, q: usize) -> Mat {
    let d = 1 << n;
    let mut a = zeros(d);
    let bit = 1 << (n - 1 - q);
    for b in 0..d {
        if b & bit != 0 {
            let before = (b >> (n - q)).count_ones();
            let sign = if before % 2 == 0 { 1.0 } else { -1.0 };
            a[b ^ bit][b] = Complex64::new(sign, 0.0);
        }
    }
    a
}

fn dense(h: &QubitHamiltonian) -> Mat {
    h.to_dense().unwrap()
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> InteractionGraph {
    let labels = (0..n).map(|i| format!("m{i}")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.7) {
                let coeff = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                edges.push(Edge { a, b, coeff });
            }
        }
    }
    InteractionGraph::new(labels, edges, Geometry::Generic).unwrap()
}

#[test]
fn hamiltonians_match_second_quantisation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..40 {
        let n = 1 + trial % 4;
        let g = random_graph(n, &mut rng);
        let s = random_scheme(n, trial as u64);
        let u = rng.gen_range(-2.0..2.0);
        let ops: Vec<Mat> = (0..n).map(|a| annihilator(n, s.get(a))).collect();
        let num = |a: usize| mul(&dagger(&ops[a]), &ops[a]);
        let mut want = zeros(1 << n);
        for e in g.edges() {
            let hop = mul(&dagger(&ops[e.a]), &ops[e.b]);
            want = add(&want, &hop, e.coeff);
            want = add(&want, &dagger(&hop), e.coeff.conj());
            want = add(&want, &mul(&num(e.a), &num(e.b)), Complex64::new(u, 0.0));
        }
        let h = build_hamiltonian(&g, &s, Some(u)).unwrap();
        assert!(max_diff(&dense(&h), &want) < 1e-12, "trial {trial}");
        assert!(h.is_hermitian(1e-12));
    }
}

#[test]
fn single_operator_oracles() {
    for n in 1..=4 {
        for seed in 0..4 {
            let s = random_scheme(n, seed);
            for a in 0..n {
                let op = annihilator(n, s.get(a));
                let c = Complex64::new(0.7, 0.0);
                let mut h = QubitHamiltonian::new(n);
                h.extend(transform_number(&s, a, c).unwrap());
                let want = add(&zeros(1 << n), &mul(&dagger(&op), &op), c);
                assert!(max_diff(&dense(&h), &want) < 1e-12);
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let ob = annihilator(n, s.get(b));
                    let c = Complex64::new(0.3, -1.1);
                    let mut h = QubitHamiltonian::new(n);
                    h.extend(transform_hopping(&s, a, b, c).unwrap());
                    let hop = mul(&dagger(&op), &ob);
                    let want = add(&add(&zeros(1 << n), &hop, c), &dagger(&hop), c.conj());
                    assert!(max_diff(&dense(&h), &want) < 1e-12);

                    let mut h = QubitHamiltonian::new(n);
                    h.extend(transform_quartic(&s, a, b, Complex64::new(1.0, 0.0)).unwrap());
                    let want = mul(&mul(&dagger(&op), &op), &mul(&dagger(&ob), &ob));
                    assert!(max_diff(&dense(&h), &want) < 1e-12);
                }
            }
        }
    }
}

#[test]
fn transform_shapes() {
    let s = EnumerationScheme::identity(6);
    let t = transform_hopping(&s, 0, 3, Complex64::new(1.0, 0.0)).unwrap();
    assert_eq!(t.len(), 2);
    assert!(t.iter().all(|t| t.string.weight() == 4 && t.coeff == Complex64::new(0.5, 0.0)));
    let t = transform_hopping(&s, 4, 5, Complex64::new(1.0, 0.0)).unwrap();
    assert!(t.iter().all(|t| t.string.weight() == 2));
    assert!(transform_hopping(&s, 2, 2, Complex64::new(1.0, 0.0)).is_err());
    let q = transform_quartic(&s, 1, 4, Complex64::new(2.0, 0.0)).unwrap();
    let w: Vec<usize> = q.iter().map(|t| t.string.weight()).collect();
    assert_eq!(w, vec![0, 1, 1, 2]);
    let c: Vec<f64> = q.iter().map(|t| t.coeff.re).collect();
    assert_eq!(c, vec![0.5, -0.5, -0.5, 0.5]);
    assert!(transform_number(&s, 0, Complex64::new(0.0, 0.0)).unwrap().is_empty());
    let nn = transform_number(&EnumerationScheme::identity(1), 0, Complex64::new(1.0, 0.0)).unwrap();
    assert_eq!(nn[0].string.to_string(), "1 * I");
    assert_eq!((nn[0].coeff.re, nn[1].coeff.re), (0.5, -0.5));
}

#[test]
fn hopping_weight_law_on_lattices() {
    for n in 2..=8 {
        let g = square_lattice(n).unwrap();
        for s in [s_pattern(n).unwrap(), mitchison_durbin(n, None).unwrap(), random_scheme(n * n, n as u64)] {
            let h = build_hamiltonian(&g, &s, None).unwrap();
            assert_eq!(h.terms.len(), 2 * g.edge_count());
            for (e, pair) in g.edges().iter().zip(h.terms.chunks(2)) {
                let w = s.get(e.a).abs_diff(s.get(e.b)) + 1;
                assert!(pair.iter().all(|t| t.string.weight() == w));
            }
        }
    }
    let g = square_lattice(6).unwrap();
    let mean = |s: &EnumerationScheme| {
        let h = build_hamiltonian(&g, s, None).unwrap();
        h.weights().iter().sum::<usize>() as f64 / h.terms.len() as f64
    };
    assert_eq!(mean(&s_pattern(6).unwrap()), 4.5);
    assert!((mean(&mitchison_durbin(6, None).unwrap()) - 260.0 / 60.0).abs() < 1e-12);
    let single = build_hamiltonian(&path_graph(2).unwrap(), &EnumerationScheme::identity(2), None).unwrap();
    assert_eq!(single.terms.len(), 2);
}

#[test]
fn hamiltonian_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = random_graph(4, &mut rng);
    let h = build_hamiltonian(&g, &random_scheme(4, 1), Some(0.5)).unwrap();
    assert_eq!(QubitHamiltonian::from_json(&h.to_json()).unwrap(), h);
}

fn check_car(gs: &GammaSet) {
    let n = gs.n_modes;
    let d = 1 << n;
    let g: Vec<Mat> = gs.strings.iter().map(|s| s.to_dense().unwrap()).collect();
    let a: Vec<Mat> = (0..n).map(|i| add(&add(&zeros(d), &g[2 * i], 0.5.into()), &g[2 * i + 1], Complex64::new(0.0, 0.5))).collect();
    let mut id = zeros(d);
    for (k, row) in id.iter_mut().enumerate() {
        row[k] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        for j in 0..n {
            let ad = dagger(&a[j]);
            let anti = add(&mul(&a[i], &ad), &mul(&ad, &a[i]), 1.0.into());
            let want = if i == j { id.clone() } else { zeros(d) };
            assert!(max_diff(&anti, &want) < 1e-12, "{} n={n} ({i},{j})", gs.kind);
            let aa = add(&mul(&a[i], &a[j]), &mul(&a[j], &a[i]), 1.0.into());
            assert!(max_diff(&aa, &zeros(d)) < 1e-12);
        }
    }
}

#[test]
fn gamma_sets_are_valid() {
    for kind in [GammaKind::JordanWigner, GammaKind::BravyiKitaev, GammaKind::TernaryTree] {
        for n in 2..=13 {
            let gs = gamma_set(kind, n).unwrap();
            assert_eq!(gs.strings.len(), 2 * n);
            assert!(verify_gamma_set(&gs).ok, "{kind} n={n}");
            if n <= 4 {
                check_car(&gs);
            }
        }
        check_car(&gamma_set(kind, 1).unwrap());
        assert!(gamma_set(kind, 0).is_err());
    }
}

#[test]
fn gamma_set_shapes() {
    let jw = gamma_set(GammaKind::JordanWigner, 10).unwrap();
    for i in 0..10 {
        assert_eq!(jw.strings[2 * i].weight(), i + 1);
    }
    let bk = gamma_set(GammaKind::BravyiKitaev, 8).unwrap();
    assert!(bk.strings.iter().all(|s| s.weight() <= 3 + 2));
    let tt = gamma_set(GammaKind::TernaryTree, 13).unwrap();
    assert!(tt.strings.iter().all(|s| s.weight() == 3));
    let tt4 = gamma_set(GammaKind::TernaryTree, 4).unwrap();
    assert!(verify_gamma_set(&tt4).ok);
}

#[test]
fn broken_sets_are_reported() {
    let mut gs = gamma_set(GammaKind::JordanWigner, 3).unwrap();
    gs.strings[0] = gs.strings[2].clone();
    let r = verify_gamma_set(&gs);
    assert!(!r.ok);
    assert!(r.violations.contains(&Violation::Commute(0, 2)));
    gs.strings.pop();
    assert!(verify_gamma_set(&gs).violations.contains(&Violation::WrongCount { expected: 6, found: 5 }));
    let mut gs = gamma_set(GammaKind::JordanWigner, 2).unwrap();
    gs.strings[1] = gs.strings[1].clone().with_phase(fqmap::pauli::Phase::I);
    assert!(verify_gamma_set(&gs).violations.contains(&Violation::NotInvolution(1)));
}

#[test]
fn majorana_scheme_weights() {
    let n = 16;
    let paired: Vec<usize> = (0..2 * n).collect();
    let w = hopping_weight_under_mapping(GammaKind::JordanWigner, &paired, 0, 1).unwrap();
    assert_eq!(w.products, [2, 2, 2, 2]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = EnumerationScheme::identity(n);
    for _ in 0..20 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let w = hopping_weight_under_mapping(GammaKind::JordanWigner, &paired, i, j).unwrap();
        let t = transform_hopping(&s, i, j, Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!((w.min, w.max), (t[0].string.weight(), t[0].string.weight()));
    }
    let paired: Vec<usize> = (0..26).collect();
    for i in 0..13 {
        for j in 0..13 {
            if i != j {
                let w = hopping_weight_under_mapping(GammaKind::TernaryTree, &paired, i, j).unwrap();
                assert!(w.max <= 6);
            }
        }
    }
    assert!(hopping_weight_under_mapping(GammaKind::JordanWigner, &[0, 0, 1, 2], 0, 1).is_err());
    assert!(hopping_weight_under_mapping(GammaKind::JordanWigner, &[0, 1, 2], 0, 1).is_err());
}

#[test]
fn parse_kind() {
    assert_eq!("bk".parse::<GammaKind>().unwrap(), GammaKind::BravyiKitaev);
    assert!("xyz".parse::<GammaKind>().is_err());
}
