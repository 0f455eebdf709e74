use fqmap::cost::{
    apv, boundary_edgesum, cellular_s_edgesum, cellular_z_edgesum, cellular_zprime_edgesum, closed_form,
    edgesum, hopping_intervals, md_edgesum, measurement_depth, mpv, p_power_sum, p_sum, CostReport,
};
use fqmap::graph::{cellular_lattice, square_lattice};
use fqmap::schemes::{
    cellular_pattern, diagonal_pattern, hv_normalize, is_hv_ordered, mitchison_durbin, optimal_x_md,
    random_scheme, s_pattern, z_pattern, CellularVariant,
};
use fqmap::{EnumerationScheme, Error};
use proptest::prelude::*;

#[test]
fn s_and_z_edgesums() {
    for n in 2..=30u64 {
        let g = square_lattice(n as usize).unwrap();
        assert_eq!(edgesum(&g, &s_pattern(n as usize).unwrap()).unwrap(), n * n * n - n);
        assert_eq!(edgesum(&g, &z_pattern(n as usize).unwrap()).unwrap(), n * n * n - n);
    }
}

#[test]
fn md_matches_closed_form_for_every_x() {
    for n in 2..=40usize {
        let g = square_lattice(n).unwrap();
        for x in 1..=n / 2 {
            let s = mitchison_durbin(n, Some(x)).unwrap();
            assert_eq!(edgesum(&g, &s).unwrap() as i64, md_edgesum(n as i64, x as i64), "N={n} x={x}");
            assert!(is_hv_ordered(&s, n).unwrap());
        }
    }
}

#[test]
fn md_default_x_is_the_best_x() {
    for n in 2..=40usize {
        let best = (1..=n / 2).map(|x| md_edgesum(n as i64, x as i64)).min().unwrap();
        assert_eq!(md_edgesum(n as i64, optimal_x_md(n) as i64), best, "N={n}");
    }
}

#[test]
fn published_numbers() {
    let g = square_lattice(20).unwrap();
    assert_eq!(edgesum(&g, &mitchison_durbin(20, None).unwrap()).unwrap(), 7140);
    assert_eq!(edgesum(&g, &s_pattern(20).unwrap()).unwrap(), 7980);
    let g = square_lattice(6).unwrap();
    let m = mitchison_durbin(6, None).unwrap();
    assert_eq!(edgesum(&g, &m).unwrap(), 200);
    assert!((apv(&g, &m).unwrap() - 260.0 / 60.0).abs() < 1e-12);
    let z = z_pattern(6).unwrap();
    assert_eq!(apv(&g, &z).unwrap(), 4.5);
    assert_eq!(mpv(&g, &z).unwrap(), 7);
}

#[test]
fn cost_report_fields() {
    let g = square_lattice(3).unwrap();
    let r = CostReport::compute(&g, &z_pattern(3).unwrap(), 2.0).unwrap();
    assert_eq!(r.edgesum, 24);
    assert_eq!(r.bandwidth, 3);
    assert_eq!(r.term_count, 12);
    assert!((r.p_sum - (6.0f64 + 6.0 * 9.0).sqrt()).abs() < 1e-12);
    assert_eq!(p_sum(&g, &z_pattern(3).unwrap(), f64::INFINITY).unwrap(), 3.0);
    assert!(p_sum(&g, &z_pattern(3).unwrap(), 0.0).is_err());
    let empty = square_lattice(1).unwrap();
    assert!(matches!(apv(&empty, &z_pattern(1).unwrap()), Err(Error::EmptyEdgeSet)));
}

#[test]
fn depth_of_z_pattern() {
    // a middle qubit sits in N+1 column intervals and two row intervals
    for n in 3..8 {
        let g = square_lattice(n).unwrap();
        let iv = hopping_intervals(&g, &z_pattern(n).unwrap()).unwrap();
        assert_eq!(measurement_depth(&iv), n + 3);
    }
}

#[test]
fn boundary_form_needs_ordering() {
    let s = s_pattern(4).unwrap();
    assert!(matches!(boundary_edgesum(&s, 4), Err(Error::NotOrdered)));
}

fn scheme_strategy(n: usize) -> impl Strategy<Value = EnumerationScheme> {
    any::<u64>().prop_map(move |seed| random_scheme(n, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalisation_never_hurts(s in scheme_strategy(25)) {
        let g = square_lattice(5).unwrap();
        let h = hv_normalize(&s, 5).unwrap();
        prop_assert!(is_hv_ordered(&h, 5).unwrap());
        for p in [1.0, 2.0] {
            prop_assert!(p_power_sum(&g, &h, p).unwrap() <= p_power_sum(&g, &s, p).unwrap() + 1e-9);
        }
        prop_assert_eq!(boundary_edgesum(&h, 5).unwrap(), edgesum(&g, &h).unwrap() as i64);
    }

    #[test]
    fn random_schemes_are_bijections(seed in any::<u64>(), n in 1usize..200) {
        let s = random_scheme(n, seed);
        let mut v = s.as_slice().to_vec();
        v.sort_unstable();
        prop_assert_eq!(v, (0..n).collect::<Vec<_>>());
        prop_assert_eq!(random_scheme(n, seed), s);
    }
}

#[test]
fn cellular_constructions_match_closed_forms() {
    for cell in 2..=6usize {
        for grid in 1..=5usize {
            let g = cellular_lattice(cell, grid).unwrap();
            let es = |v| edgesum(&g, &cellular_pattern(cell, grid, v).unwrap()).unwrap() as i64;
            let (c, n) = (cell as i64, grid as i64);
            assert_eq!(es(CellularVariant::Z), cellular_z_edgesum(c, n), "Z n={cell} N={grid}");
            assert_eq!(es(CellularVariant::ZPrime), cellular_zprime_edgesum(c, n), "Z' n={cell} N={grid}");
            assert_eq!(es(CellularVariant::S), cellular_s_edgesum(c, n), "S n={cell} N={grid}");
            let sp = cellular_pattern(cell, grid, CellularVariant::SPrime).unwrap();
            assert_eq!(sp.len(), cell * cell * grid * grid);
        }
    }
}

fn cellular_ratio(cell: usize, grid: usize) -> f64 {
    let g = cellular_lattice(cell, grid).unwrap();
    let z = edgesum(&g, &cellular_pattern(cell, grid, CellularVariant::Z).unwrap()).unwrap() as f64;
    let zp = edgesum(&g, &cellular_pattern(cell, grid, CellularVariant::ZPrime).unwrap()).unwrap() as f64;
    zp / z
}

#[test]
fn cellular_ratio_tends_to_one_over_grid_for_large_cells() {
    // Z'/Z ≈ 1/n + 1/N, so the 1/N limit needs n ≫ N
    let r = cellular_ratio(128, 4);
    assert!((r * 4.0 - 1.0).abs() < 0.1, "ratio {r}");
    let r = cellular_ratio(16, 16);
    let exact = cellular_zprime_edgesum(16, 16) as f64 / cellular_z_edgesum(16, 16) as f64;
    assert!((r - exact).abs() < 1e-15);
    assert!((r - (1.0 / 16.0 + 1.0 / 16.0)).abs() < 0.01, "ratio {r}");
}

#[test]
fn diagonal_wins_for_large_p() {
    let n = 32;
    let g = square_lattice(n).unwrap();
    let d = p_sum(&g, &diagonal_pattern(n).unwrap(), 3.0).unwrap();
    for other in [z_pattern(n).unwrap(), s_pattern(n).unwrap(), mitchison_durbin(n, None).unwrap()] {
        assert!(d < p_sum(&g, &other, 3.0).unwrap());
    }
}

#[test]
fn diagonal_two_sum_scaling() {
    let n = 200usize;
    let g = square_lattice(n).unwrap();
    let c = p_power_sum(&g, &diagonal_pattern(n).unwrap(), 2.0).unwrap();
    let r = c / (n as f64).powi(4);
    assert!((r / (4.0 / 4.0) - 1.0).abs() < 0.05, "ratio {r}");
}

#[test]
fn closed_form_dispatch() {
    assert_eq!(closed_form("md", &[20.0, 6.0]).unwrap(), 7140.0);
    assert_eq!(closed_form("z", &[20.0]).unwrap(), 7980.0);
    assert_eq!(closed_form("cellular_z", &[2.0, 2.0]).unwrap(), 50.0);
    assert!(closed_form("md", &[20.0]).is_err());
    assert!(closed_form("md", &[20.5, 3.0]).is_err());
}
