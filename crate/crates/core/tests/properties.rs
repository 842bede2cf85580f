mod common;

use num::rational::BigRational;
use num::{One, Zero};
use proptest::prelude::*;

use nbrw_core::amenability::{area_vol, iota_bruteforce};
use nbrw_core::cogrowth::{cogrowth_table, sphere_counts, CogrowthMode, PowerSeries};
use nbrw_core::edge_space::{analyze_structure, check_reversal_symmetry, NbrwKernel, OrientedEdgeSpace};
use nbrw_core::graph::{
    ball_source, load_multigraph, random_multigraph, GridZ2, Multigraph, Topology,
};
use nbrw_core::walks::{
    monte_carlo_nbrw, nbrw_nstep, nbrw_trajectory, nbrw_trajectory_source, srw_nstep,
};

use common::{brute_force_nbrw, iota_all_subsets, q, srw_dense};

fn graph() -> impl Strategy<Value = Multigraph> {
    (2usize..=9, 2usize..=3, 0usize..=2, any::<u64>())
        .prop_map(|(n, lo, extra, seed)| random_multigraph(n, lo, lo + extra, seed).unwrap())
}

fn kernel(g: &Multigraph) -> NbrwKernel {
    NbrwKernel::build(OrientedEdgeSpace::build(g)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nbrw_conserves_mass(g in graph(), n in 0usize..10, xs in any::<prop::sample::Index>()) {
        let x = xs.index(g.vertex_count());
        let d = nbrw_nstep::<_, BigRational>(&g, x, n).unwrap();
        prop_assert!(d.total().is_one());
        prop_assert!(d.values.iter().all(|v| *v >= BigRational::zero()));
    }

    #[test]
    fn nbrw_matches_path_enumeration(g in graph(), n in 0usize..6, xs in any::<prop::sample::Index>()) {
        let x = xs.index(g.vertex_count());
        prop_assert_eq!(nbrw_nstep::<_, BigRational>(&g, x, n).unwrap().values, brute_force_nbrw(&g, x, n));
    }

    #[test]
    fn first_step_is_srw(g in graph(), xs in any::<prop::sample::Index>()) {
        let x = xs.index(g.vertex_count());
        let one = nbrw_nstep::<_, BigRational>(&g, x, 1).unwrap().values;
        let p: Vec<BigRational> = (0..g.vertex_count())
            .map(|y| q(g.multiplicity(x, y) as i64, g.degree(x) as i64))
            .collect();
        prop_assert_eq!(one, p);
    }

    #[test]
    fn srw_matches_dense_powers(g in graph(), n in 0usize..8, xs in any::<prop::sample::Index>()) {
        let x = xs.index(g.vertex_count());
        prop_assert_eq!(srw_nstep::<_, BigRational>(&g, x, n).unwrap().values, srw_dense(&g, x, n));
    }

    #[test]
    fn srw_is_reversible(g in graph(), n in 1usize..6) {
        for x in 0..g.vertex_count() {
            let px = srw_nstep::<_, BigRational>(&g, x, n).unwrap().values;
            for y in 0..g.vertex_count() {
                let py = srw_nstep::<_, BigRational>(&g, y, n).unwrap().values;
                prop_assert_eq!(
                    &px[y] * q(g.degree(x) as i64, 1),
                    &py[x] * q(g.degree(y) as i64, 1)
                );
            }
        }
    }

    #[test]
    fn qe_is_doubly_stochastic(g in graph()) {
        let k = kernel(&g);
        prop_assert!(k.row_sums::<BigRational>().iter().all(One::is_one));
        prop_assert!(k.column_sums::<BigRational>().iter().all(One::is_one));
    }

    #[test]
    fn reversal_symmetry(g in graph(), n in 0usize..7) {
        prop_assert!(check_reversal_symmetry::<BigRational>(&kernel(&g), n).holds());
    }

    #[test]
    fn irreducible_unless_cycle(g in graph()) {
        let s = analyze_structure(&kernel(&g));
        prop_assert_eq!(s.irreducible, !g.is_cycle());
        if g.is_cycle() {
            prop_assert_eq!(s.essential_class_count(), 2);
        }
    }

    #[test]
    fn weighted_cogrowth_is_nbrw(g in graph(), xs in any::<prop::sample::Index>()) {
        let x = xs.index(g.vertex_count());
        let table = cogrowth_table::<_, BigRational>(&g, x, 8, CogrowthMode::Weighted, true).unwrap();
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        let traj = nbrw_trajectory::<_, BigRational>(&g, x, 8, &all).unwrap();
        prop_assert_eq!(table.rows, traj);
    }

    #[test]
    fn cogrowth_rows_are_distributions(g in graph(), weighted in any::<bool>()) {
        let mode = if weighted { CogrowthMode::Weighted } else { CogrowthMode::Ordinary };
        let table = cogrowth_table::<_, BigRational>(&g, 0, 8, mode, true).unwrap();
        for row in &table.rows {
            let s = row.iter().fold(BigRational::zero(), |a, b| a + b);
            prop_assert!(s.is_one());
        }
    }

    #[test]
    fn regular_sphere_sizes(seed in any::<u64>(), d in 3usize..=4, n in 4usize..=8) {
        let g = random_multigraph(n, d, d, seed).unwrap();
        prop_assume!(g.regular_degree() == Some(d));
        let s = sphere_counts::<_, u64>(&g, 0, 8).unwrap();
        for (k, &t) in s.totals.iter().enumerate().skip(1) {
            prop_assert_eq!(t, (d * (d - 1).pow(k as u32 - 1)) as u64);
        }
        let a = cogrowth_table::<_, BigRational>(&g, 0, 8, CogrowthMode::Ordinary, true).unwrap();
        let b = cogrowth_table::<_, BigRational>(&g, 0, 8, CogrowthMode::Weighted, true).unwrap();
        prop_assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn iota_search_matches_all_subsets(g in graph(), k in 1usize..=5) {
        let rep = iota_bruteforce(&g, k, None, None, 1_000_000).unwrap();
        let exact = nbrw_core::numeric::parse_rational(rep.lower_bound_exact.as_deref().unwrap()).unwrap();
        prop_assert_eq!(&exact, &iota_all_subsets(&g, k));
        for w in &rep.upper_bounds {
            let ids: Vec<usize> = w.vertices.iter().map(|l| g.require(l).unwrap()).collect();
            prop_assert_eq!(area_vol(&g, &ids).unwrap(), (w.area, w.vol));
        }
        if k > 1 {
            let smaller = iota_bruteforce(&g, k - 1, None, None, 1_000_000).unwrap();
            let s = nbrw_core::numeric::parse_rational(smaller.lower_bound_exact.as_deref().unwrap()).unwrap();
            prop_assert!(exact <= s);
        }
    }

    #[test]
    fn edge_list_round_trip(g in graph()) {
        let h = load_multigraph(&g.to_edge_list()).unwrap();
        prop_assert_eq!(h.vertex_count(), g.vertex_count());
        for x in 0..g.vertex_count() {
            let hx = h.require(g.label(x)).unwrap();
            prop_assert_eq!(h.degree(hx), g.degree(x));
            for y in 0..g.vertex_count() {
                let hy = h.require(g.label(y)).unwrap();
                prop_assert_eq!(h.multiplicity(hx, hy), g.multiplicity(x, y));
            }
        }
    }

    #[test]
    fn monte_carlo_is_seed_deterministic(g in graph(), seed in any::<u64>(), n in 0usize..8) {
        let a = monte_carlo_nbrw(&g, 0, n, 200, seed).unwrap();
        let b = monte_carlo_nbrw(&g, 0, n, 200, seed).unwrap();
        prop_assert_eq!(&a.counts, &b.counts);
        // every visited vertex is in the support of the exact law
        let exact = nbrw_nstep::<_, BigRational>(&g, 0, n).unwrap();
        for (c, p) in a.counts.iter().zip(&exact.values) {
            prop_assert!(*c == 0 || !p.is_zero());
        }
    }

    #[test]
    fn series_inverse_and_composition(c in prop::collection::vec(-5i64..=5, 1..8)) {
        let order = 7;
        let mut coeffs: Vec<BigRational> = c.iter().map(|&a| q(a, 1)).collect();
        coeffs[0] = q(1, 1) + q(c[0].abs(), 1);
        let f = PowerSeries::from_coeffs(coeffs, order);
        prop_assert!((&f * &f.inverse().unwrap()).is_one());
        let mut inner = f.clone();
        inner = &inner - &PowerSeries::constant(inner.coeff(0).clone(), order);
        let h = PowerSeries::from_coeffs(vec![q(0, 1), q(1, 2), q(-1, 3)], order);
        let lhs = f.compose(&inner).unwrap().compose(&h).unwrap();
        let rhs = f.compose(&inner.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn source_truncation_is_exact(i in -3i32..=3, j in -3i32..=3, n in 1usize..=10) {
        let x = vec![0, 0];
        let y = vec![i, j];
        let t = nbrw_trajectory_source::<BigRational>(&GridZ2, &x, &[y], n, 100_000).unwrap();
        let big = ball_source(&GridZ2, &x, n + 2).unwrap();
        let full = match big.vertex_id(&format!("{i},{j}")) {
            Some(id) => nbrw_trajectory::<_, BigRational>(&big, 0, n, &[id]).unwrap(),
            None => vec![vec![BigRational::zero()]; n + 1],
        };
        prop_assert_eq!(t, full);
    }
}
