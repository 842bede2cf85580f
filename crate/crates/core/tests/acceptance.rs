//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! and then asserts the criterion at its stated tolerance and time limit.

mod common;

use std::time::{Duration, Instant};

use num::rational::BigRational;
use num::{One, Zero};

use nbrw_core::amenability::{diagnose, Prerequisite, Verdict};
use nbrw_core::cogrowth::{cogrowth_table, functional_equation_check, CogrowthMode};
use nbrw_core::edge_space::{analyze_structure, check_reversal_symmetry, NbrwKernel, OrientedEdgeSpace};
use nbrw_core::graph::{
    bfs_distances, butterfly, complete, complete_bipartite, cycle, is_bipartite, petersen,
    random_bipartite_multigraph, random_multigraph, FreeGroup, GraphSource, GridZ2, Multigraph,
    Topology,
};
use nbrw_core::numeric::Weight;
use nbrw_core::walks::{
    monte_carlo_nbrw, nbrw_limit_profile, nbrw_nstep, nbrw_trajectory, nbrw_trajectory_source,
    qe_operator_norm, spectral_radius_tree_ray, total_variation,
};

use common::{brute_force_nbrw, corpus, q, small_corpus};

fn report(id: u32, title: &str, ok: bool, detail: String, start: Instant, limit: Option<Duration>) {
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let status = if ok && in_time { "PASS" } else { "FAIL" };
    let budget = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
    println!("criterion {id}: {status} {title}: {detail}; {elapsed:.2?}{budget}");
    assert!(ok, "criterion {id} failed: {detail}");
    assert!(in_time, "criterion {id} exceeded its time limit: {elapsed:?}");
}

fn kernel(g: &Multigraph) -> NbrwKernel {
    NbrwKernel::build(OrientedEdgeSpace::build(g)).unwrap()
}

#[test]
fn criterion_01_butterfly_golden() {
    let start = Instant::now();
    let g = butterfly();
    let x = g.require("x").unwrap();
    let y = g.require("y").unwrap();
    let exact = nbrw_trajectory::<_, BigRational>(&g, x, 90, &[x]).unwrap();
    let center_ok = (0..=30).all(|n| exact[3 * n][0].is_one());

    let traj = nbrw_trajectory::<_, f64>(&g, y, 150, &[y]).unwrap();
    let targets = [0.25, 0.125, 0.125];
    let mut worst = 0.0f64;
    for n in 120..=150 {
        worst = worst.max((traj[n][0] - targets[n % 3]).abs());
    }
    report(
        1,
        "butterfly q^(3n)(x,x) = 1 and residue limits 1/4, 1/8, 1/8 at y",
        center_ok && worst < 1e-6,
        format!("q^(3n)(x,x)=1 for n<=30: {center_ok}; max |q^(m)(y,y) - limit| over 120<=m<=150 = {worst:.2e}"),
        start,
        Some(Duration::from_secs(1)),
    );
}

fn max_pointwise_residual(g: &Multigraph, n: usize, target: impl Fn(usize, usize) -> f64) -> f64 {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let mut worst = 0.0f64;
    for x in 0..g.vertex_count() {
        let t = nbrw_trajectory::<_, f64>(g, x, n + 1, &all).unwrap();
        for y in 0..g.vertex_count() {
            worst = worst.max((t[n][y] - target(x, y)).abs());
        }
    }
    worst
}

#[test]
fn criterion_02_pointwise_limit_non_bipartite() {
    let start = Instant::now();
    let k4 = complete(4).unwrap();
    let p = petersen();
    let r_k4 = max_pointwise_residual(&k4, 200, |_, _| 0.25);
    let r_p = max_pointwise_residual(&p, 200, |_, _| 0.1);
    report(
        2,
        "K4 and Petersen q^(200)(x,y) -> deg(y)/|E|",
        r_k4 < 1e-8 && r_p < 1e-8,
        format!("K4 max residual {r_k4:.2e}, Petersen max residual {r_p:.2e}"),
        start,
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_03_pointwise_limit_bipartite() {
    let start = Instant::now();
    let g = complete_bipartite(3, 3).unwrap();
    let mut worst = 0.0f64;
    for x in 0..6 {
        let dist = bfs_distances(&g, x);
        let all: Vec<usize> = (0..6).collect();
        let t = nbrw_trajectory::<_, f64>(&g, x, 201, &all).unwrap();
        for y in 0..6 {
            let delta = dist[y].unwrap() % 2;
            worst = worst.max((t[200 + delta][y] - 1.0 / 3.0).abs());
            worst = worst.max(t[201 - delta][y].abs());
        }
    }
    report(
        3,
        "K_{3,3} q^(2n+δ)(x,y) -> 2 deg(y)/|E| = 1/3",
        worst < 1e-8,
        format!("max residual at steps 200/201 = {worst:.2e}"),
        start,
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_04_cesaro_random() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let n = 4 + (seed as usize % 9);
        let g = random_multigraph(n, 2, 4, 1000 + seed).unwrap();
        assert!(g.min_degree() >= 2 && g.vertex_count() <= 12);
        let prof = nbrw_limit_profile::<f64>(&g, 0, 2000).unwrap();
        worst = worst.max(prof.cesaro_max_residual());
    }
    report(
        4,
        "Cesàro mean -> deg(y)/|E| on 20 random multigraphs at n = 2000",
        worst < 5e-3,
        format!("max residual {worst:.2e}"),
        start,
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn criterion_05_structure_suite() {
    let start = Instant::now();
    let mut irreducible_ok = 0;
    let mut seed = 0u64;
    while irreducible_ok < 50 {
        let g = random_multigraph(3 + (seed as usize % 10), 2, 4, 5000 + seed).unwrap();
        seed += 1;
        if g.is_cycle() {
            continue;
        }
        assert!(analyze_structure(&kernel(&g)).irreducible, "non-cycle graph with reducible Q_E");
        irreducible_ok += 1;
    }
    let mut period_ok = 0;
    for s in 0..30u64 {
        let g = if s % 2 == 0 {
            random_multigraph(4 + (s as usize % 8), 3, 5, 7000 + s).unwrap()
        } else {
            random_bipartite_multigraph(3 + (s as usize % 3), 3 + (s as usize % 3), 3, 4, 7000 + s).unwrap()
        };
        let st = analyze_structure(&kernel(&g));
        let bip = is_bipartite(&g).is_bipartite();
        assert_eq!(st.period == Some(2), bip, "period {:?}, bipartite {bip}", st.period);
        assert!(st.period == Some(1) || st.period == Some(2));
        period_ok += 1;
    }
    let cycles_ok = (1..=12).all(|n| {
        let st = analyze_structure(&kernel(&cycle(n).unwrap()));
        !st.irreducible && st.essential_class_count() == 2
    });
    report(
        5,
        "Q_E structure: irreducible off cycles, period 2 iff bipartite, cycles have 2 classes",
        irreducible_ok == 50 && period_ok == 30 && cycles_ok,
        format!("{irreducible_ok} irreducible, {period_ok} period checks, cycles 1..=12: {cycles_ok}"),
        start,
        Some(Duration::from_secs(5)),
    );
}

#[test]
fn criterion_06_functional_equation() {
    let start = Instant::now();
    let k4 = complete(4).unwrap();
    let p = petersen();
    let cases = [(&k4, 0, 0), (&k4, 0, 2), (&p, 0, 0), (&p, 0, 7)];
    let mut all_zero = true;
    let mut detail = Vec::new();
    for (g, x, y) in cases {
        let r = functional_equation_check(g, x, y, 20).unwrap();
        all_zero &= r.exact_zero;
        detail.push(format!("({},{})->{}", r.from, r.to, r.max_residual));
    }
    report(
        6,
        "cogrowth/Green functional equation through degree 20",
        all_zero,
        format!("residuals {}", detail.join(", ")),
        start,
        Some(Duration::from_secs(5)),
    );
}

#[test]
fn criterion_07_nbcog_equivalence() {
    let start = Instant::now();
    let mut compared = 0;
    let mut mismatch = None;
    for (name, g) in corpus() {
        for x in 0..g.vertex_count() {
            let cog = cogrowth_table::<_, BigRational>(&g, x, 12, CogrowthMode::Weighted, true).unwrap();
            for n in 0..=12 {
                let walk = nbrw_nstep::<_, BigRational>(&g, x, n).unwrap();
                compared += 1;
                if walk.values != cog.rows[n] && mismatch.is_none() {
                    mismatch = Some(format!("{name} x={x} n={n}"));
                }
            }
        }
    }
    report(
        7,
        "weighted cogrowth equals q^(n) exactly",
        mismatch.is_none(),
        format!("{compared} distributions compared, first mismatch {mismatch:?}"),
        start,
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn criterion_08_brute_force_oracle() {
    let start = Instant::now();
    let mut compared = 0;
    let mut mismatch = None;
    for (name, g) in small_corpus() {
        for x in 0..g.vertex_count() {
            for n in 0..=6 {
                let got = nbrw_nstep::<_, BigRational>(&g, x, n).unwrap();
                compared += 1;
                if got.values != brute_force_nbrw(&g, x, n) && mismatch.is_none() {
                    mismatch = Some(format!("{name} x={x} n={n}"));
                }
            }
        }
    }
    report(
        8,
        "q^(n) equals exhaustive non-backtracking path enumeration",
        mismatch.is_none(),
        format!("{compared} distributions compared, first mismatch {mismatch:?}"),
        start,
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn criterion_09_operator_norm() {
    let start = Instant::now();
    let mut graphs = vec![complete(4).unwrap(), petersen(), butterfly()];
    for seed in 0..10 {
        graphs.push(random_multigraph(5 + seed as usize % 6, 2, 4, 300 + seed).unwrap());
    }
    let mut worst = 0.0f64;
    for g in &graphs {
        let norm = qe_operator_norm(&kernel(g), 100_000).unwrap();
        worst = worst.max((norm - 1.0).abs());
    }
    report(
        9,
        "power iteration on Q_E*Q_E gives ||Q_E|| = 1",
        worst < 1e-10,
        format!("{} graphs, max |norm - 1| = {worst:.2e}", graphs.len()),
        start,
        Some(Duration::from_secs(5)),
    );
}

#[test]
fn criterion_10_invariant_measure_and_reversal() {
    let start = Instant::now();
    let mut checked = 0;
    let mut failure = None;
    for (name, g) in corpus() {
        let k = kernel(&g);
        for n in 0..=10 {
            let power = k.matrix_power::<BigRational>(n);
            let cols_ok = (0..k.len()).all(|f| {
                (0..k.len()).fold(BigRational::zero(), |acc, e| acc + &power[e][f]).is_one()
            });
            let rev_ok = check_reversal_symmetry::<BigRational>(&k, n).holds();
            checked += 1;
            if !(cols_ok && rev_ok) && failure.is_none() {
                failure = Some(format!("{name} n={n} columns {cols_ok} reversal {rev_ok}"));
            }
        }
    }
    report(
        10,
        "column sums of Q_E^n are 1 and q^(n)(e,f) = q^(n)(f̌,ě)",
        failure.is_none(),
        format!("{checked} powers checked, first failure {failure:?}"),
        start,
        None,
    );
}

#[test]
fn criterion_11_tree_radius_and_grid_trend() {
    let start = Instant::now();
    let f2 = FreeGroup::new(2).unwrap();
    let x = f2.root();
    let est = spectral_radius_tree_ray(&f2, &x, 9, 1_000_000).unwrap();
    // coefficients along a geodesic: x = e, y_n = a^n
    let ray: Vec<_> = (0..=9).map(|n| vec![1; n]).collect();
    let t = nbrw_trajectory_source::<BigRational>(&f2, &x, &ray, 9, 1_000_000).unwrap();
    let coeff_ok = (1..=9).all(|n| {
        let expect = q(1, 4) * BigRational::new(1.into(), num::BigInt::from(3).pow(n as u32 - 1));
        t[n][n] == expect
    });
    let tree_ok = est.exact.as_deref() == Some("1/3") && coeff_ok;

    let grid = GridZ2;
    let o = grid.root();
    let g = nbrw_trajectory_source::<f64>(&grid, &o, std::slice::from_ref(&o), 200, 1_000_000).unwrap();
    let q200 = g[200][0];
    report(
        11,
        "free group ρ(Q) = 1/3 exactly; grid q^(200)(0,0) < 1e-3",
        tree_ok && q200 < 1e-3,
        format!(
            "tree estimate {:?} with coefficients (1/4)(1/3)^(n-1): {coeff_ok}; grid q^(200)(0,0) = {q200:.6e}",
            est.exact
        ),
        start,
        None,
    );
}

#[test]
fn criterion_12_amenability_diagnostics() {
    let start = Instant::now();
    let grid = GridZ2;
    let d = diagnose(&grid, &grid.root(), 200, 40, 10, 2_000_000).unwrap();
    let folner = d.iota_report.folner_trend.last().unwrap().ratio;
    let grid_ok = d.verdict == Verdict::ConsistentAmenable
        && d.rho_estimate.value >= 0.95
        && d.iota_report.folner_trend.last().unwrap().r == 40
        && folner < 0.1;

    let f2 = FreeGroup::new(2).unwrap();
    let t = diagnose(&f2, &f2.root(), 200, 8, 8, 200_000).unwrap();
    let tree_ok = matches!(t.prerequisite, Prerequisite::Unverified { .. })
        && t.verdict == Verdict::Inconclusive
        && t.evidence.starts_with("nonamenable")
        && t.rho_estimate.exact.as_deref() == Some("1/3");
    report(
        12,
        "grid consistent_amenable, free group prerequisite unverified with nonamenable evidence",
        grid_ok && tree_ok,
        format!(
            "grid {:?} ρ≈{:.4} Følner(40)={folner:.4}; free group {:?}/{:?} ρ={:?} ι>={:?}",
            d.verdict,
            d.rho_estimate.value,
            t.verdict,
            t.prerequisite,
            t.rho_estimate.exact,
            t.iota_report.lower_bound_exact
        ),
        start,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_13_monte_carlo() {
    let start = Instant::now();
    let g = complete(4).unwrap();
    let exact = nbrw_nstep::<_, f64>(&g, 0, 5).unwrap();
    let mc = monte_carlo_nbrw(&g, 0, 5, 100_000, 20240601).unwrap();
    let tv = total_variation(&mc.frequencies, &exact.values);
    report(
        13,
        "Monte Carlo K4, n = 5, 1e5 trials",
        tv <= 0.02,
        format!("total variation {tv:.4e}, exact {:?}", exact.values.iter().map(Weight::render).collect::<Vec<_>>()),
        start,
        None,
    );
}
