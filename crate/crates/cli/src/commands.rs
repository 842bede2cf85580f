use num::rational::BigRational;
use num::{One, Zero};
use serde_json::{json, Value};

use nbrw_core::amenability::{diagnose, fitting_radius};
use nbrw_core::cogrowth::{
    cogrowth_rate, cogrowth_series, cogrowth_series_source, cogrowth_table,
    functional_equation_check, CogrowthMode, CogrowthSeries,
};
use nbrw_core::edge_space::{
    analyze_structure, check_reversal_symmetry, turnaround_bound, NbrwKernel, OrientedEdgeSpace,
};
use nbrw_core::graph::{
    ball_source_within, is_bipartite, small_cycle_radius, AnyGraph, GraphSource, Multigraph,
    Topology, VertexKey,
};
use nbrw_core::numeric::Weight;
use nbrw_core::walks::{
    monte_carlo_nbrw, nbrw_limit_profile, nbrw_nstep, nbrw_trajectory, qe_operator_norm,
    spectral_radius_nbrw, spectral_radius_nbrw_source, spectral_radius_srw,
    spectral_radius_srw_source, spectral_radius_tree_ray, total_variation,
    uniform_irreducibility_check, SpectralEstimate,
};
use nbrw_core::NbrwError;

use crate::output::{Report, Table};
use crate::{CliError, Command, ModeArg, RunConfig};

type Res<T> = Result<T, CliError>;

/// Largest edge chain for which `analyze` also runs the uniform-irreducibility scan.
const UNIFORM_SCAN_LIMIT: usize = 2000;
const POWER_ITERATION_CAP: usize = 100_000;

pub(crate) fn dispatch(config: &RunConfig, graph: &AnyGraph) -> Res<Report> {
    match config.command {
        Command::Analyze => analyze(graph.finite()?),
        Command::Limits => {
            let g = graph.finite()?;
            if config.exact() {
                limits::<BigRational>(config, g)
            } else {
                limits::<f64>(config, g)
            }
        }
        Command::Spectral => spectral(config, graph),
        Command::Cogrowth => {
            if config.exact() {
                cogrowth::<BigRational>(config, graph)
            } else {
                cogrowth::<f64>(config, graph)
            }
        }
        Command::Simulate => simulate(config, graph),
        Command::Amenability => amenability(config, graph.source()?),
        Command::Check => check(config, graph.finite()?),
    }
}

fn value<T: Weight>(v: &T) -> Value {
    if T::EXACT {
        Value::String(v.render())
    } else {
        json!(v.to_float())
    }
}

fn vertex(g: &Multigraph, label: Option<&str>) -> Res<usize> {
    match label {
        Some(l) => Ok(g.require(l)?),
        None => Ok(0),
    }
}

fn source_vertex(src: &dyn GraphSource, label: Option<&str>) -> Res<VertexKey> {
    match label {
        Some(l) => Ok(src.parse_label(l)?),
        None => Ok(src.root()),
    }
}

fn kernel_of(g: &Multigraph) -> Res<NbrwKernel> {
    Ok(NbrwKernel::build(OrientedEdgeSpace::build(g))?)
}

fn analyze(g: &Multigraph) -> Res<Report> {
    let kernel = kernel_of(g)?;
    let s = analyze_structure(&kernel);
    let turnaround = turnaround_bound(&kernel);
    let uniform = (kernel.len() <= UNIFORM_SCAN_LIMIT).then(|| {
        let k = turnaround.map_or(kernel.len(), |l| 2 * l + 1);
        let eps = turnaround.map_or(1e-12, |l| {
            (g.max_degree() as f64 - 1.0).powi(-(2 * l as i32 + 1))
        });
        uniform_irreducibility_check(&kernel, k, eps)
    });
    let result = json!({
        "vertices": g.vertex_count(),
        "num_oriented_edges": kernel.len(),
        "min_degree": g.min_degree(),
        "max_degree": g.max_degree(),
        "regular_degree": g.regular_degree(),
        "is_cycle": g.is_cycle(),
        "irreducible": s.irreducible,
        "period": s.period,
        "classes": s.components.len(),
        "essential_classes": s.essential_class_count(),
        "component_periods": s.component_periods,
        "turnaround_L": turnaround,
        "bipartite": is_bipartite(g).is_bipartite(),
        "small_cycle_radius": small_cycle_radius(g),
        "uniform_irreducibility": uniform,
    });
    let table = Table {
        columns: vec!["key", "value"],
        rows: result
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, v)| vec![k.clone(), v.to_string()])
            .collect(),
    };
    Ok(Report {
        result,
        table,
        trailers: Vec::new(),
        violation: false,
    })
}

fn limits<T: Weight>(config: &RunConfig, g: &Multigraph) -> Res<Report> {
    let x = vertex(g, config.from.as_deref())?;
    let profile = nbrw_limit_profile::<T>(g, x, config.nmax)?;
    let labels: Vec<&str> = (0..g.vertex_count()).map(|v| g.label(v)).collect();
    let per_vertex = |vals: &[BigRational]| -> Value {
        Value::Array(
            labels
                .iter()
                .zip(vals)
                .map(|(l, v)| json!({ "vertex": l, "value": v.render() }))
                .collect(),
        )
    };
    let residue: Vec<Value> = profile
        .residue_limits
        .limits
        .iter()
        .enumerate()
        .map(|(r, vals)| json!({ "residue": r, "limits": per_vertex(vals) }))
        .collect();
    let rows: Vec<Value> = profile
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "vertex": r.vertex,
                "q": value(&r.q),
                "cesaro": value(&r.cesaro),
                "target": value(&r.target),
                "residual": value(&r.residual),
            })
        })
        .collect();
    let result = json!({
        "from": profile.from,
        "period": profile.period,
        "converged_at": profile.converged_at,
        "residue_limits": residue,
        "cesaro_targets": per_vertex(&profile.cesaro_targets),
        "cesaro_max_residual": profile.cesaro_max_residual(),
        "bipartite": profile.theorem.bipartite,
        "min_degree": profile.theorem.min_degree,
        "rows": rows,
    });
    let table = Table {
        columns: vec!["n", "vertex", "q", "cesaro", "target", "residual"],
        rows: profile
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.vertex.clone(),
                    r.q.render(),
                    r.cesaro.render(),
                    r.target.render(),
                    r.residual.render(),
                ]
            })
            .collect(),
    };
    Ok(Report {
        result,
        table,
        trailers: Vec::new(),
        violation: false,
    })
}

fn root_table(est: &SpectralEstimate) -> Table {
    Table {
        columns: vec!["n", "root"],
        rows: est
            .sequence
            .iter()
            .map(|p| vec![p.n.to_string(), p.root.to_string()])
            .collect(),
    }
}

/// Horizon for a source computation: the full `n_max` in exact mode (which
/// refuses to exceed the budget), or the largest horizon whose exact ball fits.
fn source_horizon(config: &RunConfig, src: &dyn GraphSource, x: &VertexKey, notes: &mut Vec<String>) -> usize {
    if config.exact() {
        return config.nmax;
    }
    let fit = 2 * fitting_radius(src, x, config.nmax.div_ceil(2).max(1), config.budget);
    if fit < config.nmax {
        notes.push(format!(
            "horizon reduced from {} to {fit} to stay within the budget of {} vertices",
            config.nmax, config.budget
        ));
    }
    fit.min(config.nmax).max(2)
}

fn spectral(config: &RunConfig, graph: &AnyGraph) -> Res<Report> {
    let mut notes = Vec::new();
    let (rho_q, rho_p, qe_norm) = match graph {
        AnyGraph::Finite(g) => {
            let x = vertex(g, config.from.as_deref())?;
            let y = vertex(g, config.to.as_deref().or(config.from.as_deref()))?;
            let rho_q = spectral_radius_nbrw(g, x, y, config.nmax)?;
            let rho_p = spectral_radius_srw(g, POWER_ITERATION_CAP)?;
            let norm = qe_operator_norm(&kernel_of(g)?, POWER_ITERATION_CAP)?;
            (rho_q, rho_p, Some(norm))
        }
        AnyGraph::Infinite(src) => {
            let src = src.as_ref();
            let x = source_vertex(src, config.from.as_deref())?;
            let y = source_vertex(src, config.to.as_deref().or(config.from.as_deref()))?;
            let n = source_horizon(config, src, &x, &mut notes);
            let rho_q = match spectral_radius_nbrw_source(src, &x, &y, n, config.budget) {
                Err(NbrwError::AllZero) => {
                    let ray = n.min(fitting_radius(src, &x, n, config.budget)).max(2);
                    notes.push(format!(
                        "q^(n)(x, y) vanishes for n <= {n}; ρ(Q) read along a geodesic ray of length {ray}"
                    ));
                    spectral_radius_tree_ray(src, &x, ray, config.budget)?
                }
                r => r?,
            };
            let rho_p = spectral_radius_srw_source(src, &x, n, config.budget)?;
            (rho_q, rho_p, None)
        }
    };
    let table = root_table(&rho_q);
    Ok(Report {
        result: json!({
            "rho_q": rho_q,
            "rho_p": rho_p,
            "qe_operator_norm": qe_norm,
            "notes": notes,
        }),
        table,
        trailers: Vec::new(),
        violation: false,
    })
}

fn cogrowth<T: Weight>(config: &RunConfig, graph: &AnyGraph) -> Res<Report> {
    let mode = match config.mode {
        ModeArg::Ordinary => CogrowthMode::Ordinary,
        ModeArg::Weighted => CogrowthMode::Weighted,
    };
    let series: CogrowthSeries<T> = match graph {
        AnyGraph::Finite(g) => {
            let x = vertex(g, config.from.as_deref())?;
            let y = vertex(g, config.to.as_deref().or(config.from.as_deref()))?;
            cogrowth_series(g, x, y, config.nmax, mode, true)?
        }
        AnyGraph::Infinite(src) => {
            let src = src.as_ref();
            let x = source_vertex(src, config.from.as_deref())?;
            let y = source_vertex(src, config.to.as_deref().or(config.from.as_deref()))?;
            cogrowth_series_source(src, &x, &y, config.nmax, mode, config.budget)?
        }
    };
    let (rate, rate_note) = match cogrowth_rate(&series) {
        Ok(est) => (Some(est), None),
        Err(NbrwError::AllZero) => (None, Some("all coefficients with n >= 1 vanish")),
        Err(e) => return Err(e.into()),
    };
    let functional = if config.check_functional_equation {
        let g = graph.finite()?;
        let x = vertex(g, config.from.as_deref())?;
        let y = vertex(g, config.to.as_deref().or(config.from.as_deref()))?;
        Some(functional_equation_check(g, x, y, config.nmax.max(1))?)
    } else {
        None
    };
    let table = Table {
        columns: vec!["n", "coefficient", "sphere_size"],
        rows: series
            .coefficients
            .iter()
            .zip(&series.sphere_sizes)
            .enumerate()
            .map(|(n, (c, s))| vec![n.to_string(), c.render(), s.to_string()])
            .collect(),
    };
    let violation = functional.as_ref().is_some_and(|f| config.exact() && !f.exact_zero);
    let mut trailers = Vec::new();
    if let Some(f) = &functional {
        trailers.push((
            "functional_equation",
            json!({ "max_residual": f.max_residual, "exact_zero": f.exact_zero, "degree": f.degree, "order": f.order }),
        ));
    }
    Ok(Report {
        result: json!({
            "series": series,
            "rate": rate,
            "rate_note": rate_note,
            "functional_equation": functional,
        }),
        table,
        trailers,
        violation,
    })
}

fn simulate(config: &RunConfig, graph: &AnyGraph) -> Res<Report> {
    let trials = config.trials.unwrap_or(1);
    let seed = config.seed.ok_or_else(|| CliError::Input("simulate requires --seed".into()))?;
    let n = config.nmax;
    let (mc, exact) = match graph {
        AnyGraph::Finite(g) => {
            let x = vertex(g, config.from.as_deref())?;
            (monte_carlo_nbrw(g, x, n, trials, seed)?, nbrw_nstep::<_, f64>(g, x, n)?.values)
        }
        AnyGraph::Infinite(src) => {
            let src = src.as_ref();
            let x = source_vertex(src, config.from.as_deref())?;
            // an n-step walk only expands vertices at distance < n
            let b = ball_source_within(src, &x, n.max(1), config.budget)?;
            (monte_carlo_nbrw(&b, 0, n, trials, seed)?, nbrw_nstep::<_, f64>(&b, 0, n)?.values)
        }
    };
    let tv = total_variation(&mc.frequencies, &exact);
    let support: Vec<usize> = (0..mc.labels.len())
        .filter(|&i| mc.counts[i] > 0 || exact[i] > 0.0)
        .collect();
    let vertices: Vec<Value> = support
        .iter()
        .map(|&i| {
            json!({
                "vertex": mc.labels[i],
                "count": mc.counts[i],
                "frequency": mc.frequencies[i],
                "exact": exact[i],
            })
        })
        .collect();
    let table = Table {
        columns: vec!["vertex", "count", "frequency", "exact"],
        rows: support
            .iter()
            .map(|&i| {
                vec![
                    mc.labels[i].clone(),
                    mc.counts[i].to_string(),
                    mc.frequencies[i].to_string(),
                    exact[i].to_string(),
                ]
            })
            .collect(),
    };
    Ok(Report {
        result: json!({
            "n": n,
            "trials": trials,
            "seed": seed,
            "rng": "ChaCha8Rng::seed_from_u64(seed), stream = trial index",
            "total_variation": tv,
            "vertices": vertices,
        }),
        table,
        trailers: Vec::new(),
        violation: false,
    })
}

fn amenability(config: &RunConfig, src: &dyn GraphSource) -> Res<Report> {
    let x = source_vertex(src, config.from.as_deref())?;
    let d = diagnose(src, &x, config.nmax, config.rmax, config.k, config.budget)?;
    let table = Table {
        columns: vec!["r", "vertices", "area", "vol", "ratio"],
        rows: d
            .iota_report
            .folner_trend
            .iter()
            .map(|p| {
                vec![
                    p.r.to_string(),
                    p.vertices.to_string(),
                    p.area.to_string(),
                    p.vol.to_string(),
                    p.ratio.to_string(),
                ]
            })
            .collect(),
    };
    Ok(Report {
        result: serde_json::to_value(&d).map_err(|e| CliError::Io(e.into()))?,
        table,
        trailers: Vec::new(),
        violation: false,
    })
}

struct CheckResult {
    name: &'static str,
    status: &'static str,
    detail: String,
}

fn outcome(name: &'static str, ok: bool, detail: String) -> CheckResult {
    CheckResult {
        name,
        status: if ok { "pass" } else { "fail" },
        detail,
    }
}

/// Exact invariant suite on a finite graph.
fn check(config: &RunConfig, g: &Multigraph) -> Res<Report> {
    let n_max = config.nmax;
    let kernel = kernel_of(g)?;
    let mut checks = Vec::new();

    let rows = kernel.row_sums::<BigRational>();
    checks.push(outcome(
        "row_stochastic",
        rows.iter().all(One::is_one),
        format!("{} rows of Q_E", rows.len()),
    ));
    let cols = kernel.column_sums::<BigRational>();
    checks.push(outcome(
        "counting_measure_invariant",
        cols.iter().all(One::is_one),
        format!("{} column sums of Q_E", cols.len()),
    ));

    let bad_rev: Vec<usize> = (0..=n_max)
        .filter(|&n| !check_reversal_symmetry::<BigRational>(&kernel, n).holds())
        .collect();
    checks.push(outcome(
        "reversal_symmetry",
        bad_rev.is_empty(),
        format!("q^(n)(e,f) = q^(n)(f̌,ě) for n <= {n_max}; failing n: {bad_rev:?}"),
    ));

    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let mut mass_ok = true;
    let mut nbcog_ok = true;
    for x in 0..g.vertex_count() {
        let traj = nbrw_trajectory::<_, BigRational>(g, x, n_max, &all)?;
        mass_ok &= traj
            .iter()
            .all(|row| row.iter().fold(BigRational::zero(), |a, b| a + b).is_one());
        let cog = cogrowth_table::<_, BigRational>(g, x, n_max, CogrowthMode::Weighted, true)?;
        nbcog_ok &= cog.rows == traj;
    }
    checks.push(outcome(
        "probability_conservation",
        mass_ok,
        format!("Σ_y q^(n)(x,y) = 1 for every x and n <= {n_max}"),
    ));
    checks.push(outcome(
        "nbcog_equivalence",
        nbcog_ok,
        format!("weighted cogrowth equals q^(n) for every x and n <= {n_max}"),
    ));

    let srw_ok = (0..g.vertex_count()).all(|x| {
        (0..g.vertex_count()).all(|y| {
            g.multiplicity(x, y) == g.multiplicity(y, x)
        })
    });
    checks.push(outcome(
        "srw_reversible",
        srw_ok,
        "deg(x) p(x,y) = e(x,y) = e(y,x) = deg(y) p(y,x)".into(),
    ));

    let structure = analyze_structure(&kernel);
    checks.push(outcome(
        "irreducible_unless_cycle",
        structure.irreducible != g.is_cycle(),
        format!("irreducible={}, cycle={}", structure.irreducible, g.is_cycle()),
    ));

    match g.regular_degree() {
        Some(d) if d >= 3 => {
            let x = 0;
            let y = g.neighbors(0).first().map_or(0, |&(u, _)| u);
            let order = n_max.max(1);
            let a = functional_equation_check(g, x, x, order)?;
            let b = functional_equation_check(g, x, y, order)?;
            checks.push(outcome(
                "functional_equation",
                a.exact_zero && b.exact_zero,
                format!(
                    "residuals {} at ({lx},{lx}) and {} at ({lx},{ly}) through degree {order}",
                    a.max_residual,
                    b.max_residual,
                    lx = g.label(x),
                    ly = g.label(y)
                ),
            ));
        }
        _ => checks.push(CheckResult {
            name: "functional_equation",
            status: "skipped",
            detail: "graph is not regular of degree at least 3".into(),
        }),
    }

    let violation = checks.iter().any(|c| c.status == "fail");
    let table = Table {
        columns: vec!["check", "status", "detail"],
        rows: checks
            .iter()
            .map(|c| vec![c.name.to_string(), c.status.to_string(), c.detail.clone()])
            .collect(),
    };
    let list: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "status": c.status, "detail": c.detail }))
        .collect();
    Ok(Report {
        result: json!({ "passed": !violation, "checks": list }),
        table,
        trailers: Vec::new(),
        violation,
    })
}
