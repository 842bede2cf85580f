use num::rational::BigRational;
use num::{ToPrimitive, Zero};
use serde::Serialize;

use super::{cogrowth_series, CogrowthMode, PowerSeries};
use crate::error::{NbrwError, Result};
use crate::graph::{Multigraph, Topology};
use crate::numeric::Weight;
use crate::walks::srw_trajectory;

/// `G(x, y | z) = Σ p^(n)(x, y) z^n` through degree `order`, exactly.
pub fn green_series(g: &Multigraph, x: usize, y: usize, order: usize) -> Result<PowerSeries> {
    if y >= g.vertex_count() {
        return Err(NbrwError::UnknownVertex(y.to_string()));
    }
    let traj = srw_trajectory::<_, BigRational>(g, x, order)?;
    Ok(PowerSeries::from_coeffs(
        traj.into_iter().map(|row| row[y].clone()).collect(),
        order,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionalEquationReport {
    pub from: String,
    pub to: String,
    pub degree: usize,
    pub order: usize,
    /// Coefficients of `C(x, y | t)`.
    pub lhs: Vec<String>,
    /// Coefficients of `(1/d)δ_x(y) + ((d−1)² − t²)/(d(d−1+t²)) · G(x, y | z(t))`.
    pub rhs: Vec<String>,
    pub max_residual: String,
    pub max_residual_f64: f64,
    pub exact_zero: bool,
}

/// Compares the cogrowth series of a `d`-regular graph with the SRW Green
/// function through the substitution `z(t) = dt/(d − 1 + t²)`, as formal power
/// series in `t` through degree `order`.
pub fn functional_equation_check(
    g: &Multigraph,
    x: usize,
    y: usize,
    order: usize,
) -> Result<FunctionalEquationReport> {
    let d = g.regular_degree().ok_or_else(|| {
        NbrwError::NotRegular(format!(
            "degrees range from {} to {}",
            g.min_degree(),
            g.max_degree()
        ))
    })?;
    if d < 3 {
        return Err(NbrwError::BadParams(format!(
            "the substitution needs degree at least 3, got {d}"
        )));
    }
    if order < 1 {
        return Err(NbrwError::BadParams("order must be at least 1".into()));
    }
    let q = |a: i64| BigRational::from_integer(a.into());
    let d_r = q(d as i64);
    // 1/(d − 1 + t²)
    let denom = &PowerSeries::constant(q(d as i64 - 1), order)
        + &PowerSeries::monomial(q(1), 2, order);
    let inv_denom = denom.inverse().expect("constant term d - 1 is nonzero");
    let z = &PowerSeries::monomial(d_r.clone(), 1, order) * &inv_denom;

    let green = green_series(g, x, y, order)?;
    let composed = green.compose(&z).expect("z(0) = 0");
    let numer = &PowerSeries::constant(q((d as i64 - 1).pow(2)), order)
        - &PowerSeries::monomial(q(1), 2, order);
    let factor = (&numer * &inv_denom).scale(&d_r.recip());
    let mut rhs = &factor * &composed;
    if x == y {
        rhs = &rhs + &PowerSeries::constant(d_r.recip(), order);
    }

    let cog = cogrowth_series::<_, BigRational>(g, x, y, order, CogrowthMode::Ordinary, true)?;
    let lhs = PowerSeries::from_coeffs(cog.coefficients, order);
    let residual = lhs.max_abs_diff(&rhs);
    Ok(FunctionalEquationReport {
        from: g.label(x).to_string(),
        to: g.label(y).to_string(),
        degree: d,
        order,
        lhs: lhs.coeffs().iter().map(Weight::render).collect(),
        rhs: rhs.coeffs().iter().map(Weight::render).collect(),
        max_residual: residual.render(),
        max_residual_f64: residual.to_f64().unwrap_or(f64::NAN),
        exact_zero: residual.is_zero(),
    })
}
