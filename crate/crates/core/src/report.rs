//! Validation and radius reports for a [`ProblemFile`].

use std::fmt;

use crate::abel::{constant_kernel_closed_form, solve_abel_linear_rational_fold, FoldOptions};
use crate::convergence::{
    abel_grouped_inequality, abel_grouped_norms, majorant_lm, radius_bound_abel,
    radius_bound_regular, AbelEnvelope, GeometricEnvelope, MajorantData,
};
use crate::error::{Error, Result};
use crate::linalg::Norm;
use crate::oracle::{residual_check, solve_second_kind_numeric, Grid};
use crate::problem::{Problem, ProblemFile, Solved};
use crate::regular::{derivative_method_linear, solve_linear_second_kind, solve_nonlinear_second_kind};
use crate::series::{estimate_radius_from_norms, AbelTable, RadiusEstimate, Series, TaylorTable};

/// Closed-form comparison covers `r + n` up to this.
pub const CLOSED_FORM_MAX_INDEX: usize = 12;
pub const CLOSED_FORM_TOL: f64 = 1e-10;
pub const CROSS_METHOD_TOL: f64 = 1e-9;
pub const DERIVATIVE_TOL: f64 = 1e-11;
pub const REDUCTION_TOL: f64 = 1e-12;

/// One line of a validation report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tol: f64,
    pub detail: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value <= self.tol
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<18} {:.3e} (tol {:.0e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.tol
        )?;
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidateOptions {
    /// Overrides the file's `t_points`.
    pub t_points: Option<Vec<f64>>,
    /// Overrides the file's `grid_steps`.
    pub grid_steps: Option<usize>,
    /// Added to component 0 of coefficient `(0, 1)` before the residual
    /// and time-stepping checks.
    pub corruption: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Residual tolerance by problem class.
pub fn residual_tol(problem: &Problem) -> f64 {
    match problem {
        Problem::Regular { .. } | Problem::RegularNonlinear { .. } | Problem::FirstKind { .. } => 1e-6,
        Problem::AbelLinear { .. } | Problem::AbelNonlinear { .. } => 1e-4,
        Problem::Log { .. } => 1e-3,
    }
}

/// Time-stepping tolerance by problem class.
pub fn stepping_tol(problem: &Problem) -> f64 {
    match problem {
        Problem::Regular { .. } | Problem::RegularNonlinear { .. } => 1e-6,
        _ => 1e-4,
    }
}

fn rel_diff(got: &[f64], want: &[f64]) -> f64 {
    got.iter()
        .zip(want)
        .map(|(g, w)| if *w == 0.0 { g.abs() } else { (g - w).abs() / w.abs() })
        .fold(0.0, f64::max)
}

fn abs_diff(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max)
}

/// Coefficient `c` when the problem is `x = ξ + c ∫ (t−s)^{−α} x ds` with a
/// scalar analytic `ξ`.
fn constant_abel_shape(problem: &Problem) -> Option<(f64, &AbelTable)> {
    let Problem::AbelLinear { kernel, xi } = problem else { return None };
    if kernel.dim() != 1 || !kernel.a.is_zero() || has_singular_rows(xi) {
        return None;
    }
    let mut c = None;
    for (i, j, m) in kernel.b.iter() {
        match (i, j) {
            (0, 0) => c = Some(m.get(0, 0)),
            _ if m.is_zero() => {}
            _ => return None,
        }
    }
    c.map(|c| (c, xi))
}

fn has_singular_rows(xi: &AbelTable) -> bool {
    xi.iter().any(|(r, _, c)| r > 0 && c.iter().any(|&v| v != 0.0))
}

fn closed_form_check(problem: &Problem, solved: &Solved) -> Result<Option<Check>> {
    let (Some((c, xi)), Series::Abel(x)) = (constant_abel_shape(problem), &solved.series) else {
        return Ok(None);
    };
    let xi0: Vec<f64> = xi.analytic_row().iter().map(|(_, v)| v[0]).collect();
    let want = constant_kernel_closed_form(c, x.alpha(), &xi0, x.order(), x.rmax())?;
    let mut worst: f64 = 0.0;
    for (r, n, w) in want.iter() {
        if r + n <= CLOSED_FORM_MAX_INDEX {
            let got = x.coeff(r, n).unwrap_or(&[0.0]);
            worst = worst.max(rel_diff(got, w));
        }
    }
    Ok(Some(Check {
        name: "closed-form",
        value: worst,
        tol: CLOSED_FORM_TOL,
        detail: format!("c = {c}, r + n <= {CLOSED_FORM_MAX_INDEX}"),
    }))
}

fn table_diff(a: &AbelTable, b: &AbelTable) -> f64 {
    let scale = a.max_abs().max(1.0);
    a.iter()
        .map(|(r, n, c)| abs_diff(c, b.coeff(r, n).unwrap_or(&vec![0.0; c.len()])))
        .fold(0.0, f64::max)
        / scale
}

fn checks_without_oracle(problem: &ProblemFile, solved: &Solved) -> Result<Vec<Check>> {
    let n_max = problem.truncation.n_max;
    let mut out = Vec::new();
    out.extend(closed_form_check(&problem.problem, solved)?);
    match (&problem.problem, &solved.series) {
        (Problem::AbelLinear { kernel, xi }, Series::Abel(x)) if kernel.alpha.is_rational() => {
            let opts = FoldOptions { m_max: problem.truncation.m_max, ..FoldOptions::default() };
            let fold = solve_abel_linear_rational_fold(kernel, xi, n_max, opts)?;
            out.push(Check {
                name: "direct-vs-fold",
                value: table_diff(x, &fold.table),
                tol: CROSS_METHOD_TOL,
                detail: fold.fold.map_or(String::new(), |f| format!("{} fold terms", f.terms)),
            });
        }
        (Problem::Regular { kernel, xi }, Series::Taylor(x)) => {
            let d = derivative_method_linear(kernel, xi, n_max)?;
            let worst = x
                .iter()
                .map(|(n, c)| rel_diff(d.coeff(n), c))
                .fold(0.0, f64::max);
            out.push(Check {
                name: "derivative-method",
                value: worst,
                tol: DERIVATIVE_TOL,
                detail: String::new(),
            });
            let md = MajorantData::new(kernel, xi, n_max, Norm::Max)?;
            let v = md.first_violation(x, Norm::Max);
            out.push(Check {
                name: "majorant",
                value: if v.is_some() { 1.0 } else { 0.0 },
                tol: 0.0,
                detail: v.map_or(format!("|X_n| <= C_n for n <= {n_max}"), |n| {
                    format!("|X_{n}| exceeds C_{n}")
                }),
            });
        }
        _ => {}
    }
    if let Some(reg) = reduced_regular(&problem.problem, n_max)? {
        let Series::Abel(x) = &solved.series else { unreachable!() };
        let as_abel = AbelTable::from_taylor(x.alpha(), &reg, x.rmax())?;
        out.push(Check {
            name: "b=0 reduction",
            value: table_diff(x, &as_abel),
            tol: REDUCTION_TOL,
            detail: "matches the regular solver".into(),
        });
    }
    Ok(out)
}

/// Regular-solver answer for an Abel problem whose singular part and
/// singular forcing rows vanish.
fn reduced_regular(problem: &Problem, n_max: usize) -> Result<Option<TaylorTable>> {
    match problem {
        Problem::AbelLinear { kernel, xi } if kernel.b.is_zero() && !has_singular_rows(xi) => {
            Ok(Some(solve_linear_second_kind(&kernel.a, &xi.analytic_row(), n_max)?))
        }
        Problem::AbelNonlinear { kernel, xi }
            if kernel.b.terms().iter().all(|t| t.value.iter().all(|&v| v == 0.0))
                && !has_singular_rows(xi) =>
        {
            Ok(Some(solve_nonlinear_second_kind(&kernel.a, &xi.analytic_row(), n_max)?))
        }
        _ => Ok(None),
    }
}

/// Solves the problem and runs every oracle that applies to it.
pub fn validate(problem: &ProblemFile, opts: &ValidateOptions) -> Result<ValidationReport> {
    let solved = problem.problem.solve(&problem.truncation)?;
    let mut checks = checks_without_oracle(problem, &solved)?;
    let t_points = opts.t_points.clone().unwrap_or_else(|| problem.validation.t_points.clone());
    let steps = opts.grid_steps.unwrap_or(problem.validation.grid_steps);
    let mut series = solved.series.clone();
    if let Some(d) = opts.corruption {
        series.perturb(0, 1, 0, d)?;
    }
    let eq = problem.problem.equation()?;

    let res = residual_check(&eq, &series, &t_points)?;
    checks.push(Check {
        name: "residual",
        value: res,
        tol: residual_tol(&problem.problem),
        detail: format!("max over {} t-points", t_points.len()),
    });

    if !matches!(problem.problem, Problem::FirstKind { .. }) {
        let t_end = t_points.iter().copied().fold(0.0, f64::max);
        let grid = Grid::new(t_end, steps)?;
        checks.push(match solve_second_kind_numeric(&eq, &grid) {
            Ok(nodes) => {
                let mut worst: f64 = 0.0;
                for &t in &t_points {
                    let m = (t / grid.h()).round() as usize;
                    let m = m.clamp(1, grid.steps());
                    worst = worst.max(abs_diff(&series.evaluate(grid.node(m))?, &nodes[m]));
                }
                Check {
                    name: "time-stepping",
                    value: worst,
                    tol: stepping_tol(&problem.problem),
                    detail: format!("{steps} steps"),
                }
            }
            Err(Error::StepFailure { node }) => Check {
                name: "time-stepping",
                value: f64::INFINITY,
                tol: stepping_tol(&problem.problem),
                detail: format!("fixed point failed at node {node}"),
            },
            Err(e) => return Err(e),
        });
    }
    Ok(ValidationReport { checks, warnings: solved.warnings })
}

/// Envelope behind a certified bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope {
    Geometric(GeometricEnvelope),
    Abel(AbelEnvelope),
}

impl fmt::Display for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Envelope::Geometric(e) => write!(f, "M0 = {}, M = {}, R = {}", e.m0, e.m, e.r),
            Envelope::Abel(e) => write!(
                f,
                "C0 = {}, C_L = {}, C_M = {}, R = {}, delta = {}",
                e.c0, e.c_l, e.c_m, e.r, e.delta
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusReport {
    /// `Err` carries the reason no bound is available.
    pub certified: std::result::Result<(f64, Envelope), String>,
    /// Grouped inequality `lhs <= rhs` held for every computed `n`
    /// (rational linear Abel problems only).
    pub grouped_inequality: Option<bool>,
    pub estimate: RadiusEstimate,
}

/// Largest component of every column `i`, over all rows.
pub fn column_norms(series: &Series) -> Vec<f64> {
    let mut out = vec![0.0; series.order() + 1];
    for (_, i, _, c) in series.entries() {
        out[i] = c.iter().fold(out[i], |m: f64, v| m.max(v.abs()));
    }
    out
}

/// Certified radius bound (where the problem class has one) and the
/// empirical estimate from the computed coefficients.
pub fn radius(problem: &ProblemFile, delta: f64, r: Option<f64>) -> Result<RadiusReport> {
    let n_max = problem.truncation.n_max;
    let solved = problem.problem.solve(&problem.truncation)?;
    let estimate = estimate_radius_from_norms(&column_norms(&solved.series));
    let mut grouped_inequality = None;
    let certified = match (&problem.problem, &solved.series) {
        (Problem::Regular { kernel, xi }, _) => {
            let md = MajorantData::new(kernel, xi, n_max, Norm::Max)?;
            let env = GeometricEnvelope::fit(&md.norm_xi, &md.l, r)?;
            Ok((radius_bound_regular(&env)?, Envelope::Geometric(env)))
        }
        (Problem::AbelLinear { kernel, xi }, Series::Abel(x)) if kernel.alpha.is_rational() => {
            let (l, m) = majorant_lm(&kernel.a, &kernel.b, n_max, Norm::Max);
            let gxi = abel_grouped_norms(xi, delta, Norm::Max)?;
            let env = AbelEnvelope::fit(&gxi, &l, &m, kernel.alpha, delta, r)?;
            let pairs = abel_grouped_inequality(x, xi, &l, &m, delta, Norm::Max)?;
            grouped_inequality = Some(pairs.iter().all(|&(a, b)| a <= b * (1.0 + 1e-12)));
            Ok((radius_bound_abel(&env, kernel.alpha)?, Envelope::Abel(env)))
        }
        (Problem::AbelLinear { .. }, _) => Err("no certified bound for irrational alpha".into()),
        (Problem::RegularNonlinear { .. } | Problem::AbelNonlinear { .. }, _) => {
            Err("no certified bound for nonlinear problems".into())
        }
        (Problem::FirstKind { .. }, _) => Err("no certified bound for first-kind problems".into()),
        (Problem::Log { .. }, _) => Err("no certified bound for log-singular problems".into()),
    };
    Ok(RadiusReport { certified, grouped_inequality, estimate })
}
