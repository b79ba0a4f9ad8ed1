//! JSON problem files.
//!
//! ```json
//! {
//!   "dim": 1,
//!   "kind": "second-kind",
//!   "linearity": "linear",
//!   "singularity": { "type": "abel", "alpha": "1/2" },
//!   "kernel": { "a": [], "b": [ { "i": 0, "j": 0, "value": [[1.0]] } ] },
//!   "xi": [ { "r": 0, "i": 0, "value": [1.0] } ],
//!   "truncation": { "n_max": 20, "r_max": 8, "m_max": 64 },
//!   "validation": { "t_points": [0.1, 0.2, 0.3], "grid_steps": 2048 }
//! }
//! ```
//!
//! Kernel items are either explicit coefficients (`{i, j, value: [[..]]}`
//! for linear kernels, `{i, j, k: [..], value: [..]}` for nonlinear ones) or
//! generators:
//!
//! * `{"generator": "constant", "value": V}`: `V` at `t^0 s^0`
//! * `{"generator": "polynomial", "coefficients": [[c00, c01, ..], [c10, ..]], "value": V}`:
//!   `c_ij V` at `t^i s^j`
//! * `{"generator": "exp", "a": a, "b": b, "degree": d, "value": V}`: the
//!   expansion of `e^{at+bs} V` up to total degree `d`
//!
//! `V` is a matrix for linear kernels (identity when omitted) and a vector
//! for nonlinear ones, which also need `k`. Forcing items use the same
//! generators in the variable `t` (`coefficients` is then a flat list and
//! `b` is ignored), or explicit `{r, i, value: [..]}` entries.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::abel::{
    solve_abel_linear_irrational, solve_abel_linear_rational_direct, solve_abel_nonlinear,
    AbelLinearKernel, AbelNonlinearKernel, AbelSolution, FoldOptions, FoldReport,
};
use crate::error::{Error, Result};
use crate::kernel::{LinearKernelExpansion, NonlinearKernelExpansion};
use crate::linalg::Matrix;
use crate::first_kind::{solve_first_kind, FirstKindDiagnostics};
use crate::log_kernel::{solve_log_system, LogKernelExpansion, LogVariant};
use crate::oracle::Equation;
use crate::regular::{solve_linear_second_kind, solve_nonlinear_second_kind};
use crate::series::{AbelTable, AlphaExponent, LogTable, MultiIndex, Series, TaylorTable};
use crate::special::factorial;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    SecondKind,
    FirstKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Linearity {
    Linear,
    Nonlinear,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SingularitySpec {
    None,
    Abel {
        alpha: Value,
        #[serde(default)]
        irrational: bool,
    },
    Log {
        variant: String,
    },
}

#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    #[serde(default)]
    pub a: Vec<Item>,
    #[serde(default)]
    pub b: Vec<Item>,
}

/// One kernel or forcing item; which fields are required depends on the
/// item type and is checked after parsing.
#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Item {
    pub generator: Option<String>,
    pub r: Option<usize>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub k: Option<Vec<u32>>,
    pub value: Option<Value>,
    pub coefficients: Option<Value>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(default = "default_r_max")]
    pub r_max: usize,
    #[serde(default = "default_m_max")]
    pub m_max: usize,
}

fn default_n_max() -> usize {
    20
}
fn default_r_max() -> usize {
    8
}
fn default_m_max() -> usize {
    64
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { n_max: default_n_max(), r_max: default_r_max(), m_max: default_m_max() }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Validation {
    #[serde(default = "default_t_points")]
    pub t_points: Vec<f64>,
    #[serde(default = "default_grid_steps")]
    pub grid_steps: usize,
}

fn default_t_points() -> Vec<f64> {
    vec![0.1, 0.2]
}
fn default_grid_steps() -> usize {
    1024
}

impl Default for Validation {
    fn default() -> Self {
        Validation { t_points: default_t_points(), grid_steps: default_grid_steps() }
    }
}

/// Raw problem file contents.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub dim: usize,
    pub kind: Kind,
    pub linearity: Linearity,
    pub singularity: SingularitySpec,
    #[serde(default)]
    pub kernel: KernelSpec,
    #[serde(default)]
    pub xi: Vec<Item>,
    #[serde(default)]
    pub truncation: Truncation,
    #[serde(default)]
    pub validation: Validation,
}

/// A validated problem ready for a solver.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Regular { kernel: LinearKernelExpansion, xi: TaylorTable },
    RegularNonlinear { kernel: NonlinearKernelExpansion, xi: TaylorTable },
    FirstKind { kernel: LinearKernelExpansion, xi: TaylorTable },
    AbelLinear { kernel: AbelLinearKernel, xi: AbelTable },
    AbelNonlinear { kernel: AbelNonlinearKernel, xi: AbelTable },
    Log { kernel: LogKernelExpansion, xi: LogTable, linear: bool },
}

/// Problem plus its truncation and validation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub problem: Problem,
    pub truncation: Truncation,
    pub validation: Validation,
}

fn as_vector(v: &Value, dim: usize, what: &str) -> Result<Vec<f64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected an array of {dim} numbers")))?;
    if arr.len() != dim {
        return Err(parse_err(format!("{what}: expected {dim} components, found {}", arr.len())));
    }
    arr.iter()
        .map(|x| x.as_f64().ok_or_else(|| parse_err(format!("{what}: {x} is not a number"))))
        .collect()
}

fn as_matrix(v: &Value, dim: usize, what: &str) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected a {dim}x{dim} matrix")))?;
    if rows.len() != dim {
        return Err(parse_err(format!("{what}: expected {dim} rows, found {}", rows.len())));
    }
    let rows: Vec<Vec<f64>> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| as_vector(row, dim, &format!("{what} row {r}")))
        .collect::<Result<_>>()?;
    Matrix::from_rows(&rows).map_err(|e| parse_err(format!("{what}: {e}")))
}

/// Coefficient `V` of a kernel item: a matrix (linear) or vector (nonlinear).
#[derive(Debug, Clone)]
enum Coef {
    Mat(Matrix),
    Vec(MultiIndex, Vec<f64>),
}

impl Coef {
    fn scaled(&self, s: f64) -> Coef {
        match self {
            Coef::Mat(m) => Coef::Mat(m.scaled(s)),
            Coef::Vec(k, v) => Coef::Vec(k.clone(), v.iter().map(|x| x * s).collect()),
        }
    }
}

fn kernel_coef(item: &Item, dim: usize, linear: bool, what: &str) -> Result<Coef> {
    if linear {
        if item.k.is_some() {
            return Err(parse_err(format!("{what}: linear kernels take no 'k'")));
        }
        match &item.value {
            Some(v) => Ok(Coef::Mat(as_matrix(v, dim, &format!("{what}.value"))?)),
            None if item.generator.is_some() => Ok(Coef::Mat(Matrix::identity(dim))),
            None => Err(parse_err(format!("{what}: missing 'value'"))),
        }
    } else {
        let k = item
            .k
            .clone()
            .ok_or_else(|| parse_err(format!("{what}: nonlinear kernels need 'k'")))?;
        if k.len() != dim {
            return Err(parse_err(format!("{what}.k: expected {dim} entries, found {}", k.len())));
        }
        let v = item
            .value
            .as_ref()
            .ok_or_else(|| parse_err(format!("{what}: missing 'value'")))?;
        Ok(Coef::Vec(MultiIndex::new(k), as_vector(v, dim, &format!("{what}.value"))?))
    }
}

fn need<T: Copy>(x: Option<T>, what: &str, field: &str) -> Result<T> {
    x.ok_or_else(|| parse_err(format!("{what}: missing '{field}'")))
}

/// Expands a kernel item into `(i, j, V)` triples.
fn kernel_terms(item: &Item, dim: usize, linear: bool, what: &str) -> Result<Vec<(usize, usize, Coef)>> {
    let coef = kernel_coef(item, dim, linear, what)?;
    match item.generator.as_deref() {
        None => Ok(vec![(need(item.i, what, "i")?, need(item.j, what, "j")?, coef)]),
        Some("constant") => Ok(vec![(0, 0, coef)]),
        Some("polynomial") => {
            let c: Vec<Vec<f64>> = serde_json::from_value(
                item.coefficients
                    .clone()
                    .ok_or_else(|| parse_err(format!("{what}: missing 'coefficients'")))?,
            )
            .map_err(|e| parse_err(format!("{what}.coefficients: {e}")))?;
            Ok(c.iter()
                .enumerate()
                .flat_map(|(i, row)| {
                    let coef = &coef;
                    row.iter().enumerate().filter(|(_, &v)| v != 0.0).map(move |(j, &v)| (i, j, coef.scaled(v)))
                })
                .collect())
        }
        Some("exp") => {
            let (a, b) = (item.a.unwrap_or(0.0), item.b.unwrap_or(0.0));
            let d = need(item.degree, what, "degree")?;
            let mut out = Vec::new();
            for i in 0..=d {
                for j in 0..=d - i {
                    let w = a.powi(i as i32) * b.powi(j as i32) / (factorial(i) * factorial(j));
                    if w != 0.0 {
                        out.push((i, j, coef.scaled(w)));
                    }
                }
            }
            Ok(out)
        }
        Some(g) => Err(parse_err(format!(
            "{what}: unknown generator {g:?} (expected constant, polynomial or exp)"
        ))),
    }
}

fn build_linear(items: &[Item], dim: usize, what: &str) -> Result<LinearKernelExpansion> {
    let mut k = LinearKernelExpansion::new(dim);
    for (n, item) in items.iter().enumerate() {
        let w = format!("{what}[{n}]");
        for (i, j, c) in kernel_terms(item, dim, true, &w)? {
            if let Coef::Mat(m) = c {
                k.add(i, j, &m).map_err(|e| parse_err(format!("{w}: {e}")))?;
            }
        }
    }
    Ok(k)
}

fn build_nonlinear(items: &[Item], dim: usize, what: &str) -> Result<NonlinearKernelExpansion> {
    let mut k = NonlinearKernelExpansion::new(dim);
    for (n, item) in items.iter().enumerate() {
        let w = format!("{what}[{n}]");
        for (i, j, c) in kernel_terms(item, dim, false, &w)? {
            if let Coef::Vec(mi, v) = c {
                k.add(i, j, mi, v).map_err(|e| parse_err(format!("{w}: {e}")))?;
            }
        }
    }
    Ok(k)
}

/// Expands forcing items into `(r, i, value)` triples.
fn xi_terms(items: &[Item], dim: usize) -> Result<Vec<(usize, usize, Vec<f64>)>> {
    let mut out = Vec::new();
    for (n, item) in items.iter().enumerate() {
        let what = format!("xi[{n}]");
        if item.k.is_some() || item.j.is_some() {
            return Err(parse_err(format!("{what}: forcing items take no 'k' or 'j'")));
        }
        let v = as_vector(
            item.value.as_ref().ok_or_else(|| parse_err(format!("{what}: missing 'value'")))?,
            dim,
            &format!("{what}.value"),
        )?;
        let scaled = |s: f64| v.iter().map(|x| x * s).collect::<Vec<f64>>();
        let r = item.r.unwrap_or(0);
        match item.generator.as_deref() {
            None => out.push((r, need(item.i, &what, "i")?, v.clone())),
            Some("constant") => out.push((r, 0, v.clone())),
            Some("polynomial") => {
                let c: Vec<f64> = serde_json::from_value(
                    item.coefficients
                        .clone()
                        .ok_or_else(|| parse_err(format!("{what}: missing 'coefficients'")))?,
                )
                .map_err(|e| parse_err(format!("{what}.coefficients: {e}")))?;
                for (i, &ci) in c.iter().enumerate() {
                    out.push((r, i, scaled(ci)));
                }
            }
            Some("exp") => {
                let a = item.a.unwrap_or(0.0);
                let d = need(item.degree, &what, "degree")?;
                for i in 0..=d {
                    out.push((r, i, scaled(a.powi(i as i32) / factorial(i))));
                }
            }
            Some(g) => {
                return Err(parse_err(format!(
                    "{what}: unknown generator {g:?} (expected constant, polynomial or exp)"
                )))
            }
        }
    }
    Ok(out)
}

fn parse_alpha(alpha: &Value, irrational: bool) -> Result<AlphaExponent> {
    match alpha {
        Value::String(s) => {
            if irrational {
                return Err(parse_err("singularity.alpha: a \"p/q\" alpha cannot be irrational"));
            }
            AlphaExponent::parse_rational(s).map_err(|e| parse_err(format!("singularity.alpha: {e}")))
        }
        Value::Number(n) => {
            let v = n.as_f64().unwrap_or(f64::NAN);
            if !irrational {
                return Err(parse_err(
                    "singularity.alpha: a decimal alpha needs \"irrational\": true; write rational values as \"p/q\"",
                ));
            }
            AlphaExponent::irrational(v).map_err(|e| parse_err(format!("singularity.alpha: {e}")))
        }
        _ => Err(parse_err("singularity.alpha: expected \"p/q\" or a number")),
    }
}

fn sum_into(dim: usize, terms: &[(usize, usize, Vec<f64>)], r_filter: impl Fn(usize) -> bool) -> Vec<Vec<f64>> {
    let order = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut c = vec![vec![0.0; dim]; order + 1];
    for (r, i, v) in terms {
        if r_filter(*r) {
            for (a, b) in c[*i].iter_mut().zip(v) {
                *a += b;
            }
        }
    }
    c
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
    }

    /// Checks the declared structure and builds the solver inputs.
    pub fn build(&self) -> Result<ProblemFile> {
        let dim = self.dim;
        if dim == 0 {
            return Err(parse_err("dim: must be positive"));
        }
        let linear = self.linearity == Linearity::Linear;
        let xi_terms = xi_terms(&self.xi, dim)?;
        let max_r = xi_terms.iter().map(|t| t.0).max().unwrap_or(0);
        let order = xi_terms.iter().map(|t| t.1).max().unwrap_or(0);
        let tr = self.truncation;
        if self.validation.grid_steps < 4 {
            return Err(parse_err("validation.grid_steps: must be at least 4"));
        }
        if let Some(t) = self.validation.t_points.iter().find(|&&t| !(t > 0.0) || !t.is_finite()) {
            return Err(parse_err(format!("validation.t_points: {t} is not a positive number")));
        }
        let taylor_xi = || -> Result<TaylorTable> {
            if max_r > 0 {
                return Err(parse_err("xi: rows r > 0 need an abel or log singularity"));
            }
            TaylorTable::from_coeffs(sum_into(dim, &xi_terms, |_| true))
                .map_err(|e| parse_err(format!("xi: {e}")))
        };
        let no_b = |what: &str| -> Result<()> {
            if self.kernel.b.is_empty() {
                Ok(())
            } else {
                Err(parse_err(format!("kernel.b: {what} kernels have no singular part")))
            }
        };

        let problem = match (&self.singularity, self.kind) {
            (SingularitySpec::None, Kind::FirstKind) => {
                if !linear {
                    return Err(parse_err("linearity: first-kind problems must be linear"));
                }
                no_b("first-kind")?;
                Problem::FirstKind { kernel: build_linear(&self.kernel.a, dim, "kernel.a")?, xi: taylor_xi()? }
            }
            (_, Kind::FirstKind) => {
                return Err(parse_err("singularity: first-kind problems must have no singularity"))
            }
            (SingularitySpec::None, Kind::SecondKind) => {
                no_b("regular")?;
                if linear {
                    Problem::Regular { kernel: build_linear(&self.kernel.a, dim, "kernel.a")?, xi: taylor_xi()? }
                } else {
                    Problem::RegularNonlinear {
                        kernel: build_nonlinear(&self.kernel.a, dim, "kernel.a")?,
                        xi: taylor_xi()?,
                    }
                }
            }
            (SingularitySpec::Abel { alpha, irrational }, Kind::SecondKind) => {
                let alpha = parse_alpha(alpha, *irrational)?;
                let mut xi = AbelTable::zeros(dim, alpha, order, tr.r_max.max(max_r))
                    .map_err(|e| parse_err(format!("xi: {e}")))?;
                let mut acc = std::collections::BTreeMap::<(usize, usize), Vec<f64>>::new();
                for (r, i, v) in &xi_terms {
                    let e = acc.entry((*r, *i)).or_insert_with(|| vec![0.0; dim]);
                    e.iter_mut().zip(v).for_each(|(a, b)| *a += b);
                }
                for ((r, i), v) in acc {
                    xi.set(r, i, &v).map_err(|e| parse_err(format!("xi: {e}")))?;
                }
                if linear {
                    Problem::AbelLinear {
                        kernel: AbelLinearKernel::new(
                            alpha,
                            build_linear(&self.kernel.a, dim, "kernel.a")?,
                            build_linear(&self.kernel.b, dim, "kernel.b")?,
                        )?,
                        xi,
                    }
                } else {
                    Problem::AbelNonlinear {
                        kernel: AbelNonlinearKernel::new(
                            alpha,
                            build_nonlinear(&self.kernel.a, dim, "kernel.a")?,
                            build_nonlinear(&self.kernel.b, dim, "kernel.b")?,
                        )?,
                        xi,
                    }
                }
            }
            (SingularitySpec::Log { variant }, Kind::SecondKind) => {
                let variant = match variant.as_str() {
                    "t-minus-s" => LogVariant::TMinusS,
                    "ln-ratio" => LogVariant::LnRatio,
                    v => {
                        return Err(parse_err(format!(
                            "singularity.variant: {v:?} is not t-minus-s or ln-ratio"
                        )))
                    }
                };
                if max_r > tr.r_max {
                    return Err(parse_err(format!("xi: row {max_r} exceeds truncation.r_max = {}", tr.r_max)));
                }
                let mut xi = LogTable::zeros(dim, order, tr.r_max);
                for r in 0..=max_r {
                    let rows = sum_into(dim, &xi_terms, |rr| rr == r);
                    for (i, v) in rows.iter().enumerate() {
                        xi.set(r, i, v).map_err(|e| parse_err(format!("xi: {e}")))?;
                    }
                }
                let kernel = if linear {
                    LogKernelExpansion::linear(
                        variant,
                        &build_linear(&self.kernel.a, dim, "kernel.a")?,
                        &build_linear(&self.kernel.b, dim, "kernel.b")?,
                    )?
                } else {
                    LogKernelExpansion::new(
                        variant,
                        build_nonlinear(&self.kernel.a, dim, "kernel.a")?,
                        build_nonlinear(&self.kernel.b, dim, "kernel.b")?,
                    )?
                };
                Problem::Log { kernel, xi, linear }
            }
        };
        Ok(ProblemFile { problem, truncation: tr, validation: self.validation.clone() })
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        ProblemSpec::from_json(text)?.build()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }
}

/// Output of [`Problem::solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct Solved {
    pub series: Series,
    /// Truncation warnings (fold not converged, dropped log powers).
    pub warnings: Vec<String>,
    pub fold: Option<FoldReport>,
    pub first_kind: Option<FirstKindDiagnostics>,
}

impl Solved {
    fn plain(series: Series) -> Self {
        Solved { series, warnings: Vec::new(), fold: None, first_kind: None }
    }

    fn from_abel(sol: AbelSolution) -> Self {
        let mut warnings = Vec::new();
        if let Some(f) = sol.fold.filter(|f| !f.converged) {
            warnings.push(format!(
                "fold stopped after {} terms with last increment {:.3e}",
                f.terms, f.last_increment
            ));
        }
        Solved { series: Series::Abel(sol.table), warnings, fold: sol.fold, first_kind: None }
    }
}

impl Problem {
    pub fn dim(&self) -> usize {
        match self {
            Problem::Regular { xi, .. }
            | Problem::RegularNonlinear { xi, .. }
            | Problem::FirstKind { xi, .. } => xi.dim(),
            Problem::AbelLinear { xi, .. } | Problem::AbelNonlinear { xi, .. } => xi.dim(),
            Problem::Log { xi, .. } => xi.dim(),
        }
    }

    /// Runs the solver matching the problem class. Linear rational Abel
    /// problems use the direct method.
    pub fn solve(&self, tr: &Truncation) -> Result<Solved> {
        let fold = FoldOptions { m_max: tr.m_max, ..FoldOptions::default() };
        Ok(match self {
            Problem::Regular { kernel, xi } => {
                Solved::plain(Series::Taylor(solve_linear_second_kind(kernel, xi, tr.n_max)?))
            }
            Problem::RegularNonlinear { kernel, xi } => {
                Solved::plain(Series::Taylor(solve_nonlinear_second_kind(kernel, xi, tr.n_max)?))
            }
            Problem::FirstKind { kernel, xi } => {
                let sol = solve_first_kind(kernel, xi, tr.n_max)?;
                Solved {
                    series: Series::Taylor(sol.table),
                    warnings: Vec::new(),
                    fold: None,
                    first_kind: Some(sol.diagnostics),
                }
            }
            Problem::AbelLinear { kernel, xi } if kernel.alpha.is_rational() => {
                Solved::plain(Series::Abel(solve_abel_linear_rational_direct(kernel, xi, tr.n_max)?))
            }
            Problem::AbelLinear { kernel, xi } => Solved::plain(Series::Abel(
                solve_abel_linear_irrational(kernel, xi, tr.n_max, tr.r_max)?,
            )),
            Problem::AbelNonlinear { kernel, xi } => {
                Solved::from_abel(solve_abel_nonlinear(kernel, xi, tr.n_max, tr.r_max, fold)?)
            }
            Problem::Log { kernel, xi, .. } => {
                let sol = solve_log_system(kernel, xi, tr.n_max, tr.r_max)?;
                Solved { series: Series::Log(sol.table), warnings: sol.warnings, fold: None, first_kind: None }
            }
        })
    }

    /// Pointwise form of the equation for the numerical oracles.
    pub fn equation(&self) -> Result<Equation> {
        match self {
            Problem::Regular { kernel, xi } => Equation::regular_linear(kernel, xi),
            Problem::RegularNonlinear { kernel, xi } => Equation::regular(kernel, xi),
            Problem::FirstKind { kernel, xi } => Equation::first_kind(kernel, xi),
            Problem::AbelLinear { kernel, xi } => Equation::abel_linear(kernel, xi),
            Problem::AbelNonlinear { kernel, xi } => Equation::abel(kernel, xi),
            Problem::Log { kernel, xi, .. } => Equation::log(kernel, xi),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_problem() {
        let p = ProblemFile::from_json(
            r#"{"dim":1,"kind":"second-kind","linearity":"linear",
                "singularity":{"type":"none"},
                "kernel":{"a":[{"generator":"constant","value":[[1.0]]}]},
                "xi":[{"generator":"constant","value":[1.0]}]}"#,
        )
        .unwrap();
        assert!(matches!(p.problem, Problem::Regular { .. }));
        assert_eq!(p.truncation.n_max, 20);
    }

    #[test]
    fn bad_alpha_cites_constraint() {
        let e = ProblemFile::from_json(
            r#"{"dim":1,"kind":"second-kind","linearity":"linear",
                "singularity":{"type":"abel","alpha":"3/2"},
                "xi":[{"i":0,"value":[1.0]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(e, Error::Parse(_)));
        assert!(e.to_string().contains("0 < p < q"), "{e}");
    }

    #[test]
    fn generators_expand() {
        let p = ProblemFile::from_json(
            r#"{"dim":1,"kind":"second-kind","linearity":"linear",
                "singularity":{"type":"none"},
                "kernel":{"a":[{"generator":"exp","a":2.0,"b":-1.0,"degree":3}]},
                "xi":[{"generator":"exp","a":1.0,"degree":4,"value":[1.0]}]}"#,
        )
        .unwrap();
        let Problem::Regular { kernel, xi } = p.problem else { panic!() };
        assert_eq!(kernel.get(2, 1).unwrap().get(0, 0), -2.0);
        assert!(kernel.get(2, 2).is_none());
        assert!((xi.coeff(4)[0] - 1.0 / 24.0).abs() < 1e-16);
    }

    #[test]
    fn structural_rules() {
        let base = |extra: &str| {
            format!(
                r#"{{"dim":1,"linearity":"nonlinear","singularity":{{"type":"none"}},"xi":[],{extra}}}"#
            )
        };
        assert!(ProblemFile::from_json(&base(r#""kind":"first-kind""#)).is_err());
        assert!(ProblemFile::from_json(&base(r#""kind":"second-kind","bogus":1"#)).is_err());
        let e = ProblemFile::from_json("{\n\"dim\": 1,\n").unwrap_err();
        assert!(e.to_string().contains("line"), "{e}");
    }
}
