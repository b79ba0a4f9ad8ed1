//! Independent numerical references: product-integration time stepping,
//! residuals of series solutions, and quadrature of the log moments.

pub mod equation;
pub mod product;
pub mod quadrature;

pub use equation::{Equation, EquationKind, KernelPart, Weight};
pub use product::{solve_second_kind_numeric, Grid};

use crate::error::{Error, Result};
use crate::series::Series;
use quadrature::{gauss_kronrod, tanh_sinh};

/// Tolerance of the residual quadrature.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Residual of `series` in `eq` at `t`:
/// `x(t) − ξ(t) − ∫_0^t f(t, s, x(s)) ds` (second kind) or
/// `ξ(t) + ∫_0^t f(t, s, x(s)) ds` (first kind).
pub fn residual_at(eq: &Equation, series: &Series, t: f64) -> Result<Vec<f64>> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("residual needs t > 0, got {t}")));
    }
    if series.dim() != eq.dim() {
        return Err(crate::error::invalid("series and equation dimensions differ"));
    }
    let xi = eq.xi.evaluate(t)?;
    let mut failure = None;
    let integral = tanh_sinh(t, eq.dim(), RESIDUAL_TOL, |s, u| match series.evaluate(s) {
        Ok(x) => eq.integrand(t, s, u, &x),
        Err(e) => {
            failure.get_or_insert(e);
            vec![0.0; eq.dim()]
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(match eq.kind {
        EquationKind::SecondKind => {
            let x = series.evaluate(t)?;
            (0..eq.dim()).map(|j| x[j] - xi[j] - integral[j]).collect()
        }
        EquationKind::FirstKind => (0..eq.dim()).map(|j| xi[j] + integral[j]).collect(),
    })
}

/// Largest absolute residual component over `t_points`.
pub fn residual_check(eq: &Equation, series: &Series, t_points: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &t in t_points {
        let r = residual_at(eq, series, t)?;
        worst = worst.max(r.iter().fold(0.0, |m, v| m.max(v.abs())));
    }
    Ok(worst)
}

/// Which log moment to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Moment {
    /// `∫_0^1 σ^q (ln σ)^r dσ`
    L,
    /// `∫_0^1 σ^q (ln σ)^r ln(1 − σ) dσ`
    M,
}

/// Adaptive quadrature of a log moment. The half `[0, 1/2]` is mapped by
/// `σ = e^{−u}` and the half `[1/2, 1]` by `σ = 1 − e^{−u}`, which removes
/// both endpoint singularities.
pub fn integral_moment_numeric(which: Moment, q: usize, r: usize) -> f64 {
    let (qi, ri) = (q as i32, r as i32);
    let near_zero = move |u: f64| {
        let e = (-u).exp();
        let base = (-(q as f64 + 1.0) * u).exp() * (-u).powi(ri);
        match which {
            Moment::L => base,
            Moment::M => base * (-e).ln_1p(),
        }
    };
    let near_one = move |u: f64| {
        let e = (-u).exp();
        let base = (1.0 - e).powi(qi) * (-e).ln_1p().powi(ri) * e;
        match which {
            Moment::L => base,
            Moment::M => -u * base,
        }
    };
    let mut breaks = vec![std::f64::consts::LN_2];
    let mut b = 1.0;
    while b < 700.0 {
        breaks.push(b);
        b *= 2.0;
    }
    breaks.push(700.0);
    let mut total = 0.0;
    for w in breaks.windows(2) {
        total += gauss_kronrod(near_zero, w[0], w[1], 1e-15);
        total += gauss_kronrod(near_one, w[0], w[1], 1e-15);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::LinearKernelExpansion;
    use crate::series::TaylorTable;
    use crate::special::factorial;

    #[test]
    fn moment_quadrature_examples() {
        assert!((integral_moment_numeric(Moment::L, 0, 0) - 1.0).abs() < 1e-12);
        assert!((integral_moment_numeric(Moment::M, 0, 0) + 1.0).abs() < 1e-12);
        assert!((integral_moment_numeric(Moment::L, 2, 3) + 2.0 / 27.0).abs() < 1e-12);
    }

    #[test]
    fn exponential_residuals() {
        let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap();
        let xi = TaylorTable::from_scalars(&[1.0]).unwrap();
        let eq = Equation::regular_linear(&k, &xi).unwrap();
        let coeffs: Vec<f64> = (0..=12).map(|n| 1.0 / factorial(n)).collect();
        let x = Series::Taylor(TaylorTable::from_scalars(&coeffs).unwrap());
        assert!(residual_check(&eq, &x, &[0.2]).unwrap() <= 1e-9);
        let mut bad = x.clone();
        bad.perturb(0, 1, 0, 0.1).unwrap();
        // 0.1 t − ∫ 0.1 s ds = 0.1 t − 0.05 t²
        let r = residual_check(&eq, &bad, &[0.5]).unwrap();
        assert!((r - 0.0375).abs() < 1e-9, "{r}");
    }

    #[test]
    fn exponential_time_stepping() {
        let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap();
        let xi = TaylorTable::from_scalars(&[1.0]).unwrap();
        let eq = Equation::regular_linear(&k, &xi).unwrap();
        let x = solve_second_kind_numeric(&eq, &Grid::new(1.0, 4096).unwrap()).unwrap();
        assert!((x[4096][0] - std::f64::consts::E).abs() < 1e-5);
    }
}
