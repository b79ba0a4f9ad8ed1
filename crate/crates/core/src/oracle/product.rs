//! Product-trapezoid time stepping for second-kind equations.
//!
//! On each subinterval the smooth factor `kernel(t_n, s, x(s))` is replaced
//! by its linear interpolant and integrated exactly against the weight, so
//! the singular weight is never sampled at `s = t_n`.

use crate::error::{invalid, Error, Result};
use crate::linalg::axpy;
use crate::oracle::equation::{Equation, EquationKind, Weight};

type Antiderivative = Box<dyn Fn(f64) -> f64>;

/// Uniform grid `t_m = m h`, `h = t_end/steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    t_end: f64,
    steps: usize,
}

impl Grid {
    pub fn new(t_end: f64, steps: usize) -> Result<Self> {
        if !(t_end > 0.0) || !t_end.is_finite() {
            return Err(invalid(format!("grid end must be positive, got {t_end}")));
        }
        if steps < 4 {
            return Err(invalid(format!("grid needs at least 4 steps, got {steps}")));
        }
        Ok(Grid { t_end, steps })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn h(&self) -> f64 {
        self.t_end / self.steps as f64
    }

    pub fn node(&self, m: usize) -> f64 {
        if m == self.steps {
            self.t_end
        } else {
            m as f64 * self.h()
        }
    }
}

/// Weights `(left, right)` of the linear interpolant on `[a, b]` against
/// `w(t − s)` or `ln(s/t)`, from closed-form antiderivatives.
fn interval_weights(weight: Weight, t: f64, a: f64, b: f64) -> (f64, f64) {
    let h = b - a;
    match weight {
        Weight::LogRatio => {
            // in s: J0 = ∫ ln(s/t), J1 = ∫ (s − a) ln(s/t)
            let f0 = |s: f64| if s == 0.0 { 0.0 } else { s * (s / t).ln() - s };
            let f1 = |s: f64| if s == 0.0 { 0.0 } else { 0.5 * s * s * (s / t).ln() - 0.25 * s * s };
            let j0 = f0(b) - f0(a);
            let j1 = f1(b) - f1(a) - a * j0;
            (j0 - j1 / h, j1 / h)
        }
        _ => {
            // in u = t − s on [u0, u1]: I0 = ∫ w, I1 = ∫ (u − u0) w
            let (u0, u1) = (t - b, t - a);
            let (g0, g1): (Antiderivative, Antiderivative) = match weight {
                Weight::Regular => (Box::new(|u| u), Box::new(|u| 0.5 * u * u)),
                Weight::Abel(al) => (
                    Box::new(move |u: f64| u.powf(1.0 - al) / (1.0 - al)),
                    Box::new(move |u: f64| u.powf(2.0 - al) / (2.0 - al)),
                ),
                Weight::LogDiff => (
                    Box::new(|u: f64| if u == 0.0 { 0.0 } else { u * u.ln() - u }),
                    Box::new(|u: f64| {
                        if u == 0.0 { 0.0 } else { 0.5 * u * u * u.ln() - 0.25 * u * u }
                    }),
                ),
                Weight::LogRatio => unreachable!(),
            };
            let i0 = g0(u1) - g0(u0);
            let i1 = g1(u1) - g1(u0) - u0 * i0;
            // u1 is the left end s = a, u0 the right end s = b
            (i1 / h, i0 - i1 / h)
        }
    }
}

/// Values `x(t_m)`, `m = 0..=steps`, of a second-kind equation.
///
/// `x(0) = ξ(0)`; each later node solves its implicit trapezoid relation by
/// fixed-point iteration to `1e−12`.
pub fn solve_second_kind_numeric(eq: &Equation, grid: &Grid) -> Result<Vec<Vec<f64>>> {
    if eq.kind != EquationKind::SecondKind {
        return Err(Error::Unsupported(
            "numeric time stepping covers second-kind equations only".into(),
        ));
    }
    let dim = eq.dim();
    let mut x: Vec<Vec<f64>> = Vec::with_capacity(grid.steps() + 1);
    x.push(eq.xi.evaluate_at_origin()?);
    for n in 1..=grid.steps() {
        let t = grid.node(n);
        let mut known = eq.xi.evaluate(t)?;
        let mut w_self: Vec<f64> = Vec::with_capacity(eq.parts.len());
        for part in &eq.parts {
            let mut coef = vec![0.0; n + 1];
            for m in 0..n {
                let (l, r) = interval_weights(part.weight, t, grid.node(m), grid.node(m + 1));
                coef[m] += l;
                coef[m + 1] += r;
            }
            for (m, xm) in x.iter().enumerate() {
                if coef[m] != 0.0 {
                    let s = grid.node(m);
                    axpy(&mut known, coef[m], &part.kernel.eval(t, s, xm));
                }
            }
            w_self.push(coef[n]);
        }
        let mut xn = x[n - 1].clone();
        let mut converged = false;
        for _ in 0..500 {
            let mut next = known.clone();
            for (part, &w) in eq.parts.iter().zip(&w_self) {
                axpy(&mut next, w, &part.kernel.eval(t, t, &xn));
            }
            let diff = next.iter().zip(&xn).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let mag = next.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            xn = next;
            if !xn.iter().all(|v| v.is_finite()) {
                break;
            }
            if diff <= 1e-12 * mag.max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::StepFailure { node: n });
        }
        debug_assert_eq!(xn.len(), dim);
        x.push(xn);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::LinearKernelExpansion;
    use crate::series::TaylorTable;

    #[test]
    fn weights_integrate_linear_functions_exactly() {
        for w in [Weight::Regular, Weight::Abel(0.3), Weight::LogDiff, Weight::LogRatio] {
            let (t, a, b) = (1.0, 0.25, 0.5);
            let (l, r) = interval_weights(w, t, a, b);
            // ∫ w(s)·1 ds and ∫ w(s)·s ds by fine midpoint sums
            let n = 200_000;
            let (mut i0, mut i1) = (0.0, 0.0);
            for k in 0..n {
                let s = a + (k as f64 + 0.5) * (b - a) / n as f64;
                let v = w.value(t, s, t - s) * (b - a) / n as f64;
                i0 += v;
                i1 += v * s;
            }
            assert!((l + r - i0).abs() < 1e-9, "{w:?}");
            assert!((l * a + r * b - i1).abs() < 1e-9, "{w:?}");
        }
    }

    #[test]
    fn zero_kernel_reproduces_forcing() {
        let xi = TaylorTable::from_scalars(&[1.0, -2.0, 0.5]).unwrap();
        let eq = Equation::regular_linear(&LinearKernelExpansion::new(1), &xi).unwrap();
        let g = Grid::new(1.0, 8).unwrap();
        let x = solve_second_kind_numeric(&eq, &g).unwrap();
        for (m, v) in x.iter().enumerate() {
            assert_eq!(v[0], xi.evaluate(g.node(m)).unwrap()[0]);
        }
    }
}
