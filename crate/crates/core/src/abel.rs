//! Second-kind equations with an Abel-type kernel
//! `f(t, s, x) = a(t, s, x) + (t − s)^{−α} b(t, s, x)`, `0 < α < 1`.
//!
//! The solution is sought as `Σ_{r,n} t^{n − rα} X_{r,n}`. Integrating a
//! term `s^{β}` against the two kernel parts gives
//!
//! * `∫_0^t s^β ds = t^{β+1}/(β+1)`
//! * `∫_0^t (t−s)^{−α} s^β ds = B(1−α, β+1) t^{β+1−α}`
//!
//! so the `a` part keeps the row `r` and the `b` part moves to row `r + 1`.
//! For irrational `α` every row is distinct. For `α = p/q` rows `r` and
//! `r + q` describe the same powers shifted by `p`, and the series has only
//! `q` distinct rows. Two routes are offered:
//!
//! * the direct method computes the `q` rows in increasing exponent order,
//!   wrapping the `b`-contributions of row `q − 1` back into row `0`;
//! * the fold method runs the row-unbounded recursion formally and then
//!   sums `X_{ρ,n} = Σ_m W_{ρ+mq, n+mp}`.

use log::warn;

use crate::error::{invalid, Error, Result};
use crate::kernel::{LinearKernelExpansion, NonlinearKernelExpansion};
use crate::linalg::axpy;
use crate::series::table::CoeffGrid;
use crate::series::{AbelTable, AlphaExponent, FormalAbelTable, PowerEngine};
use crate::special::{beta_unchecked, gamma_fn};
use statrs::function::gamma::ln_gamma;

/// Linear Abel kernel `A(t, s) + (t − s)^{−α} B(t, s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelLinearKernel {
    pub alpha: AlphaExponent,
    pub a: LinearKernelExpansion,
    pub b: LinearKernelExpansion,
}

impl AbelLinearKernel {
    pub fn new(alpha: AlphaExponent, a: LinearKernelExpansion, b: LinearKernelExpansion) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(invalid(format!(
                "regular part has dimension {} but singular part has {}",
                a.dim(),
                b.dim()
            )));
        }
        Ok(AbelLinearKernel { alpha, a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn to_nonlinear(&self) -> AbelNonlinearKernel {
        AbelNonlinearKernel {
            alpha: self.alpha,
            a: self.a.to_nonlinear(),
            b: self.b.to_nonlinear(),
        }
    }
}

/// Nonlinear Abel kernel `a(t, s, x) + (t − s)^{−α} b(t, s, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelNonlinearKernel {
    pub alpha: AlphaExponent,
    pub a: NonlinearKernelExpansion,
    pub b: NonlinearKernelExpansion,
}

impl AbelNonlinearKernel {
    pub fn new(
        alpha: AlphaExponent,
        a: NonlinearKernelExpansion,
        b: NonlinearKernelExpansion,
    ) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(invalid(format!(
                "regular part has dimension {} but singular part has {}",
                a.dim(),
                b.dim()
            )));
        }
        Ok(AbelNonlinearKernel { alpha, a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// Truncation policy for the fold sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldOptions {
    /// Largest fold index `m` (so at most `m_max + 1` terms).
    pub m_max: usize,
    /// Relative size of the last two increments at which folding stops.
    pub tol: f64,
}

impl Default for FoldOptions {
    fn default() -> Self {
        FoldOptions { m_max: 64, tol: 1e-14 }
    }
}

/// How the fold sums were truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldReport {
    /// Number of fold terms `m = 0..terms` summed.
    pub terms: usize,
    /// Largest coefficient norm in the last summed slice `m = terms − 1`.
    pub last_increment: f64,
    pub converged: bool,
}

/// Solution of an Abel problem, with the fold report for rational `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelSolution {
    pub table: AbelTable,
    pub fold: Option<FoldReport>,
}

fn check_xi(dim: usize, alpha: AlphaExponent, xi: &AbelTable) -> Result<()> {
    if xi.dim() != dim {
        return Err(invalid(format!(
            "kernel has dimension {dim} but the forcing term has dimension {}",
            xi.dim()
        )));
    }
    if xi.alpha() != alpha {
        return Err(invalid(format!(
            "forcing term uses alpha = {} but the kernel uses alpha = {alpha}",
            xi.alpha()
        )));
    }
    Ok(())
}

fn xi_into(xi: &AbelTable, grid: &mut CoeffGrid) {
    for (r, i, c) in xi.iter() {
        if r < grid.rows() && i < grid.cols() {
            grid.get_mut(r, i).copy_from_slice(c);
        }
    }
}

fn check_finite(grid: &CoeffGrid, r: usize, n: usize) -> Result<()> {
    if grid.get(r, n).iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Domain(format!("coefficient X_({r},{n}) overflowed")))
    }
}

/// Row-unbounded linear recursion on a `rows × cols` grid:
/// `X_{r,n} = Ξ_{r,n} + Σ A_{ij} X_{r,l}/(n−i−rα) + Σ B(1−α, n−i−(r−1)α) B_{ij} X_{r−1,l}`
/// with `l = n − i − j − 1`.
fn formal_linear(
    kernel: &AbelLinearKernel,
    xi: &AbelTable,
    rows: usize,
    cols: usize,
) -> Result<CoeffGrid> {
    let alpha = kernel.alpha;
    let a = alpha.value();
    let mut x = CoeffGrid::zeros(kernel.dim(), rows, cols);
    xi_into(xi, &mut x);
    let mut acc = vec![0.0; kernel.dim()];
    for n in 0..cols {
        for r in 0..rows {
            if !alpha.admissible(r, n) {
                continue;
            }
            acc.iter_mut().for_each(|v| *v = 0.0);
            for (i, j, m) in kernel.a.iter() {
                if i + j + 1 > n {
                    continue;
                }
                let l = n - i - j - 1;
                if alpha.admissible(r, l) {
                    m.mul_vec_acc(x.get(r, l), 1.0 / (n as f64 - i as f64 - r as f64 * a), &mut acc);
                }
            }
            if r >= 1 {
                for (i, j, m) in kernel.b.iter() {
                    if i + j + 1 > n {
                        continue;
                    }
                    let l = n - i - j - 1;
                    if alpha.admissible(r - 1, l) {
                        let w = beta_unchecked(1.0 - a, n as f64 - i as f64 - (r - 1) as f64 * a);
                        m.mul_vec_acc(x.get(r - 1, l), w, &mut acc);
                    }
                }
            }
            axpy(x.get_mut(r, n), 1.0, &acc);
            check_finite(&x, r, n)?;
        }
    }
    Ok(x)
}

fn non_integrable(rho: usize, j: usize, l: usize, alpha: AlphaExponent) -> Error {
    Error::Domain(format!(
        "nonlinear term s^{j} x^k contains t^({}) whose integral diverges at s = 0",
        alpha.exponent_label(rho, j + l)
    ))
}

/// Row-unbounded nonlinear recursion on a `rows × cols` grid, with `Z_k(ρ, l)`
/// the coefficient of `t^{l − ρα}` in `x^k`.
fn formal_nonlinear(
    kernel: &AbelNonlinearKernel,
    xi: &AbelTable,
    rows: usize,
    cols: usize,
) -> Result<CoeffGrid> {
    let alpha = kernel.alpha;
    let a = alpha.value();
    let dim = kernel.dim();
    let mut ks = kernel.a.multi_indices();
    ks.extend(kernel.b.multi_indices());
    let mut powers = PowerEngine::new(dim, &ks, rows, cols)?;
    let mut x = CoeffGrid::zeros(dim, rows, cols);
    xi_into(xi, &mut x);
    for n in 0..cols {
        for rho in 0..rows {
            let mut acc = vec![0.0; dim];
            for t in kernel.a.terms() {
                if t.i + t.j + 1 > n {
                    continue;
                }
                let l = n - t.i - t.j - 1;
                let z = powers.coeff(&t.k, rho, l);
                if z == 0.0 {
                    continue;
                }
                if !alpha.admissible(rho, t.j + l) {
                    return Err(non_integrable(rho, t.j, l, alpha));
                }
                axpy(&mut acc, z / (n as f64 - t.i as f64 - rho as f64 * a), &t.value);
            }
            if rho >= 1 {
                for t in kernel.b.terms() {
                    if t.i + t.j + 1 > n {
                        continue;
                    }
                    let l = n - t.i - t.j - 1;
                    let z = powers.coeff(&t.k, rho - 1, l);
                    if z == 0.0 {
                        continue;
                    }
                    if !alpha.admissible(rho - 1, t.j + l) {
                        return Err(non_integrable(rho - 1, t.j, l, alpha));
                    }
                    let w = beta_unchecked(1.0 - a, n as f64 - t.i as f64 - (rho - 1) as f64 * a);
                    axpy(&mut acc, z * w, &t.value);
                }
            }
            axpy(x.get_mut(rho, n), 1.0, &acc);
            check_finite(&x, rho, n)?;
        }
        powers.push_column(&x);
    }
    Ok(x)
}

/// Linear Abel problem with irrational `α`: rows `0..=r_max`, columns
/// `0..=n_max`.
pub fn solve_abel_linear_irrational(
    kernel: &AbelLinearKernel,
    xi: &AbelTable,
    n_max: usize,
    r_max: usize,
) -> Result<AbelTable> {
    if kernel.alpha.is_rational() {
        return Err(Error::Unsupported(
            "rational alpha: use the direct or fold method".into(),
        ));
    }
    check_xi(kernel.dim(), kernel.alpha, xi)?;
    let grid = formal_linear(kernel, xi, r_max + 1, n_max + 1)?;
    Ok(AbelTable::from_grid(kernel.alpha, grid))
}

/// Linear Abel problem with `α = p/q`, computed directly on the `q` rows.
///
/// Positions are visited in increasing order of the exponent `n − ρα`
/// (the integer key `nq − ρp`); every contribution to a position comes from
/// a strictly smaller exponent. The `b`-part acting on row `q − 1` lands in
/// row `0`:
/// `X_{0,n} += Σ B(1−α, n+p−i−(q−1)α) B_{ij} X_{q−1, n+p−i−j−1}`.
pub fn solve_abel_linear_rational_direct(
    kernel: &AbelLinearKernel,
    xi: &AbelTable,
    n_max: usize,
) -> Result<AbelTable> {
    let (p, q) = kernel
        .alpha
        .as_rational()
        .ok_or_else(|| Error::Unsupported("the direct method needs a rational alpha".into()))?;
    check_xi(kernel.dim(), kernel.alpha, xi)?;
    let (p, q) = (p as usize, q as usize);
    let a = kernel.alpha.value();
    let alpha = kernel.alpha;
    let cols = n_max + p + 1;
    let mut x = CoeffGrid::zeros(kernel.dim(), q, cols);
    xi_into(xi, &mut x);

    let limit = (n_max * q) as i64;
    let key = |rho: usize, n: usize| (n * q) as i64 - (rho * p) as i64;
    let mut order: Vec<(usize, usize)> = (0..q)
        .flat_map(|rho| (0..cols).map(move |n| (rho, n)))
        .filter(|&(rho, n)| alpha.admissible(rho, n) && key(rho, n) <= limit)
        .collect();
    order.sort_by_key(|&(rho, n)| key(rho, n));

    let beta_cap = beta_unchecked(1.0 - a, 1.0 / q as f64);
    let mut acc = vec![0.0; kernel.dim()];
    for (rho, n) in order {
        acc.iter_mut().for_each(|v| *v = 0.0);
        for (i, j, m) in kernel.a.iter() {
            if i + j + 1 > n {
                continue;
            }
            let l = n - i - j - 1;
            if alpha.admissible(rho, l) {
                let d = n as f64 - i as f64 - rho as f64 * a;
                debug_assert!(1.0 / d <= q as f64 * (1.0 + 1e-12));
                m.mul_vec_acc(x.get(rho, l), 1.0 / d, &mut acc);
            }
        }
        // source row and column shift of the b-part
        let (src, shift) = if rho == 0 { (q - 1, p) } else { (rho - 1, 0) };
        for (i, j, m) in kernel.b.iter() {
            if i + j + 1 > n + shift {
                continue;
            }
            let l = n + shift - i - j - 1;
            if alpha.admissible(src, l) {
                let arg = (n + shift) as f64 - i as f64 - src as f64 * a;
                let w = beta_unchecked(1.0 - a, arg);
                debug_assert!(w <= beta_cap * (1.0 + 1e-12));
                debug_assert!(key(src, l) < key(rho, n));
                m.mul_vec_acc(x.get(src, l), w, &mut acc);
            }
        }
        axpy(x.get_mut(rho, n), 1.0, &acc);
        check_finite(&x, rho, n)?;
    }
    Ok(AbelTable::from_grid(alpha, x.cropped(q, n_max + 1)))
}

/// Runs a formal recursion with a growing number of fold terms until the
/// last two slices are negligible or the cap is reached.
fn fold_driver(
    alpha: AlphaExponent,
    n_max: usize,
    opts: FoldOptions,
    formal: impl Fn(usize, usize) -> Result<CoeffGrid>,
) -> Result<AbelSolution> {
    let (p, q) = alpha
        .as_rational()
        .ok_or_else(|| Error::Unsupported("folding needs a rational alpha".into()))?;
    let (p, q) = (p as usize, q as usize);
    if !(opts.tol >= 0.0) {
        return Err(invalid("fold tolerance must be nonnegative"));
    }
    let max_terms = opts.m_max + 1;
    let mut terms = max_terms.min(8);
    loop {
        let grid = formal(terms * q, n_max + (terms - 1) * p + 1)?;
        let w = FormalAbelTable::from_grid(alpha, grid);
        let table = w.fold(n_max, terms)?;
        let threshold = opts.tol * table.max_abs().max(1.0);
        let last = w.fold_increment(terms - 1, n_max);
        let converged = terms >= 2
            && last < threshold
            && w.fold_increment(terms - 2, n_max) < threshold;
        if converged || terms == max_terms {
            if !converged {
                warn!(
                    "fold sums truncated at {terms} terms; last increment {last:.3e} exceeds {threshold:.3e}"
                );
            }
            let fold = FoldReport { terms, last_increment: last, converged };
            return Ok(AbelSolution { table, fold: Some(fold) });
        }
        terms = (2 * terms).min(max_terms);
    }
}

/// Linear Abel problem with `α = p/q` by the fold method.
pub fn solve_abel_linear_rational_fold(
    kernel: &AbelLinearKernel,
    xi: &AbelTable,
    n_max: usize,
    opts: FoldOptions,
) -> Result<AbelSolution> {
    check_xi(kernel.dim(), kernel.alpha, xi)?;
    fold_driver(kernel.alpha, n_max, opts, |rows, cols| {
        formal_linear(kernel, xi, rows, cols)
    })
}

/// Formal coefficients `W_{r,n}`, `r ≤ r_max`, of the row-unbounded linear
/// recursion (any `α`).
pub fn abel_linear_formal(
    kernel: &AbelLinearKernel,
    xi: &AbelTable,
    n_max: usize,
    r_max: usize,
) -> Result<FormalAbelTable> {
    check_xi(kernel.dim(), kernel.alpha, xi)?;
    let grid = formal_linear(kernel, xi, r_max + 1, n_max + 1)?;
    Ok(FormalAbelTable::from_grid(kernel.alpha, grid))
}

/// Nonlinear Abel problem. Irrational `α` gives rows `0..=r_max`; rational
/// `α` runs the formal recursion and folds it (`r_max` is then unused).
pub fn solve_abel_nonlinear(
    kernel: &AbelNonlinearKernel,
    xi: &AbelTable,
    n_max: usize,
    r_max: usize,
    opts: FoldOptions,
) -> Result<AbelSolution> {
    check_xi(kernel.dim(), kernel.alpha, xi)?;
    if kernel.alpha.is_rational() {
        fold_driver(kernel.alpha, n_max, opts, |rows, cols| {
            formal_nonlinear(kernel, xi, rows, cols)
        })
    } else {
        let grid = formal_nonlinear(kernel, xi, r_max + 1, n_max + 1)?;
        Ok(AbelSolution { table: AbelTable::from_grid(kernel.alpha, grid), fold: None })
    }
}

/// `W_{r,n} = c^r Ξ_{0,n−r} Γ(1−α)^r Γ(1+n−r)/Γ(1+n−rα)` for
/// `x = ξ + c ∫_0^t (t−s)^{−α} x(s) ds` with analytic `ξ = Σ Ξ_{0,i} t^i`.
fn constant_kernel_value(c: f64, a: f64, xi0: &[f64], r: usize, n: usize) -> f64 {
    if r == 0 {
        return xi0.get(n).copied().unwrap_or(0.0);
    }
    if n < r {
        return 0.0;
    }
    let xv = xi0.get(n - r).copied().unwrap_or(0.0);
    if xv == 0.0 || c == 0.0 {
        return 0.0;
    }
    let (nf, rf) = (n as f64, r as f64);
    let log_mag = rf * (c.abs() * gamma_fn(1.0 - a)).ln() + ln_gamma(1.0 + nf - rf)
        - ln_gamma(1.0 + nf - rf * a);
    let sign = if c < 0.0 && r % 2 == 1 { -1.0 } else { 1.0 };
    sign * xv * log_mag.exp()
}

/// Closed-form formal coefficients of the constant-kernel scalar problem
/// `x = ξ + c ∫_0^t (t−s)^{−α} x(s) ds`, rows `0..=r_max`.
pub fn constant_kernel_formal(
    c: f64,
    alpha: AlphaExponent,
    xi0: &[f64],
    n_max: usize,
    r_max: usize,
) -> FormalAbelTable {
    let a = alpha.value();
    let mut w = FormalAbelTable::zeros(1, alpha, n_max, r_max);
    for r in 0..=r_max {
        for n in 0..=n_max {
            w.grid_mut().get_mut(r, n)[0] = constant_kernel_value(c, a, xi0, r, n);
        }
    }
    w
}

/// Closed-form solution of the constant-kernel scalar problem as an
/// [`AbelTable`]. For rational `α = p/q` the formal rows are folded; the
/// fold is a finite sum because `W_{r,n} = 0` for `n < r`.
pub fn constant_kernel_closed_form(
    c: f64,
    alpha: AlphaExponent,
    xi0: &[f64],
    n_max: usize,
    r_max: usize,
) -> Result<AbelTable> {
    match alpha.as_rational() {
        None => {
            let w = constant_kernel_formal(c, alpha, xi0, n_max, r_max);
            Ok(AbelTable::from_grid(alpha, w.grid().clone()))
        }
        Some((p, q)) => {
            let (p, q) = (p as usize, q as usize);
            // W_{ρ+mq, n+mp} ≠ 0 needs m (q − p) ≤ n − ρ ≤ n_max
            let terms = n_max / (q - p) + 1;
            let w = constant_kernel_formal(
                c,
                alpha,
                xi0,
                n_max + (terms - 1) * p,
                q - 1 + (terms - 1) * q,
            );
            w.fold(n_max, terms)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::solve_linear_second_kind;
    use crate::series::TaylorTable;
    use std::f64::consts::PI;

    fn constant_kernel(alpha: AlphaExponent, c: f64) -> AbelLinearKernel {
        AbelLinearKernel::new(
            alpha,
            LinearKernelExpansion::new(1),
            LinearKernelExpansion::scalar(&[(0, 0, c)]).unwrap(),
        )
        .unwrap()
    }

    fn unit_xi(alpha: AlphaExponent, n_max: usize, r_max: usize) -> AbelTable {
        let mut xi = AbelTable::zeros(1, alpha, n_max, r_max).unwrap();
        xi.set(0, 0, &[1.0]).unwrap();
        xi
    }

    #[test]
    fn irrational_matches_closed_form() {
        let alpha = AlphaExponent::irrational(0.5f64.sqrt()).unwrap();
        let x = solve_abel_linear_irrational(&constant_kernel(alpha, 1.0), &unit_xi(alpha, 12, 12), 12, 12)
            .unwrap();
        let want = constant_kernel_closed_form(1.0, alpha, &[1.0], 12, 12).unwrap();
        for (r, n, c) in want.iter() {
            let got = x.coeff(r, n).unwrap()[0];
            assert!((got - c[0]).abs() <= 1e-12 * c[0].abs().max(1e-300), "({r},{n})");
        }
        let x11 = x.coeff(1, 1).unwrap()[0];
        assert!((x11 - 1.0 / (1.0 - alpha.value())).abs() < 1e-12);
    }

    #[test]
    fn mittag_leffler_half() {
        let alpha = AlphaExponent::rational(1, 2).unwrap();
        let k = constant_kernel(alpha, 1.0);
        let xi = unit_xi(alpha, 10, 0);
        let d = solve_abel_linear_rational_direct(&k, &xi, 10).unwrap();
        assert!((d.coeff(1, 1).unwrap()[0] - 2.0).abs() < 1e-13);
        assert!((d.coeff(0, 1).unwrap()[0] - PI).abs() < 1e-13);
        let f = solve_abel_linear_rational_fold(&k, &xi, 10, FoldOptions::default()).unwrap();
        assert!(f.fold.unwrap().converged);
        let cf = constant_kernel_closed_form(1.0, alpha, &[1.0], 10, 0).unwrap();
        for (r, n, c) in cf.iter() {
            for t in [&d, &f.table] {
                let got = t.coeff(r, n).unwrap()[0];
                assert!((got - c[0]).abs() <= 1e-12 * c[0].abs().max(1.0), "({r},{n})");
            }
        }
    }

    #[test]
    fn zero_singular_part_reduces_to_regular() {
        let alpha = AlphaExponent::rational(1, 3).unwrap();
        let a = LinearKernelExpansion::scalar(&[(0, 0, 0.5), (1, 0, -1.0)]).unwrap();
        let k = AbelLinearKernel::new(alpha, a.clone(), LinearKernelExpansion::new(1)).unwrap();
        let xi = unit_xi(alpha, 8, 0);
        let d = solve_abel_linear_rational_direct(&k, &xi, 8).unwrap();
        let reg = solve_linear_second_kind(&a, &TaylorTable::from_scalars(&[1.0]).unwrap(), 8)
            .unwrap();
        assert_eq!(d.analytic_row(), reg);
        for (r, _, c) in d.iter() {
            if r > 0 {
                assert_eq!(c, &[0.0]);
            }
        }
    }

    #[test]
    fn single_term_fold_is_formal_prefix() {
        let alpha = AlphaExponent::rational(1, 2).unwrap();
        let k = constant_kernel(alpha, 1.0);
        let xi = unit_xi(alpha, 6, 0);
        let s = solve_abel_linear_rational_fold(&k, &xi, 6, FoldOptions { m_max: 0, tol: 1e-14 })
            .unwrap();
        let w = abel_linear_formal(&k, &xi, 6, 1).unwrap();
        for (r, n, c) in s.table.iter() {
            assert_eq!(c, w.coeff(r, n).unwrap());
        }
        assert_eq!(s.fold.unwrap().terms, 1);
    }

    #[test]
    fn nonlinear_linear_embedding_agrees() {
        let alpha = AlphaExponent::rational(1, 2).unwrap();
        let k = constant_kernel(alpha, 1.0);
        let xi = unit_xi(alpha, 8, 0);
        let lin = solve_abel_linear_rational_fold(&k, &xi, 8, FoldOptions::default()).unwrap();
        let nl = solve_abel_nonlinear(&k.to_nonlinear(), &xi, 8, 0, FoldOptions::default())
            .unwrap();
        for (r, n, c) in lin.table.iter() {
            let got = nl.table.coeff(r, n).unwrap()[0];
            assert!((got - c[0]).abs() <= 1e-13 * c[0].abs().max(1.0));
        }
    }

    #[test]
    fn rejects_wrong_alpha_kind() {
        let half = AlphaExponent::rational(1, 2).unwrap();
        let irr = AlphaExponent::irrational(0.3).unwrap();
        assert!(solve_abel_linear_irrational(&constant_kernel(half, 1.0), &unit_xi(half, 2, 0), 2, 2)
            .is_err());
        assert!(solve_abel_linear_rational_direct(&constant_kernel(irr, 1.0), &unit_xi(irr, 2, 2), 2)
            .is_err());
    }
}
