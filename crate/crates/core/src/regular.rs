//! Second-kind equations `x(t) = ξ(t) + ∫_0^t K(t, s, x(s)) ds` with an
//! analytic kernel.
//!
//! Writing `x(t) = Σ X_n t^n`, the term `t^i s^j` of the kernel acting on
//! `s^l` integrates to `t^n / (n − i)` with `n = i + j + l + 1`, which makes
//! every recursion explicit in `n`.

use crate::error::{invalid, Error, Result};
use crate::kernel::{LinearKernelExpansion, NonlinearKernelExpansion};
use crate::linalg::{axpy, Matrix};
use crate::series::{PowerEngine, TaylorTable};
use crate::special::{binomial, factorial};

fn check_dims(kernel_dim: usize, xi: &TaylorTable) -> Result<()> {
    if kernel_dim != xi.dim() {
        return Err(invalid(format!(
            "kernel has dimension {kernel_dim} but the forcing term has dimension {}",
            xi.dim()
        )));
    }
    Ok(())
}

/// Copies `Ξ_n` into `out` (zero past the forcing order).
fn forcing(xi: &TaylorTable, n: usize, out: &mut TaylorTable) {
    if let Some(c) = xi.get(n) {
        out.coeff_mut(n).copy_from_slice(c);
    }
}

fn check_column(x: &TaylorTable, n: usize) -> Result<()> {
    if x.coeff(n).iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Domain(format!("coefficient X_{n} overflowed")))
    }
}

/// Taylor coefficients `X_0..=X_{n_max}` of the solution of the linear
/// equation `x(t) = ξ(t) + ∫_0^t K(t, s) x(s) ds`.
///
/// `X_n = Ξ_n + Σ_{i+j+l+1=n} K_{ij} X_l / (n − i)`. Coefficients of `ξ`
/// past its order are zero.
pub fn solve_linear_second_kind(
    kernel: &LinearKernelExpansion,
    xi: &TaylorTable,
    n_max: usize,
) -> Result<TaylorTable> {
    check_dims(kernel.dim(), xi)?;
    let mut x = TaylorTable::zeros(xi.dim(), n_max);
    let mut acc = vec![0.0; xi.dim()];
    for n in 0..=n_max {
        forcing(xi, n, &mut x);
        acc.iter_mut().for_each(|a| *a = 0.0);
        for (i, j, m) in kernel.iter() {
            if i + j + 1 > n {
                continue;
            }
            let l = n - i - j - 1;
            m.mul_vec_acc(x.coeff(l), 1.0 / (n - i) as f64, &mut acc);
        }
        axpy(x.coeff_mut(n), 1.0, &acc);
        check_column(&x, n)?;
    }
    Ok(x)
}

/// Taylor coefficients of the solution of
/// `x(t) = ξ(t) + ∫_0^t K(t, s, x(s)) ds` with `K = Σ K_{ijk} t^i s^j x^k`.
///
/// `X_n = Ξ_n + Σ_{i,j,k} K_{ijk} Z_k(n − i − j − 1) / (n − i)`, where
/// `Z_k(l)` is the coefficient of `t^l` in `x(t)^k`.
pub fn solve_nonlinear_second_kind(
    kernel: &NonlinearKernelExpansion,
    xi: &TaylorTable,
    n_max: usize,
) -> Result<TaylorTable> {
    check_dims(kernel.dim(), xi)?;
    let mut x = TaylorTable::zeros(xi.dim(), n_max);
    let mut powers = PowerEngine::new(xi.dim(), &kernel.multi_indices(), 1, n_max + 1)?;
    for n in 0..=n_max {
        forcing(xi, n, &mut x);
        let mut acc = vec![0.0; xi.dim()];
        for term in kernel.terms() {
            if term.i + term.j + 1 > n {
                continue;
            }
            let l = n - term.i - term.j - 1;
            let z = powers.coeff(&term.k, 0, l);
            if z != 0.0 {
                axpy(&mut acc, z / (n - term.i) as f64, &term.value);
            }
        }
        axpy(x.coeff_mut(n), 1.0, &acc);
        check_column(&x, n)?;
        powers.push_column(x.grid());
    }
    Ok(x)
}

/// Same coefficients as [`solve_linear_second_kind`], computed from the
/// derivatives `x^{(n)}(0)` obtained by differentiating the equation
/// `n` times. Used as an independent check of the coefficient recursion.
///
/// `x^{(n)}(0) = n! Ξ_n + Σ_{j<n} Σ_{r=j}^{n−1} C(r, j) G(r − j, n − r − 1) x^{(j)}(0)`
/// with `G(m, p) = Σ_{a+b=m} C(m, a) (a + p)! b! K_{a+p, b}`, which is
/// `∂_t^p (∂_t + ∂_s)^m K` at the origin.
pub fn derivative_method_linear(
    kernel: &LinearKernelExpansion,
    xi: &TaylorTable,
    n_max: usize,
) -> Result<TaylorTable> {
    check_dims(kernel.dim(), xi)?;
    let dim = xi.dim();
    let g = |m: usize, p: usize| -> Matrix {
        let mut out = Matrix::zeros(dim);
        for a in 0..=m {
            let b = m - a;
            if let Some(k) = kernel.get(a + p, b) {
                out.add_scaled(k, binomial(m, a) * factorial(a + p) * factorial(b));
            }
        }
        out
    };
    let mut derivs: Vec<Vec<f64>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut d: Vec<f64> = match xi.get(n) {
            Some(c) => c.iter().map(|v| v * factorial(n)).collect(),
            None => vec![0.0; dim],
        };
        for (j, dj) in derivs.iter().enumerate() {
            for r in j..n {
                g(r - j, n - r - 1).mul_vec_acc(dj, binomial(r, j), &mut d);
            }
        }
        derivs.push(d);
    }
    let mut x = TaylorTable::zeros(dim, n_max);
    for (n, d) in derivs.iter().enumerate() {
        let f = factorial(n);
        for (o, v) in x.coeff_mut(n).iter_mut().zip(d) {
            *o = v / f;
        }
        check_column(&x, n)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MultiIndex;

    #[test]
    fn unit_kernel_gives_exponential() {
        let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap();
        let xi = TaylorTable::from_scalars(&[1.0]).unwrap();
        let x = solve_linear_second_kind(&k, &xi, 20).unwrap();
        for n in 0..=20 {
            assert!((x.coeff(n)[0] * factorial(n) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_method_matches_recursion() {
        let mut k = LinearKernelExpansion::new(2);
        k.add(0, 0, &Matrix::from_rows(&[vec![0.3, -1.0], vec![0.5, 0.2]]).unwrap()).unwrap();
        k.add(1, 0, &Matrix::from_rows(&[vec![0.1, 0.0], vec![0.0, -0.4]]).unwrap()).unwrap();
        k.add(0, 1, &Matrix::from_rows(&[vec![0.0, 0.7], vec![0.2, 0.0]]).unwrap()).unwrap();
        k.add(2, 1, &Matrix::identity(2)).unwrap();
        let xi = TaylorTable::from_coeffs(vec![vec![1.0, 0.0], vec![0.0, 2.0], vec![-1.0, 0.5]])
            .unwrap();
        let a = solve_linear_second_kind(&k, &xi, 15).unwrap();
        let b = derivative_method_linear(&k, &xi, 15).unwrap();
        for n in 0..=15 {
            for c in 0..2 {
                let (u, v) = (a.coeff(n)[c], b.coeff(n)[c]);
                assert!((u - v).abs() <= 1e-12 * (1.0 + u.abs()), "n={n}: {u} vs {v}");
            }
        }
    }

    #[test]
    fn nonlinear_with_linear_kernel_matches_linear() {
        let k = LinearKernelExpansion::scalar(&[(0, 0, 0.5), (1, 1, -2.0)]).unwrap();
        let xi = TaylorTable::from_scalars(&[1.0, 1.0]).unwrap();
        let a = solve_linear_second_kind(&k, &xi, 12).unwrap();
        let b = solve_nonlinear_second_kind(&k.to_nonlinear(), &xi, 12).unwrap();
        for n in 0..=12 {
            assert!((a.coeff(n)[0] - b.coeff(n)[0]).abs() < 1e-15);
        }
    }

    #[test]
    fn riccati_type_equation() {
        // x = 1 + ∫ x² has solution 1/(1 − t)
        let mut k = NonlinearKernelExpansion::new(1);
        k.add(0, 0, MultiIndex::new(vec![2]), vec![1.0]).unwrap();
        let xi = TaylorTable::from_scalars(&[1.0]).unwrap();
        let x = solve_nonlinear_second_kind(&k, &xi, 25).unwrap();
        for n in 0..=25 {
            assert!((x.coeff(n)[0] - 1.0).abs() < 1e-12);
        }
    }
}
