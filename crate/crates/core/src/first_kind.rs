//! Linear first-kind equations `ξ(t) + ∫_0^t k(t, s) x(s) ds = 0`.
//!
//! Matching the coefficient of `t^{n+1}` gives
//! `Ξ_{n+1} + Σ_{j=0}^{n} 𝐊_{n,j} X_{n−j} = 0` with the folded kernel
//! `𝐊_{n,j} = Σ_{i=0}^{j} K_{i,j−i}/(n−i+1)`. If the first `j0` columns of
//! `𝐊` vanish and `𝐊_{n,j0}` is invertible, the relation at `n` determines
//! `X_{n−j0}`.

use crate::error::{Error, Result};
use crate::kernel::LinearKernelExpansion;
use crate::linalg::Matrix;
use crate::series::TaylorTable;

/// Relative threshold below which a folded-kernel entry counts as zero.
pub const ZERO_TOL: f64 = 1e-12;
/// Relative pivot threshold for declaring `𝐊_{n,j0}` singular.
pub const PIVOT_TOL: f64 = 1e-10;

/// `𝐊_{n,j}` for `0 ≤ j ≤ n ≤ n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldedKernel {
    n_max: usize,
    entries: Vec<Vec<Matrix>>,
}

impl FoldedKernel {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `𝐊_{n,j}`; panics unless `j ≤ n ≤ n_max`.
    pub fn get(&self, n: usize, j: usize) -> &Matrix {
        assert!(j <= n && n <= self.n_max, "folded kernel index ({n}, {j}) out of range");
        &self.entries[n][j]
    }

    /// Largest absolute entry over the whole table.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(Matrix::max_abs)
            .fold(0.0, f64::max)
    }
}

pub fn fold_kernel(kernel: &LinearKernelExpansion, n_max: usize) -> FoldedKernel {
    let dim = kernel.dim();
    let mut entries: Vec<Vec<Matrix>> = (0..=n_max)
        .map(|n| vec![Matrix::zeros(dim); n + 1])
        .collect();
    for (i, jj, k) in kernel.iter() {
        let j = i + jj;
        for (n, row) in entries.iter_mut().enumerate().skip(j) {
            row[j].add_scaled(k, 1.0 / (n - i + 1) as f64);
        }
    }
    FoldedKernel { n_max, entries }
}

/// What the solver found out about the kernel structure.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstKindDiagnostics {
    /// Number of leading folded-kernel columns that vanish.
    pub j0: usize,
    /// `𝐊_{n,j0}` was verified nonsingular for `j0 ≤ n ≤ n_checked` only.
    pub n_checked: usize,
    /// Smallest `|pivot|/‖𝐊_{n,j0}‖` met in the eliminations.
    pub min_relative_pivot: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirstKindSolution {
    pub table: TaylorTable,
    pub diagnostics: FirstKindDiagnostics,
}

/// Smallest relative pivot of a partial-pivot elimination of `m`.
fn relative_pivot(m: &Matrix) -> f64 {
    let n = m.dim();
    let scale = m.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    let mut a = m.rows();
    let mut min_piv = f64::INFINITY;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))
            .unwrap_or(c);
        a.swap(c, p);
        let piv = a[c][c];
        min_piv = min_piv.min(piv.abs() / scale);
        if piv == 0.0 {
            return 0.0;
        }
        for r in c + 1..n {
            let f = a[r][c] / piv;
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    min_piv
}

/// Taylor coefficients `X_0..=X_{n_max}` of the solution.
///
/// Checks, in order: `Ξ_0 = 0`; a first nonvanishing folded-kernel column
/// `j0` exists; `Ξ_{n+1} = 0` for `n < j0`; `𝐊_{n,j0}` is nonsingular for
/// every `n` used. Coefficients of `ξ` past its order are zero.
pub fn solve_first_kind(
    kernel: &LinearKernelExpansion,
    xi: &TaylorTable,
    n_max: usize,
) -> Result<FirstKindSolution> {
    let dim = kernel.dim();
    if xi.dim() != dim {
        return Err(crate::error::invalid(format!(
            "kernel has dimension {dim} but the forcing term has dimension {}",
            xi.dim()
        )));
    }
    let xi_at = |n: usize| xi.get(n).map_or_else(|| vec![0.0; dim], <[f64]>::to_vec);
    let xi_scale = xi.iter().map(|(_, c)| c.iter().fold(0.0f64, |m, v| m.max(v.abs()))).fold(0.0, f64::max);
    let xi_tol = ZERO_TOL * xi_scale.max(1.0);
    let is_zero = |v: &[f64]| v.iter().all(|x| x.abs() <= xi_tol);

    if !is_zero(&xi_at(0)) {
        return Err(Error::NoSolution(
            "a first-kind equation needs xi(0) = 0".into(),
        ));
    }

    // j0 is at most the kernel degree; fold far enough to see it and to
    // run the recursion up to n = n_max + j0
    let degree = kernel.max_degree();
    let folded = fold_kernel(kernel, n_max + degree + 1);
    let scale = folded.max_abs();
    if scale == 0.0 {
        return Err(Error::StructureNotSupported { n: 0, reason: "kernel is identically zero".into() });
    }
    let col_nonzero = |j: usize| {
        (j..=n_max + j).any(|n| folded.get(n, j).max_abs() > ZERO_TOL * scale)
    };
    let j0 = (0..=degree).find(|&j| col_nonzero(j)).ok_or_else(|| Error::StructureNotSupported {
        n: 0,
        reason: "no nonvanishing folded-kernel column".into(),
    })?;

    for n in 0..j0 {
        if !is_zero(&xi_at(n + 1)) {
            return Err(Error::Inconsistent(format!(
                "the first {j0} folded-kernel columns vanish, so xi must have a zero coefficient at t^{}",
                n + 1
            )));
        }
    }

    let mut x = TaylorTable::zeros(dim, n_max);
    let mut min_pivot = f64::INFINITY;
    for n in j0..=n_max + j0 {
        let kk = folded.get(n, j0);
        let piv = relative_pivot(kk);
        if piv <= PIVOT_TOL {
            return Err(Error::StructureNotSupported {
                n,
                reason: format!("folded kernel block at column {j0} is singular"),
            });
        }
        min_pivot = min_pivot.min(piv);
        let mut rhs = xi_at(n + 1);
        for j in j0 + 1..=n {
            folded.get(n, j).mul_vec_acc(x.coeff(n - j), 1.0, &mut rhs);
        }
        let sol = kk.solve(&rhs, PIVOT_TOL)?;
        let out: Vec<f64> = sol.iter().map(|v| -v).collect();
        if !out.iter().all(|v| v.is_finite()) {
            return Err(Error::Domain(format!("coefficient X_{} overflowed", n - j0)));
        }
        x.set(n - j0, &out)?;
    }
    Ok(FirstKindSolution {
        table: x,
        diagnostics: FirstKindDiagnostics { j0, n_checked: n_max + j0, min_relative_pivot: min_pivot },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::factorial;

    #[test]
    fn folded_kernel_examples() {
        let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap();
        let f = fold_kernel(&k, 5);
        for n in 0..=5 {
            assert_eq!(f.get(n, 0).get(0, 0), 1.0 / (n + 1) as f64);
            for j in 1..=n {
                assert_eq!(f.get(n, j).get(0, 0), 0.0);
            }
        }
        let k = LinearKernelExpansion::scalar(&[(1, 0, 1.0), (0, 1, -1.0)]).unwrap();
        let f = fold_kernel(&k, 6);
        for n in 1..=6 {
            assert_eq!(f.get(n, 0).get(0, 0), 0.0);
            let want = 1.0 / (n * (n + 1)) as f64;
            assert!((f.get(n, 1).get(0, 0) - want).abs() < 1e-16);
        }
    }

    #[test]
    fn unit_kernel() {
        let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap();
        let s = solve_first_kind(&k, &TaylorTable::from_scalars(&[0.0, -1.0]).unwrap(), 6).unwrap();
        assert_eq!(s.diagnostics.j0, 0);
        assert!((s.table.coeff(0)[0] - 1.0).abs() < 1e-15);
        assert!(s.table.iter().skip(1).all(|(_, c)| c[0].abs() < 1e-15));

        let xi: Vec<f64> = (0..=15).map(|n| if n == 0 { 0.0 } else { -1.0 / factorial(n) }).collect();
        let s = solve_first_kind(&k, &TaylorTable::from_scalars(&xi).unwrap(), 12).unwrap();
        for n in 0..=12 {
            assert!((s.table.coeff(n)[0] * factorial(n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rank_shift() {
        let k = LinearKernelExpansion::scalar(&[(1, 0, 1.0), (0, 1, -1.0)]).unwrap();
        let xi = TaylorTable::from_scalars(&[0.0, 0.0, -0.5]).unwrap();
        let s = solve_first_kind(&k, &xi, 8).unwrap();
        assert_eq!(s.diagnostics.j0, 1);
        assert!((s.table.coeff(0)[0] - 1.0).abs() < 1e-14);
        assert!(s.table.iter().skip(1).all(|(_, c)| c[0].abs() < 1e-14));
    }

    #[test]
    fn error_cases() {
        let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap();
        let bad = TaylorTable::from_scalars(&[1.0, 1.0]).unwrap();
        assert!(matches!(solve_first_kind(&k, &bad, 3), Err(Error::NoSolution(_))));
        let shift = LinearKernelExpansion::scalar(&[(1, 0, 1.0), (0, 1, -1.0)]).unwrap();
        let xi = TaylorTable::from_scalars(&[0.0, 1.0]).unwrap();
        assert!(matches!(solve_first_kind(&shift, &xi, 3), Err(Error::Inconsistent(_))));
        // -2/(n+1) + 1/n vanishes at n = 1
        let sing = LinearKernelExpansion::scalar(&[(1, 0, 1.0), (0, 1, -2.0)]).unwrap();
        let xi = TaylorTable::from_scalars(&[0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            solve_first_kind(&sing, &xi, 3),
            Err(Error::StructureNotSupported { n: 1, .. })
        ));
        let zero = LinearKernelExpansion::new(1);
        assert!(matches!(
            solve_first_kind(&zero, &TaylorTable::from_scalars(&[0.0]).unwrap(), 3),
            Err(Error::StructureNotSupported { .. })
        ));
    }
}
