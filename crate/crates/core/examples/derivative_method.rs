//! Two ways to the same coefficients: the coefficient recursion and
//! repeated differentiation of the equation at the origin.

use volterra_series::kernel::LinearKernelExpansion;
use volterra_series::linalg::Matrix;
use volterra_series::regular::{derivative_method_linear, solve_linear_second_kind};
use volterra_series::series::TaylorTable;

fn main() -> volterra_series::Result<()> {
    let mut k = LinearKernelExpansion::new(2);
    k.add(0, 0, &Matrix::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]])?)?;
    k.add(1, 2, &Matrix::from_rows(&[vec![0.5, 0.0], vec![0.25, -0.3]])?)?;
    let xi = TaylorTable::from_coeffs(vec![vec![1.0, 0.0], vec![0.0, 2.0]])?;

    let a = solve_linear_second_kind(&k, &xi, 12)?;
    let b = derivative_method_linear(&k, &xi, 12)?;
    for n in 0..=12 {
        let (u, v) = (a.coeff(n), b.coeff(n));
        println!("n = {n:2}  recursion {:+.6e} {:+.6e}  derivatives {:+.6e} {:+.6e}", u[0], u[1], v[0], v[1]);
    }
    Ok(())
}
