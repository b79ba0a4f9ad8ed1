//! `x(t) = 1 + ∫_0^t x(s)^2 ds`, i.e. `x = 1/(1 − t)`: every coefficient is 1
//! and the radius of convergence is 1.

use volterra_series::kernel::NonlinearKernelExpansion;
use volterra_series::linalg::Norm;
use volterra_series::regular::solve_nonlinear_second_kind;
use volterra_series::series::{estimate_radius, MultiIndex, TaylorTable};

fn main() -> volterra_series::Result<()> {
    let mut f = NonlinearKernelExpansion::new(1);
    f.add(0, 0, MultiIndex::new(vec![2]), vec![1.0])?;
    let xi = TaylorTable::from_scalars(&[1.0])?;
    let x = solve_nonlinear_second_kind(&f, &xi, 15)?;
    let coeffs: Vec<f64> = x.iter().map(|(_, c)| c[0]).collect();
    println!("X = {coeffs:?}");
    let est = estimate_radius(&x, Norm::Max);
    println!("radius estimate {:.6} ({:?})", est.value, est.confidence);
    Ok(())
}
