//! `x(t) = 1 + ∫_0^t x(s) ds` has solution `e^t`.

use volterra_series::kernel::LinearKernelExpansion;
use volterra_series::regular::solve_linear_second_kind;
use volterra_series::series::TaylorTable;

fn main() -> volterra_series::Result<()> {
    let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0)])?;
    let xi = TaylorTable::from_scalars(&[1.0])?;
    let x = solve_linear_second_kind(&k, &xi, 20)?;
    for (n, c) in x.iter().take(6) {
        println!("X_{n} = {:.16e}", c[0]);
    }
    let e = x.evaluate(1.0)?[0];
    println!("x(1) = {e:.16}  (e = {:.16})", std::f64::consts::E);
    Ok(())
}
