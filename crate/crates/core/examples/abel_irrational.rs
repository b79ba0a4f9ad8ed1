//! Abel kernel with irrational exponent `α = 1/√2`: the rows `t^{i − rα}` never
//! fold onto each other, so the table keeps `r_max + 1` rows.

use volterra_series::abel::{constant_kernel_closed_form, solve_abel_linear_irrational, AbelLinearKernel};
use volterra_series::kernel::LinearKernelExpansion;
use volterra_series::series::{AbelTable, AlphaExponent};

fn main() -> volterra_series::Result<()> {
    let alpha = AlphaExponent::irrational(0.5f64.sqrt())?;
    let k = AbelLinearKernel::new(
        alpha,
        LinearKernelExpansion::new(1),
        LinearKernelExpansion::scalar(&[(0, 0, 0.5)])?,
    )?;
    let mut xi = AbelTable::irrational(1, alpha, 0, 40)?;
    xi.set(0, 0, &[1.0])?;
    let x = solve_abel_linear_irrational(&k, &xi, 40, 40)?;
    let closed = constant_kernel_closed_form(0.5, alpha, &[1.0], 40, 40)?;
    for r in 0..5 {
        let got = x.coeff(r, r).unwrap()[0];
        let want = closed.coeff(r, r).unwrap()[0];
        println!("X_({r},{r}) = {got:.15}  closed form {want:.15}");
    }
    for t in [0.01, 0.1, 0.5] {
        println!("x({t}) = {:.12}", x.evaluate(t)?[0]);
    }
    Ok(())
}
