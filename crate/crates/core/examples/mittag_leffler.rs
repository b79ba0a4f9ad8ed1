//! `x(t) = 1 + ∫_0^t (t − s)^{-1/2} x(s) ds`. The solution is the
//! Mittag-Leffler function `E_{1/2}(√π t^{1/2})`, whose series in `t^{1/2}`
//! is computed three ways.

use volterra_series::abel::{
    constant_kernel_closed_form, solve_abel_linear_rational_direct, solve_abel_linear_rational_fold,
    AbelLinearKernel, FoldOptions,
};
use volterra_series::kernel::LinearKernelExpansion;
use volterra_series::series::{AbelTable, AlphaExponent};

fn main() -> volterra_series::Result<()> {
    let alpha = AlphaExponent::rational(1, 2)?;
    let k = AbelLinearKernel::new(
        alpha,
        LinearKernelExpansion::new(1),
        LinearKernelExpansion::scalar(&[(0, 0, 1.0)])?,
    )?;
    let mut xi = AbelTable::rational(1, alpha, 0)?;
    xi.set(0, 0, &[1.0])?;

    let direct = solve_abel_linear_rational_direct(&k, &xi, 10)?;
    let fold = solve_abel_linear_rational_fold(&k, &xi, 10, FoldOptions::default())?;
    let closed = constant_kernel_closed_form(1.0, alpha, &[1.0], 10, 1)?;
    println!("fold used {:?}", fold.fold);
    for (r, i, c) in direct.iter().take(8) {
        println!(
            "t^({:>7})  direct {:.15}  fold {:.15}  closed {:.15}",
            alpha.exponent_label(r, i),
            c[0],
            fold.table.coeff(r, i).unwrap()[0],
            closed.coeff(r, i).unwrap()[0]
        );
    }
    println!("x(0.25) = {:.12}", direct.evaluate(0.25)?[0]);
    Ok(())
}
