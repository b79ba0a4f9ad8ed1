//! Nonlinear Abel equation `x = 1 − ½∫x ds + ½∫(t − s)^{-1/2} x² ds`, solved by
//! the formal recursion and folded onto the two rows of `α = 1/2`.

use volterra_series::abel::{solve_abel_nonlinear, AbelNonlinearKernel, FoldOptions};
use volterra_series::kernel::NonlinearKernelExpansion;
use volterra_series::oracle::{residual_check, Equation};
use volterra_series::series::{AbelTable, AlphaExponent, MultiIndex, Series};

fn main() -> volterra_series::Result<()> {
    let alpha = AlphaExponent::rational(1, 2)?;
    let mut a = NonlinearKernelExpansion::new(1);
    a.add(0, 0, MultiIndex::new(vec![1]), vec![-0.5])?;
    let mut b = NonlinearKernelExpansion::new(1);
    b.add(0, 0, MultiIndex::new(vec![2]), vec![0.5])?;
    let k = AbelNonlinearKernel::new(alpha, a, b)?;
    let mut xi = AbelTable::rational(1, alpha, 0)?;
    xi.set(0, 0, &[1.0])?;

    let sol = solve_abel_nonlinear(&k, &xi, 16, 0, FoldOptions::default())?;
    println!("fold: {:?}", sol.fold);
    for (r, i, c) in sol.table.iter().take(6) {
        println!("t^({}) {:+.12e}", alpha.exponent_label(r, i), c[0]);
    }
    let eq = Equation::abel(&k, &xi)?;
    let res = residual_check(&eq, &Series::Abel(sol.table), &[0.02, 0.05])?;
    println!("max residual {res:.3e}");
    Ok(())
}
