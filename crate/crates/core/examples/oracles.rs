//! Independent numerical checks of a series solution: quadrature residuals
//! and product-integration time stepping.

use volterra_series::kernel::LinearKernelExpansion;
use volterra_series::oracle::{residual_check, solve_second_kind_numeric, Equation, Grid};
use volterra_series::regular::solve_linear_second_kind;
use volterra_series::series::{Series, TaylorTable};

fn main() -> volterra_series::Result<()> {
    // x = cos t + ∫ (t − s) x ds
    let k = LinearKernelExpansion::scalar(&[(1, 0, 1.0), (0, 1, -1.0)])?;
    let xi = TaylorTable::from_scalars(&[1.0, 0.0, -0.5, 0.0, 1.0 / 24.0, 0.0, -1.0 / 720.0])?;
    let x = solve_linear_second_kind(&k, &xi, 20)?;
    let eq = Equation::regular_linear(&k, &xi)?;

    let series = Series::Taylor(x);
    println!("residual {:.3e}", residual_check(&eq, &series, &[0.1, 0.3, 0.5])?);

    let grid = Grid::new(0.5, 512)?;
    let nodes = solve_second_kind_numeric(&eq, &grid)?;
    for m in [128, 256, 512] {
        let t = grid.node(m);
        println!("t = {t:.3}: series {:.12} stepping {:.12}", series.evaluate(t)?[0], nodes[m][0]);
    }

    let mut broken = series.clone();
    broken.perturb(0, 1, 0, 0.1)?;
    println!("residual after corrupting X_1: {:.3e}", residual_check(&eq, &broken, &[0.5])?);
    Ok(())
}
