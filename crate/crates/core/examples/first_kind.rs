//! First-kind equation `ξ(t) + ∫_0^t (t − s) x(s) ds = 0` with `ξ = −t²/2`.
//! The kernel vanishes on the diagonal, so the solver works one order up
//! (`j0 = 1`) and recovers `x ≡ 1`.

use volterra_series::first_kind::solve_first_kind;
use volterra_series::kernel::LinearKernelExpansion;
use volterra_series::series::TaylorTable;

fn main() -> volterra_series::Result<()> {
    let k = LinearKernelExpansion::scalar(&[(1, 0, 1.0), (0, 1, -1.0)])?;
    let xi = TaylorTable::from_scalars(&[0.0, 0.0, -0.5])?;
    let sol = solve_first_kind(&k, &xi, 6)?;
    println!("{:?}", sol.diagnostics);
    let x: Vec<f64> = sol.table.iter().map(|(_, c)| c[0]).collect();
    println!("X = {x:?}");

    // a forcing term that does not vanish at 0 has no solution
    let bad = TaylorTable::from_scalars(&[1.0])?;
    println!("{}", solve_first_kind(&k, &bad, 6).unwrap_err());
    Ok(())
}
