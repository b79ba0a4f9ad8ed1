//! `x(t) = 1 + ∫_0^t ln(t − s) x(s) ds`: the solution mixes powers of `t` and
//! `ln t`, starting `1 − t + t ln t + ...`.

use volterra_series::kernel::LinearKernelExpansion;
use volterra_series::log_kernel::{moment_l, moment_m, solve_log_system, LogKernelExpansion, LogVariant};
use volterra_series::oracle::{residual_check, Equation};
use volterra_series::series::{LogTable, Series};

fn main() -> volterra_series::Result<()> {
    println!("M_00 = {}  M_01 = {}  L_23 = {}", moment_m(0, 0), moment_m(0, 1), moment_l(2, 3));

    let k = LogKernelExpansion::linear(
        LogVariant::TMinusS,
        &LinearKernelExpansion::new(1),
        &LinearKernelExpansion::scalar(&[(0, 0, 1.0)])?,
    )?;
    let mut xi = LogTable::zeros(1, 0, 8);
    xi.set(0, 0, &[1.0])?;
    let eq = Equation::log(&k, &xi)?;
    for n_max in [2, 4, 6, 8] {
        let sol = solve_log_system(&k, &xi, n_max, 8)?;
        let res = residual_check(&eq, &Series::Log(sol.table), &[0.05, 0.1, 0.2])?;
        println!("n_max = {n_max}: residual {res:.3e}");
    }
    let sol = solve_log_system(&k, &xi, 3, 3)?;
    for (r, i, c) in sol.table.iter().filter(|e| e.2[0] != 0.0) {
        println!("t^{i} (ln t)^{r}: {:+.15}", c[0]);
    }
    Ok(())
}
