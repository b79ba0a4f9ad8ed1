//! Certified lower bounds on the radius of convergence from majorant
//! sequences, next to the empirical estimate.

use volterra_series::abel::{solve_abel_linear_rational_direct, AbelLinearKernel};
use volterra_series::convergence::{
    abel_grouped_inequality, abel_grouped_norms, majorant_lm, radius_bound_abel,
    radius_bound_regular, AbelEnvelope, GeometricEnvelope, MajorantData,
};
use volterra_series::kernel::LinearKernelExpansion;
use volterra_series::linalg::Norm;
use volterra_series::regular::solve_linear_second_kind;
use volterra_series::series::{estimate_radius, AbelTable, AlphaExponent, TaylorTable};

fn main() -> volterra_series::Result<()> {
    // x = 1/(1 − t/2) + ∫ (1 + ts) x ds
    let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0), (1, 1, 1.0)])?;
    let xi = TaylorTable::from_scalars(&(0..=20).map(|n| 0.5f64.powi(n)).collect::<Vec<_>>())?;
    let x = solve_linear_second_kind(&k, &xi, 20)?;
    let md = MajorantData::new(&k, &xi, 20, Norm::Max)?;
    println!("majorant dominates: {}", md.first_violation(&x, Norm::Max).is_none());
    let env = GeometricEnvelope::fit(&md.norm_xi, &md.l, None)?;
    println!("envelope {env:?}");
    println!(
        "bound {:.6}  estimate {:.6}",
        radius_bound_regular(&env)?,
        estimate_radius(&x, Norm::Max).value
    );

    let alpha = AlphaExponent::rational(1, 2)?;
    let ak = AbelLinearKernel::new(
        alpha,
        LinearKernelExpansion::new(1),
        LinearKernelExpansion::scalar(&[(0, 0, 1.0)])?,
    )?;
    let mut axi = AbelTable::rational(1, alpha, 0)?;
    axi.set(0, 0, &[1.0])?;
    let ax = solve_abel_linear_rational_direct(&ak, &axi, 15)?;
    let delta = 0.1;
    let (l, m) = majorant_lm(&ak.a, &ak.b, 15, Norm::Max);
    let pairs = abel_grouped_inequality(&ax, &axi, &l, &m, delta, Norm::Max)?;
    println!("grouped inequality holds: {}", pairs.iter().all(|(a, b)| a <= b));
    let env = AbelEnvelope::fit(&abel_grouped_norms(&axi, delta, Norm::Max)?, &l, &m, alpha, delta, None)?;
    println!("Abel bound {:.6} for t >= {delta}", radius_bound_abel(&env, alpha)?);
    Ok(())
}
