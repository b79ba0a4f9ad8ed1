//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when
//! any criterion fails.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use volterra_series::abel::{
    constant_kernel_closed_form, solve_abel_linear_irrational, solve_abel_linear_rational_direct,
    solve_abel_linear_rational_fold, AbelLinearKernel, FoldOptions,
};
use volterra_series::convergence::{
    abel_grouped_inequality, abel_grouped_norms, majorant_lm, radius_bound_abel,
    radius_bound_regular, AbelEnvelope, GeometricEnvelope, MajorantData,
};
use volterra_series::first_kind::solve_first_kind;
use volterra_series::kernel::{LinearKernelExpansion, NonlinearKernelExpansion};
use volterra_series::linalg::{Matrix, Norm};
use volterra_series::log_kernel::{moment_l, moment_m, solve_log_system, LogKernelExpansion, LogVariant};
use volterra_series::oracle::{
    integral_moment_numeric, residual_check, solve_second_kind_numeric, Equation, Grid, Moment,
};
use volterra_series::regular::{
    derivative_method_linear, solve_linear_second_kind, solve_nonlinear_second_kind,
};
use volterra_series::series::{
    estimate_radius, AbelTable, AlphaExponent, LogTable, MultiIndex, Series, TaylorTable,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        (got - want).abs() / want.abs()
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Matrix {
    let rows: Vec<Vec<f64>> = (0..dim)
        .map(|_| (0..dim).map(|_| scale * rng.random_range(-1.0..1.0)).collect())
        .collect();
    Matrix::from_rows(&rows).unwrap()
}

/// Random sparse kernel with total degree at most `degree`.
fn random_kernel(rng: &mut ChaCha8Rng, dim: usize, degree: usize, density: f64) -> LinearKernelExpansion {
    let mut k = LinearKernelExpansion::new(dim);
    for i in 0..=degree {
        for j in 0..=degree - i {
            if rng.random_bool(density) {
                k.add(i, j, &random_matrix(rng, dim, 1.0)).unwrap();
            }
        }
    }
    k
}

fn random_taylor(rng: &mut ChaCha8Rng, dim: usize, order: usize) -> TaylorTable {
    let coeffs = (0..=order)
        .map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    TaylorTable::from_coeffs(coeffs).unwrap()
}

fn criterion_1() -> Outcome {
    let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap();
    let xi = TaylorTable::from_scalars(&[1.0]).unwrap();
    let x = solve_linear_second_kind(&k, &xi, 20).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut fact = 1.0;
    for n in 0..=20 {
        if n > 0 {
            fact *= n as f64;
        }
        worst = worst.max(rel(x.coeff(n)[0], 1.0 / fact));
    }
    ensure(worst <= 1e-12, format!("max rel err {worst:.2e}"))?;
    Ok(format!("max rel err {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for case in 0..25 {
        let dim = rng.random_range(1..=2);
        let k = random_kernel(&mut rng, dim, 3, 0.4);
        let xi = random_taylor(&mut rng, dim, 3);
        let a = solve_linear_second_kind(&k, &xi, 15).map_err(|e| e.to_string())?;
        let b = derivative_method_linear(&k, &xi, 15).map_err(|e| e.to_string())?;
        for n in 0..=15 {
            for c in 0..dim {
                let e = rel(b.coeff(n)[c], a.coeff(n)[c]);
                ensure(e <= 1e-11, format!("case {case}: X_{n}[{c}] rel err {e:.2e}"))?;
                worst = worst.max(e);
            }
        }
    }
    Ok(format!("25 kernels, max rel err {worst:.2e}"))
}

fn criterion_3() -> Outcome {
    let mut k = NonlinearKernelExpansion::new(1);
    k.add(0, 0, MultiIndex::new(vec![2]), vec![1.0]).unwrap();
    let xi = TaylorTable::from_scalars(&[1.0]).unwrap();
    let x = solve_nonlinear_second_kind(&k, &xi, 15).map_err(|e| e.to_string())?;
    let worst = x.iter().map(|(_, c)| (c[0] - 1.0).abs()).fold(0.0, f64::max);
    ensure(worst <= 1e-10, format!("max |X_n - 1| = {worst:.2e}"))?;
    let est = estimate_radius(&x, Norm::Max);
    ensure(
        (0.8..=1.2).contains(&est.value),
        format!("estimate_radius {} outside [0.8, 1.2]", est.value),
    )?;
    Ok(format!("max |X_n - 1| = {worst:.2e}, radius estimate {:.6}", est.value))
}

fn constant_abel(alpha: AlphaExponent) -> (AbelLinearKernel, AbelTable) {
    let k = AbelLinearKernel::new(
        alpha,
        LinearKernelExpansion::new(1),
        LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap(),
    )
    .unwrap();
    let rmax = if alpha.is_rational() { 0 } else { 150 };
    let mut xi = AbelTable::zeros(1, alpha, 0, rmax).unwrap();
    xi.set(0, 0, &[1.0]).unwrap();
    (k, xi)
}

fn criterion_4() -> Outcome {
    let alphas = [
        AlphaExponent::rational(1, 2).unwrap(),
        AlphaExponent::rational(1, 3).unwrap(),
        AlphaExponent::irrational(0.5f64.sqrt()).unwrap(),
    ];
    let mut notes = Vec::new();
    for alpha in alphas {
        let (k, xi) = constant_abel(alpha);
        // the irrational solution is about 3.3e5 at t = 0.25 and needs
        // around 150 diagonal terms
        let (n_max, r_max) = if alpha.is_rational() { (60, 0) } else { (150, 150) };
        let x = if alpha.is_rational() {
            solve_abel_linear_rational_direct(&k, &xi, n_max)
        } else {
            solve_abel_linear_irrational(&k, &xi, n_max, r_max)
        }
        .map_err(|e| e.to_string())?;
        let want = constant_kernel_closed_form(1.0, alpha, &[1.0], n_max, x.rmax()).map_err(|e| e.to_string())?;
        let mut worst: f64 = 0.0;
        for (r, n, w) in want.iter() {
            if r + n <= 12 {
                worst = worst.max(rel(x.coeff(r, n).unwrap()[0], w[0]));
            }
        }
        ensure(worst <= 1e-10, format!("alpha {alpha}: closed-form rel err {worst:.2e}"))?;

        let eq = Equation::abel_linear(&k, &xi).map_err(|e| e.to_string())?;
        let steps = if alpha.is_rational() { 4096 } else { 8192 };
        let grid = Grid::new(0.25, steps).unwrap();
        let nodes = solve_second_kind_numeric(&eq, &grid).map_err(|e| e.to_string())?;
        let series = x.evaluate(0.25).map_err(|e| e.to_string())?[0];
        let oracle = nodes[grid.steps()][0];
        let diff = (series - oracle).abs();
        ensure(
            diff <= 1e-4,
            format!(
                "alpha {alpha}: |series - oracle| = {diff:.2e} at t = 0.25 \
                 (series {series:.10e}, oracle {oracle:.10e}, relative {:.1e}, {steps} steps)",
                diff / series.abs()
            ),
        )?;
        notes.push(format!("{alpha}: {worst:.1e}/{diff:.1e}"));
    }
    Ok(format!("closed-form/oracle errors {}", notes.join(", ")))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alphas = [(1, 2), (1, 3), (2, 3)];
    let mut worst: f64 = 0.0;
    for case in 0..10 {
        let (p, q) = alphas[case % 3];
        let alpha = AlphaExponent::rational(p, q).unwrap();
        let dim = rng.random_range(1..=2);
        let a = random_kernel(&mut rng, dim, 3, 0.3);
        let mut b = random_kernel(&mut rng, dim, 3, 0.3);
        b.add(0, 0, &random_matrix(&mut rng, dim, 1.0)).unwrap();
        let k = AbelLinearKernel::new(alpha, a, b).unwrap();
        let mut xi = AbelTable::rational(dim, alpha, 4).unwrap();
        for i in 0..=4 {
            xi.set(0, i, random_taylor(&mut rng, dim, 0).coeff(0)).unwrap();
        }
        let n_max = 15;
        let direct = solve_abel_linear_rational_direct(&k, &xi, n_max).map_err(|e| e.to_string())?;
        let fold = solve_abel_linear_rational_fold(&k, &xi, n_max, FoldOptions::default())
            .map_err(|e| e.to_string())?;
        let report = fold.fold.unwrap();
        ensure(report.converged, format!("case {case}: fold did not converge in {} terms", report.terms))?;
        for (r, n, d) in direct.iter() {
            let f = fold.table.coeff(r, n).unwrap();
            for c in 0..dim {
                let e = (d[c] - f[c]).abs() / d[c].abs().max(1.0);
                ensure(e <= 1e-9, format!("case {case} alpha {alpha}: ({r},{n})[{c}] differs by {e:.2e}"))?;
                worst = worst.max(e);
            }
        }
    }
    Ok(format!("10 problems, max diff {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for q in 0..=6 {
        for r in 0..=6 {
            for (which, v) in [(Moment::L, moment_l(q, r)), (Moment::M, moment_m(q, r))] {
                let num = integral_moment_numeric(which, q, r);
                let e = (v - num).abs() / num.abs().max(1.0);
                ensure(e <= 1e-8, format!("{which:?}({q},{r}): {v} vs {num}"))?;
                worst = worst.max(e);
            }
        }
    }
    let m00 = moment_m(0, 0);
    let m01 = moment_m(0, 1);
    ensure((m00 + 1.0).abs() <= 1e-10, format!("M_00 = {m00}"))?;
    ensure((m01 - (2.0 - PI * PI / 6.0)).abs() <= 1e-8, format!("M_01 = {m01}"))?;
    Ok(format!("q, r <= 6, max diff {worst:.2e}; M_00 = {m00:.12}, M_01 = {m01:.12}"))
}

fn criterion_7() -> Outcome {
    let kernel = LogKernelExpansion::linear(
        LogVariant::TMinusS,
        &LinearKernelExpansion::new(1),
        &LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap(),
    )
    .unwrap();
    let mut xi = LogTable::zeros(1, 0, 8);
    xi.set(0, 0, &[1.0]).unwrap();
    let sol = solve_log_system(&kernel, &xi, 8, 8).map_err(|e| e.to_string())?;
    let x11 = sol.table.coeff(1, 1).unwrap()[0];
    let x01 = sol.table.coeff(0, 1).unwrap()[0];
    ensure((x11 - 1.0).abs() <= 1e-12 && (x01 + 1.0).abs() <= 1e-12, format!("X_11 = {x11}, X_01 = {x01}"))?;

    let eq = Equation::log(&kernel, &xi).map_err(|e| e.to_string())?;
    let ts = [0.05, 0.1, 0.2];
    let mut res = Vec::new();
    for n_max in [2, 4, 6, 8] {
        let s = solve_log_system(&kernel, &xi, n_max, 8).map_err(|e| e.to_string())?;
        res.push(residual_check(&eq, &Series::Log(s.table), &ts).map_err(|e| e.to_string())?);
    }
    ensure(res[3] <= 1e-3, format!("residual {:.2e} at n_max = 8", res[3]))?;
    let shown: Vec<String> = res.iter().map(|r| format!("{r:.2e}")).collect();
    let shown = shown.join(" > ");
    ensure(res.windows(2).all(|w| w[1] < w[0]), format!("residuals not decreasing: {shown}"))?;
    Ok(format!("X_11 = {x11}, X_01 = {x01}, residuals {shown}"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for case in 0..20 {
        let dim = rng.random_range(1..=2);
        let mut k = random_kernel(&mut rng, dim, 3, 0.5);
        // K_00 well away from singular
        let mut k00 = random_matrix(&mut rng, dim, 0.3);
        for d in 0..dim {
            k00.set(d, d, k00.get(d, d) + if rng.random_bool(0.5) { 2.0 } else { -2.0 });
        }
        k.add(0, 0, &k00).unwrap();
        let deg = rng.random_range(0..=8);
        let x = random_taylor(&mut rng, dim, deg);
        let order = deg + 3 + 1;
        let mut xi = vec![vec![0.0; dim]; order + 1];
        for (i, j, m) in k.iter() {
            for (mm, xm) in x.iter() {
                let v = m.mul_vec(xm);
                let w = -1.0 / (j + mm + 1) as f64;
                for c in 0..dim {
                    xi[i + j + mm + 1][c] += w * v[c];
                }
            }
        }
        let xi = TaylorTable::from_coeffs(xi).unwrap();
        let n_max = 8;
        let sol = solve_first_kind(&k, &xi, n_max).map_err(|e| format!("case {case}: {e}"))?;
        for n in 0..=n_max {
            let want = x.get(n).map_or_else(|| vec![0.0; dim], <[f64]>::to_vec);
            for (c, w) in want.iter().enumerate() {
                let e = (sol.table.coeff(n)[c] - w).abs() / w.abs().max(1.0);
                ensure(e <= 1e-10, format!("case {case}: X_{n}[{c}] error {e:.2e}"))?;
                worst = worst.max(e);
            }
        }
    }
    let k = LinearKernelExpansion::scalar(&[(1, 0, 1.0), (0, 1, -1.0)]).unwrap();
    let xi = TaylorTable::from_scalars(&[0.0, 0.0, -0.5]).unwrap();
    let sol = solve_first_kind(&k, &xi, 10).map_err(|e| e.to_string())?;
    ensure(sol.diagnostics.j0 == 1, format!("rank shift j0 = {}", sol.diagnostics.j0))?;
    let dev = sol
        .table
        .iter()
        .map(|(n, c)| (c[0] - if n == 0 { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    ensure(dev <= 1e-12, format!("rank shift solution deviates from 1 by {dev:.2e}"))?;
    Ok(format!("20 round trips, max err {worst:.2e}; rank shift j0 = 1"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n_max = 20;
    let mut notes = Vec::new();
    for case in 0..20 {
        let dim = rng.random_range(1..=2);
        let k = random_kernel(&mut rng, dim, 3, 0.4);
        let xi = if case % 2 == 0 {
            // forcing with a pole at t = rho
            let rho: f64 = rng.random_range(0.5..3.0);
            let v = random_taylor(&mut rng, dim, 0).coeff(0).to_vec();
            let coeffs = (0..=n_max).map(|n| v.iter().map(|x| x / rho.powi(n as i32)).collect()).collect();
            TaylorTable::from_coeffs(coeffs).unwrap()
        } else {
            random_taylor(&mut rng, dim, 3)
        };
        let x = solve_linear_second_kind(&k, &xi, n_max).map_err(|e| e.to_string())?;
        let md = MajorantData::new(&k, &xi, n_max, Norm::Max).map_err(|e| e.to_string())?;
        if let Some(n) = md.first_violation(&x, Norm::Max) {
            return Err(format!("case {case}: |X_{n}| > C_{n}"));
        }
        let env = GeometricEnvelope::fit(&md.norm_xi, &md.l, None).map_err(|e| e.to_string())?;
        let bound = radius_bound_regular(&env).map_err(|e| e.to_string())?;
        let est = estimate_radius(&x, Norm::Max);
        ensure(
            bound <= est.value * 1.1,
            format!("case {case}: bound {bound} exceeds estimate {} by more than 10%", est.value),
        )?;
        if case < 4 {
            notes.push(format!("{bound:.3}<={:.3}", est.value));
        }
    }
    Ok(format!("20 problems dominated; e.g. {}", notes.join(" ")))
}

fn criterion_10() -> Outcome {
    let alpha = AlphaExponent::rational(1, 2).unwrap();
    let (k, xi) = constant_abel(alpha);
    let delta = 0.1;
    let x = solve_abel_linear_rational_direct(&k, &xi, 15).map_err(|e| e.to_string())?;
    let (l, m) = majorant_lm(&k.a, &k.b, 15, Norm::Max);
    let pairs = abel_grouped_inequality(&x, &xi, &l, &m, delta, Norm::Max).map_err(|e| e.to_string())?;
    ensure(pairs.len() == 16, format!("{} grouped terms", pairs.len()))?;
    for (n, &(lhs, rhs)) in pairs.iter().enumerate() {
        ensure(lhs <= rhs * (1.0 + 1e-12), format!("n = {n}: {lhs} > {rhs}"))?;
    }
    let gxi = abel_grouped_norms(&xi, delta, Norm::Max).map_err(|e| e.to_string())?;
    let env = AbelEnvelope::fit(&gxi, &l, &m, alpha, delta, None).map_err(|e| e.to_string())?;
    let bound = radius_bound_abel(&env, alpha).map_err(|e| e.to_string())?;
    ensure(bound > 0.0 && bound.is_finite(), format!("bound {bound}"))?;
    Ok(format!("inequality holds for n <= 15, bound {bound:.6}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exponential recursion", criterion_1),
        ("derivative method agrees with recursion", criterion_2),
        ("nonlinear geometric series", criterion_3),
        ("constant Abel kernel closed form", criterion_4),
        ("rational alpha direct vs fold", criterion_5),
        ("log moments vs quadrature", criterion_6),
        ("log kernel hand check and residual", criterion_7),
        ("first-kind round trip", criterion_8),
        ("radius bound soundness", criterion_9),
        ("Abel grouped inequality", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg} ({secs:.2}s)", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {msg} ({secs:.2}s)", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
