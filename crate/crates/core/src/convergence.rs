//! Majorant sequences and lower bounds for the radius of convergence.
//!
//! For the regular linear recursion, `‖X_n‖ ≤ C_n` where
//! `C_n = ‖Ξ_n‖ + Σ_{l<n} L_{n−l} C_l` and `L_n = Σ_{i+j=n−1} ‖K_{ij}‖`.
//! Geometric envelopes `‖Ξ_n‖ ≤ M0/R^n`, `L_n ≤ M/R^n` then give the bound
//! `R/(1 + RM)`.
//!
//! For a rational Abel exponent `α = p/q` the coefficients are grouped by
//! column with weights `δ^{−rα}` (valid for `t ≥ δ`), and the same argument
//! with `C_δ = q C_L + δ^{−α} B(1−α, 1/q) C_M` gives `R/(1 + R C_δ)`.
//!
//! The truncated inputs are polynomials, so an envelope fitted on the stored
//! coefficients holds for every `n`. Bounds exist only for linear problems
//! with an analytic or rational-α Abel kernel.

use crate::error::{invalid, Error, Result};
use crate::kernel::LinearKernelExpansion;
use crate::linalg::Norm;
use crate::series::{
    estimate_radius_from_norms, AbelTable, AlphaExponent, RadiusConfidence, TaylorTable,
};
use crate::special::beta_unchecked;

/// `L_0..=L_{n_max}` with `L_n = Σ_{i=0}^{n−1} ‖K_{i,n−i−1}‖`.
pub fn majorant_l(kernel: &LinearKernelExpansion, n_max: usize, norm: Norm) -> Vec<f64> {
    let mut l = vec![0.0; n_max + 1];
    for (i, j, m) in kernel.iter() {
        let n = i + j + 1;
        if n <= n_max {
            l[n] += norm.matrix(m);
        }
    }
    l
}

/// `(L_n, M_n)` for the regular part `a` and the singular part `b` of an
/// Abel kernel.
pub fn majorant_lm(
    a: &LinearKernelExpansion,
    b: &LinearKernelExpansion,
    n_max: usize,
    norm: Norm,
) -> (Vec<f64>, Vec<f64>) {
    (majorant_l(a, n_max, norm), majorant_l(b, n_max, norm))
}

/// `C_0 = ‖Ξ_0‖`, `C_n = ‖Ξ_n‖ + Σ_{l<n} L_{n−l} C_l`. Missing entries of
/// `norm_xi` or `l` count as zero.
pub fn majorant_c(norm_xi: &[f64], l: &[f64], n_max: usize) -> Result<Vec<f64>> {
    if l.first().is_some_and(|&v| v != 0.0) {
        return Err(invalid("majorant sequence must have L_0 = 0"));
    }
    if norm_xi.iter().chain(l).any(|&v| !(v >= 0.0)) {
        return Err(invalid("majorant inputs must be nonnegative"));
    }
    let at = |v: &[f64], n: usize| v.get(n).copied().unwrap_or(0.0);
    let mut c = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let s: f64 = (0..n).map(|k| at(l, n - k) * c[k]).sum();
        c.push(at(norm_xi, n) + s);
    }
    Ok(c)
}

/// Majorant sequences of a linear regular problem.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorantData {
    pub norm_xi: Vec<f64>,
    pub l: Vec<f64>,
    pub c: Vec<f64>,
}

impl MajorantData {
    pub fn new(
        kernel: &LinearKernelExpansion,
        xi: &TaylorTable,
        n_max: usize,
        norm: Norm,
    ) -> Result<Self> {
        let norm_xi: Vec<f64> = (0..=n_max)
            .map(|n| xi.get(n).map_or(0.0, |c| norm.vector(c)))
            .collect();
        let l = majorant_l(kernel, n_max, norm);
        let c = majorant_c(&norm_xi, &l, n_max)?;
        Ok(MajorantData { norm_xi, l, c })
    }

    /// First `n` with `‖X_n‖ > C_n (1 + 1e−12)`, if any.
    pub fn first_violation(&self, x: &TaylorTable, norm: Norm) -> Option<usize> {
        x.iter()
            .take(self.c.len())
            .find(|&(n, c)| norm.vector(c) > self.c[n] * (1.0 + 1e-12))
            .map(|(n, _)| n)
    }
}

/// `max_n v_n R^n` over `n ≥ 1`.
fn envelope_constant(v: &[f64], r: f64) -> f64 {
    v.iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &x)| x > 0.0)
        .map(|(n, &x)| (x.ln() + n as f64 * r.ln()).exp())
        .fold(0.0, f64::max)
}

/// `max_n v_n R^n` over all `n`.
fn envelope_constant_all(v: &[f64], r: f64) -> f64 {
    let head = v.first().copied().unwrap_or(0.0);
    head.max(envelope_constant(v, r))
}

/// Maximizes a function that is concave in `ln R` over `R ∈ [1e−6, 1e6]`.
/// Empirical radius of the data when it decays geometrically, else `∞`.
/// The truncated data fits any `R`, so this keeps the fit honest about the
/// forcing term.
fn data_radius(v: &[f64]) -> f64 {
    let e = estimate_radius_from_norms(v);
    match e.confidence {
        RadiusConfidence::Geometric => e.value,
        _ => f64::INFINITY,
    }
}

fn golden_section_log(f: impl Fn(f64) -> f64, cap: f64) -> f64 {
    let g = |u: f64| f(u.exp());
    let (mut a, mut b) = (1e-6f64.ln(), cap.clamp(2e-6, 1e6).ln());
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    while b - a > 1e-10 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = g(d);
        }
    }
    (0.5 * (a + b)).exp()
}

/// Geometric envelope `‖Ξ_n‖ ≤ M0/R^n`, `L_n ≤ M/R^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricEnvelope {
    pub m0: f64,
    pub m: f64,
    pub r: f64,
}

impl GeometricEnvelope {
    pub fn new(m0: f64, m: f64, r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(invalid(format!("envelope radius must be positive, got {r}")));
        }
        if !(m0 >= 0.0 && m >= 0.0) {
            return Err(invalid("envelope constants must be nonnegative"));
        }
        Ok(GeometricEnvelope { m0, m, r })
    }

    /// Smallest constants for the given `R`, or (when `r` is `None`) the
    /// `R` maximizing the resulting bound `R/(1 + R M(R))`, searched below
    /// the empirical radius of `ξ` when its norms decay geometrically. A
    /// zero kernel gives that radius (or `R = ∞`).
    pub fn fit(norm_xi: &[f64], l: &[f64], r: Option<f64>) -> Result<Self> {
        let r = match r {
            Some(r) if !(r > 0.0) => {
                return Err(invalid(format!("envelope radius must be positive, got {r}")))
            }
            Some(r) => r,
            None if l.iter().all(|&v| v == 0.0) => data_radius(norm_xi),
            None => golden_section_log(
                |r| r / (1.0 + r * envelope_constant(l, r)),
                data_radius(norm_xi),
            ),
        };
        let env = if r.is_infinite() {
            GeometricEnvelope { m0: norm_xi.iter().copied().fold(0.0, f64::max), m: 0.0, r }
        } else {
            GeometricEnvelope {
                m0: envelope_constant_all(norm_xi, r),
                m: envelope_constant(l, r),
                r,
            }
        };
        if !env.verify(norm_xi, l) {
            return Err(Error::Inconsistent(
                "fitted envelope does not dominate the supplied coefficients".into(),
            ));
        }
        Ok(env)
    }

    /// Checks both envelope inequalities on the supplied prefix. With
    /// `R = ∞` only `L ≡ 0` is required: a polynomial forcing term admits
    /// some `M0` for every finite `R`.
    pub fn verify(&self, norm_xi: &[f64], l: &[f64]) -> bool {
        if self.r.is_infinite() {
            return l.iter().all(|&v| v == 0.0);
        }
        let ok = |v: &[f64], c: f64, from: usize| {
            v.iter()
                .enumerate()
                .skip(from)
                .all(|(n, &x)| x <= c / self.r.powi(n as i32) * (1.0 + 1e-12))
        };
        ok(norm_xi, self.m0, 0) && ok(l, self.m, 1)
    }
}

/// `R/(1 + R·M)`.
pub fn radius_bound_regular(env: &GeometricEnvelope) -> Result<f64> {
    if !(env.r > 0.0) {
        return Err(invalid(format!("envelope radius must be positive, got {}", env.r)));
    }
    if env.m == 0.0 {
        return Ok(env.r);
    }
    Ok(env.r / (1.0 + env.r * env.m))
}

/// Envelope for a rational-α Abel problem grouped at `t ≥ δ`:
/// `𝚵_n ≤ C0/R^n`, `L_n ≤ C_L/R^n`, `M_n ≤ C_M/R^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelEnvelope {
    pub c0: f64,
    pub c_l: f64,
    pub c_m: f64,
    pub r: f64,
    pub delta: f64,
}

fn rational_parts(alpha: AlphaExponent) -> Result<(f64, f64)> {
    let (_, q) = alpha.as_rational().ok_or_else(|| {
        Error::Unsupported("the Abel radius bound needs a rational alpha".into())
    })?;
    Ok((alpha.value(), q as f64))
}

/// `C_δ = q C_L + δ^{−α} B(1−α, 1/q) C_M`.
pub fn abel_c_delta(c_l: f64, c_m: f64, alpha: AlphaExponent, delta: f64) -> Result<f64> {
    let (a, q) = rational_parts(alpha)?;
    if !(delta > 0.0) {
        return Err(invalid(format!("delta must be positive, got {delta}")));
    }
    Ok(q * c_l + delta.powf(-a) * beta_unchecked(1.0 - a, 1.0 / q) * c_m)
}

impl AbelEnvelope {
    /// Fits `C0`, `C_L`, `C_M` for the given or best `R`.
    pub fn fit(
        grouped_xi: &[f64],
        l: &[f64],
        m: &[f64],
        alpha: AlphaExponent,
        delta: f64,
        r: Option<f64>,
    ) -> Result<Self> {
        abel_c_delta(0.0, 0.0, alpha, delta)?;
        let cd = |r: f64| {
            abel_c_delta(envelope_constant(l, r), envelope_constant(m, r), alpha, delta)
                .unwrap_or(f64::INFINITY)
        };
        let r = match r {
            Some(r) if !(r > 0.0) => {
                return Err(invalid(format!("envelope radius must be positive, got {r}")))
            }
            Some(r) => r,
            None if l.iter().chain(m).all(|&v| v == 0.0) => data_radius(grouped_xi),
            None => golden_section_log(|r| r / (1.0 + r * cd(r)), data_radius(grouped_xi)),
        };
        if r.is_infinite() {
            return Ok(AbelEnvelope {
                c0: grouped_xi.iter().copied().fold(0.0, f64::max),
                c_l: 0.0,
                c_m: 0.0,
                r,
                delta,
            });
        }
        Ok(AbelEnvelope {
            c0: envelope_constant_all(grouped_xi, r),
            c_l: envelope_constant(l, r),
            c_m: envelope_constant(m, r),
            r,
            delta,
        })
    }
}

/// `R/(1 + R C_δ)`: radius of the δ-grouped majorant series, so the Abel
/// series converges absolutely for `δ ≤ t < bound`.
pub fn radius_bound_abel(env: &AbelEnvelope, alpha: AlphaExponent) -> Result<f64> {
    if !(env.r > 0.0) {
        return Err(invalid(format!("envelope radius must be positive, got {}", env.r)));
    }
    let cd = abel_c_delta(env.c_l, env.c_m, alpha, env.delta)?;
    if cd == 0.0 {
        return Ok(env.r);
    }
    Ok(env.r / (1.0 + env.r * cd))
}

/// `𝐗_i = Σ_{r: rα < i+1} δ^{−rα} ‖X_{r,i}‖`.
pub fn abel_grouped_norms(table: &AbelTable, delta: f64, norm: Norm) -> Result<Vec<f64>> {
    if !(delta > 0.0) {
        return Err(invalid(format!("delta must be positive, got {delta}")));
    }
    let a = table.alpha().value();
    let mut out = vec![0.0; table.order() + 1];
    for (r, i, c) in table.iter() {
        out[i] += delta.powf(-(r as f64) * a) * norm.vector(c);
    }
    Ok(out)
}

/// Both sides of `𝐗_n ≤ 𝚵_n + Σ_{l<n} [q L_{n−l} + δ^{−α} B(1−α, 1/q) M_{n−l}] 𝐗_l`
/// for every column of `x`.
pub fn abel_grouped_inequality(
    x: &AbelTable,
    xi: &AbelTable,
    l: &[f64],
    m: &[f64],
    delta: f64,
    norm: Norm,
) -> Result<Vec<(f64, f64)>> {
    let (a, q) = rational_parts(x.alpha())?;
    let gx = abel_grouped_norms(x, delta, norm)?;
    let gxi = abel_grouped_norms(xi, delta, norm)?;
    let w = delta.powf(-a) * beta_unchecked(1.0 - a, 1.0 / q);
    let at = |v: &[f64], n: usize| v.get(n).copied().unwrap_or(0.0);
    Ok((0..gx.len())
        .map(|n| {
            let rhs = at(&gxi, n)
                + (0..n)
                    .map(|k| (q * at(l, n - k) + w * at(m, n - k)) * gx[k])
                    .sum::<f64>();
            (gx[n], rhs)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use std::f64::consts::PI;

    #[test]
    fn majorant_examples() {
        let k = LinearKernelExpansion::scalar(&[(0, 0, 1.0)]).unwrap();
        assert_eq!(majorant_l(&k, 4, Norm::Max), vec![0.0, 1.0, 0.0, 0.0, 0.0]);
        let mut k2 = LinearKernelExpansion::new(2);
        for (i, j) in [(0, 0), (1, 0), (0, 1)] {
            k2.add(i, j, &Matrix::identity(2)).unwrap();
        }
        assert_eq!(&majorant_l(&k2, 3, Norm::Max)[1..3], &[1.0, 2.0]);
        let c = majorant_c(&[1.0], &[0.0, 1.0], 10).unwrap();
        assert!(c.iter().all(|&v| v == 1.0));
        assert!(majorant_c(&[1.0], &[1.0], 3).is_err());
    }

    #[test]
    fn regular_bound_examples() {
        let b = |m, r| radius_bound_regular(&GeometricEnvelope::new(1.0, m, r).unwrap()).unwrap();
        assert_eq!(b(1.0, 1.0), 0.5);
        assert_eq!(b(0.0, 3.0), 3.0);
        assert!((b(3.0, 2.0) - 2.0 / 7.0).abs() < 1e-15);
        assert!(GeometricEnvelope::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn exponential_envelope_fit() {
        let env = GeometricEnvelope::fit(&[1.0], &[0.0, 1.0], None).unwrap();
        assert!((env.r - 1.0).abs() < 1e-6);
        assert!((radius_bound_regular(&env).unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn abel_bound_examples() {
        let half = AlphaExponent::rational(1, 2).unwrap();
        let env = AbelEnvelope { c0: 1.0, c_l: 0.0, c_m: 1.0, r: 1.0, delta: 1.0 };
        let b = radius_bound_abel(&env, half).unwrap();
        assert!((b - 1.0 / (1.0 + PI)).abs() < 1e-12);
        let zero = AbelEnvelope { c_m: 0.0, ..env };
        assert_eq!(radius_bound_abel(&zero, half).unwrap(), 1.0);
        let c1 = abel_c_delta(0.0, 1.0, half, 1.0).unwrap();
        let c2 = abel_c_delta(0.0, 1.0, half, 2.0).unwrap();
        assert!((c2 / c1 - 0.5f64.sqrt()).abs() < 1e-14);
        let irr = AlphaExponent::irrational(0.5f64.sqrt()).unwrap();
        assert!(matches!(radius_bound_abel(&env, irr), Err(Error::Unsupported(_))));
    }

    #[test]
    fn grouped_norm_weighting() {
        let half = AlphaExponent::rational(1, 2).unwrap();
        let mut t = AbelTable::rational(1, half, 2).unwrap();
        t.set(1, 1, &[3.0]).unwrap();
        let g = abel_grouped_norms(&t, 4.0, Norm::Max).unwrap();
        assert_eq!(g, vec![0.0, 1.5, 0.0]);
    }
}
