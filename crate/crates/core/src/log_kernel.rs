//! Second-kind equations with a logarithmic kernel
//! `f(t, s, x) = a(t, s, x) + w(t, s) b(t, s, x)` where `w` is `ln(t − s)`
//! or `ln s − ln t`.
//!
//! The solution is sought as `Σ_{r,n} (ln t)^r t^n X_{r,n}`. After the
//! substitution `s = σt`, integrals of `s^m (ln s)^ρ` reduce to the moments
//!
//! * `L_{m,r} = ∫_0^1 σ^m (ln σ)^r dσ = (−1)^r r!/(m+1)^{r+1}`
//! * `M_{m,r} = ∫_0^1 σ^m (ln σ)^r ln(1 − σ) dσ`
//!
//! where `m` is the full power of `s` in the integrand (kernel power plus
//! solution power). Each column `n` depends only on columns `< n`.

use log::warn;

use crate::error::{invalid, Result};
use crate::kernel::{LinearKernelExpansion, NonlinearKernelExpansion};
use crate::linalg::axpy;
use crate::series::table::CoeffGrid;
use crate::series::{LogTable, PowerEngine};
use crate::special::{binomial, factorial, hurwitz_zeta};

/// `L_{q,r} = (−1)^r r!/(q+1)^{r+1}`.
pub fn moment_l(q: usize, r: usize) -> f64 {
    let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * factorial(r) / ((q + 1) as f64).powi(r as i32 + 1)
}

/// `M_{q,r} = −Σ_{λ≥0} L_{q+λ+1,r}/(λ+1) = −(−1)^r r! Σ_{a≥1} 1/(a (a+q+1)^{r+1})`.
///
/// The first `max(100, 10(q+1))` terms are summed directly; the tail uses
/// `1/a = Σ_u c^u/(a+c)^{u+1}` with `c = q+1`, which turns it into a rapidly
/// converging series of Hurwitz zeta values.
pub fn moment_m(q: usize, r: usize) -> f64 {
    let c = (q + 1) as f64;
    let s = (r + 1) as i32;
    let k = 100usize.max(10 * (q + 1));
    let head: f64 = (1..=k)
        .rev()
        .map(|a| {
            let a = a as f64;
            1.0 / (a * (a + c).powi(s))
        })
        .sum();
    let base = k as f64 + 1.0 + c;
    let mut tail = 0.0;
    let mut cu = 1.0;
    for u in 0..200 {
        let term = cu * hurwitz_zeta(f64::from(s) + u as f64 + 1.0, base);
        tail += term;
        if term < 1e-18 * (head + tail) {
            break;
        }
        cu *= c;
    }
    let sign = if r.is_multiple_of(2) { -1.0 } else { 1.0 };
    sign * factorial(r) * (head + tail)
}

/// Tabulated `L_{q,r}` and `M_{q,r}` for `q ≤ q_max`, `r ≤ r_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    q_max: usize,
    r_max: usize,
    l: Vec<f64>,
    m: Vec<f64>,
}

impl MomentTable {
    pub fn new(q_max: usize, r_max: usize) -> Self {
        let mut l = Vec::with_capacity((q_max + 1) * (r_max + 1));
        let mut m = Vec::with_capacity(l.capacity());
        for q in 0..=q_max {
            for r in 0..=r_max {
                l.push(moment_l(q, r));
                m.push(moment_m(q, r));
            }
        }
        MomentTable { q_max, r_max, l, m }
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }

    pub fn l(&self, q: usize, r: usize) -> f64 {
        self.l[q * (self.r_max + 1) + r]
    }

    pub fn m(&self, q: usize, r: usize) -> f64 {
        self.m[q * (self.r_max + 1) + r]
    }
}

/// Which logarithmic factor multiplies `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogVariant {
    /// `ln(t − s)`
    TMinusS,
    /// `ln s − ln t`
    LnRatio,
}

/// `a(t, s, x) + w(t, s) b(t, s, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogKernelExpansion {
    pub variant: LogVariant,
    pub a: NonlinearKernelExpansion,
    pub b: NonlinearKernelExpansion,
}

impl LogKernelExpansion {
    pub fn new(
        variant: LogVariant,
        a: NonlinearKernelExpansion,
        b: NonlinearKernelExpansion,
    ) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(invalid(format!(
                "regular part has dimension {} but singular part has {}",
                a.dim(),
                b.dim()
            )));
        }
        Ok(LogKernelExpansion { variant, a, b })
    }

    pub fn linear(
        variant: LogVariant,
        a: &LinearKernelExpansion,
        b: &LinearKernelExpansion,
    ) -> Result<Self> {
        Self::new(variant, a.to_nonlinear(), b.to_nonlinear())
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// Solution table and any truncation warnings raised while assembling it.
#[derive(Debug, Clone, PartialEq)]
pub struct LogSolution {
    pub table: LogTable,
    pub warnings: Vec<String>,
}

/// Coefficients `X_{μ,n}`, `μ ≤ r_max`, `n ≤ n_max`.
///
/// Products `x^k` are formed from the stored rows, so they carry log-powers
/// up to `|k| r_max`. Contributions to rows beyond `r_max` are dropped and
/// reported in [`LogSolution::warnings`].
pub fn solve_log_system(
    kernel: &LogKernelExpansion,
    xi: &LogTable,
    n_max: usize,
    r_max: usize,
) -> Result<LogSolution> {
    let dim = kernel.dim();
    if xi.dim() != dim {
        return Err(invalid(format!(
            "kernel has dimension {dim} but the forcing term has dimension {}",
            xi.dim()
        )));
    }
    let max_order = kernel.a.max_order().max(kernel.b.max_order()).max(1);
    let prod_rows = max_order * r_max + 1;
    let moments = MomentTable::new(n_max, prod_rows);
    let mut ks = kernel.a.multi_indices();
    ks.extend(kernel.b.multi_indices());
    let mut powers = PowerEngine::new(dim, &ks, prod_rows, n_max + 1)?;

    let mut x = CoeffGrid::zeros(dim, r_max + 1, n_max + 1);
    for (r, i, c) in xi.iter() {
        if i > n_max {
            continue;
        }
        if r <= r_max {
            x.get_mut(r, i).copy_from_slice(c);
        } else if c.iter().any(|&v| v != 0.0) {
            return Err(invalid(format!(
                "forcing coefficient with (ln t)^{r} exceeds r_max = {r_max}"
            )));
        }
    }

    let mut dropped: Option<(usize, usize)> = None;
    // contributions to all log-powers μ ≤ prod_rows of one column
    let mut col = vec![vec![0.0; dim]; prod_rows + 2];
    for n in 0..=n_max {
        col.iter_mut().for_each(|v| v.iter_mut().for_each(|e| *e = 0.0));
        for (part, terms) in [(0, kernel.a.terms()), (1, kernel.b.terms())] {
            for t in terms {
                if t.i + t.j + 1 > n {
                    continue;
                }
                let lam = n - t.i - t.j - 1;
                let m = t.j + lam;
                for rho in 0..prod_rows {
                    let z = powers.coeff(&t.k, rho, lam);
                    if z == 0.0 {
                        continue;
                    }
                    for mu in 0..=rho + 1 {
                        let w = match (part, kernel.variant) {
                            (0, _) if mu <= rho => binomial(rho, mu) * moments.l(m, rho - mu),
                            (0, _) => 0.0,
                            (_, LogVariant::TMinusS) => {
                                let mut w = 0.0;
                                if mu <= rho {
                                    w += binomial(rho, mu) * moments.m(m, rho - mu);
                                }
                                if mu >= 1 {
                                    w += binomial(rho, mu - 1) * moments.l(m, rho + 1 - mu);
                                }
                                w
                            }
                            (_, LogVariant::LnRatio) if mu <= rho => {
                                binomial(rho, mu) * moments.l(m, rho - mu + 1)
                            }
                            (_, LogVariant::LnRatio) => 0.0,
                        };
                        if w != 0.0 {
                            axpy(&mut col[mu], w * z, &t.value);
                        }
                    }
                }
            }
        }
        for (mu, v) in col.iter().enumerate() {
            if mu <= r_max {
                axpy(x.get_mut(mu, n), 1.0, v);
                if !x.get(mu, n).iter().all(|e| e.is_finite()) {
                    return Err(crate::Error::Domain(format!(
                        "coefficient X_({mu},{n}) overflowed"
                    )));
                }
            } else if dropped.is_none() && v.iter().any(|&e| e != 0.0) {
                dropped = Some((mu, n));
            }
        }
        powers.push_column(&x);
    }

    let mut warnings = Vec::new();
    if let Some((mu, n)) = dropped {
        let msg = format!(
            "log-power truncation: terms with (ln t)^{mu} at n = {n} exceed r_max = {r_max} and were dropped"
        );
        warn!("{msg}");
        warnings.push(msg);
    }
    Ok(LogSolution { table: LogTable::from_grid(x), warnings })
}
