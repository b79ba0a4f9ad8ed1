//! Gamma, beta, factorial and Hurwitz zeta helpers.

use crate::error::{Error, Result};
use statrs::function::gamma::{gamma, ln_gamma};

/// Largest `n` for which `n!` is tabulated exactly; larger factorials go
/// through log-gamma.
const EXACT_FACTORIAL_MAX: usize = 20;

pub fn factorial(n: usize) -> f64 {
    if n <= EXACT_FACTORIAL_MAX {
        (1..=n as u64).product::<u64>() as f64
    } else {
        ln_gamma(n as f64 + 1.0).exp()
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 60 {
        // Exact in u128 for this range.
        let mut acc: u128 = 1;
        for i in 0..k as u128 {
            acc = acc * (n as u128 - i) / (i + 1);
        }
        acc as f64
    } else {
        (ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0))
            .exp()
            .round()
    }
}

/// Gamma function on the positive axis.
pub fn gamma_fn(x: f64) -> f64 {
    gamma(x)
}

/// Euler beta function `B(μ, ν) = Γ(μ)Γ(ν)/Γ(μ+ν)` for `μ, ν > 0`.
pub fn beta_fn(mu: f64, nu: f64) -> Result<f64> {
    if !(mu > 0.0 && nu > 0.0) || !mu.is_finite() || !nu.is_finite() {
        return Err(Error::Domain(format!(
            "beta function needs positive finite arguments, got B({mu}, {nu})"
        )));
    }
    Ok(beta_unchecked(mu, nu))
}

pub(crate) fn beta_unchecked(mu: f64, nu: f64) -> f64 {
    if mu + nu < 140.0 {
        gamma(mu) * (gamma(nu) / gamma(mu + nu))
    } else {
        (ln_gamma(mu) + ln_gamma(nu) - ln_gamma(mu + nu)).exp()
    }
}

/// `H_n = 1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (a+k)^{-s}` for `s > 1`, `a > 0`,
/// by direct summation up to a shift of 12 followed by Euler–Maclaurin.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0);
    let shift = if a < 12.0 { (12.0 - a).ceil() as usize } else { 0 };
    let head: f64 = (0..shift).rev().map(|k| (a + k as f64).powf(-s)).sum();
    let x = a + shift as f64;
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising factorial s (s+1) ... (s+2j-2) / (2j)!
    let mut coef = s;
    let mut fact = 2.0;
    let mut xpow = x.powf(-s - 1.0);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let j = j + 1;
        tail += b / fact * coef * xpow;
        let m = 2 * j;
        coef *= (s + m as f64 - 1.0) * (s + m as f64);
        fact *= (m + 1) as f64 * (m + 2) as f64;
        xpow /= x * x;
    }
    head + tail
}
