//! Adaptive Gauss–Kronrod and tanh-sinh quadrature.

use log::warn;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate and its difference from the embedded 7-point
/// Gauss rule.
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// `∫_a^b f` by recursive bisection until each piece's Gauss–Kronrod error
/// estimate is below its share of `tol`.
pub fn gauss_kronrod(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: usize) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth - 1) + rec(f, m, b, 0.5 * tol, depth - 1)
    }
    rec(&f, a, b, tol, 40)
}

/// Vector-valued tanh-sinh quadrature of `∫_0^t f` where `f` receives both
/// `s` and `t − s`, each computed without cancellation so the integrand can
/// resolve singularities at either endpoint.
///
/// The step is halved until two successive estimates differ by at most
/// `tol · max(1, ‖I‖_∞)`.
pub fn tanh_sinh(
    t: f64,
    dim: usize,
    tol: f64,
    mut f: impl FnMut(f64, f64) -> Vec<f64>,
) -> Vec<f64> {
    const T_MAX: f64 = 4.0;
    const MAX_LEVEL: u32 = 12;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut sum = vec![0.0; dim];
    let mut add = |x: f64, sum: &mut Vec<f64>| {
        let v = half_pi * x.sinh();
        let cosh_v = v.cosh();
        let w = half_pi * x.cosh() / (cosh_v * cosh_v);
        // 1 ± tanh(v) without cancellation
        let (lo, hi) = (2.0 / (1.0 + (-2.0 * v).exp()), 2.0 / (1.0 + (2.0 * v).exp()));
        let s = 0.5 * t * lo;
        let u = 0.5 * t * hi;
        if s <= 0.0 || u <= 0.0 || w == 0.0 || !w.is_finite() {
            return;
        }
        let y = f(s, u);
        for (a, b) in sum.iter_mut().zip(&y) {
            let c = w * b;
            if c.is_finite() {
                *a += c;
            }
        }
    };

    let mut h = 1.0;
    add(0.0, &mut sum);
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        add(k as f64 * h, &mut sum);
        add(-(k as f64) * h, &mut sum);
        k += 1;
    }
    let scale = |s: &[f64], h: f64| s.iter().map(|v| v * h * 0.5 * t).collect::<Vec<f64>>();
    let mut prev = scale(&sum, h);
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            add(k as f64 * h, &mut sum);
            add(-(k as f64) * h, &mut sum);
            k += 2;
        }
        let cur = scale(&sum, h);
        let diff = cur.iter().zip(&prev).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let mag = cur.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if level >= 3 && diff <= tol * mag.max(1.0) {
            return cur;
        }
        prev = cur;
    }
    warn!("tanh-sinh quadrature on [0, {t}] did not reach tolerance {tol:e}");
    prev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_kronrod_polynomial_and_log() {
        let v = gauss_kronrod(|x| x.powi(5), 0.0, 2.0, 1e-14);
        assert!((v - 64.0 / 6.0).abs() < 1e-12);
        let v = gauss_kronrod(|x| x.exp(), 0.0, 1.0, 1e-14);
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        // ∫_0^1 (1−s)^{-1/2} ds = 2
        let v = tanh_sinh(1.0, 1, 1e-12, |_, u| vec![u.powf(-0.5)]);
        assert!((v[0] - 2.0).abs() < 1e-10);
        // ∫_0^2 ln s ds = 2 ln 2 − 2
        let v = tanh_sinh(2.0, 1, 1e-12, |s, _| vec![s.ln()]);
        assert!((v[0] - (2.0 * 2f64.ln() - 2.0)).abs() < 1e-10);
    }
}
