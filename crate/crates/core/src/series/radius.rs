//! Empirical radius of convergence from the coefficient norms.

use crate::linalg::Norm;
use crate::series::TaylorTable;

/// Minimum number of nonzero coefficients (with `n ≥ 1`) needed for an estimate.
pub const MIN_NONZERO: usize = 8;

/// How much trust to put in a [`RadiusEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusConfidence {
    /// Log-norms decay linearly over the fit window.
    Geometric,
    /// Too few nonzero coefficients; the value is `+∞`.
    InsufficientData,
    /// Decay is faster than geometric (the fitted radius grows along the
    /// window), so the true radius is likely larger, possibly infinite.
    SuperGeometricDecay,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusEstimate {
    pub value: f64,
    pub confidence: RadiusConfidence,
}

/// Least-squares slope of `y` against `x`.
fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Radius estimate from `‖X_n‖`, `n = 0..`.
///
/// Fits `ln ‖X_n‖ ≈ a − n ln R` over the trailing window of the last
/// `max(8, ⌈len/2⌉)` indices (skipping `n = 0` and zero entries). The fit is
/// repeated on both halves of the window; a radius ratio above 1.2 between
/// them is reported as super-geometric decay.
pub fn estimate_radius_from_norms(norms: &[f64]) -> RadiusEstimate {
    let insufficient = RadiusEstimate {
        value: f64::INFINITY,
        confidence: RadiusConfidence::InsufficientData,
    };
    let nonzero = norms.iter().skip(1).filter(|&&v| v > 0.0 && v.is_finite()).count();
    if nonzero < MIN_NONZERO {
        return insufficient;
    }
    let len = norms.len();
    let width = MIN_NONZERO.max(len.div_ceil(2));
    let start = len.saturating_sub(width).max(1);
    let points: Vec<(f64, f64)> = (start..len)
        .filter(|&n| norms[n] > 0.0 && norms[n].is_finite())
        .map(|n| (n as f64, norms[n].ln()))
        .collect();
    let Some(s) = slope(&points) else {
        return insufficient;
    };
    let value = (-s).exp();
    let half = points.len() / 2;
    let confidence = match (slope(&points[..half]), slope(&points[half..])) {
        (Some(a), Some(b)) if (a - b) > 1.2f64.ln() => RadiusConfidence::SuperGeometricDecay,
        _ => RadiusConfidence::Geometric,
    };
    RadiusEstimate { value, confidence }
}

/// Radius estimate for a Taylor table using the given coefficient norm.
pub fn estimate_radius(table: &TaylorTable, norm: Norm) -> RadiusEstimate {
    estimate_radius_from_norms(&table.norms(norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::factorial;

    #[test]
    fn geometric_sequence() {
        let norms: Vec<f64> = (0..30).map(|n| 0.5f64.powi(n)).collect();
        let e = estimate_radius_from_norms(&norms);
        assert!((e.value - 2.0).abs() < 1e-10);
        assert_eq!(e.confidence, RadiusConfidence::Geometric);
    }

    #[test]
    fn constant_sequence_has_unit_radius() {
        let e = estimate_radius_from_norms(&[1.0; 21]);
        assert!((e.value - 1.0).abs() < 1e-12);
        assert_eq!(e.confidence, RadiusConfidence::Geometric);
    }

    #[test]
    fn factorial_decay_is_flagged() {
        let norms: Vec<f64> = (0..=20).map(|n| 1.0 / factorial(n)).collect();
        let e = estimate_radius_from_norms(&norms);
        assert!(e.value > 10.0 && e.value < 20.0, "{}", e.value);
        assert_eq!(e.confidence, RadiusConfidence::SuperGeometricDecay);
    }

    #[test]
    fn too_few_terms() {
        let mut norms = vec![0.0; 30];
        norms[0] = 1.0;
        norms[1] = 1.0;
        let e = estimate_radius_from_norms(&norms);
        assert_eq!(e.confidence, RadiusConfidence::InsufficientData);
        assert!(e.value.is_infinite());
    }
}
