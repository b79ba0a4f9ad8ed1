use std::fmt;

use crate::error::{invalid, Result};

/// Exponent `α ∈ (0, 1)` of an Abel-type kernel factor `(t−s)^{−α}`.
///
/// Rationality is declared by the caller: the code never tries to decide
/// numerically whether a float is rational.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaExponent {
    /// `α = p/q` with `0 < p < q` and `gcd(p, q) = 1`.
    Rational { p: u32, q: u32 },
    Irrational(f64),
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl AlphaExponent {
    pub fn rational(p: u32, q: u32) -> Result<Self> {
        if !(p > 0 && p < q) {
            return Err(invalid(format!(
                "rational alpha {p}/{q} must satisfy 0 < p < q"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(invalid(format!(
                "rational alpha {p}/{q}: p and q must be relatively prime"
            )));
        }
        Ok(AlphaExponent::Rational { p, q })
    }

    pub fn irrational(value: f64) -> Result<Self> {
        if !(value > 0.0 && value < 1.0) {
            return Err(invalid(format!("alpha {value} must lie in (0, 1)")));
        }
        Ok(AlphaExponent::Irrational(value))
    }

    /// Parses `"p/q"`.
    pub fn parse_rational(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| invalid(format!("alpha {s:?} is not of the form \"p/q\"")))?;
        let p: u32 = p
            .trim()
            .parse()
            .map_err(|_| invalid(format!("alpha numerator {p:?} is not a positive integer")))?;
        let q: u32 = q
            .trim()
            .parse()
            .map_err(|_| invalid(format!("alpha denominator {q:?} is not a positive integer")))?;
        Self::rational(p, q)
    }

    pub fn value(&self) -> f64 {
        match *self {
            AlphaExponent::Rational { p, q } => p as f64 / q as f64,
            AlphaExponent::Irrational(v) => v,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlphaExponent::Rational { .. })
    }

    pub fn as_rational(&self) -> Option<(u32, u32)> {
        match *self {
            AlphaExponent::Rational { p, q } => Some((p, q)),
            AlphaExponent::Irrational(_) => None,
        }
    }

    /// Whether `t^{i − rα}` is an admissible term, i.e. `i > rα − 1`.
    pub fn admissible(&self, r: usize, i: usize) -> bool {
        match *self {
            AlphaExponent::Rational { p, q } => {
                (i as i64 + 1) * q as i64 > r as i64 * p as i64
            }
            AlphaExponent::Irrational(a) => i as f64 > r as f64 * a - 1.0,
        }
    }

    /// Human-readable exponent `i − r·α`.
    pub fn exponent_label(&self, r: usize, i: usize) -> String {
        if r == 0 {
            return i.to_string();
        }
        match *self {
            AlphaExponent::Rational { p, q } => format!("{i}-{r}*{p}/{q}"),
            AlphaExponent::Irrational(a) => format!("{i}-{r}*{a}"),
        }
    }
}

impl fmt::Display for AlphaExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaExponent::Rational { p, q } => write!(f, "{p}/{q}"),
            AlphaExponent::Irrational(v) => write!(f, "{v} (irrational)"),
        }
    }
}
