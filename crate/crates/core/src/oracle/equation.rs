//! Pointwise description of an integral equation for the numerical oracles.

use crate::abel::{AbelLinearKernel, AbelNonlinearKernel};
use crate::error::{invalid, Result};
use crate::kernel::{LinearKernelExpansion, NonlinearKernelExpansion};
use crate::linalg::axpy;
use crate::log_kernel::{LogKernelExpansion, LogVariant};
use crate::series::{AbelTable, LogTable, Series, TaylorTable};

/// Scalar factor multiplying one kernel part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    /// `1`
    Regular,
    /// `(t − s)^{−α}`
    Abel(f64),
    /// `ln(t − s)`
    LogDiff,
    /// `ln s − ln t`
    LogRatio,
}

impl Weight {
    /// Value at `(t, s)` with `u = t − s` supplied separately.
    pub fn value(self, t: f64, s: f64, u: f64) -> f64 {
        match self {
            Weight::Regular => 1.0,
            Weight::Abel(a) => u.powf(-a),
            Weight::LogDiff => u.ln(),
            Weight::LogRatio => {
                if u < 0.5 * t {
                    (-u / t).ln_1p()
                } else {
                    (s / t).ln()
                }
            }
        }
    }
}

/// `w(t, s) · kernel(t, s, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPart {
    pub weight: Weight,
    pub kernel: NonlinearKernelExpansion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationKind {
    /// `x(t) = ξ(t) + ∫_0^t f(t, s, x(s)) ds`
    SecondKind,
    /// `ξ(t) + ∫_0^t f(t, s, x(s)) ds = 0`
    FirstKind,
}

/// Equation with `f = Σ_parts w(t, s) kernel(t, s, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub kind: EquationKind,
    pub xi: Series,
    pub parts: Vec<KernelPart>,
}

impl Equation {
    pub fn new(kind: EquationKind, xi: Series, parts: Vec<KernelPart>) -> Result<Self> {
        if let Some(p) = parts.iter().find(|p| p.kernel.dim() != xi.dim()) {
            return Err(invalid(format!(
                "kernel part has dimension {} but the forcing term has dimension {}",
                p.kernel.dim(),
                xi.dim()
            )));
        }
        Ok(Equation { kind, xi, parts })
    }

    pub fn regular(kernel: &NonlinearKernelExpansion, xi: &TaylorTable) -> Result<Self> {
        Self::new(
            EquationKind::SecondKind,
            Series::Taylor(xi.clone()),
            vec![KernelPart { weight: Weight::Regular, kernel: kernel.clone() }],
        )
    }

    pub fn regular_linear(kernel: &LinearKernelExpansion, xi: &TaylorTable) -> Result<Self> {
        Self::regular(&kernel.to_nonlinear(), xi)
    }

    pub fn first_kind(kernel: &LinearKernelExpansion, xi: &TaylorTable) -> Result<Self> {
        Self::new(
            EquationKind::FirstKind,
            Series::Taylor(xi.clone()),
            vec![KernelPart { weight: Weight::Regular, kernel: kernel.to_nonlinear() }],
        )
    }

    pub fn abel(kernel: &AbelNonlinearKernel, xi: &AbelTable) -> Result<Self> {
        Self::new(
            EquationKind::SecondKind,
            Series::Abel(xi.clone()),
            vec![
                KernelPart { weight: Weight::Regular, kernel: kernel.a.clone() },
                KernelPart { weight: Weight::Abel(kernel.alpha.value()), kernel: kernel.b.clone() },
            ],
        )
    }

    pub fn abel_linear(kernel: &AbelLinearKernel, xi: &AbelTable) -> Result<Self> {
        Self::abel(&kernel.to_nonlinear(), xi)
    }

    pub fn log(kernel: &LogKernelExpansion, xi: &LogTable) -> Result<Self> {
        let w = match kernel.variant {
            LogVariant::TMinusS => Weight::LogDiff,
            LogVariant::LnRatio => Weight::LogRatio,
        };
        Self::new(
            EquationKind::SecondKind,
            Series::Log(xi.clone()),
            vec![
                KernelPart { weight: Weight::Regular, kernel: kernel.a.clone() },
                KernelPart { weight: w, kernel: kernel.b.clone() },
            ],
        )
    }

    pub fn dim(&self) -> usize {
        self.xi.dim()
    }

    /// `f(t, s, x)` with `u = t − s`.
    pub fn integrand(&self, t: f64, s: f64, u: f64, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for p in &self.parts {
            axpy(&mut out, p.weight.value(t, s, u), &p.kernel.eval(t, s, x));
        }
        out
    }
}
