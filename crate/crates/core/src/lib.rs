//! Generalized power-series solutions of Volterra integral equations.
//!
//! Unknowns are expanded as `Σ X_n t^n` (regular kernels), `Σ X_{r,n} t^{n − rα}`
//! (Abel kernels `(t − s)^{−α}`) or `Σ X_{r,n} (ln t)^r t^n` (logarithmic
//! kernels), and the coefficients come from explicit recursions:
//!
//! * [`regular`]: second-kind equations with analytic kernels, linear or
//!   polynomial in `x`
//! * [`abel`]: weakly singular kernels, rational or irrational `α`
//! * [`log_kernel`]: `ln(t − s)` and `ln s − ln t` kernels
//! * [`first_kind`]: linear first-kind equations, including kernels that
//!   vanish on the diagonal
//!
//! [`convergence`] builds majorant sequences and certified radius bounds;
//! [`oracle`] holds the numerical references (quadrature residuals and
//! product-integration time stepping) used to check the series.
//! [`problem`], [`report`] and [`cli`] back the `volterra` binary.

// `!(x > 0.0)` deliberately rejects NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod abel;
pub mod cli;
pub mod convergence;
pub mod error;
pub mod first_kind;
pub mod kernel;
pub mod linalg;
pub mod log_kernel;
pub mod oracle;
pub mod problem;
pub mod regular;
pub mod report;
pub mod series;
pub mod special;

pub use error::{Error, Result};
