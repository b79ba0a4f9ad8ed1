//! Series containers, monomial coefficients and radius estimation.

mod alpha;
mod multi_index;
pub mod power;
pub mod radius;
pub(crate) mod table;

pub use alpha::AlphaExponent;
pub use multi_index::MultiIndex;
pub use power::{z_coeff, z_coeff_abel, z_coeff_log, PowerEngine};
pub use radius::{estimate_radius, estimate_radius_from_norms, RadiusConfidence, RadiusEstimate};
pub use table::{AbelTable, FormalAbelTable, LogTable, Series, TaylorTable};
