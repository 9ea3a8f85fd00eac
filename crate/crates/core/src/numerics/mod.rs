//! Special functions, quadrature and root finding.

pub mod quad;
pub mod root;
pub mod special;

pub use quad::{integrate, integrate_with_breaks, QuadSpec, Quadrature};
pub use root::{find_root, Bracket};
pub use special::{beta_bump_density, std_normal_cdf, std_normal_pdf, std_normal_quantile, EXPECTED_STD_NORMAL_HEIGHT};
