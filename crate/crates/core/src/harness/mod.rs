//! Table regeneration, density curves, and SVG rendering.

pub mod density;
pub mod svg;
pub mod tables;

pub use density::{density_csv, figure_curves, DensityMethod, DensityParams, Grid};
pub use svg::{parse_curve_csv, render_svg, Curve};
pub use tables::{run_table, table_csv, table_spec, CellResult, TableSpec};
