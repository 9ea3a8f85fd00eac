//! Post-data probability that a normal mean lies in a narrow null interval.
//!
//! Three methods are provided for data summarised by (x̄, σ/√n):
//!
//! * [`pure_bayes`]: the standard posterior under a spike-and-slab prior whose
//!   spike is a Beta(4,4) bump on [−ε, ε] (a point mass when ε = 0);
//! * [`fiducial_bayes`]: a two-value Bayes ratio whose unknown likelihood
//!   heights are replaced by their expectations under conditional fiducial
//!   densities, stitched into a density over the whole line;
//! * [`mixture`]: a κ-weighted blend of the two.
//!
//! [`harness`] regenerates the Bartlett and Lindley tables and the density
//! figures; [`sensitivity`] computes bounds over finite prior classes.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fiducial;
pub mod fiducial_bayes;
pub mod harness;
pub mod mixture;
pub mod numerics;
pub mod postdata;
pub mod prior;
pub mod pure_bayes;
pub mod scenario;
pub mod sensitivity;

pub use error::{Error, Result};
pub use postdata::{Diagnostics, Method, PostData, PostDensity};
pub use scenario::{IntervalHypothesis, Scenario};
