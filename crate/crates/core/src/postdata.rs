//! The common result type of all three methods.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::numerics::quad::{integrate_with_breaks, QuadSpec, Quadrature};

/// A post-data distribution over the real line: an absolutely continuous
/// part plus an optional point mass.
pub trait PostDensity: fmt::Debug + Send + Sync {
    /// Density of the continuous part at θ.
    fn pdf(&self, theta: f64) -> f64;

    /// Location and mass of the point-mass component, if any.
    fn spike(&self) -> Option<(f64, f64)> {
        None
    }

    /// Points where the density is kinked or concentrated; used to seed
    /// quadrature partitions.
    fn breakpoints(&self) -> Vec<f64>;
}

/// E[f(θ)] under `density`, point mass included.
pub fn expectation<D, F>(density: &D, f: F, spec: &QuadSpec) -> Result<Quadrature>
where
    D: PostDensity + ?Sized,
    F: Fn(f64) -> f64,
{
    let q = integrate_with_breaks(
        |t| {
            let p = density.pdf(t);
            if p == 0.0 {
                0.0
            } else {
                p * f(t)
            }
        },
        f64::NEG_INFINITY,
        f64::INFINITY,
        &density.breakpoints(),
        spec,
    )?;
    let spike = density.spike().map_or(0.0, |(at, mass)| mass * f(at));
    Ok(Quadrature { value: q.value + spike, ..q })
}

/// Total mass (continuous part plus spike); 1 for a proper density.
pub fn total_mass<D: PostDensity + ?Sized>(density: &D, spec: &QuadSpec) -> Result<f64> {
    Ok(expectation(density, |_| 1.0, spec)?.value)
}

/// Mass on the closed interval [lo, hi], point mass included when it lies there.
pub fn interval_mass<D: PostDensity + ?Sized>(density: &D, lo: f64, hi: f64, spec: &QuadSpec) -> Result<Quadrature> {
    let mut breaks = density.breakpoints();
    breaks.push(lo);
    breaks.push(hi);
    let q = if hi > lo {
        integrate_with_breaks(|t| density.pdf(t), lo, hi, &breaks, spec)?
    } else {
        Quadrature { value: 0.0, abs_error: 0.0, intervals: 0 }
    };
    let spike = match density.spike() {
        Some((at, mass)) if at >= lo && at <= hi => mass,
        _ => 0.0,
    };
    Ok(Quadrature { value: q.value + spike, ..q })
}

/// Points at `center + k·scale` for k in {0, ±1, ±2, ±4, ±8, ±16}.
pub(crate) fn concentration_points(center: f64, scale: f64) -> Vec<f64> {
    const K: [f64; 11] = [-16.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 16.0];
    K.iter().map(|k| center + k * scale).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    PureBayes,
    FiducialBayes,
    Mixture,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::PureBayes => "pure-bayes",
            Method::FiducialBayes => "fiducial-bayes",
            Method::Mixture => "mixture",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Normalising constants and accumulated quadrature error of a computation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub constants: BTreeMap<&'static str, f64>,
    pub quad_error: f64,
}

impl Diagnostics {
    pub fn set(&mut self, name: &'static str, value: f64) {
        self.constants.insert(name, value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.constants.get(name).copied()
    }

    pub fn add_error(&mut self, q: &Quadrature) {
        self.quad_error += q.abs_error;
    }

    pub fn merge(&mut self, other: &Diagnostics) {
        for (k, v) in &other.constants {
            self.constants.insert(k, *v);
        }
        self.quad_error += other.quad_error;
    }
}

/// P(θ ∈ A | x), its complement, and the full post-data density.
#[derive(Debug, Clone)]
pub struct PostData {
    pub p_in: f64,
    pub p_out: f64,
    pub method: Method,
    pub density: Arc<dyn PostDensity>,
    pub diagnostics: Diagnostics,
}
