//! Spike-and-slab prior: a normal slab multiplied by (1 + τ·h) where h is
//! the Beta(4,4) bump on the null interval.
//!
//! τ is fixed by requiring prior mass λ on the interval. Because the prior
//! is linear in τ, the condition solves in closed form:
//!
//! ```text
//! τ = (λσ0 − G) / ((1 − λ)H),  G = ∫_A φ((θ−θ0)/σ0) dθ,  H = ∫_A φ((θ−θ0)/σ0) h(θ) dθ
//! ```
//!
//! A point interval (ε = 0) is stored as a point mass λ plus (1 − λ)·N(θ0, σ0²).

use crate::error::{invalid, Error, Result};
use crate::numerics::quad::{integrate, QuadSpec};
use crate::numerics::special::{bump_density, normal_interval_mass, normal_outside_mass, phi};
use crate::postdata::concentration_points;
use crate::scenario::{IntervalHypothesis, Region};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikeSlabPrior {
    hyp: IntervalHypothesis,
    theta0: f64,
    sigma0: f64,
    tau: f64,
    /// G + τH: unnormalised mass on the interval
    inside_mass: f64,
    /// ∫ off the interval of φ((θ−θ0)/σ0)
    outside_mass: f64,
}

fn check_slab(theta0: f64, sigma0: f64) -> Result<()> {
    if !theta0.is_finite() {
        return Err(invalid(format!("theta0 must be finite, got {theta0}")));
    }
    if !(sigma0 > 0.0 && sigma0.is_finite()) {
        return Err(invalid(format!("sigma0 must be positive and finite, got {sigma0}")));
    }
    Ok(())
}

/// (G, H) for the slab N(θ0, σ0²) on the interval of `hyp`.
fn slab_interval_integrals(hyp: &IntervalHypothesis, theta0: f64, sigma0: f64) -> Result<(f64, f64)> {
    let (lo, hi) = (hyp.theta_l(), hyp.theta_u());
    let g = sigma0 * normal_interval_mass(theta0, sigma0, lo, hi);
    let h = integrate(|t| phi((t - theta0) / sigma0) * bump_density(t, lo, hi), lo, hi, &QuadSpec::precise())?.value;
    Ok((g, h))
}

/// τ making the prior mass on [θL, θU] equal to λ.
pub fn solve_tau_prior(hyp: &IntervalHypothesis, theta0: f64, sigma0: f64) -> Result<f64> {
    check_slab(theta0, sigma0)?;
    if hyp.is_point() {
        return Err(invalid("tau is undefined for a point null; use the spike representation"));
    }
    let (g, h) = slab_interval_integrals(hyp, theta0, sigma0)?;
    let lam = hyp.lam();
    let excess = lam * sigma0 - g;
    if excess < 0.0 {
        // λ = G/σ0 up to rounding is the τ = 0 boundary case
        if excess.abs() <= 1e-12 * sigma0 {
            return Ok(0.0);
        }
        return Err(Error::InfeasiblePrior { lambda_sigma0: lam * sigma0, interval_mass: g });
    }
    if !(h > 0.0) {
        return Err(Error::ZeroMassRegion("slab puts no weight on the bump".into()));
    }
    Ok(excess / ((1.0 - lam) * h))
}

impl SpikeSlabPrior {
    pub fn new(hyp: IntervalHypothesis, theta0: f64, sigma0: f64) -> Result<Self> {
        check_slab(theta0, sigma0)?;
        let outside_mass = sigma0 * normal_outside_mass(theta0, sigma0, hyp.theta_l(), hyp.theta_u());
        if !(outside_mass > 0.0) {
            return Err(Error::ZeroMassRegion("slab has no mass outside the interval".into()));
        }
        if hyp.is_point() {
            return Ok(SpikeSlabPrior { hyp, theta0, sigma0, tau: 0.0, inside_mass: 0.0, outside_mass });
        }
        let tau = solve_tau_prior(&hyp, theta0, sigma0)?;
        let (g, h) = slab_interval_integrals(&hyp, theta0, sigma0)?;
        Ok(SpikeSlabPrior { hyp, theta0, sigma0, tau, inside_mass: g + tau * h, outside_mass })
    }

    pub fn hyp(&self) -> &IntervalHypothesis {
        &self.hyp
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn sigma0(&self) -> f64 {
        self.sigma0
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn is_point(&self) -> bool {
        self.hyp.is_point()
    }

    /// C1 = 1/∫ φ((θ−θ0)/σ0)(1 + τh(θ)) dθ. For a point null this is the
    /// slab normaliser scaled by 1 − λ.
    pub fn c1(&self) -> f64 {
        if self.is_point() {
            (1.0 - self.hyp.lam()) / self.sigma0
        } else {
            // total = inside + outside, and inside = λ·total
            (1.0 - self.hyp.lam()) / self.outside_mass
        }
    }

    /// φ((θ−θ0)/σ0)(1 + τh(θ)), unnormalised.
    pub fn kernel(&self, theta: f64) -> f64 {
        let slab = phi((theta - self.theta0) / self.sigma0);
        if self.is_point() {
            slab
        } else {
            slab * (1.0 + self.tau * bump_density(theta, self.hyp.theta_l(), self.hyp.theta_u()))
        }
    }

    /// Prior density; for a point null, the continuous (slab) part only.
    pub fn pdf(&self, theta: f64) -> f64 {
        self.c1() * self.kernel(theta)
    }

    /// Location and mass of the point mass, for a point null.
    pub fn spike(&self) -> Option<(f64, f64)> {
        self.is_point().then(|| (self.hyp.theta_l(), self.hyp.lam()))
    }

    /// Density of θ restricted to one side of the interval and renormalised.
    ///
    /// For a point null the inside restriction is the point mass itself and
    /// has no density; that case is an error.
    pub fn conditional_pdf(&self, theta: f64, region: Region) -> Result<f64> {
        match region {
            Region::Inside => {
                if self.is_point() {
                    return Err(invalid("inside conditional of a point null is a point mass"));
                }
                if !self.hyp.contains(theta) {
                    return Ok(0.0);
                }
                Ok(self.kernel(theta) / self.inside_mass)
            }
            Region::Outside => {
                if self.is_point() {
                    return Ok(phi((theta - self.theta0) / self.sigma0) / self.sigma0);
                }
                if self.hyp.contains(theta) {
                    return Ok(0.0);
                }
                Ok(phi((theta - self.theta0) / self.sigma0) / self.outside_mass)
            }
        }
    }

    /// Unnormalised mass of `kernel` on the interval (G + τH).
    pub fn inside_kernel_mass(&self) -> f64 {
        self.inside_mass
    }

    /// Unnormalised mass of the slab off the interval.
    pub fn outside_kernel_mass(&self) -> f64 {
        self.outside_mass
    }

    pub(crate) fn breakpoints(&self) -> Vec<f64> {
        let mut b = concentration_points(self.theta0, self.sigma0);
        b.push(self.hyp.theta_l());
        b.push(self.hyp.theta_u());
        b
    }
}
