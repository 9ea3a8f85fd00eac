//! Fiducial distributions for a normal mean with known variance.
//!
//! With x̄ = θ + (σ/√n)Γ and Γ ~ N(0, 1), the fiducial distribution of θ is
//! N(x̄, σ²/n). Restricting θ to one side of the null interval keeps the
//! relative heights of Γ's density over the values still possible, which
//! amounts to truncating and renormalising that normal. A global pre-data
//! (GPD) weight multiplies the result before renormalisation; the normal
//! weight φ((θ−θ0)/σ0) turns N(x̄, σ²/n) into N(θ1, σ1²) with
//!
//! ```text
//! θ1 = (σ0²x̄ + (σ²/n)θ0) / (σ0² + σ²/n)
//! σ1² = (σ²/n)σ0² / (σ²/n + σ0²)
//! ```
//!
//! Inside the interval the weight carries the extra factor (1 + τh(θ)).
//! The GPD's arbitrary positive scale is taken to be 1; it cancels on
//! renormalisation.

use crate::error::{invalid, Error, Result};
use crate::numerics::quad::{integrate, QuadSpec, Quadrature};
use crate::numerics::special::{
    bump_density, lower_tail, normal_density, normal_interval_mass, normal_outside_mass, phi, std_normal_quantile,
};
use crate::postdata::{concentration_points, PostDensity};
use crate::scenario::{IntervalHypothesis, Region, Scenario};

/// Shape of the GPD weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GpdSpec {
    /// ω = 1: the σ0 → ∞ limit.
    Flat,
    /// ω = φ((θ−θ0)/σ0).
    Normal { theta0: f64, sigma0: f64 },
}

impl GpdSpec {
    pub fn normal(theta0: f64, sigma0: f64) -> Result<Self> {
        if !theta0.is_finite() {
            return Err(invalid(format!("theta0 must be finite, got {theta0}")));
        }
        if !(sigma0 > 0.0 && sigma0.is_finite()) {
            return Err(invalid(format!("sigma0 must be positive and finite, got {sigma0}")));
        }
        Ok(GpdSpec::Normal { theta0, sigma0 })
    }

    /// Normal weight, or the flat limit for σ0 = ∞.
    pub fn from_sigma0(theta0: f64, sigma0: f64) -> Result<Self> {
        if sigma0 == f64::INFINITY {
            Ok(GpdSpec::Flat)
        } else {
            GpdSpec::normal(theta0, sigma0)
        }
    }

    /// (θ1, σ1) of the GPD-weighted fiducial normal.
    pub fn location_scale(&self, s: &Scenario) -> (f64, f64) {
        match *self {
            GpdSpec::Flat => (s.xbar(), s.se()),
            GpdSpec::Normal { theta0, sigma0 } => normal_update(theta0, sigma0, s.xbar(), s.se()),
        }
    }
}

/// Precision-weighted combination of N(θ0, σ0²) with an observation x̄ of
/// standard error `se`.
pub fn normal_update(theta0: f64, sigma0: f64, xbar: f64, se: f64) -> (f64, f64) {
    let v0 = sigma0 * sigma0;
    let ve = se * se;
    let location = (v0 * xbar + ve * theta0) / (v0 + ve);
    let scale = (ve * v0 / (ve + v0)).sqrt();
    (location, scale)
}

/// The unrestricted fiducial distribution N(x̄, σ²/n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiducialNormal {
    pub mean: f64,
    pub sd: f64,
}

impl FiducialNormal {
    pub fn pdf(&self, theta: f64) -> f64 {
        normal_density(theta, self.mean, self.sd)
    }

    pub fn cdf(&self, theta: f64) -> f64 {
        lower_tail((theta - self.mean) / self.sd)
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        Ok(self.mean + self.sd * std_normal_quantile(p)?)
    }

    pub fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        normal_interval_mass(self.mean, self.sd, lo, hi)
    }
}

impl PostDensity for FiducialNormal {
    fn pdf(&self, theta: f64) -> f64 {
        FiducialNormal::pdf(self, theta)
    }

    fn breakpoints(&self) -> Vec<f64> {
        concentration_points(self.mean, self.sd)
    }
}

pub fn fiducial_flat(s: &Scenario) -> FiducialNormal {
    FiducialNormal { mean: s.xbar(), sd: s.se() }
}

/// The 100β% interval x̄ ± Φ⁻¹((1+β)/2)·σ/√n.
pub fn fisher_ci(s: &Scenario, beta: f64) -> Result<(f64, f64)> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(invalid(format!("beta must lie in (0, 1), got {beta}")));
    }
    let half = std_normal_quantile(0.5 * (1.0 + beta))? * s.se();
    Ok((s.xbar() - half, s.xbar() + half))
}

/// Fiducial density of θ conditioned to lie inside or outside the interval.
///
/// Inside a point interval this is a point mass at θL.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondFiducial {
    region: Region,
    hyp: IntervalHypothesis,
    location: f64,
    scale: f64,
    tau: f64,
    normalizer: f64,
}

/// Pieces of the inside normaliser that are linear in τ:
/// ∫_A φ((θ−θ1)/σ1) dθ and ∫_A φ((θ−θ1)/σ1) h(θ) dθ.
pub(crate) fn inside_normalizer_parts(hyp: &IntervalHypothesis, location: f64, scale: f64) -> Result<(f64, f64)> {
    let (lo, hi) = (hyp.theta_l(), hyp.theta_u());
    let base = scale * normal_interval_mass(location, scale, lo, hi);
    let bump =
        integrate(|t| phi((t - location) / scale) * bump_density(t, lo, hi), lo, hi, &QuadSpec::precise())?.value;
    Ok((base, bump))
}

/// Builds the conditional fiducial density for `region`. `tau` is ignored
/// outside the interval.
pub fn cond_fiducial(
    s: &Scenario,
    hyp: &IntervalHypothesis,
    region: Region,
    gpd: &GpdSpec,
    tau: f64,
) -> Result<CondFiducial> {
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(invalid(format!("tau must be finite and non-negative, got {tau}")));
    }
    let (location, scale) = gpd.location_scale(s);
    let (lo, hi) = (hyp.theta_l(), hyp.theta_u());
    let (tau, mass) = match region {
        Region::Inside if hyp.is_point() => (0.0, 1.0),
        Region::Inside => {
            let (base, bump) = inside_normalizer_parts(hyp, location, scale)?;
            (tau, base + tau * bump)
        }
        Region::Outside => (0.0, scale * normal_outside_mass(location, scale, lo, hi)),
    };
    if !(mass > 0.0) {
        return Err(Error::ZeroMassRegion(format!(
            "conditional fiducial density has no mass {} the interval",
            if region == Region::Inside { "inside" } else { "outside" }
        )));
    }
    Ok(CondFiducial { region, hyp: *hyp, location, scale, tau, normalizer: 1.0 / mass })
}

impl CondFiducial {
    pub fn region(&self) -> Region {
        self.region
    }

    pub fn hyp(&self) -> &IntervalHypothesis {
        &self.hyp
    }

    /// θ1
    pub fn location(&self) -> f64 {
        self.location
    }

    /// σ1
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// C2/C3 (flat weight) or C4/C5 (normal weight): the constant multiplying
    /// φ((θ−θ1)/σ1)(1 + τh) on the region.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn is_point_mass(&self) -> bool {
        self.region == Region::Inside && self.hyp.is_point()
    }

    fn in_region(&self, theta: f64) -> bool {
        match self.region {
            Region::Inside => self.hyp.contains(theta),
            Region::Outside => !self.hyp.contains(theta),
        }
    }

    /// Density at θ; zero off the region and for the point-mass case.
    pub fn pdf(&self, theta: f64) -> f64 {
        if self.is_point_mass() || !self.in_region(theta) {
            return 0.0;
        }
        let base = self.normalizer * phi((theta - self.location) / self.scale);
        if self.region == Region::Inside && self.tau != 0.0 {
            base * (1.0 + self.tau * bump_density(theta, self.hyp.theta_l(), self.hyp.theta_u()))
        } else {
            base
        }
    }

    /// Limit of the density at θL/θU approached from within the region.
    pub fn edge_density(&self, edge: f64) -> f64 {
        if self.is_point_mass() {
            return 0.0;
        }
        // h vanishes at both edges
        self.normalizer * phi((edge - self.location) / self.scale)
    }

    /// E[f(θ)] under this density.
    pub fn expect<F: Fn(f64) -> f64>(&self, f: F, spec: &QuadSpec) -> Result<Quadrature> {
        if self.is_point_mass() {
            return Ok(Quadrature { value: f(self.hyp.theta_l()), abs_error: 0.0, intervals: 0 });
        }
        let (lo, hi) = (self.hyp.theta_l(), self.hyp.theta_u());
        let integrand = |t: f64| {
            let p = self.pdf(t);
            if p == 0.0 {
                0.0
            } else {
                p * f(t)
            }
        };
        match self.region {
            Region::Inside => integrate(integrand, lo, hi, spec),
            Region::Outside => {
                let breaks = concentration_points(self.location, self.scale);
                let left =
                    crate::numerics::quad::integrate_with_breaks(integrand, f64::NEG_INFINITY, lo, &breaks, spec)?;
                let right = crate::numerics::quad::integrate_with_breaks(integrand, hi, f64::INFINITY, &breaks, spec)?;
                Ok(Quadrature {
                    value: left.value + right.value,
                    abs_error: left.abs_error + right.abs_error,
                    intervals: left.intervals + right.intervals,
                })
            }
        }
    }

    pub(crate) fn breakpoints(&self) -> Vec<f64> {
        let mut b = concentration_points(self.location, self.scale);
        b.push(self.hyp.theta_l());
        b.push(self.hyp.theta_u());
        b
    }
}
