//! Fiducial-Bayes post-data probabilities and densities.
//!
//! θ is treated as equal to one of two unknown values, θA inside the null
//! interval (prior probability λ) and θB outside it. Their likelihood heights
//! are replaced by expectations under the conditional fiducial densities, and
//! the resulting two-value Bayes ratio gives P(θ ∈ A | x). The post-data
//! density stitches the two conditional densities together with those
//! probabilities as weights.
//!
//! For an interval null the inside density carries a bump coefficient τ.
//! Under the continuity rule τ is the value that removes the jump of the
//! stitched density at θL and θU. Since h vanishes at both edges and the
//! inside and outside densities share the same GPD weight, one scalar
//! condition covers both edges:
//!
//! ```text
//! p_in(τ) / Z_in(τ) = p_out(τ) / Z_out
//! ```
//!
//! with Z the unnormalised region masses. Z_in(τ) and the numerator of
//! E[g_A] are both linear in τ, so every evaluation of the residual is
//! algebraic once four integrals are known.

use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::fiducial::{cond_fiducial, inside_normalizer_parts, CondFiducial, GpdSpec};
use crate::numerics::quad::{integrate, QuadSpec};
use crate::numerics::root::{find_root, Bracket};
use crate::numerics::special::{
    bump_density, normal_density, normal_interval_mass, normal_outside_mass, phi, std_normal_quantile,
    EXPECTED_STD_NORMAL_HEIGHT,
};
use crate::postdata::{Diagnostics, Method, PostData, PostDensity};
use crate::scenario::{IntervalHypothesis, Region, Scenario};

/// How the inside bump coefficient is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauRule {
    /// Make the stitched density continuous at the interval edges.
    Continuity,
    Explicit(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidBayesConfig {
    pub hyp: IntervalHypothesis,
    pub gpd_in: GpdSpec,
    pub gpd_out: GpdSpec,
    /// Ignored for a point null.
    pub tau_rule: TauRule,
}

impl FidBayesConfig {
    /// One GPD on both sides with the continuity rule.
    pub fn new(hyp: IntervalHypothesis, gpd: GpdSpec) -> Self {
        FidBayesConfig { hyp, gpd_in: gpd, gpd_out: gpd, tau_rule: TauRule::Continuity }
    }

    pub fn with_tau_rule(mut self, tau_rule: TauRule) -> Self {
        self.tau_rule = tau_rule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let TauRule::Explicit(tau) = self.tau_rule {
            if !(tau >= 0.0 && tau.is_finite()) {
                return Err(invalid(format!("tau must be finite and non-negative, got {tau}")));
            }
        }
        if self.tau_rule == TauRule::Continuity && !self.hyp.is_point() && self.gpd_in != self.gpd_out {
            return Err(Error::Unsupported(
                "the continuity rule needs the same GPD inside and outside the interval".into(),
            ));
        }
        Ok(())
    }
}

/// λg_a / (λg_a + (1 − λ)g_b): the posterior probability of θA when both
/// likelihood heights are known.
pub fn known_values_prob(lam: f64, g_a: f64, g_b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lam) {
        return Err(invalid(format!("lambda must lie in [0, 1], got {lam}")));
    }
    if !(g_a >= 0.0 && g_b >= 0.0 && g_a.is_finite() && g_b.is_finite()) {
        return Err(invalid(format!("likelihood heights must be finite and non-negative, got {g_a}, {g_b}")));
    }
    let num = lam * g_a;
    let den = num + (1.0 - lam) * g_b;
    if den == 0.0 {
        return Err(invalid("both weighted likelihood heights are zero; the ratio is undefined"));
    }
    Ok(num / den)
}

/// E[g(x̄; θA)] under the inside conditional fiducial density.
pub fn expected_likelihood_in(s: &Scenario, cf_in: &CondFiducial) -> Result<f64> {
    if cf_in.region() != Region::Inside {
        return Err(invalid("expected_likelihood_in needs the inside conditional density"));
    }
    Ok(cf_in.expect(|t| s.likelihood_height(t), &QuadSpec::precise())?.value)
}

/// E[g(x̄; θB)] under the outside conditional fiducial density, in closed
/// form: the product of two normal densities is a normal density.
pub fn expected_likelihood_out(s: &Scenario, cf_out: &CondFiducial) -> Result<f64> {
    if cf_out.region() != Region::Outside {
        return Err(invalid("expected_likelihood_out needs the outside conditional density"));
    }
    let p = GaussianProduct::new(s, cf_out.location(), cf_out.scale());
    let hyp = cf_out.hyp();
    let (lo, hi) = (hyp.theta_l(), hyp.theta_u());
    Ok(p.height * normal_outside_mass(p.mean, p.sd, lo, hi)
        / normal_outside_mass(cf_out.location(), cf_out.scale(), lo, hi))
}

/// g(x̄; θ)·N(θ; θ1, σ1²) = height·N(θ; mean, sd²).
struct GaussianProduct {
    height: f64,
    mean: f64,
    sd: f64,
}

impl GaussianProduct {
    fn new(s: &Scenario, location: f64, scale: f64) -> Self {
        let (ve, v1) = (s.se() * s.se(), scale * scale);
        let v = ve * v1 / (ve + v1);
        GaussianProduct {
            height: normal_density(s.xbar(), location, (ve + v1).sqrt()),
            mean: v * (s.xbar() / ve + location / v1),
            sd: v.sqrt(),
        }
    }
}

/// The τ-dependence of the inside quantities:
/// E[g_A](τ) = (a0 + τa1)/(z0 + τz1) and Z_in(τ) = z0 + τz1.
#[derive(Debug, Clone, Copy)]
struct InsideParts {
    a0: f64,
    a1: f64,
    z0: f64,
    z1: f64,
}

impl InsideParts {
    fn new(s: &Scenario, hyp: &IntervalHypothesis, location: f64, scale: f64) -> Result<Self> {
        let (lo, hi) = (hyp.theta_l(), hyp.theta_u());
        let (z0, z1) = inside_normalizer_parts(hyp, location, scale)?;
        let p = GaussianProduct::new(s, location, scale);
        let a0 = scale * p.height * normal_interval_mass(p.mean, p.sd, lo, hi);
        let a1 = integrate(
            |t| s.likelihood_height(t) * phi((t - location) / scale) * bump_density(t, lo, hi),
            lo,
            hi,
            &QuadSpec::precise(),
        )?
        .value;
        Ok(InsideParts { a0, a1, z0, z1 })
    }

    fn mass(&self, tau: f64) -> f64 {
        self.z0 + tau * self.z1
    }

    fn expected_g(&self, tau: f64) -> f64 {
        (self.a0 + tau * self.a1) / self.mass(tau)
    }
}

/// Everything the continuity residual needs.
struct Pieces {
    lam: f64,
    inside: InsideParts,
    e_out: f64,
    z_out: f64,
}

impl Pieces {
    fn new(s: &Scenario, cfg: &FidBayesConfig) -> Result<Self> {
        let hyp = &cfg.hyp;
        let (l_in, s_in) = cfg.gpd_in.location_scale(s);
        let cf_out = cond_fiducial(s, hyp, Region::Outside, &cfg.gpd_out, 0.0)?;
        Ok(Pieces {
            lam: hyp.lam(),
            inside: InsideParts::new(s, hyp, l_in, s_in)?,
            e_out: expected_likelihood_out(s, &cf_out)?,
            z_out: 1.0 / cf_out.normalizer(),
        })
    }

    fn p_in(&self, tau: f64) -> Result<f64> {
        known_values_prob(self.lam, self.inside.expected_g(tau), self.e_out)
    }

    /// Jump of the stitched density at an edge, relative to the outside
    /// side and with the common factor φ((edge−θ1)/σ1) removed.
    fn residual(&self, tau: f64) -> Result<f64> {
        let p = self.p_in(tau)?;
        let outside = (1.0 - p) / self.z_out;
        Ok((p / self.inside.mass(tau) - outside) / outside)
    }
}

/// Largest bracket end tried when searching for a sign change.
const TAU_MAX: f64 = (1u64 << 30) as f64;

/// τ ≥ 0 making the stitched post-data density continuous at θL and θU.
pub fn solve_tau_continuity(s: &Scenario, cfg: &FidBayesConfig) -> Result<f64> {
    if cfg.hyp.is_point() {
        return Err(invalid("the continuity rule needs an interval with positive width"));
    }
    if cfg.gpd_in != cfg.gpd_out {
        return Err(Error::Unsupported(
            "the continuity rule needs the same GPD inside and outside the interval".into(),
        ));
    }
    solve_tau(&Pieces::new(s, cfg)?)
}

fn solve_tau(pieces: &Pieces) -> Result<f64> {
    let r0 = pieces.residual(0.0)?;
    if r0 == 0.0 {
        return Ok(0.0);
    }
    if r0 < 0.0 {
        return Err(Error::ContinuityUnattainable { residual_at_zero: r0 });
    }
    // r falls from r(0) > 0 towards −1 as τ grows
    let mut lo = 0.0;
    let mut hi = 1.0;
    loop {
        let r = pieces.residual(hi)?;
        if r <= 0.0 {
            break;
        }
        if hi >= TAU_MAX {
            return Err(Error::NoSignChange { lo: 0.0, hi, f_lo: r0, f_hi: r });
        }
        lo = hi;
        hi *= 2.0;
    }
    let f = |tau: f64| pieces.residual(tau).unwrap_or(f64::NAN);
    find_root(f, Bracket::new(lo, hi)?, 1e-14 * hi.max(1.0))
}

/// The solved method for one scenario.
#[derive(Debug, Clone, Copy)]
pub struct FidBayesFit {
    pub tau: f64,
    /// E[g(x̄; θA)]
    pub e_in: f64,
    /// E[g(x̄; θB)]
    pub e_out: f64,
    pub p_in: f64,
    pub inside: CondFiducial,
    pub outside: CondFiducial,
}

/// Resolves τ, the expected likelihoods and the two probabilities.
pub fn fit(s: &Scenario, cfg: &FidBayesConfig) -> Result<FidBayesFit> {
    cfg.validate()?;
    let hyp = &cfg.hyp;
    let outside = cond_fiducial(s, hyp, Region::Outside, &cfg.gpd_out, 0.0)?;
    let e_out = expected_likelihood_out(s, &outside)?;
    if hyp.is_point() {
        let inside = cond_fiducial(s, hyp, Region::Inside, &cfg.gpd_in, 0.0)?;
        let e_in = s.likelihood_height(hyp.theta_l());
        return Ok(FidBayesFit {
            tau: 0.0,
            e_in,
            e_out,
            p_in: known_values_prob(hyp.lam(), e_in, e_out)?,
            inside,
            outside,
        });
    }
    let pieces = Pieces::new(s, cfg)?;
    let tau = match cfg.tau_rule {
        TauRule::Continuity => solve_tau(&pieces)?,
        TauRule::Explicit(tau) => tau,
    };
    let e_in = pieces.inside.expected_g(tau);
    Ok(FidBayesFit {
        tau,
        e_in,
        e_out,
        p_in: known_values_prob(hyp.lam(), e_in, e_out)?,
        inside: cond_fiducial(s, hyp, Region::Inside, &cfg.gpd_in, tau)?,
        outside,
    })
}

/// The stitched post-data density.
#[derive(Debug, Clone, Copy)]
pub struct FidBayesPost {
    p_in: f64,
    inside: CondFiducial,
    outside: CondFiducial,
}

impl FidBayesPost {
    pub fn from_fit(fit: &FidBayesFit) -> Self {
        FidBayesPost { p_in: fit.p_in, inside: fit.inside, outside: fit.outside }
    }

    pub fn p_in(&self) -> f64 {
        self.p_in
    }

    /// Relative jump |left − right| / max(left, right) at an edge.
    pub fn edge_jump(&self, edge: f64) -> f64 {
        let a = self.p_in * self.inside.edge_density(edge);
        let b = (1.0 - self.p_in) * self.outside.edge_density(edge);
        (a - b).abs() / a.max(b)
    }
}

impl PostDensity for FidBayesPost {
    fn pdf(&self, theta: f64) -> f64 {
        self.p_in * self.inside.pdf(theta) + (1.0 - self.p_in) * self.outside.pdf(theta)
    }

    fn spike(&self) -> Option<(f64, f64)> {
        self.inside.is_point_mass().then(|| (self.inside.hyp().theta_l(), self.p_in))
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut b = self.inside.breakpoints();
        b.extend(self.outside.breakpoints());
        b
    }
}

/// P(θ ∈ A | x) with the stitched density.
pub fn fb_prob_in(s: &Scenario, cfg: &FidBayesConfig) -> Result<PostData> {
    let fit = fit(s, cfg)?;
    let mut diagnostics = Diagnostics::default();
    diagnostics.set("tau", fit.tau);
    diagnostics.set("E_in", fit.e_in);
    diagnostics.set("E_out", fit.e_out);
    diagnostics.set("C_in", fit.inside.normalizer());
    diagnostics.set("C_out", fit.outside.normalizer());
    let post = FidBayesPost::from_fit(&fit);
    if !cfg.hyp.is_point() {
        diagnostics.set("edge_jump", post.edge_jump(cfg.hyp.theta_u()));
    }
    Ok(PostData {
        p_in: fit.p_in,
        p_out: 1.0 - fit.p_in,
        method: Method::FiducialBayes,
        density: Arc::new(post),
        diagnostics,
    })
}

/// Continuous part of the stitched density at θ.
pub fn fb_postdata_pdf(s: &Scenario, cfg: &FidBayesConfig, theta: f64) -> Result<f64> {
    Ok(FidBayesPost::from_fit(&fit(s, cfg)?).pdf(theta))
}

/// Which parameter is sent to infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit {
    /// σ0 → ∞ with the data fixed.
    SlabScale(Scenario),
    /// n → ∞ with x̄ = Φ⁻¹(1 − α/2)σ/√n.
    SampleSize { alpha: f64 },
}

/// Limiting P(θ ∈ A | x).
pub fn fb_limit(hyp: &IntervalHypothesis, limit: Limit) -> Result<f64> {
    match limit {
        Limit::SlabScale(s) => Ok(fit(&s, &FidBayesConfig::new(*hyp, GpdSpec::Flat))?.p_in),
        Limit::SampleSize { alpha } => {
            if !hyp.contains(0.0) {
                return Err(Error::Unsupported(
                    "the sample-size limit is defined for null regions containing zero".into(),
                ));
            }
            if !hyp.is_point() {
                // x̄ → 0 lies strictly inside, and both densities concentrate there
                return Ok(1.0);
            }
            let z = std_normal_quantile(1.0 - alpha / 2.0)?;
            known_values_prob(hyp.lam(), phi(z), EXPECTED_STD_NORMAL_HEIGHT)
        }
    }
}
