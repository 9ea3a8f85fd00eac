//! Standard Bayesian analysis under the spike-and-slab prior.
//!
//! P(θ ∈ A | x) is computed two ways: as the ratio of λ- and (1−λ)-weighted
//! marginal likelihoods under the two conditional priors, and by integrating
//! the normalised posterior C0·g(x|θ)π(θ) over A. The first is what
//! [`prob_in_interval`] reports; the second backs the density in its result.

use std::sync::Arc;

use crate::error::Result;
use crate::fiducial::normal_update;
use crate::fiducial_bayes::known_values_prob;
use crate::numerics::quad::{integrate, integrate_with_breaks, QuadSpec, Quadrature};
use crate::numerics::special::normal_density;
use crate::postdata::{concentration_points, interval_mass, Diagnostics, Method, PostData, PostDensity};
use crate::prior::SpikeSlabPrior;
use crate::scenario::{Region, Scenario};

/// ∫ g(x̄|θ) N(θ; θ0, σ0²) dθ = N(x̄; θ0, σ²/n + σ0²).
pub fn slab_marginal_closed_form(theta0: f64, sigma0: f64, s: &Scenario) -> f64 {
    let se = s.se();
    normal_density(s.xbar(), theta0, (se * se + sigma0 * sigma0).sqrt())
}

fn breakpoints(prior: &SpikeSlabPrior, s: &Scenario) -> Vec<f64> {
    let (t1, s1) = normal_update(prior.theta0(), prior.sigma0(), s.xbar(), s.se());
    let mut b = prior.breakpoints();
    b.extend(concentration_points(s.xbar(), s.se()));
    b.extend(concentration_points(t1, s1));
    b
}

fn sum(a: Quadrature, b: Quadrature) -> Quadrature {
    Quadrature { value: a.value + b.value, abs_error: a.abs_error + b.abs_error, intervals: a.intervals + b.intervals }
}

/// ∫ over the complement of A of f, split at the interval edges.
fn integrate_outside<F: Fn(f64) -> f64>(
    f: F,
    prior: &SpikeSlabPrior,
    breaks: &[f64],
    spec: &QuadSpec,
) -> Result<Quadrature> {
    let hyp = prior.hyp();
    let left = integrate_with_breaks(&f, f64::NEG_INFINITY, hyp.theta_l(), breaks, spec)?;
    let right = integrate_with_breaks(&f, hyp.theta_u(), f64::INFINITY, breaks, spec)?;
    Ok(sum(left, right))
}

/// Marginal likelihoods ∫ g π(·|θ∈A) and ∫ g π(·|θ∉A).
fn conditional_marginals(
    prior: &SpikeSlabPrior,
    s: &Scenario,
    spec: &QuadSpec,
    diag: &mut Diagnostics,
) -> Result<(f64, f64)> {
    let hyp = prior.hyp();
    let breaks = breakpoints(prior, s);
    let m_in = if prior.is_point() {
        s.likelihood_height(hyp.theta_l())
    } else {
        let q = integrate(
            |t| s.likelihood_height(t) * prior.conditional_pdf(t, Region::Inside).unwrap_or(0.0),
            hyp.theta_l(),
            hyp.theta_u(),
            spec,
        )?;
        diag.add_error(&q);
        q.value
    };
    let q_out = if prior.is_point() {
        integrate_with_breaks(
            |t| s.likelihood_height(t) * normal_density(t, prior.theta0(), prior.sigma0()),
            f64::NEG_INFINITY,
            f64::INFINITY,
            &breaks,
            spec,
        )?
    } else {
        integrate_outside(
            |t| s.likelihood_height(t) * prior.conditional_pdf(t, Region::Outside).unwrap_or(0.0),
            prior,
            &breaks,
            spec,
        )?
    };
    diag.add_error(&q_out);
    Ok((m_in, q_out.value))
}

/// Posterior density C0·g(x|θ)π(θ), with the point mass kept separate for
/// a point null.
#[derive(Debug, Clone)]
pub struct BayesPosterior {
    prior: SpikeSlabPrior,
    scenario: Scenario,
    /// C0 multiplying g·π for the continuous part
    c0: f64,
    spike_mass: f64,
    breaks: Vec<f64>,
    quad_error: f64,
}

/// Normalises g·π over the whole line.
pub fn posterior(prior: &SpikeSlabPrior, s: &Scenario) -> Result<BayesPosterior> {
    let spec = QuadSpec::precise();
    let breaks = breakpoints(prior, s);
    let continuous = integrate_with_breaks(
        |t| s.likelihood_height(t) * prior.pdf(t),
        f64::NEG_INFINITY,
        f64::INFINITY,
        &breaks,
        &spec,
    )?;
    let spike_evidence = prior.spike().map_or(0.0, |(at, mass)| mass * s.likelihood_height(at));
    let evidence = continuous.value + spike_evidence;
    Ok(BayesPosterior {
        prior: *prior,
        scenario: *s,
        c0: 1.0 / evidence,
        spike_mass: spike_evidence / evidence,
        breaks,
        quad_error: continuous.abs_error,
    })
}

impl BayesPosterior {
    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn spike_mass(&self) -> f64 {
        self.spike_mass
    }

    pub fn prior(&self) -> &SpikeSlabPrior {
        &self.prior
    }

    /// ∫_A of the posterior (point mass included).
    pub fn prob_in(&self) -> Result<Quadrature> {
        let hyp = self.prior.hyp();
        interval_mass(self, hyp.theta_l(), hyp.theta_u(), &QuadSpec::precise())
    }
}

impl PostDensity for BayesPosterior {
    fn pdf(&self, theta: f64) -> f64 {
        self.c0 * self.scenario.likelihood_height(theta) * self.prior.pdf(theta)
    }

    fn spike(&self) -> Option<(f64, f64)> {
        self.prior.spike().map(|(at, _)| (at, self.spike_mass))
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.breaks.clone()
    }
}

/// Continuous part of the posterior density at θ.
pub fn posterior_pdf(prior: &SpikeSlabPrior, s: &Scenario, theta: f64) -> Result<f64> {
    Ok(posterior(prior, s)?.pdf(theta))
}

/// P(θ ∈ A | x) from the marginal-likelihood ratio, together with the
/// posterior density.
pub fn prob_in_interval(prior: &SpikeSlabPrior, s: &Scenario) -> Result<PostData> {
    let spec = QuadSpec::precise();
    let mut diagnostics = Diagnostics::default();
    let (m_in, m_out) = conditional_marginals(prior, s, &spec, &mut diagnostics)?;
    let lam = prior.hyp().lam();
    let p_in = lam * m_in / (lam * m_in + (1.0 - lam) * m_out);
    let post = posterior(prior, s)?;
    diagnostics.set("C0", post.c0());
    diagnostics.set("C1", prior.c1());
    diagnostics.set("tau", prior.tau());
    diagnostics.set("marginal_in", m_in);
    diagnostics.set("marginal_out", m_out);
    diagnostics.quad_error += post.quad_error;
    Ok(PostData { p_in, p_out: 1.0 - p_in, method: Method::PureBayes, density: Arc::new(post), diagnostics })
}

/// P(θ ∈ A | x) alone, marginal-likelihood route; skips building the density.
pub fn p_in(prior: &SpikeSlabPrior, s: &Scenario) -> Result<f64> {
    let (m_in, m_out) = conditional_marginals(prior, s, &QuadSpec::precise(), &mut Diagnostics::default())?;
    let lam = prior.hyp().lam();
    Ok(lam * m_in / (lam * m_in + (1.0 - lam) * m_out))
}

/// The two-value Bayes ratio with the unknown likelihood heights replaced
/// by their expectations under the region-conditioned *posteriors*.
///
/// This mixes incompatible analogies and generally disagrees with the
/// coherent posterior probability; it exists to demonstrate that.
pub fn incompatible_double_bayes_prob(prior: &SpikeSlabPrior, s: &Scenario) -> Result<f64> {
    let spec = QuadSpec::precise();
    let hyp = prior.hyp();
    let breaks = breakpoints(prior, s);
    let g = |t: f64| s.likelihood_height(t);
    let expected_in = if prior.is_point() {
        g(hyp.theta_l())
    } else {
        let inside = |t: f64| prior.conditional_pdf(t, Region::Inside).unwrap_or(0.0);
        let num = integrate(|t| g(t) * g(t) * inside(t), hyp.theta_l(), hyp.theta_u(), &spec)?;
        let den = integrate(|t| g(t) * inside(t), hyp.theta_l(), hyp.theta_u(), &spec)?;
        num.value / den.value
    };
    let outside = |t: f64| {
        if prior.is_point() {
            normal_density(t, prior.theta0(), prior.sigma0())
        } else {
            prior.conditional_pdf(t, Region::Outside).unwrap_or(0.0)
        }
    };
    let num = integrate_outside(|t| g(t) * g(t) * outside(t), prior, &breaks, &spec)?;
    let den = integrate_outside(|t| g(t) * outside(t), prior, &breaks, &spec)?;
    known_values_prob(hyp.lam(), expected_in, num.value / den.value)
}
