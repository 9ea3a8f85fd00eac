//! κ-weighted blend of the pure Bayesian posterior and the fiducial-Bayes
//! post-data density. κ is the share of the prior-analogy population whose
//! composition is known; values between 0 and 0.3 are the intended range.

use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::fiducial_bayes::{fb_prob_in, FidBayesConfig};
use crate::postdata::{Diagnostics, Method, PostData, PostDensity};
use crate::prior::SpikeSlabPrior;
use crate::pure_bayes::prob_in_interval;
use crate::scenario::Scenario;

/// κ used by the tables and figures.
pub const DEFAULT_KAPPA: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureConfig {
    pub kappa: f64,
    pub prior: SpikeSlabPrior,
    pub fb: FidBayesConfig,
}

impl MixtureConfig {
    pub fn new(kappa: f64, prior: SpikeSlabPrior, fb: FidBayesConfig) -> Result<Self> {
        if !(0.0..=1.0).contains(&kappa) {
            return Err(invalid(format!("kappa must lie in [0, 1], got {kappa}")));
        }
        if prior.hyp() != &fb.hyp {
            return Err(invalid("prior and fiducial-Bayes configuration must share the null hypothesis"));
        }
        Ok(MixtureConfig { kappa, prior, fb })
    }
}

/// κ·bayes + (1 − κ)·fb, spikes included.
#[derive(Debug, Clone)]
pub struct MixturePost {
    kappa: f64,
    bayes: Arc<dyn PostDensity>,
    fb: Arc<dyn PostDensity>,
}

impl MixturePost {
    pub fn new(kappa: f64, bayes: Arc<dyn PostDensity>, fb: Arc<dyn PostDensity>) -> Self {
        MixturePost { kappa, bayes, fb }
    }
}

impl PostDensity for MixturePost {
    fn pdf(&self, theta: f64) -> f64 {
        self.kappa * self.bayes.pdf(theta) + (1.0 - self.kappa) * self.fb.pdf(theta)
    }

    /// Both spikes sit at the point null when present.
    fn spike(&self) -> Option<(f64, f64)> {
        match (self.bayes.spike(), self.fb.spike()) {
            (None, None) => None,
            (b, f) => {
                let at = b.or(f).map(|(at, _)| at).unwrap_or(0.0);
                let mass = self.kappa * b.map_or(0.0, |(_, m)| m) + (1.0 - self.kappa) * f.map_or(0.0, |(_, m)| m);
                Some((at, mass))
            }
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut b = self.bayes.breakpoints();
        b.extend(self.fb.breakpoints());
        b
    }
}

/// Mixes two already computed results.
pub fn mix(kappa: f64, bayes: &PostData, fb: &PostData) -> PostData {
    let p_in = kappa * bayes.p_in + (1.0 - kappa) * fb.p_in;
    let mut diagnostics = Diagnostics::default();
    diagnostics.set("kappa", kappa);
    diagnostics.set("p_in_pure_bayes", bayes.p_in);
    diagnostics.set("p_in_fiducial_bayes", fb.p_in);
    diagnostics.quad_error = bayes.diagnostics.quad_error + fb.diagnostics.quad_error;
    PostData {
        p_in,
        p_out: 1.0 - p_in,
        method: Method::Mixture,
        density: Arc::new(MixturePost::new(kappa, bayes.density.clone(), fb.density.clone())),
        diagnostics,
    }
}

pub fn mixture_prob_in(s: &Scenario, cfg: &MixtureConfig) -> Result<PostData> {
    let bayes = prob_in_interval(&cfg.prior, s)?;
    let fb = fb_prob_in(s, &cfg.fb)?;
    Ok(mix(cfg.kappa, &bayes, &fb))
}

pub fn mixture_pdf(s: &Scenario, cfg: &MixtureConfig, theta: f64) -> Result<f64> {
    Ok(mixture_prob_in(s, cfg)?.density.pdf(theta))
}
