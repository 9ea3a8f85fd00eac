//! Normal known-variance data summaries and the interval null hypothesis.
//!
//! Every method consumes the data only through x̄ and its standard error.
//! The likelihood is represented by the density of x̄, which differs from the
//! full-sample likelihood by a factor free of θ that cancels in every ratio.

use crate::error::{invalid, Result};
use crate::numerics::special::{normal_density, std_normal_quantile};

/// Observed sample mean of `n` draws from N(θ, σ²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    sigma: f64,
    n: f64,
    xbar: f64,
}

impl Scenario {
    /// `n` may be any positive real; the tables treat it as a continuous
    /// scale parameter.
    pub fn new(sigma: f64, n: f64, xbar: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(invalid(format!("sigma must be positive and finite, got {sigma}")));
        }
        if !(n >= 1.0 && n.is_finite()) {
            return Err(invalid(format!("n must be at least 1, got {n}")));
        }
        if !xbar.is_finite() {
            return Err(invalid(format!("xbar must be finite, got {xbar}")));
        }
        Ok(Scenario { sigma, n, xbar })
    }

    /// Scenario from a standard error directly (σ = se, n = 1).
    pub fn from_se(se: f64, xbar: f64) -> Result<Self> {
        if !(se > 0.0 && se.is_finite()) {
            return Err(invalid(format!("standard error must be positive and finite, got {se}")));
        }
        Scenario::new(se, 1.0, xbar)
    }

    /// The Lindley construction: x̄ placed on the 1 − α/2 null quantile.
    pub fn lindley(alpha: f64, sigma: f64, n: f64) -> Result<Self> {
        Scenario::new(sigma, n, lindley_xbar(alpha, sigma, n)?)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn xbar(&self) -> f64 {
        self.xbar
    }

    /// σ/√n
    pub fn se(&self) -> f64 {
        self.sigma / self.n.sqrt()
    }

    /// g(x̄; θ): the N(θ, σ²/n) density of x̄ at the observed value.
    pub fn likelihood_height(&self, theta: f64) -> f64 {
        normal_density(self.xbar, theta, self.se())
    }
}

/// Φ⁻¹(1 − α/2)·σ/√n.
pub fn lindley_xbar(alpha: f64, sigma: f64, n: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(sigma > 0.0) || !(n > 0.0) {
        return Err(invalid("sigma and n must be positive"));
    }
    Ok(std_normal_quantile(1.0 - alpha / 2.0)? * sigma / n.sqrt())
}

/// Null region [θL, θU] with prior probability λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalHypothesis {
    theta_l: f64,
    theta_u: f64,
    lam: f64,
}

impl IntervalHypothesis {
    pub fn new(theta_l: f64, theta_u: f64, lam: f64) -> Result<Self> {
        if !(theta_l.is_finite() && theta_u.is_finite()) || theta_l > theta_u {
            return Err(invalid(format!("interval requires finite theta_l <= theta_u, got [{theta_l}, {theta_u}]")));
        }
        if !(lam > 0.0 && lam < 1.0) {
            return Err(invalid(format!("lambda must lie in (0, 1), got {lam}")));
        }
        Ok(IntervalHypothesis { theta_l, theta_u, lam })
    }

    /// [−ε, ε]; ε = 0 gives the point null θ = 0.
    pub fn symmetric(eps: f64, lam: f64) -> Result<Self> {
        if !(eps >= 0.0) {
            return Err(invalid(format!("epsilon must be non-negative, got {eps}")));
        }
        IntervalHypothesis::new(-eps, eps, lam)
    }

    pub fn theta_l(&self) -> f64 {
        self.theta_l
    }

    pub fn theta_u(&self) -> f64 {
        self.theta_u
    }

    pub fn lam(&self) -> f64 {
        self.lam
    }

    /// Same interval with a different λ.
    pub fn with_lam(&self, lam: f64) -> Result<Self> {
        IntervalHypothesis::new(self.theta_l, self.theta_u, lam)
    }

    pub fn is_point(&self) -> bool {
        self.theta_l == self.theta_u
    }

    pub fn width(&self) -> f64 {
        self.theta_u - self.theta_l
    }

    pub fn contains(&self, theta: f64) -> bool {
        theta >= self.theta_l && theta <= self.theta_u
    }
}

/// Which side of the null interval a conditional density lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Inside,
    Outside,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::{integrate_with_breaks, QuadSpec};
    use approx::assert_abs_diff_eq;

    #[test]
    fn likelihood_examples() {
        let s = Scenario::from_se(1.0, 2.575829).unwrap();
        assert_abs_diff_eq!(s.likelihood_height(0.0), 0.014_459_754_332_852, epsilon = 1e-15);
        let s = Scenario::from_se(1.0, 0.0).unwrap();
        assert_abs_diff_eq!(s.likelihood_height(0.0), 0.398_942_3, epsilon = 1e-7);
        let s = Scenario::from_se(1.0, 0.8326).unwrap();
        assert_abs_diff_eq!(s.likelihood_height(0.0), 0.282_084_131_692_098, epsilon = 1e-14);
    }

    #[test]
    fn likelihood_integrates_over_xbar() {
        for theta in [-3.0, 0.0, 0.4, 7.5] {
            let q = integrate_with_breaks(
                |x| Scenario::new(4.0, 20.0, x).unwrap().likelihood_height(theta),
                f64::NEG_INFINITY,
                f64::INFINITY,
                &[theta],
                &QuadSpec::default(),
            )
            .unwrap();
            assert_abs_diff_eq!(q.value, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn lindley_examples() {
        assert_abs_diff_eq!(lindley_xbar(0.01, 4.0, 16.0).unwrap(), 2.575829, epsilon = 1e-6);
        assert_abs_diff_eq!(lindley_xbar(0.01, 4.0, 5000.0).unwrap(), 0.1457, epsilon = 5e-5);
        assert!(lindley_xbar(0.999_999, 4.0, 10.0).unwrap().abs() < 1e-5);
        assert!(lindley_xbar(1.0, 4.0, 10.0).is_err());
        assert!(lindley_xbar(0.0, 4.0, 10.0).is_err());
    }

    #[test]
    fn lindley_standardised_statistic_is_constant() {
        let z = std_normal_quantile(0.995).unwrap();
        for n in [1.0, 4.0, 10.0, 20.0, 50.0, 200.0, 1000.0, 5000.0] {
            let x = lindley_xbar(0.01, 4.0, n).unwrap();
            assert_abs_diff_eq!(x * n.sqrt() / 4.0, z, epsilon = 1e-12);
        }
    }

    #[test]
    fn constructors() {
        let s = Scenario::from_se(1.0, 2.575829).unwrap();
        assert_eq!((s.sigma(), s.n(), s.xbar()), (1.0, 1.0, 2.575829));
        let s = Scenario::new(4.0, 20.0, 0.3).unwrap();
        assert_abs_diff_eq!(s.se(), 0.894_427, epsilon = 1e-6);
        assert!(Scenario::new(0.0, 1.0, 0.0).is_err());
        assert!(Scenario::new(1.0, 0.5, 0.0).is_err());
        assert!(Scenario::from_se(-1.0, 0.0).is_err());
        assert!(Scenario::new(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn hypothesis_constructors() {
        let h = IntervalHypothesis::symmetric(0.2, 0.4).unwrap();
        assert_eq!((h.theta_l(), h.theta_u()), (-0.2, 0.2));
        assert!(!h.is_point());
        assert!(IntervalHypothesis::symmetric(0.0, 0.4).unwrap().is_point());
        assert!(IntervalHypothesis::symmetric(-0.1, 0.4).is_err());
        assert!(IntervalHypothesis::symmetric(0.1, 0.0).is_err());
        assert!(IntervalHypothesis::symmetric(0.1, 1.0).is_err());
        assert!(IntervalHypothesis::new(0.3, 0.1, 0.5).is_err());
    }
}
