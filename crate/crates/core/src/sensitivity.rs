//! Upper and lower posterior quantities over a finite class of priors whose
//! mixing weights are unknown.

use crate::error::{invalid, Result};
use crate::numerics::quad::QuadSpec;
use crate::postdata::expectation;
use crate::prior::SpikeSlabPrior;
use crate::pure_bayes::posterior;
use crate::scenario::Scenario;

#[derive(Debug, Clone, PartialEq)]
pub enum PriorClass {
    /// Prior probabilities of a simple hypothesis H.
    Binary(Vec<f64>),
    SpikeSlab(Vec<SpikeSlabPrior>),
}

impl PriorClass {
    pub fn binary(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(invalid("prior class is empty"));
        }
        if let Some(p) = probs.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
            return Err(invalid(format!("prior probabilities must lie in (0, 1), got {p}")));
        }
        Ok(PriorClass::Binary(probs))
    }

    pub fn spike_slab(priors: Vec<SpikeSlabPrior>) -> Result<Self> {
        if priors.is_empty() {
            return Err(invalid("prior class is empty"));
        }
        Ok(PriorClass::SpikeSlab(priors))
    }

    pub fn len(&self) -> usize {
        match self {
            PriorClass::Binary(p) => p.len(),
            PriorClass::SpikeSlab(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// (p_S, p_L) for a binary class.
    pub fn extremes(&self) -> Option<(f64, f64)> {
        match self {
            PriorClass::Binary(p) if !p.is_empty() => Some((
                p.iter().copied().fold(f64::INFINITY, f64::min),
                p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            )),
            _ => None,
        }
    }
}

/// P(H | x) = pB / (pB + 1 − p) for prior probability p and Bayes factor B.
pub fn binary_posterior(p: f64, bayes_factor: f64) -> f64 {
    p * bayes_factor / (p * bayes_factor + 1.0 - p)
}

/// (lower, upper) posterior probability of H; attained at the smallest and
/// largest prior probabilities since the posterior increases with p.
pub fn binary_posterior_bounds(pc: &PriorClass, bayes_factor: f64) -> Result<(f64, f64)> {
    if !(bayes_factor > 0.0 && bayes_factor.is_finite()) {
        return Err(invalid(format!("Bayes factor must be positive and finite, got {bayes_factor}")));
    }
    let (p_s, p_l) = pc.extremes().ok_or_else(|| invalid("binary bounds need a non-empty binary prior class"))?;
    Ok((binary_posterior(p_s, bayes_factor), binary_posterior(p_l, bayes_factor)))
}

/// (min, max) over the class of the posterior expectation of `functional`.
pub fn functional_bounds<F: Fn(f64) -> f64>(pc: &PriorClass, s: &Scenario, functional: F) -> Result<(f64, f64)> {
    let priors = match pc {
        PriorClass::SpikeSlab(p) if !p.is_empty() => p,
        PriorClass::SpikeSlab(_) => return Err(invalid("prior class is empty")),
        PriorClass::Binary(_) => return Err(invalid("functional bounds need a spike-and-slab prior class")),
    };
    let spec = QuadSpec::precise();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for prior in priors {
        let post = posterior(prior, s)?;
        let e = expectation(&post, &functional, &spec)?.value;
        lo = lo.min(e);
        hi = hi.max(e);
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::std_normal_quantile;
    use crate::scenario::IntervalHypothesis;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn binary_examples() {
        let pc = PriorClass::binary(vec![0.2, 0.5, 0.6]).unwrap();
        let (lo, hi) = binary_posterior_bounds(&pc, 1.0).unwrap();
        assert_abs_diff_eq!(lo, 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, 0.6, epsilon = 1e-15);

        let pc = PriorClass::binary(vec![0.35]).unwrap();
        let (lo, hi) = binary_posterior_bounds(&pc, 3.0).unwrap();
        assert_eq!(lo, hi);

        let b = 0.014_459_9 / 0.282_094_8;
        assert_abs_diff_eq!(b, 0.051_259, epsilon = 1e-6);
        let pc = PriorClass::binary(vec![0.3, 0.4, 0.5]).unwrap();
        let (lo, hi) = binary_posterior_bounds(&pc, b).unwrap();
        assert_abs_diff_eq!(lo, 0.021_495_921_321_41, epsilon = 1e-13);
        assert_abs_diff_eq!(hi, 0.048_759_638_609_67, epsilon = 1e-13);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PriorClass::binary(vec![]).is_err());
        assert!(PriorClass::binary(vec![0.2, 1.0]).is_err());
        assert!(PriorClass::spike_slab(vec![]).is_err());
        let pc = PriorClass::binary(vec![0.2]).unwrap();
        assert!(binary_posterior_bounds(&pc, 0.0).is_err());
        assert!(binary_posterior_bounds(&PriorClass::SpikeSlab(vec![]), 1.0).is_err());
    }

    fn table1_class(sigma0s: &[f64]) -> PriorClass {
        let hyp = IntervalHypothesis::symmetric(0.0, 0.4).unwrap();
        PriorClass::spike_slab(sigma0s.iter().map(|s0| SpikeSlabPrior::new(hyp, 0.0, *s0).unwrap()).collect()).unwrap()
    }

    #[test]
    fn functional_examples() {
        let s = Scenario::from_se(1.0, std_normal_quantile(0.995).unwrap()).unwrap();
        let pc = table1_class(&[1.0, 1000.0]);
        let (lo, hi) = functional_bounds(&pc, &s, |_| 1.0).unwrap();
        assert_abs_diff_eq!(lo, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(hi, 1.0, epsilon = 1e-8);
        let indicator = |t: f64| if t == 0.0 { 1.0 } else { 0.0 };
        let (lo, hi) = functional_bounds(&pc, &s, indicator).unwrap();
        assert_abs_diff_eq!(lo, 0.1522, epsilon = 1e-4);
        assert_abs_diff_eq!(hi, 0.9602, epsilon = 1e-4);

        let single = table1_class(&[4.0]);
        let (lo, hi) = functional_bounds(&single, &s, |t| t).unwrap();
        assert_eq!(lo, hi);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn binary_bounds_bracket_members(probs in prop::collection::vec(0.001f64..0.999, 1..=10), b in 0.001f64..1000.0) {
            let pc = PriorClass::binary(probs.clone()).unwrap();
            let (lo, hi) = binary_posterior_bounds(&pc, b).unwrap();
            let posts: Vec<f64> = probs.iter().map(|p| binary_posterior(*p, b)).collect();
            for q in &posts {
                prop_assert!(lo <= *q && *q <= hi);
            }
            let min = posts.iter().copied().fold(f64::INFINITY, f64::min);
            let max = posts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            prop_assert_eq!(lo, min);
            prop_assert_eq!(hi, max);
        }

        #[test]
        fn binary_posterior_increasing(p in 0.01f64..0.98, dp in 0.001f64..0.01, b in 0.01f64..100.0) {
            prop_assert!(binary_posterior(p + dp, b) > binary_posterior(p, b));
        }
    }
}
