//! Standard normal functions and the Beta(4,4) bump.
//!
//! The checked `std_normal_*` entry points validate their argument; the
//! unchecked helpers (`phi`, `upper_tail`, ...) are what the inner loops of
//! the quadrature call.

use std::f64::consts::{PI, SQRT_2};

use libm::erfc;
use statrs::function::erf::erfc_inv;

use crate::error::{invalid, Result};

/// 1/√(2π)
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Expected height of the standard normal density at a point drawn from it,
/// 1/(2√π).
pub const EXPECTED_STD_NORMAL_HEIGHT: f64 = 0.282_094_791_773_878_14;

/// Standard normal density, unchecked. Returns 0 for infinite `z`.
#[inline]
pub fn phi(z: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Normal density with the given mean and standard deviation, unchecked.
#[inline]
pub fn normal_density(x: f64, mean: f64, sd: f64) -> f64 {
    phi((x - mean) / sd) / sd
}

/// Φ(z), unchecked. Uses erfc on the lower side so that the far left tail
/// keeps full relative precision.
#[inline]
pub fn lower_tail(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

/// 1 − Φ(z) computed without cancellation.
#[inline]
pub fn upper_tail(z: f64) -> f64 {
    0.5 * erfc(z / SQRT_2)
}

/// P(a ≤ Z ≤ b) for a standard normal Z, without cancellation in the tails.
pub fn std_normal_interval_mass(a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    if a >= 0.0 {
        upper_tail(a) - upper_tail(b)
    } else if b <= 0.0 {
        lower_tail(b) - lower_tail(a)
    } else {
        1.0 - lower_tail(a) - upper_tail(b)
    }
}

/// P(Z < a or Z > b) for a standard normal Z.
pub fn std_normal_outside_mass(a: f64, b: f64) -> f64 {
    if b <= a {
        return 1.0;
    }
    if a >= 0.0 {
        // most of the mass sits below a
        1.0 - std_normal_interval_mass(a, b)
    } else if b <= 0.0 {
        1.0 - std_normal_interval_mass(a, b)
    } else {
        lower_tail(a) + upper_tail(b)
    }
}

/// Mass of N(mean, sd²) on [lo, hi].
pub fn normal_interval_mass(mean: f64, sd: f64, lo: f64, hi: f64) -> f64 {
    std_normal_interval_mass((lo - mean) / sd, (hi - mean) / sd)
}

/// Mass of N(mean, sd²) off [lo, hi].
pub fn normal_outside_mass(mean: f64, sd: f64, lo: f64, hi: f64) -> f64 {
    std_normal_outside_mass((lo - mean) / sd, (hi - mean) / sd)
}

fn check_finite(x: f64, what: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{what} must be finite, got {x}")))
    }
}

/// Standard normal density φ(z) = exp(−z²/2)/√(2π).
pub fn std_normal_pdf(z: f64) -> Result<f64> {
    check_finite(z, "z")?;
    Ok(phi(z))
}

/// Standard normal distribution function Φ(z).
pub fn std_normal_cdf(z: f64) -> Result<f64> {
    check_finite(z, "z")?;
    Ok(lower_tail(z))
}

/// Standard normal quantile Φ⁻¹(p), 0 < p < 1.
///
/// Starts from the inverse complementary error function and applies two
/// Halley steps against [`lower_tail`] / [`upper_tail`], whichever side is
/// better conditioned.
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("p must lie in (0, 1), got {p}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    let mut x = -SQRT_2 * erfc_inv(2.0 * p);
    for _ in 0..2 {
        if !x.is_finite() {
            break;
        }
        // residual measured on the tail that holds p
        let e = if p < 0.5 { lower_tail(x) - p } else { (1.0 - p) - upper_tail(x) };
        let u = e * (2.0 * PI).sqrt() * (0.5 * x * x).exp();
        x -= u / (1.0 + 0.5 * x * u);
    }
    Ok(x)
}

/// Beta(4,4) density rescaled to [lo, hi], zero outside. Unchecked.
#[inline]
pub fn bump_density(theta: f64, lo: f64, hi: f64) -> f64 {
    if theta <= lo || theta >= hi {
        return 0.0;
    }
    let w = hi - lo;
    let u = (theta - lo) / w;
    let v = 1.0 - u;
    // 1/B(4,4) = 140
    140.0 * (u * v).powi(3) / w
}

/// h(θ): the Beta(4,4) density on [−ε, ε].
pub fn beta_bump_density(theta: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(invalid(format!("eps must be positive, got {eps}")));
    }
    check_finite(theta, "theta")?;
    Ok(bump_density(theta, -eps, eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Bisection on the distribution function; used as the quantile oracle.
    fn bisect_quantile(p: f64) -> f64 {
        let (mut lo, mut hi) = (-40.0_f64, 40.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if lower_tail(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    // Maclaurin series of Φ for moderate |z|; an oracle independent of erfc.
    fn series_cdf(z: f64) -> f64 {
        let mut term = z;
        let mut sum = z;
        let mut k = 0.0;
        while term.abs() > 1e-18 {
            k += 1.0;
            term *= -z * z / (2.0 * k) * (2.0 * k - 1.0) / (2.0 * k + 1.0);
            sum += term;
        }
        0.5 + FRAC_1_SQRT_2PI * sum
    }

    #[test]
    fn pdf_examples() {
        assert_abs_diff_eq!(std_normal_pdf(0.0).unwrap(), 0.398_942_280_4, epsilon = 1e-10);
        assert_abs_diff_eq!(std_normal_pdf(0.8326).unwrap(), 0.282_084_131_692_098, epsilon = 1e-14);
        // √(ln 2) is where φ meets the expected height 1/(2√π)
        assert_abs_diff_eq!(std_normal_pdf(2f64.ln().sqrt()).unwrap(), EXPECTED_STD_NORMAL_HEIGHT, epsilon = 1e-16);
        assert_abs_diff_eq!(std_normal_pdf(2.575829).unwrap(), 0.014_459_754_332_852, epsilon = 1e-15);
        assert_eq!(std_normal_pdf(1.3).unwrap(), std_normal_pdf(-1.3).unwrap());
        assert!(std_normal_pdf(f64::NAN).is_err());
        assert!(std_normal_pdf(f64::INFINITY).is_err());
    }

    #[test]
    fn expected_height_constant() {
        assert_abs_diff_eq!(EXPECTED_STD_NORMAL_HEIGHT, 1.0 / (2.0 * PI.sqrt()), epsilon = 1e-16);
        // the x̄ whose likelihood height equals the expected height is √(ln 2)
        assert_abs_diff_eq!(phi(std::f64::consts::LN_2.sqrt()), EXPECTED_STD_NORMAL_HEIGHT, epsilon = 1e-16);
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(std_normal_cdf(0.0).unwrap(), 0.5);
        assert_abs_diff_eq!(std_normal_cdf(2.575829).unwrap(), 0.995, epsilon = 1e-7);
        assert_abs_diff_eq!(std_normal_cdf(1.959964).unwrap(), 0.975, epsilon = 1e-7);
        for z in [-3.0, -1.0, -0.2, 0.5, 1.7, 2.9] {
            assert_abs_diff_eq!(lower_tail(z), series_cdf(z), epsilon = 1e-14);
        }
        assert!(std_normal_cdf(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn cdf_symmetry() {
        for i in 0..=200 {
            let z = -10.0 + 0.1 * i as f64;
            let s = lower_tail(z) + lower_tail(-z);
            assert!((s - 1.0).abs() <= 1e-15, "z={z} sum={s}");
        }
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(std_normal_quantile(0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(std_normal_quantile(0.995).unwrap(), 2.575_829_303_549, epsilon = 1e-11);
        assert_abs_diff_eq!(std_normal_quantile(0.9995).unwrap(), 3.290_526_731_492, epsilon = 1e-11);
        assert_abs_diff_eq!(std_normal_quantile(0.995).unwrap(), bisect_quantile(0.995), epsilon = 1e-12);
        assert_abs_diff_eq!(std_normal_quantile(0.9995).unwrap(), bisect_quantile(0.9995), epsilon = 1e-12);
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(std_normal_quantile(p).is_err());
        }
    }

    #[test]
    fn quantile_round_trip_grid() {
        for i in 1..=999 {
            let p = i as f64 / 1000.0;
            let z = std_normal_quantile(p).unwrap();
            assert!((lower_tail(z) - p).abs() <= 1e-12, "p={p}");
        }
    }

    #[test]
    fn quantile_full_precision_not_rounded() {
        let z = std_normal_quantile(0.995).unwrap();
        assert!((z - 2.576).abs() > 1e-4);
    }

    #[test]
    fn tail_masses_are_stable() {
        // far right interval: direct differencing of Φ would return 0
        let m = std_normal_interval_mass(9.0, 10.0);
        assert!(m > 1e-19 && m < 1.2e-19);
        let out = std_normal_outside_mass(-1.0, 1.0);
        assert_abs_diff_eq!(out, 2.0 * upper_tail(1.0), epsilon = 1e-16);
        assert_abs_diff_eq!(
            std_normal_interval_mass(-1.0, 2.0) + std_normal_outside_mass(-1.0, 2.0),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn bump_examples() {
        assert_eq!(beta_bump_density(0.2, 0.2).unwrap(), 0.0);
        assert_eq!(beta_bump_density(-0.2, 0.2).unwrap(), 0.0);
        assert_eq!(beta_bump_density(0.3, 0.2).unwrap(), 0.0);
        assert_abs_diff_eq!(beta_bump_density(0.0, 0.2).unwrap(), 35.0 / (32.0 * 0.2), epsilon = 1e-12);
        assert_abs_diff_eq!(
            beta_bump_density(0.07, 0.2).unwrap(),
            beta_bump_density(-0.07, 0.2).unwrap(),
            epsilon = 1e-12
        );
        assert!(beta_bump_density(0.0, 0.0).is_err());
        assert!(beta_bump_density(0.0, -1.0).is_err());
    }
}
