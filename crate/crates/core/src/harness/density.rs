use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::fiducial::GpdSpec;
use crate::fiducial_bayes::{fb_prob_in, FidBayesConfig};
use crate::harness::svg::Curve;
use crate::mixture::{mix, DEFAULT_KAPPA};
use crate::postdata::PostData;
use crate::prior::SpikeSlabPrior;
use crate::pure_bayes::prob_in_interval;
use crate::scenario::{IntervalHypothesis, Scenario};

/// `lo:hi:count`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(invalid(format!("grid needs finite lo <= hi, got {lo}:{hi}")));
        }
        if count == 0 {
            return Err(invalid("grid needs at least one point"));
        }
        Ok(Grid { lo, hi, count })
    }

    /// A one-point grid is just `lo`.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.hi } else { self.lo + step * i as f64 }).collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(invalid(format!("grid must look like LO:HI:COUNT, got {s:?}")));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| invalid(format!("bad grid bound {p:?}")));
        let count = parts[2].trim().parse::<usize>().map_err(|_| invalid(format!("bad grid count {:?}", parts[2])))?;
        Grid::new(num(parts[0])?, num(parts[1])?, count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityMethod {
    PureBayes,
    FiducialBayes,
    Mixture,
    /// g(x̄; θ) as a function of θ.
    Likelihood,
}

impl DensityMethod {
    pub const ALL: [DensityMethod; 4] =
        [DensityMethod::PureBayes, DensityMethod::FiducialBayes, DensityMethod::Mixture, DensityMethod::Likelihood];

    pub fn as_str(&self) -> &'static str {
        match self {
            DensityMethod::PureBayes => "pure-bayes",
            DensityMethod::FiducialBayes => "fiducial-bayes",
            DensityMethod::Mixture => "mixture",
            DensityMethod::Likelihood => "likelihood",
        }
    }
}

impl FromStr for DensityMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DensityMethod::ALL.into_iter().find(|m| m.as_str() == s).ok_or_else(|| invalid(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityParams {
    pub eps: f64,
    pub lam: f64,
    pub theta0: f64,
    /// `f64::INFINITY` selects the flat GPD; only the fiducial-Bayes method
    /// and the likelihood accept it.
    pub sigma0: f64,
    pub kappa: f64,
    pub se: f64,
    pub xbar: f64,
}

impl DensityParams {
    /// Figure 1 (θ0 = 0, σ0 = 10) or Figure 2 (θ0 = 1.5, σ0 = 1).
    pub fn figure(id: u8) -> Result<Self> {
        let (theta0, sigma0) = match id {
            1 => (0.0, 10.0),
            2 => (1.5, 1.0),
            _ => return Err(invalid(format!("figure id must be 1 or 2, got {id}"))),
        };
        Ok(DensityParams { eps: 0.2, lam: 0.4, theta0, sigma0, kappa: DEFAULT_KAPPA, se: 1.0, xbar: 2.576 })
    }

    fn scenario(&self) -> Result<Scenario> {
        Scenario::from_se(self.se, self.xbar)
    }

    fn hyp(&self) -> Result<IntervalHypothesis> {
        IntervalHypothesis::symmetric(self.eps, self.lam)
    }

    fn pure(&self) -> Result<PostData> {
        if self.sigma0.is_infinite() {
            return Err(invalid("the pure Bayesian posterior needs a finite sigma0"));
        }
        prob_in_interval(&SpikeSlabPrior::new(self.hyp()?, self.theta0, self.sigma0)?, &self.scenario()?)
    }

    fn fb(&self) -> Result<PostData> {
        let cfg = FidBayesConfig::new(self.hyp()?, GpdSpec::from_sigma0(self.theta0, self.sigma0)?);
        fb_prob_in(&self.scenario()?, &cfg)
    }

    /// The post-data result of `method`; `None` for the likelihood.
    pub fn post_data(&self, method: DensityMethod) -> Result<Option<PostData>> {
        Ok(match method {
            DensityMethod::PureBayes => Some(self.pure()?),
            DensityMethod::FiducialBayes => Some(self.fb()?),
            DensityMethod::Mixture => {
                if !(0.0..=1.0).contains(&self.kappa) {
                    return Err(invalid(format!("kappa must lie in [0, 1], got {}", self.kappa)));
                }
                Some(mix(self.kappa, &self.pure()?, &self.fb()?))
            }
            DensityMethod::Likelihood => None,
        })
    }
}

/// Sampled curve plus the point mass, if the method has one.
pub fn density_curve(method: DensityMethod, params: &DensityParams, grid: &Grid) -> Result<(Curve, Option<f64>)> {
    let points = grid.points();
    let (values, spike) = match params.post_data(method)? {
        Some(pd) => (points.iter().map(|t| pd.density.pdf(*t)).collect::<Vec<_>>(), pd.density.spike().map(|(_, m)| m)),
        None => {
            let s = params.scenario()?;
            (points.iter().map(|t| s.likelihood_height(*t)).collect(), None)
        }
    };
    Ok((Curve { name: method.as_str().to_string(), points: points.into_iter().zip(values).collect() }, spike))
}

/// `theta,density[,spike_mass_at_zero]` rows at full precision.
pub fn density_csv(method: DensityMethod, params: &DensityParams, grid: &Grid) -> Result<String> {
    let (curve, spike) = density_curve(method, params, grid)?;
    let mut out = String::from(if spike.is_some() { "theta,density,spike_mass_at_zero\n" } else { "theta,density\n" });
    for (t, d) in &curve.points {
        match spike {
            Some(m) => writeln!(out, "{t},{d},{m}"),
            None => writeln!(out, "{t},{d}"),
        }
        .expect("writing to a String cannot fail");
    }
    Ok(out)
}

/// The four curves of a figure: the three post-data densities and the
/// likelihood.
pub fn figure_curves(id: u8, grid: &Grid) -> Result<Vec<Curve>> {
    let params = DensityParams::figure(id)?;
    DensityMethod::ALL.iter().map(|m| density_curve(*m, &params, grid).map(|(c, _)| c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: Grid = "-1:1:5".parse().unwrap();
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        let g: Grid = "0.3:0.3:1".parse().unwrap();
        assert_eq!(g.points(), vec![0.3]);
        assert_eq!("0:1:1".parse::<Grid>().unwrap().points(), vec![0.0]);
        for bad in ["1:0:5", "0:1", "0:1:0", "a:1:3", "0:1:x"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_endpoints_exact() {
        let g = Grid::new(-2.0, 6.0, 801).unwrap();
        let p = g.points();
        assert_eq!((p[0], p[800]), (-2.0, 6.0));
    }

    #[test]
    fn method_names_round_trip() {
        for m in DensityMethod::ALL {
            assert_eq!(m.as_str().parse::<DensityMethod>().unwrap(), m);
        }
        assert!("bayes".parse::<DensityMethod>().is_err());
    }

    #[test]
    fn csv_columns() {
        let params = DensityParams::figure(1).unwrap();
        let grid = Grid::new(0.0, 0.0, 1).unwrap();
        let csv = density_csv(DensityMethod::FiducialBayes, &params, &grid).unwrap();
        assert!(csv.starts_with("theta,density\n"));
        assert_eq!(csv.lines().count(), 2);
        let point = DensityParams { eps: 0.0, ..params };
        let csv = density_csv(DensityMethod::PureBayes, &point, &grid).unwrap();
        assert!(csv.starts_with("theta,density,spike_mass_at_zero\n"));
    }

    #[test]
    fn likelihood_curve_is_likelihood() {
        let params = DensityParams::figure(2).unwrap();
        let (c, spike) =
            density_curve(DensityMethod::Likelihood, &params, &Grid::new(2.576, 2.576, 1).unwrap()).unwrap();
        assert!(spike.is_none());
        assert!((c.points[0].1 - 0.398_942_280_401_432_7).abs() < 1e-15);
    }

    #[test]
    fn infinite_sigma0() {
        let params = DensityParams { sigma0: f64::INFINITY, ..DensityParams::figure(1).unwrap() };
        let grid = Grid::new(0.0, 1.0, 3).unwrap();
        assert!(density_csv(DensityMethod::FiducialBayes, &params, &grid).is_ok());
        assert!(density_csv(DensityMethod::PureBayes, &params, &grid).is_err());
        assert!(density_csv(DensityMethod::Mixture, &params, &grid).is_err());
    }
}
