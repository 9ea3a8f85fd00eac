#![allow(dead_code)]

use std::path::PathBuf;

use fidbayes::fiducial::CondFiducial;
use fidbayes::numerics::special::{bump_density, phi};
use fidbayes::scenario::Region;
use fidbayes::Scenario;
use rand::Rng;
use rand_distr::{Distribution, Normal};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

/// A published table entry.
#[derive(Debug, Clone, PartialEq)]
pub struct PublishedCell {
    pub method: String,
    pub epsilon: f64,
    pub axis_value: f64,
    pub p_in: f64,
}

pub fn published(id: u8) -> Vec<PublishedCell> {
    let path = data_dir().join(format!("published_table{id}.csv"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines()
        .skip(1)
        .map(|line| {
            let c: Vec<&str> = line.split(',').collect();
            PublishedCell {
                method: c[0].to_string(),
                epsilon: c[1].parse().unwrap(),
                axis_value: c[2].parse().unwrap(),
                p_in: c[3].parse().unwrap(),
            }
        })
        .collect()
}

/// One draw from a conditional fiducial density by rejection.
pub fn draw<R: Rng>(cf: &CondFiducial, rng: &mut R) -> f64 {
    let hyp = cf.hyp();
    let (lo, hi) = (hyp.theta_l(), hyp.theta_u());
    match cf.region() {
        Region::Outside => {
            let normal = Normal::new(cf.location(), cf.scale()).unwrap();
            loop {
                let t = normal.sample(rng);
                if !hyp.contains(t) {
                    return t;
                }
            }
        }
        Region::Inside if hyp.is_point() => lo,
        Region::Inside => {
            // uniform proposal; envelope bounds φ by its largest value on
            // the interval and h by its mode
            let nearest = cf.location().clamp(lo, hi);
            let phi_max = phi((nearest - cf.location()) / cf.scale());
            let bump_max = bump_density(0.5 * (lo + hi), lo, hi);
            let bound = cf.normalizer() * phi_max * (1.0 + cf.tau() * bump_max);
            loop {
                let t = rng.random_range(lo..hi);
                if rng.random::<f64>() * bound <= cf.pdf(t) {
                    return t;
                }
            }
        }
    }
}

/// Monte Carlo mean of g(x̄; θ) under `cf` and its standard error.
pub fn mc_expected_likelihood<R: Rng>(s: &Scenario, cf: &CondFiducial, draws: usize, rng: &mut R) -> (f64, f64) {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..draws {
        let g = s.likelihood_height(draw(cf, rng));
        sum += g;
        sum_sq += g * g;
    }
    let n = draws as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    (mean, (var / n).sqrt())
}
