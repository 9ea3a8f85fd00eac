mod common;

use fidbayes::fiducial::GpdSpec;
use fidbayes::fiducial_bayes::{fit, FidBayesConfig, TauRule};
use fidbayes::{IntervalHypothesis, Scenario};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DRAWS: usize = 200_000;

fn assert_close(label: &str, exact: f64, (mean, se): (f64, f64)) {
    assert!((mean - exact).abs() <= 4.0 * se, "{label}: exact {exact}, simulated {mean} ± {se}");
}

#[test]
fn expected_likelihoods_match_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cases = [
        (1.0, 2.575829, 0.1, GpdSpec::normal(0.0, 1.0).unwrap()),
        (1.0, 0.0, 0.2, GpdSpec::normal(0.0, 4.0).unwrap()),
        (0.5, -0.9, 0.3, GpdSpec::Flat),
        (4.0 / 50f64.sqrt(), 1.4, 0.05, GpdSpec::normal(1.5, 1.0).unwrap()),
    ];
    for (se, xbar, eps, gpd) in cases {
        let s = Scenario::from_se(se, xbar).unwrap();
        let hyp = IntervalHypothesis::symmetric(eps, 0.4).unwrap();
        let f = fit(&s, &FidBayesConfig::new(hyp, gpd)).unwrap();
        let label = format!("se={se} xbar={xbar} eps={eps}");
        assert_close(
            &format!("{label} outside"),
            f.e_out,
            common::mc_expected_likelihood(&s, &f.outside, DRAWS, &mut rng),
        );
        assert_close(
            &format!("{label} inside"),
            f.e_in,
            common::mc_expected_likelihood(&s, &f.inside, DRAWS, &mut rng),
        );
    }
}

#[test]
fn explicit_tau_matches_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let s = Scenario::from_se(1.0, 0.3).unwrap();
    let hyp = IntervalHypothesis::symmetric(0.5, 0.5).unwrap();
    for tau in [0.0, 0.5, 3.0] {
        let cfg = FidBayesConfig::new(hyp, GpdSpec::Flat).with_tau_rule(TauRule::Explicit(tau));
        let f = fit(&s, &cfg).unwrap();
        assert_close(&format!("tau={tau}"), f.e_in, common::mc_expected_likelihood(&s, &f.inside, DRAWS, &mut rng));
    }
}
