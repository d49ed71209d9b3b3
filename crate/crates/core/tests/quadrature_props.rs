use lerchfrac::complexfn::{c, gamma, principal_pow};
use lerchfrac::quadrature::{integrate_halfline, QuadratureConfig, SingularWeight};
use lerchfrac::ComplexValue;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

/// `Gamma(sigma) k^(-sigma)`, the exact value of `int v^(sigma-1) e^(-k v) dv`.
fn oracle(k: ComplexValue, sigma: ComplexValue) -> ComplexValue {
    gamma(sigma).unwrap() * principal_pow(k, -sigma).unwrap()
}

fn quad(k: ComplexValue, sigma: ComplexValue, cfg: &QuadratureConfig) -> (ComplexValue, f64) {
    let est = integrate_halfline(|v| (-k * v).exp(), SingularWeight::new(sigma).unwrap(), k.re, cfg).unwrap();
    (est.value, est.error)
}

fn grid() -> Vec<(ComplexValue, ComplexValue)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    (0..60)
        .map(|_| {
            let k = ComplexValue::from_polar(rng.gen_range(0.3..20.0), rng.gen_range(-1.2..1.2));
            let sigma = c(rng.gen_range(0.02..4.0), rng.gen_range(-2.0..2.0));
            (k, sigma)
        })
        .collect()
}

#[test]
fn oracle_agreement_on_grid() {
    let cfg = QuadratureConfig::default();
    for (k, sigma) in grid() {
        let (q, _) = quad(k, sigma, &cfg);
        let want = oracle(k, sigma);
        let err = (q - want).norm() / want.norm();
        assert!(err <= 10.0 * cfg.rel_tol, "k = {k}, sigma = {sigma}: {err:e}");
    }
}

#[test]
fn error_estimate_bounds_true_error() {
    let cfg = QuadratureConfig::default();
    let cases = grid();
    let covered = cases
        .iter()
        .filter(|(k, sigma)| {
            let (q, e) = quad(*k, *sigma, &cfg);
            (q - oracle(*k, *sigma)).norm() <= e
        })
        .count();
    assert!(covered * 100 >= 95 * cases.len(), "{covered}/{}", cases.len());
}

#[test]
fn halving_tolerance_does_not_increase_error() {
    // Once both runs sit at the rounding floor the comparison is meaningless, so
    // differences below a few hundred ulps of int |integrand| are ignored.
    for (k, sigma) in grid() {
        let want = oracle(k, sigma);
        let l1 = gamma(c(sigma.re, 0.0)).unwrap().re * k.re.powf(-sigma.re);
        let floor = 256.0 * f64::EPSILON * l1;
        let mut previous = f64::INFINITY;
        for tol in [1e-6, 5e-7, 2.5e-7, 1.25e-7, 1e-9, 5e-10] {
            let cfg = QuadratureConfig::default().with_rel_tol(tol);
            let (q, _) = quad(k, sigma, &cfg);
            let err = (q - want).norm();
            assert!(err <= previous.max(floor), "k = {k}, sigma = {sigma}, tol {tol}: {err:e} > {previous:e}");
            previous = previous.min(err.max(floor));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_exponentials(r in 0.3f64..20.0, phi in -1.2f64..1.2, sr in 0.05f64..4.0, si in -3.0f64..3.0) {
        let (k, sigma) = (ComplexValue::from_polar(r, phi), c(sr, si));
        let cfg = QuadratureConfig::default();
        let (q, _) = quad(k, sigma, &cfg);
        let want = oracle(k, sigma);
        prop_assert!((q - want).norm() <= 10.0 * cfg.rel_tol * want.norm());
    }
}
