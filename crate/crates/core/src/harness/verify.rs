//! Identity suites: every record compares two independent computations of the same value.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{ComparisonRecord, Measure};
use crate::complexfn::{c, gamma, ComplexValue};
use crate::differintegral::{
    rl_exp_closed, rl_numeric, rl_power_closed, Base, Contour, DifferintegralSpec, KernelDescriptor,
};
use crate::error::{Error, Result};
use crate::fracrep::{
    interchange_check, lerch_theorem1, lerch_theorem2, riemann_halfpoint, riemann_limit,
    InterchangeTestConfig,
};
use crate::lerch_ref::{lerch_series, riemann_series, EvaluationPoint};
use crate::method::EvalSettings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemmas,
    Theorem1,
    Conjugation,
    FunctionalEquation,
    Theorem2,
    Riemann,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Lemmas,
        Suite::Theorem1,
        Suite::Conjugation,
        Suite::FunctionalEquation,
        Suite::Theorem2,
        Suite::Riemann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Theorem1 => "theorem1",
            Suite::Conjugation => "conjugation",
            Suite::FunctionalEquation => "functional-equation",
            Suite::Theorem2 => "theorem2",
            Suite::Riemann => "riemann",
            Suite::All => "all",
        }
    }

    /// Independent random stream per suite, so `all` repeats each suite's grid.
    fn rng(self, seed: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self as u64 + 1);
        rng
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite {s:?}")))
    }
}

/// Tolerances of the individual checks.
pub mod tolerance {
    pub const LEMMA: f64 = 1e-9;
    pub const THEOREM1: f64 = 1e-8;
    pub const CONJUGATION_SERIES: f64 = 1e-12;
    pub const CONJUGATION_THEOREM1: f64 = 1e-6;
    pub const FUNCTIONAL_EQUATION: f64 = 1e-5;
    pub const THEOREM2: f64 = 1e-5;
    pub const RIEMANN_HALFPOINT: f64 = 1e-6;
    pub const RIEMANN_NEGATIVE: f64 = 1e-5;
    pub const RIEMANN_LIMIT: f64 = 1e-5;
    pub const INTERCHANGE: f64 = 1e-9;
}

/// Runs a suite; records come back in a fixed order independent of scheduling.
pub fn run_suite(suite: Suite, seed: u64, settings: &EvalSettings) -> Vec<ComparisonRecord> {
    match suite {
        Suite::Lemmas => lemmas(seed, settings),
        Suite::Theorem1 => theorem1(seed, settings),
        Suite::Conjugation => conjugation(seed, settings),
        Suite::FunctionalEquation => functional_equation(seed, settings),
        Suite::Theorem2 => theorem2(seed, settings),
        Suite::Riemann => riemann(settings),
        Suite::All => Suite::EACH
            .iter()
            .flat_map(|s| run_suite(*s, seed, settings))
            .collect(),
    }
}

type Job = Box<dyn Fn() -> ComparisonRecord + Send + Sync>;

fn run(jobs: Vec<Job>) -> Vec<ComparisonRecord> {
    jobs.par_iter().map(|job| job()).collect()
}

/// Evaluates both sides and compares them, turning errors into records.
fn pair<A, B>(
    suite: &'static str,
    point: EvaluationPoint,
    methods: (&'static str, &'static str),
    measure: Measure,
    tolerance: f64,
    a: A,
    b: B,
) -> ComparisonRecord
where
    A: FnOnce() -> Result<ComplexValue>,
    B: FnOnce() -> Result<ComplexValue>,
{
    match a().and_then(|va| b().map(|vb| (va, vb))) {
        Ok((va, vb)) => ComparisonRecord::compare(suite, point, methods, va, vb, measure, tolerance),
        Err(e) => ComparisonRecord::failed(suite, point, methods, measure, tolerance, &e),
    }
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

/// Random `(k, alpha, t)` with `Re k > 0`, so `e^(k u)` decays along the horizontal ray.
pub fn lemma2_grid(seed: u64) -> Vec<(ComplexValue, ComplexValue, ComplexValue)> {
    let mut rng = Suite::Lemmas.rng(seed);
    (0..50)
        .map(|_| {
            let k = ComplexValue::from_polar(uniform(&mut rng, 0.5, 10.0), uniform(&mut rng, -1.3, 1.3));
            let alpha = c(uniform(&mut rng, -3.0, 1.5), uniform(&mut rng, -1.0, 1.0));
            let t = c(uniform(&mut rng, -1.0, 1.0), uniform(&mut rng, -1.0, 1.0));
            (k, alpha, t)
        })
        .collect()
}

/// Random `(beta, alpha, t)` for the base-zero power kernel.
pub fn lemma1_grid(seed: u64) -> Vec<(ComplexValue, ComplexValue, ComplexValue)> {
    let mut rng = Suite::Lemmas.rng(seed.wrapping_add(1));
    (0..20)
        .map(|_| {
            let beta = c(uniform(&mut rng, -0.5, 3.0), uniform(&mut rng, -1.0, 1.0));
            let alpha = c(uniform(&mut rng, -3.0, 1.5), uniform(&mut rng, -1.0, 1.0));
            let t = c(uniform(&mut rng, 0.2, 3.0), uniform(&mut rng, -2.0, 2.0));
            (beta, alpha, t)
        })
        .collect()
}

pub fn interchange_fixture() -> (InterchangeTestConfig, EvaluationPoint) {
    (
        InterchangeTestConfig {
            disc_center: c(0.2, 0.6),
            disc_radius: 0.2,
            delta: 0.5,
            partial_terms: vec![0, 5, 10, 20, 40],
        },
        EvaluationPoint::new(c(0.2, 0.6), c(0.7, -0.4), c(2.5, 0.0)),
    )
}

fn lemmas(seed: u64, settings: &EvalSettings) -> Vec<ComparisonRecord> {
    const SUITE: &str = "lemmas";
    let mut jobs: Vec<Job> = Vec::new();
    for (k, alpha, t) in lemma2_grid(seed) {
        let cfg = settings.quadrature.clone();
        jobs.push(Box::new(move || {
            pair(
                SUITE,
                EvaluationPoint::new(t, k, alpha),
                ("exponential-quadrature", "exponential-closed-form"),
                Measure::Relative,
                tolerance::LEMMA,
                || {
                    let spec = DifferintegralSpec::new(alpha, Base::MinusInfinity, KernelDescriptor::Exponential { k })
                        .with_contour(Contour::Horizontal);
                    Ok(rl_numeric(&spec, t, &cfg)?.value)
                },
                || rl_exp_closed(k, alpha, t),
            )
        }));
    }
    for (beta, alpha, t) in lemma1_grid(seed) {
        let cfg = settings.quadrature.clone();
        jobs.push(Box::new(move || {
            pair(
                SUITE,
                EvaluationPoint::new(t, beta, alpha),
                ("power-quadrature", "power-closed-form"),
                Measure::Relative,
                tolerance::LEMMA,
                || {
                    let spec = DifferintegralSpec::new(alpha, Base::Zero, KernelDescriptor::Power { beta });
                    Ok(rl_numeric(&spec, t, &cfg)?.value)
                },
                || rl_power_closed(beta, alpha, t),
            )
        }));
    }
    let mut records = run(jobs);

    let (icfg, p) = interchange_fixture();
    match interchange_check(&icfg, &p, &settings.quadrature) {
        Ok(rows) => {
            for row in rows {
                let mut r = ComparisonRecord::compare(
                    SUITE,
                    p,
                    ("partial-sum-quadrature", "termwise-closed-form"),
                    row.partial_numeric,
                    row.partial_termwise,
                    Measure::Absolute,
                    tolerance::INTERCHANGE,
                );
                r.note = Some(format!("N = {}", row.n));
                records.push(r);
                let mut r = ComparisonRecord::compare(
                    SUITE,
                    p,
                    ("termwise-closed-form", "kernel-quadrature"),
                    row.partial_termwise,
                    row.whole,
                    Measure::Absolute,
                    row.tail_bound + 1e-8,
                );
                r.note = Some(format!("N = {}, tolerance is the geometric tail bound + 1e-8", row.n));
                records.push(r);
            }
        }
        Err(e) => records.push(ComparisonRecord::failed(
            SUITE,
            p,
            ("partial-sum-quadrature", "termwise-closed-form"),
            Measure::Absolute,
            tolerance::INTERCHANGE,
            &e,
        )),
    }
    records
}

/// Points with `Re s in (1.2, 4)`, `Im t in (0.3, 1)`, `Im x in (-1, -0.2)`.
pub fn theorem1_grid(seed: u64) -> Vec<EvaluationPoint> {
    let mut rng = Suite::Theorem1.rng(seed);
    (0..20)
        .map(|_| {
            EvaluationPoint::new(
                c(uniform(&mut rng, -0.5, 0.5), uniform(&mut rng, 0.3, 1.0)),
                c(uniform(&mut rng, 0.2, 2.0), uniform(&mut rng, -1.0, -0.2)),
                c(uniform(&mut rng, 1.2, 4.0), uniform(&mut rng, -1.0, 1.0)),
            )
        })
        .collect()
}

fn theorem1(seed: u64, settings: &EvalSettings) -> Vec<ComparisonRecord> {
    let jobs: Vec<Job> = theorem1_grid(seed)
        .into_iter()
        .map(|p| {
            let settings = settings.clone();
            Box::new(move || {
                pair(
                    "theorem1",
                    p,
                    ("theorem1", "series"),
                    Measure::Relative,
                    tolerance::THEOREM1,
                    || Ok(lerch_theorem1(&p, &settings.quadrature)?.value),
                    || Ok(lerch_series(&p, settings.series_tol)?.value),
                )
            }) as Job
        })
        .collect();
    run(jobs)
}

/// 30 points of the series domain with `Im t > 0`.
pub fn conjugation_series_grid(seed: u64) -> Vec<EvaluationPoint> {
    let mut rng = Suite::Conjugation.rng(seed);
    (0..30)
        .map(|_| {
            EvaluationPoint::new(
                c(uniform(&mut rng, -1.0, 1.0), uniform(&mut rng, 0.05, 1.0)),
                c(uniform(&mut rng, 0.2, 3.0), uniform(&mut rng, -1.0, 1.0)),
                c(uniform(&mut rng, -2.0, 5.0), uniform(&mut rng, -3.0, 3.0)),
            )
        })
        .collect()
}

/// 10 points for the representation, half of them with `Re s in (-1, 1)`.
pub fn conjugation_theorem1_grid(seed: u64) -> Vec<EvaluationPoint> {
    let mut rng = Suite::Conjugation.rng(seed.wrapping_add(1));
    (0..10)
        .map(|j| {
            let s_re = if j % 2 == 0 {
                uniform(&mut rng, -1.0, 1.0)
            } else {
                uniform(&mut rng, 1.2, 3.0)
            };
            EvaluationPoint::new(
                c(uniform(&mut rng, -0.5, 0.5), uniform(&mut rng, 0.3, 1.0)),
                c(uniform(&mut rng, 0.3, 2.0), uniform(&mut rng, -0.8, 0.8)),
                c(s_re, uniform(&mut rng, -1.0, 1.0)),
            )
        })
        .collect()
}

fn conjugation(seed: u64, settings: &EvalSettings) -> Vec<ComparisonRecord> {
    const SUITE: &str = "conjugation";
    let mut jobs: Vec<Job> = Vec::new();
    for p in conjugation_series_grid(seed) {
        let tol = settings.series_tol;
        jobs.push(Box::new(move || {
            pair(
                SUITE,
                p,
                ("series-conjugated", "series-reflected"),
                Measure::Absolute,
                tolerance::CONJUGATION_SERIES,
                || Ok(lerch_series(&p, tol)?.value.conj()),
                || Ok(lerch_series(&p.conjugate_reflected(), tol)?.value),
            )
        }));
    }
    for p in conjugation_theorem1_grid(seed) {
        let cfg = settings.quadrature.clone();
        jobs.push(Box::new(move || {
            pair(
                SUITE,
                p,
                ("theorem1-conjugated", "theorem1-reflected"),
                Measure::Absolute,
                tolerance::CONJUGATION_THEOREM1,
                || Ok(lerch_theorem1(&p, &cfg)?.value.conj()),
                || Ok(lerch_theorem1(&p.conjugate_reflected(), &cfg)?.value),
            )
        }));
    }
    run(jobs)
}

/// Right-hand side of the functional equation for `L(t, x, 1 - s)`:
/// `Gamma(s) (2 pi)^(-s) [e^(i pi s/2 - 2 pi i t x) L(-x, t, s) + e^(-i pi s/2 + 2 pi i x (1-t)) L(x, 1-t, s)]`.
pub fn functional_equation_rhs(t: f64, x: f64, s: ComplexValue, series_tol: f64) -> Result<ComplexValue> {
    let i_pi = c(0.0, PI);
    let first = lerch_series(&EvaluationPoint::new(c(-x, 0.0), c(t, 0.0), s), series_tol)?.value;
    let second = lerch_series(&EvaluationPoint::new(c(x, 0.0), c(1.0 - t, 0.0), s), series_tol)?.value;
    let a = (i_pi * s * 0.5 - i_pi * 2.0 * t * x).exp();
    let b = (-i_pi * s * 0.5 + i_pi * 2.0 * x * (1.0 - t)).exp();
    let scale = gamma(s)? * (-s * (2.0 * PI).ln()).exp();
    Ok(scale * (a * first + b * second))
}

/// `(t, x, s)` with `t, x in (0, 1)` and `Re s >= 2.5`.
pub fn functional_equation_grid(seed: u64) -> Vec<(f64, f64, ComplexValue)> {
    let mut rng = Suite::FunctionalEquation.rng(seed);
    (0..4)
        .map(|_| {
            (
                uniform(&mut rng, 0.15, 0.85),
                uniform(&mut rng, 0.15, 0.85),
                c(uniform(&mut rng, 2.5, 3.5), uniform(&mut rng, -0.5, 0.5)),
            )
        })
        .collect()
}

fn functional_equation(seed: u64, settings: &EvalSettings) -> Vec<ComparisonRecord> {
    let jobs: Vec<Job> = functional_equation_grid(seed)
        .into_iter()
        .map(|(t, x, s)| {
            let settings = settings.clone();
            Box::new(move || {
                pair(
                    "functional-equation",
                    EvaluationPoint::new(c(t, 0.0), c(x, 0.0), c(1.0, 0.0) - s),
                    ("theorem2", "functional-equation-series"),
                    Measure::Relative,
                    tolerance::FUNCTIONAL_EQUATION,
                    || Ok(lerch_theorem2(c(t, 0.0), x, s, &settings.quadrature)?.value),
                    || functional_equation_rhs(t, x, s, settings.series_tol),
                )
            }) as Job
        })
        .collect();
    run(jobs)
}

/// Six points: `x in {0.25, 0.4, 0.6}` against `s in {-0.5, -1.5}`, `Im t` alternating
/// between 0.4 and 0.7, `Re t` random.
pub fn theorem2_grid(seed: u64) -> Vec<(ComplexValue, f64, ComplexValue)> {
    let mut rng = Suite::Theorem2.rng(seed);
    let mut out = Vec::new();
    for (i, x) in [0.25, 0.4, 0.6].into_iter().enumerate() {
        for (j, s) in [-0.5, -1.5].into_iter().enumerate() {
            let im = if (i + j) % 2 == 0 { 0.4 } else { 0.7 };
            out.push((c(uniform(&mut rng, -0.5, 0.5), im), x, c(s, 0.0)));
        }
    }
    out
}

fn theorem2(seed: u64, settings: &EvalSettings) -> Vec<ComparisonRecord> {
    let jobs: Vec<Job> = theorem2_grid(seed)
        .into_iter()
        .map(|(t, x, s)| {
            let settings = settings.clone();
            let p = EvaluationPoint::new(t, c(x, 0.0), c(1.0, 0.0) - s);
            Box::new(move || {
                pair(
                    "theorem2",
                    p,
                    ("theorem2", "series"),
                    Measure::Relative,
                    tolerance::THEOREM2,
                    || Ok(lerch_theorem2(t, x, s, &settings.quadrature)?.value),
                    || Ok(lerch_series(&p, settings.series_tol)?.value),
                )
            }) as Job
        })
        .collect();
    run(jobs)
}

/// `zeta(-1)` from the series value of `zeta(2)` through
/// `zeta(1 - s) = 2 (2 pi)^(-s) cos(pi s / 2) Gamma(s) zeta(s)` at `s = 2`.
pub fn zeta_minus_one_fixture(series_tol: f64) -> Result<f64> {
    let z2 = riemann_series(c(2.0, 0.0), series_tol)?.value.re;
    // Gamma(2) = 1
    Ok(2.0 * (2.0 * PI).powi(-2) * PI.cos() * z2)
}

fn riemann(settings: &EvalSettings) -> Vec<ComparisonRecord> {
    const SUITE: &str = "riemann";
    let zeta_point = |s: f64| EvaluationPoint::new(c(0.0, 0.0), c(1.0, 0.0), c(s, 0.0));
    let mut jobs: Vec<Job> = Vec::new();
    for s in [2.0, 3.0, 4.0] {
        let settings = settings.clone();
        jobs.push(Box::new(move || {
            pair(
                SUITE,
                zeta_point(s),
                ("riemann-halfpoint", "series"),
                Measure::Relative,
                tolerance::RIEMANN_HALFPOINT,
                || Ok(riemann_halfpoint(c(s, 0.0), &settings.limit, &settings.quadrature)?.value),
                || Ok(riemann_series(c(s, 0.0), settings.series_tol)?.value),
            )
        }));
    }
    {
        let settings = settings.clone();
        jobs.push(Box::new(move || {
            pair(
                SUITE,
                zeta_point(-1.0),
                ("riemann-halfpoint", "reflected-series"),
                Measure::Absolute,
                tolerance::RIEMANN_NEGATIVE,
                || Ok(riemann_halfpoint(c(-1.0, 0.0), &settings.limit, &settings.quadrature)?.value),
                || Ok(c(zeta_minus_one_fixture(settings.series_tol)?, 0.0)),
            )
        }));
    }
    for s in [2.0, 3.0, 4.0, 1.05] {
        let settings = settings.clone();
        jobs.push(Box::new(move || {
            pair(
                SUITE,
                zeta_point(s),
                ("riemann-limit", "series"),
                Measure::Relative,
                tolerance::RIEMANN_LIMIT,
                || Ok(riemann_limit(c(s, 0.0), &settings.sequence, &settings.quadrature)?.value),
                || Ok(riemann_series(c(s, 0.0), settings.series_tol)?.value),
            )
        }));
    }
    run(jobs)
}
