//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use lerchfrac::complexfn::c;
use lerchfrac::differintegral::{
    rl_exp_closed, rl_numeric, rl_power_closed, Base, Contour, DifferintegralSpec, KernelDescriptor,
};
use lerchfrac::fracrep::{
    epsilon_ladder, interchange_check, lerch_theorem1, lerch_theorem2, riemann_halfpoint,
    riemann_limit, riemann_limit_sequence, LimitSequenceConfig,
};
use lerchfrac::harness::report::write_report;
use lerchfrac::harness::verify::{self, run_suite, Suite};
use lerchfrac::harness::ReportHeader;
use lerchfrac::lerch_ref::{lerch_series, riemann_series};
use lerchfrac::{ComplexValue, EvalSettings, QuadratureConfig};

const SEED: u64 = 7;

struct Outcome {
    pass: bool,
    detail: String,
}

fn rel(a: ComplexValue, b: ComplexValue) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn worst(values: &[f64]) -> f64 {
    values.iter().copied().fold(0.0, f64::max)
}

/// NaN residuals (failed evaluations) count as infinitely bad.
fn residual<E>(r: Result<f64, E>) -> f64 {
    r.map_or(f64::INFINITY, |v| if v.is_nan() { f64::INFINITY } else { v })
}

fn lemma2(cfg: &QuadratureConfig) -> Outcome {
    let errs: Vec<f64> = verify::lemma2_grid(SEED)
        .into_iter()
        .map(|(k, alpha, t)| {
            residual((|| {
                let spec = DifferintegralSpec::new(alpha, Base::MinusInfinity, KernelDescriptor::Exponential { k })
                    .with_contour(Contour::Horizontal);
                let q = rl_numeric(&spec, t, cfg)?.value;
                Ok::<_, lerchfrac::Error>(rel(q, rl_exp_closed(k, alpha, t)?))
            })())
        })
        .collect();
    let tight = errs.iter().filter(|&&e| e <= 1e-9).count();
    Outcome {
        pass: errs.len() == 50 && tight >= 48 && worst(&errs) <= 1e-7,
        detail: format!("{tight}/50 within 1e-9, worst relative error {:.2e}", worst(&errs)),
    }
}

fn lemma1(cfg: &QuadratureConfig) -> Outcome {
    let errs: Vec<f64> = verify::lemma1_grid(SEED)
        .into_iter()
        .map(|(beta, alpha, t)| {
            residual((|| {
                let spec = DifferintegralSpec::new(alpha, Base::Zero, KernelDescriptor::Power { beta });
                let q = rl_numeric(&spec, t, cfg)?.value;
                Ok::<_, lerchfrac::Error>(rel(q, rl_power_closed(beta, alpha, t)?))
            })())
        })
        .collect();
    Outcome {
        pass: errs.len() == 20 && worst(&errs) <= 1e-9,
        detail: format!("20 points, worst relative error {:.2e}", worst(&errs)),
    }
}

fn theorem1_triangle(settings: &EvalSettings) -> Outcome {
    let errs: Vec<f64> = verify::theorem1_grid(SEED)
        .iter()
        .map(|p| {
            residual((|| {
                let a = lerch_theorem1(p, &settings.quadrature)?.value;
                let b = lerch_series(p, settings.series_tol)?.value;
                Ok::<_, lerchfrac::Error>(rel(a, b))
            })())
        })
        .collect();
    Outcome {
        pass: errs.len() == 20 && worst(&errs) <= 1e-8,
        detail: format!("20 points, worst relative residual {:.2e}", worst(&errs)),
    }
}

fn conjugation(settings: &EvalSettings) -> Outcome {
    let series: Vec<f64> = verify::conjugation_series_grid(SEED)
        .iter()
        .map(|p| {
            residual((|| {
                let a = lerch_series(p, settings.series_tol)?.value;
                let b = lerch_series(&p.conjugate_reflected(), settings.series_tol)?.value;
                Ok::<_, lerchfrac::Error>((a.conj() - b).norm())
            })())
        })
        .collect();
    let grid = verify::conjugation_theorem1_grid(SEED);
    let below_one = grid.iter().filter(|p| p.s.re < 1.0).count();
    let rep: Vec<f64> = grid
        .iter()
        .map(|p| {
            residual((|| {
                let a = lerch_theorem1(p, &settings.quadrature)?.value;
                let b = lerch_theorem1(&p.conjugate_reflected(), &settings.quadrature)?.value;
                Ok::<_, lerchfrac::Error>((a.conj() - b).norm())
            })())
        })
        .collect();
    Outcome {
        pass: series.len() == 30 && worst(&series) <= 1e-12 && rep.len() == 10 && below_one > 0 && worst(&rep) <= 1e-6,
        detail: format!(
            "series worst {:.2e} over 30; representation worst {:.2e} over 10 ({below_one} with Re s < 1)",
            worst(&series),
            worst(&rep)
        ),
    }
}

fn riemann_corollary(settings: &EvalSettings) -> Outcome {
    let mut errs = Vec::new();
    for s in [2.0, 3.0, 4.0] {
        errs.push(residual((|| {
            let a = riemann_halfpoint(c(s, 0.0), &settings.limit, &settings.quadrature)?.value;
            let b = riemann_series(c(s, 0.0), settings.series_tol)?.value;
            Ok::<_, lerchfrac::Error>(rel(a, b))
        })()));
    }
    let neg = residual((|| {
        let a = riemann_halfpoint(c(-1.0, 0.0), &settings.limit, &settings.quadrature)?.value;
        let b = verify::zeta_minus_one_fixture(settings.series_tol)?;
        Ok::<_, lerchfrac::Error>((a - c(b, 0.0)).norm())
    })());
    // Every extrapolation used above must shrink its successive differences by 0.6 or better.
    let mut ladder_ratio = 0.0f64;
    let mut ladder_ok = true;
    for s in [2.0, 3.0, 4.0, -1.0] {
        match epsilon_ladder(0.5, c(1.0, 0.0), c(s, 0.0), &settings.limit, &settings.quadrature) {
            Ok(r) => {
                let floor = 100.0 * settings.quadrature.rel_tol * r.value.norm();
                for w in r.differences.windows(2) {
                    if w[1] > floor {
                        ladder_ratio = ladder_ratio.max(w[1] / w[0]);
                    }
                }
            }
            Err(_) => ladder_ok = false,
        }
    }
    Outcome {
        pass: worst(&errs) <= 1e-6 && neg <= 1e-5 && ladder_ok && ladder_ratio <= 0.6,
        detail: format!(
            "zeta(2..4) worst relative {:.2e}; zeta(-1) absolute {:.2e}; eps-ladder worst ratio {:.2e}",
            worst(&errs),
            neg,
            ladder_ratio
        ),
    }
}

fn riemann_limit_criterion(settings: &EvalSettings) -> Outcome {
    let seq = LimitSequenceConfig::default();
    let mut errs = Vec::new();
    for s in [2.0, 3.0, 4.0] {
        errs.push(residual((|| {
            let a = riemann_limit(c(s, 0.0), &seq, &settings.quadrature)?.value;
            let b = riemann_series(c(s, 0.0), settings.series_tol)?.value;
            Ok::<_, lerchfrac::Error>(rel(a, b))
        })()));
    }
    let near_one = riemann_limit_sequence(c(1.05, 0.0), &seq, &settings.quadrature);
    let gate = riemann_limit(c(1.0, 0.0), &seq, &settings.quadrature)
        .map_or_else(|e| e.is_domain(), |_| false);
    let near_detail = match &near_one {
        Ok(r) => format!("s = 1.05 Cauchy, last difference {:.2e}", r.error),
        Err(e) => format!("s = 1.05 failed: {e}"),
    };
    Outcome {
        pass: worst(&errs) <= 1e-5 && near_one.is_ok() && gate,
        detail: format!(
            "zeta(2..4) worst relative {:.2e}; {near_detail}; s = 1 rejected: {gate}",
            worst(&errs)
        ),
    }
}

fn theorem2_criterion(settings: &EvalSettings) -> Outcome {
    let t2: Vec<f64> = verify::theorem2_grid(SEED)
        .into_iter()
        .map(|(t, x, s)| {
            residual((|| {
                let a = lerch_theorem2(t, x, s, &settings.quadrature)?.value;
                let p = lerchfrac::EvaluationPoint::new(t, c(x, 0.0), c(1.0, 0.0) - s);
                let b = lerch_series(&p, settings.series_tol)?.value;
                Ok::<_, lerchfrac::Error>(rel(a, b))
            })())
        })
        .collect();
    let fe: Vec<f64> = verify::functional_equation_grid(SEED)
        .into_iter()
        .map(|(t, x, s)| {
            residual((|| {
                let a = lerch_theorem2(c(t, 0.0), x, s, &settings.quadrature)?.value;
                let b = verify::functional_equation_rhs(t, x, s, settings.series_tol)?;
                Ok::<_, lerchfrac::Error>(rel(a, b))
            })())
        })
        .collect();
    Outcome {
        pass: t2.len() == 6 && worst(&t2) <= 1e-5 && fe.len() == 4 && worst(&fe) <= 1e-5,
        detail: format!(
            "6 points worst relative {:.2e}; functional equation worst {:.2e} over 4",
            worst(&t2),
            worst(&fe)
        ),
    }
}

fn interchange(settings: &EvalSettings) -> Outcome {
    let (icfg, p) = verify::interchange_fixture();
    match interchange_check(&icfg, &p, &settings.quadrature) {
        Ok(rows) => {
            let res = worst(&rows.iter().map(|r| r.residual).collect::<Vec<_>>());
            let within = rows.iter().all(|r| r.tail_gap <= r.tail_bound + 1e-8);
            let q = (-2.0 * PI * p.t.im).exp();
            let last = rows.last().unwrap();
            let fixture = q.powi(40) / (1.0 - q) + 1e-8;
            let hyp = rows.windows(2).all(|w| w[1].hypothesis_sup <= w[0].hypothesis_sup);
            let ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
            Outcome {
                pass: ns == [0, 5, 10, 20, 40] && res <= 1e-9 && within && last.n == 40 && last.tail_gap <= fixture && hyp,
                detail: format!(
                    "N = {ns:?}: worst residual {res:.2e}; tail gap at N = 40 {:.2e} (bound {fixture:.2e}); hypothesis sup {:.2e} -> {:.2e}",
                    last.tail_gap,
                    rows[0].hypothesis_sup,
                    last.hypothesis_sup
                ),
            }
        }
        Err(e) => Outcome {
            pass: false,
            detail: format!("interchange check failed: {e}"),
        },
    }
}

fn report_bytes(settings: &EvalSettings) -> Vec<u8> {
    let records = run_suite(Suite::All, SEED, settings);
    let header = ReportHeader {
        suite: Suite::All.to_string(),
        grid_seed: SEED,
        records: records.len(),
    };
    let mut buf = Vec::new();
    write_report(&mut buf, &header, &records).unwrap();
    buf
}

fn determinism(settings: &EvalSettings) -> Outcome {
    let a = report_bytes(settings);
    let b = report_bytes(settings);
    Outcome {
        pass: a == b && !a.is_empty(),
        detail: format!("two reports of {} bytes, identical: {}", a.len(), a == b),
    }
}

fn main() {
    let settings = EvalSettings::default();
    let cfg = settings.quadrature.clone();
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 exponential closed form", Duration::from_secs(30), Box::new(|| lemma2(&cfg))),
        ("2 power closed form", Duration::from_secs(10), Box::new(|| lemma1(&cfg))),
        ("3 representation vs series", Duration::from_secs(60), Box::new(|| theorem1_triangle(&settings))),
        ("4 conjugation symmetry", Duration::from_secs(60), Box::new(|| conjugation(&settings))),
        ("5 zeta at the half point", Duration::from_secs(60), Box::new(|| riemann_corollary(&settings))),
        ("6 zeta as t -> 0", Duration::from_secs(60), Box::new(|| riemann_limit_criterion(&settings))),
        ("7 reflected representation", Duration::from_secs(120), Box::new(|| theorem2_criterion(&settings))),
        ("8 termwise differintegration", Duration::from_secs(30), Box::new(|| interchange(&settings))),
        ("9 deterministic reports", Duration::from_secs(120), Box::new(|| determinism(&settings))),
    ];
    let mut failures = 0;
    for (name, budget, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let pass = outcome.pass && elapsed <= *budget;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {name}: {} ({}; {:.2} s of {} s)",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
