//! `L(t, x, s)` as a fractional differintegral of an elementary kernel:
//!
//! `L(t, x, s) = (2 pi)^s e^(i pi (s/2 - 2 t x)) D^(-s) [e^(2 pi i u x) / (1 - e^(2 pi i u))](t)`
//!
//! with base point `-inf`, together with its real-`t` limit, the two Riemann
//! zeta specializations and the reflected representation of `L(t, x, 1 - s)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complexfn::{c, gamma, on_branch_cut, principal_pow, ComplexValue};
use crate::differintegral::{
    rl_exp_closed, rl_numeric, Base, Contour, DifferintegralSpec, KernelDescriptor,
};
use crate::error::{Error, Result};
use crate::extrapolate::{richardson_diagonal, CauchyCheck, Extrapolated};
use crate::lerch_ref::EvaluationPoint;
use crate::quadrature::{Estimate, QuadratureConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtrapolationMode {
    Richardson,
    None,
}

/// The imaginary offsets `eps_k = eps0 / ratio^k` used to approach real `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitContourConfig {
    pub eps0: f64,
    pub levels: usize,
    pub ratio: f64,
    pub extrapolation: ExtrapolationMode,
}

impl Default for LimitContourConfig {
    fn default() -> Self {
        Self {
            eps0: 1e-2,
            levels: 6,
            ratio: 2.0,
            extrapolation: ExtrapolationMode::Richardson,
        }
    }
}

impl LimitContourConfig {
    pub fn validate(&self) -> Result<()> {
        if self.eps0 > 0.0 && self.levels >= 2 && self.ratio > 1.0 && self.eps0.is_finite() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "limit contour needs eps0 > 0, levels >= 2, ratio > 1; got {self:?}"
            )))
        }
    }
}

/// The real sequence `t_k = t0 / ratio^k` along which `L(t, 1, s) -> zeta(s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSequenceConfig {
    pub t0: f64,
    pub levels: usize,
    pub ratio: f64,
}

impl Default for LimitSequenceConfig {
    fn default() -> Self {
        Self {
            t0: 0.25,
            levels: 10,
            ratio: 2.0,
        }
    }
}

impl LimitSequenceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.t0 > 0.0 && self.t0 < 1.0 && self.levels >= 3 && self.ratio > 1.0 {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "limit sequence needs 0 < t0 < 1, levels >= 3, ratio > 1; got {self:?}"
            )))
        }
    }
}

/// `(2 pi)^s exp(i pi (s/2 - 2 t x))`.
pub fn theorem1_prefactor(t: ComplexValue, x: ComplexValue, s: ComplexValue) -> ComplexValue {
    (s * (2.0 * PI).ln() + c(0.0, PI) * (s * 0.5 - t * x * 2.0)).exp()
}

fn check_finite(values: &[ComplexValue], what: &'static str) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

fn check_x(x: ComplexValue) -> Result<()> {
    if on_branch_cut(x) {
        return Err(Error::domain(format!("x = {x} lies on (-inf, 0]")));
    }
    Ok(())
}

/// `D^(-s)` of the Lerch kernel with parameter `param`, base `-inf`, at `u`.
fn lerch_kernel_differintegral(
    param: ComplexValue,
    s: ComplexValue,
    u: ComplexValue,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let spec = DifferintegralSpec::new(-s, Base::MinusInfinity, KernelDescriptor::Lerch { x: param })
        .with_contour(Contour::Auto);
    rl_numeric(&spec, u, cfg)
}

fn represent(t: ComplexValue, x: ComplexValue, s: ComplexValue, cfg: &QuadratureConfig) -> Result<Estimate> {
    let d = lerch_kernel_differintegral(x, s, t, cfg)?;
    let out = d.scale(theorem1_prefactor(t, x, s));
    check_finite(&[out.value], "fractional representation")?;
    Ok(out)
}

/// `L(t, x, s)` for `Im t > 0`, `x` off `(-inf, 0]`, from the differintegral.
pub fn lerch_theorem1(p: &EvaluationPoint, cfg: &QuadratureConfig) -> Result<Estimate> {
    check_finite(&[p.t, p.x, p.s], "evaluation point")?;
    if !(p.t.im > 0.0) {
        return Err(Error::domain(format!("needs Im(t) > 0, got t = {}", p.t)));
    }
    check_x(p.x)?;
    represent(p.t, p.x, p.s, cfg)
}

/// `L(t, x, s)` at real non-integer `t`, from a ray leaving the real axis at `t`.
/// This is the `eps -> 0+` limit evaluated in one step.
pub fn lerch_theorem1_on_axis(
    t: f64,
    x: ComplexValue,
    s: ComplexValue,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    check_finite(&[c(t, 0.0), x, s], "evaluation point")?;
    if t == t.round() {
        return Err(Error::domain(format!("t = {t} is an integer, where the kernel has a pole")));
    }
    check_x(x)?;
    represent(c(t, 0.0), x, s, cfg)
}

/// Richardson table over the `eps` ladder for `L(t + i eps, x, s)`.
pub fn epsilon_ladder(
    t: f64,
    x: ComplexValue,
    s: ComplexValue,
    lcfg: &LimitContourConfig,
    cfg: &QuadratureConfig,
) -> Result<Extrapolated> {
    lcfg.validate()?;
    check_finite(&[c(t, 0.0), x, s], "evaluation point")?;
    if t == t.round() {
        return Err(Error::domain(format!("t = {t} is an integer, where the kernel has a pole")));
    }
    check_x(x)?;
    let mut values = Vec::with_capacity(lcfg.levels);
    let mut quad_err = 0.0f64;
    for k in 0..lcfg.levels {
        let eps = lcfg.eps0 / lcfg.ratio.powi(k as i32);
        let est = represent(c(t, eps), x, s, cfg)?;
        quad_err = quad_err.max(est.error);
        values.push(est.value);
    }
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    match lcfg.extrapolation {
        ExtrapolationMode::Richardson => {
            let exponents: Vec<ComplexValue> =
                (1..lcfg.levels).map(|j| c(j as f64, 0.0)).collect();
            let diagonal = richardson_diagonal(&values, lcfg.ratio, &exponents);
            let check = CauchyCheck {
                stride: 1,
                max_ratio: 0.6,
                noise_floor: 100.0 * cfg.rel_tol * scale + 10.0 * quad_err,
                checked: lcfg.levels,
            };
            let mut out = check.apply(diagonal)?;
            out.error += amplification(lcfg.ratio, &exponents) * quad_err;
            Ok(out)
        }
        ExtrapolationMode::None => {
            let n = values.len();
            let spread = (values[n - 1] - values[n - 2]).norm();
            Ok(Extrapolated {
                value: values[n - 1],
                error: spread + quad_err,
                diagonal: values,
                differences: vec![spread],
            })
        }
    }
}

/// Bound on how much the Richardson table magnifies per-level errors.
fn amplification(ratio: f64, exponents: &[ComplexValue]) -> f64 {
    exponents
        .iter()
        .map(|p| {
            let f = (p * ratio.ln()).exp();
            (f.norm() + 1.0) / (f - 1.0).norm()
        })
        .product()
}

/// `L(t, x, s)` at real non-integer `t` as the limit of `L(t + i eps, x, s)`.
pub fn lerch_theorem1_real_t(
    t: f64,
    x: ComplexValue,
    s: ComplexValue,
    lcfg: &LimitContourConfig,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let out = epsilon_ladder(t, x, s, lcfg, cfg)?;
    Ok(Estimate::new(out.value, out.error))
}

/// `zeta(s) = L(1/2, 1, s) / (1 - 2^(1-s))`.
pub fn riemann_halfpoint(
    s: ComplexValue,
    lcfg: &LimitContourConfig,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    check_finite(&[s], "s")?;
    if s == c(1.0, 0.0) {
        return Err(Error::domain("s = 1 is the pole of zeta"));
    }
    let factor = c(1.0, 0.0) - principal_pow(c(2.0, 0.0), c(1.0, 0.0) - s)?;
    if factor.norm() < 1e-12 {
        return Err(Error::domain(format!(
            "2^(1-s) = 1 at s = {s}, so L(1/2, 1, s) carries no information about zeta(s)"
        )));
    }
    let l = lerch_theorem1_real_t(0.5, c(1.0, 0.0), s, lcfg, cfg)?;
    Ok(l.scale(factor.inv()))
}

/// Powers `h^p` in the expansion of `L(h, 1, s)` about `h = 0`: `s - 1 + j` from
/// the singular part and the integers from the regular part.
fn small_t_exponents(s: ComplexValue, count: usize) -> Vec<ComplexValue> {
    let mut ex: Vec<ComplexValue> = (0..count)
        .map(|j| s - 1.0 + j as f64)
        .chain((1..=count).map(|j| c(j as f64, 0.0)))
        .collect();
    ex.sort_by(|a, b| a.re.total_cmp(&b.re));
    ex.truncate(count);
    ex
}

/// Richardson table for `L(t_k, 1, s)`, `t_k -> 0+`.
pub fn riemann_limit_sequence(
    s: ComplexValue,
    seq: &LimitSequenceConfig,
    cfg: &QuadratureConfig,
) -> Result<Extrapolated> {
    seq.validate()?;
    check_finite(&[s], "s")?;
    if !(s.re > 1.0) {
        return Err(Error::domain(format!(
            "the limit t -> 0 is only taken for Re(s)>1; got s = {s}"
        )));
    }
    let mut values = Vec::with_capacity(seq.levels);
    let mut quad_err = 0.0f64;
    for k in 0..seq.levels {
        let t = seq.t0 / seq.ratio.powi(k as i32);
        let est = lerch_theorem1_on_axis(t, c(1.0, 0.0), s, cfg)?;
        quad_err = quad_err.max(est.error);
        values.push(est.value);
    }
    let exponents = small_t_exponents(s, seq.levels - 1);
    let diagonal = richardson_diagonal(&values, seq.ratio, &exponents);
    let scale = diagonal.last().map_or(0.0, |v| v.norm());
    let amp = amplification(seq.ratio, &exponents);
    // The first entries are still far from the asymptotic regime.
    let check = CauchyCheck {
        stride: 1,
        max_ratio: 0.6,
        noise_floor: 100.0 * cfg.rel_tol * scale + 10.0 * amp * quad_err,
        checked: 4,
    };
    let mut out = check.apply(diagonal)?;
    out.error += amp * quad_err;
    Ok(out)
}

/// `zeta(s) = lim_(t -> 0+) L(t, 1, s)` for `Re s > 1`.
pub fn riemann_limit(
    s: ComplexValue,
    seq: &LimitSequenceConfig,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let out = riemann_limit_sequence(s, seq, cfg)?;
    Ok(Estimate::new(out.value, out.error))
}

/// `L(t, x, 1 - s) = Gamma(s) [e^(i pi s) D^(-s) K_t(-x) + D^(-s) K_(1-t)(x)]`
/// with `K_p(u) = e^(2 pi i u p) / (1 - e^(2 pi i u))`, both differintegrals taken
/// at real points through a ray leaving the real axis upwards.
///
/// Accepts `Im t > 0`, or real `t` in `(0, 1)`, and `x` in `(0, 1)`.
pub fn lerch_theorem2(
    t: ComplexValue,
    x: f64,
    s: ComplexValue,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    check_finite(&[t, c(x, 0.0), s], "evaluation point")?;
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!("needs x in (0, 1), got x = {x}")));
    }
    let real_ok = t.im == 0.0 && t.re > 0.0 && t.re < 1.0;
    if !(t.im > 0.0 || real_ok) {
        return Err(Error::domain(format!(
            "needs Im(t) > 0 or real t in (0, 1), got t = {t}"
        )));
    }
    let g = gamma(s)?;
    let first = lerch_kernel_differintegral(t, s, c(-x, 0.0), cfg)?;
    let second = lerch_kernel_differintegral(c(1.0, 0.0) - t, s, c(x, 0.0), cfg)?;
    let rotation = (c(0.0, PI) * s).exp();
    let out = (first.scale(rotation) + second).scale(g);
    check_finite(&[out.value], "reflected representation")?;
    Ok(out)
}

/// A disc `|t - c| <= R` on which the partial sums of
/// `sum_n e^(2 pi i t (n + x))` are differintegrated term by term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterchangeTestConfig {
    pub disc_center: ComplexValue,
    pub disc_radius: f64,
    pub delta: f64,
    pub partial_terms: Vec<usize>,
}

impl InterchangeTestConfig {
    pub fn validate(&self) -> Result<()> {
        let corner = self.disc_center - self.disc_radius;
        if corner.im == 0.0 && corner.re >= 0.0 {
            return Err(Error::domain(format!(
                "the ray start c - R = {corner} must not lie on [0, inf)"
            )));
        }
        if !(self.delta > 0.0 && self.disc_radius > 0.0) {
            return Err(Error::domain("needs delta > 0 and R > 0"));
        }
        if !(self.disc_center.im - self.disc_radius > 0.0) {
            return Err(Error::domain("the disc must lie in Im(t) > 0"));
        }
        Ok(())
    }

    fn samples(&self, t: ComplexValue) -> Vec<ComplexValue> {
        let mut out = vec![t];
        for j in 0..4 {
            out.push(self.disc_center + ComplexValue::from_polar(self.disc_radius, j as f64 * 0.5 * PI));
        }
        out
    }
}

/// One partial-sum size of the interchange check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterchangeRow {
    pub n: usize,
    /// Largest `|D(sum_(n<=N) f_n) - sum_(n<=N) D f_n|` over `t` and four points on the circle.
    pub residual: f64,
    /// `|sum_(n<=N) D f_n - D f|` at `t`.
    pub tail_gap: f64,
    /// Geometric bound for the neglected terms `sum_(n>N) |D f_n(t)|`.
    pub tail_bound: f64,
    /// Sampled `sup |tail_N(u)| |u^(delta + s)|` on the ray from `c - R`.
    pub hypothesis_sup: f64,
    /// Quadrature of the partial sum at `t`.
    pub partial_numeric: ComplexValue,
    /// Termwise closed forms of the partial sum at `t`.
    pub partial_termwise: ComplexValue,
    /// Quadrature of the whole kernel at `t`.
    pub whole: ComplexValue,
}

fn exponent_rate(n: usize, x: ComplexValue) -> ComplexValue {
    c(0.0, 2.0 * PI) * (x + n as f64)
}

pub fn interchange_check(
    icfg: &InterchangeTestConfig,
    p: &EvaluationPoint,
    cfg: &QuadratureConfig,
) -> Result<Vec<InterchangeRow>> {
    icfg.validate()?;
    if !(p.t.im > 0.0 && p.x.im < 0.0 && p.s.re > 1.0) {
        return Err(Error::domain(
            "the interchange check needs Im(t) > 0, Im(x) < 0 and Re(s) > 1",
        ));
    }
    if (p.t - icfg.disc_center).norm() > icfg.disc_radius {
        return Err(Error::domain("t must lie in the disc"));
    }
    let samples = icfg.samples(p.t);
    let whole = DifferintegralSpec::new(-p.s, Base::MinusInfinity, KernelDescriptor::Lerch { x: p.x })
        .with_contour(Contour::Horizontal);
    let full = rl_numeric(&whole, p.t, cfg)?.value;
    let mut rows = Vec::with_capacity(icfg.partial_terms.len());
    for &n in &icfg.partial_terms {
        let ks: Vec<ComplexValue> = (0..=n).map(|j| exponent_rate(j, p.x)).collect();
        let spec = DifferintegralSpec::new(
            -p.s,
            Base::MinusInfinity,
            KernelDescriptor::ExponentialSum { ks: ks.clone() },
        )
        .with_contour(Contour::Horizontal);
        let mut residual = 0.0f64;
        let mut termwise_at_t = c(0.0, 0.0);
        let mut numeric_at_t = c(0.0, 0.0);
        for (i, &u) in samples.iter().enumerate() {
            let numeric = rl_numeric(&spec, u, cfg)?.value;
            let mut closed = c(0.0, 0.0);
            for &k in &ks {
                closed += rl_exp_closed(k, -p.s, u)?;
            }
            residual = residual.max((numeric - closed).norm());
            if i == 0 {
                termwise_at_t = closed;
                numeric_at_t = numeric;
            }
        }
        rows.push(InterchangeRow {
            n,
            residual,
            tail_gap: (termwise_at_t - full).norm(),
            tail_bound: termwise_tail_bound(n, p),
            hypothesis_sup: hypothesis_sup(n, icfg, p),
            partial_numeric: numeric_at_t,
            partial_termwise: termwise_at_t,
            whole: full,
        });
    }
    Ok(rows)
}

/// `sum_(n>N) |k_n^(-s) e^(k_n t)|` with `k_n = 2 pi i (n + x)`.
fn termwise_tail_bound(big_n: usize, p: &EvaluationPoint) -> f64 {
    let q = (-2.0 * PI * p.t.im).exp();
    let first = exponent_rate(big_n + 1, p.x);
    // |k^(-s)| = |k|^(-Re s) e^(Im s arg k); |k| grows and arg k tends to pi/2.
    let arg_worst = (p.s.im * first.arg()).max(p.s.im * 0.5 * PI);
    let power = first.norm().powf(-p.s.re) * arg_worst.exp();
    power * (first * p.t).exp().norm() / (1.0 - q)
}

/// Sampled `sup_u |sum_(n>N) e^(2 pi i u (n + x))| |u^(delta + s)|` on the ray
/// `u = c - R - r`, `r >= 0`.
fn hypothesis_sup(big_n: usize, icfg: &InterchangeTestConfig, p: &EvaluationPoint) -> f64 {
    let start = icfg.disc_center - icfg.disc_radius;
    let expo = p.s + icfg.delta;
    let rate = -2.0 * PI * p.x.im;
    let horizon = 60.0 / rate + 10.0;
    let mut sup = 0.0f64;
    for j in 0..=2000 {
        let u = start - horizon * j as f64 / 2000.0;
        let two_pi_i = c(0.0, 2.0 * PI);
        let tail = (two_pi_i * u * (p.x + (big_n + 1) as f64)).exp() / (1.0 - (two_pi_i * u).exp());
        let weight = principal_pow(u, expo).map_or(f64::INFINITY, |w| w.norm());
        sup = sup.max(tail.norm() * weight);
    }
    sup
}
