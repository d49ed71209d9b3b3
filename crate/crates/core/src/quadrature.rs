//! Adaptive integration of `v^(sigma-1) g(v)` over `[0, inf)` and finite segments.
//!
//! The algebraic endpoint factor is absorbed by geometrically graded panels
//! towards `v = 0` plus the exact contribution `g(0) delta^sigma / sigma` of the
//! innermost sliver `[0, delta]`. The remainder of the line is covered by
//! adaptive Gauss-Kronrod (10/21) panels up to a truncation point chosen from
//! the exponential envelope of `g`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complexfn::{c, real_pow, ComplexValue};
use crate::error::{Error, Result};

/// Environment variable that overrides the default relative tolerance.
pub const REL_TOL_ENV: &str = "LERCHFRAC_REL_TOL";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of panel bisections per integration call.
    pub max_subdivisions: usize,
    /// Tail bound beyond the truncation point, relative to the envelope constant of `g`.
    pub truncation_margin: f64,
    /// When present, panels on the body are never wider than half of this.
    pub oscillation_period_hint: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            truncation_margin: 1e-16,
            oscillation_period_hint: None,
        }
    }
}

impl QuadratureConfig {
    /// Defaults, with `rel_tol` taken from `LERCHFRAC_REL_TOL` when it is set and parses.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(tol) = std::env::var(REL_TOL_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<f64>().ok())
        {
            cfg.rel_tol = tol;
        }
        cfg
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_period_hint(mut self, period: Option<f64>) -> Self {
        self.oscillation_period_hint = period;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.max_subdivisions >= 1
            && self.truncation_margin > 0.0
            && self.oscillation_period_hint.map_or(true, |p| p > 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid quadrature configuration {self:?}")))
        }
    }

    fn target(&self, value: ComplexValue) -> f64 {
        (self.rel_tol * value.norm()).max(self.abs_tol)
    }
}

/// The weight `v^(sigma-1)` of an integrand with an algebraic singularity at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularWeight {
    sigma: ComplexValue,
}

impl SingularWeight {
    pub fn new(sigma: ComplexValue) -> Result<Self> {
        if sigma.re > 0.0 && sigma.im.is_finite() {
            Ok(Self { sigma })
        } else {
            Err(Error::domain(format!(
                "weight exponent sigma = {sigma} needs Re(sigma) > 0 for integrability at 0"
            )))
        }
    }

    pub fn sigma(&self) -> ComplexValue {
        self.sigma
    }
}

/// A value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: ComplexValue,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: ComplexValue, error: f64) -> Self {
        Self { value, error }
    }

    pub fn scale(self, factor: ComplexValue) -> Self {
        Self::new(self.value * factor, self.error * factor.norm())
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate::new(self.value + rhs.value, self.error + rhs.error)
    }
}

impl std::ops::Sub for Estimate {
    type Output = Estimate;
    fn sub(self, rhs: Estimate) -> Estimate {
        Estimate::new(self.value - rhs.value, self.error + rhs.error)
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: ComplexValue,
    error: f64,
    roundoff: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> ComplexValue,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let fc = f(center);
    kronrod += WGK[10] * fc;
    abs_sum += WGK[10] * fc.norm();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kronrod += WGK[j] * pair;
        abs_sum += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("quadrature integrand"));
    }
    Ok(Panel {
        a,
        b,
        value,
        error: ((kronrod - gauss) * half).norm(),
        roundoff: 50.0 * f64::EPSILON * abs_sum * half.abs(),
    })
}

/// Adaptive refinement over an initial partition. `extra` is added to the
/// running total (value and error) when testing the stopping criterion.
fn adaptive<F>(
    f: &F,
    breaks: &[f64],
    extra: Estimate,
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    F: Fn(f64) -> ComplexValue,
{
    let mut heap = BinaryHeap::new();
    let mut total = extra.value;
    let mut total_err = extra.error;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let p = gk21(f, w[0], w[1])?;
            total += p.value;
            total_err += p.error;
            heap.push(p);
        }
    }
    let mut subdivisions = 0usize;
    loop {
        let target = cfg.target(total);
        if total_err <= target {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.error <= worst.roundoff || (worst.b - worst.a) <= 4.0 * f64::EPSILON * worst.a.abs() {
            // Every remaining panel is at least this accurate; nothing left to gain.
            heap.push(worst);
            return Err(Error::ToleranceNotMet {
                achieved: total_err,
                requested: target,
                subdivisions,
            });
        }
        if subdivisions >= cfg.max_subdivisions {
            heap.push(worst);
            return Err(Error::ToleranceNotMet {
                achieved: total_err,
                requested: target,
                subdivisions,
            });
        }
        subdivisions += 1;
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(f, worst.a, mid)?;
        let right = gk21(f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the incremental updates.
    let mut value = extra.value;
    let mut error = extra.error;
    for p in heap.iter() {
        value += p.value;
        error += p.error;
    }
    Ok(Estimate::new(value, error))
}

const GRADED_PANELS: usize = 30;
const GRADING_RATIO: f64 = 4.0;

/// Breakpoints `length * 4^-j` for `j = GRADED_PANELS ..= 0`, ascending.
fn graded_breaks(length: f64) -> Vec<f64> {
    let mut out: Vec<f64> = (0..=GRADED_PANELS)
        .map(|j| length * GRADING_RATIO.powi(-(j as i32)))
        .collect();
    out.reverse();
    out
}

/// Exact integral of `v^(sigma-1) g(0)` over the innermost sliver `[0, delta]`,
/// with the variation of `g` across it as the error estimate.
fn sliver<F>(g: &F, sigma: ComplexValue, delta: f64) -> Result<Estimate>
where
    F: Fn(f64) -> ComplexValue,
{
    let g0 = g(0.0);
    let g1 = g(delta);
    if !(g0.re.is_finite() && g0.im.is_finite()) {
        return Err(Error::NonFinite("integrand at the singular endpoint"));
    }
    let mass = real_pow(delta, sigma) / sigma;
    Ok(Estimate::new(g0 * mass, (g1 - g0).norm() * mass.norm()))
}

/// `int_0^length v^(sigma-1) g(v) dv` for `g` smooth on `[0, length]`.
pub fn integrate_singular_segment<F>(
    g: F,
    weight: SingularWeight,
    length: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    F: Fn(f64) -> ComplexValue,
{
    cfg.validate()?;
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::domain(format!("segment length {length} must be positive")));
    }
    let sigma = weight.sigma();
    let breaks = graded_breaks(length);
    let end = sliver(&g, sigma, breaks[0])?;
    let weighted = |v: f64| real_pow(v, sigma - 1.0) * g(v);
    adaptive(&weighted, &breaks, end, cfg)
}

/// `int_0^1 w^lambda (1-w)^(sigma-1) g(w) dw` for `g` smooth on `[0, 1]`,
/// `Re(lambda) > -1`, `Re(sigma) > 0`.
pub fn integrate_jacobi<F>(
    g: F,
    lambda: ComplexValue,
    weight: SingularWeight,
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    F: Fn(f64) -> ComplexValue,
{
    let left_weight = SingularWeight::new(lambda + 1.0)?;
    let sigma = weight.sigma();
    let left = integrate_singular_segment(
        |w: f64| real_pow(1.0 - w, sigma - 1.0) * g(w),
        left_weight,
        0.5,
        cfg,
    )?;
    let right = integrate_singular_segment(
        |v: f64| real_pow(1.0 - v, lambda) * g(1.0 - v),
        weight,
        0.5,
        cfg,
    )?;
    Ok(left + right)
}

/// Envelope constant `C` with `|g(v)| <= C exp(-decay v)`, estimated from samples.
fn envelope<F>(g: &F, decay: f64) -> Result<f64>
where
    F: Fn(f64) -> ComplexValue,
{
    let step = 0.5 / decay;
    let mut near = 0.0f64;
    let mut far = 0.0f64;
    for j in 0..=96 {
        let v = j as f64 * step;
        let gv = g(v);
        if !(gv.re.is_finite() && gv.im.is_finite()) {
            return Err(Error::NonFinite("integrand envelope sample"));
        }
        let scaled = gv.norm() * (decay * v).exp();
        if j <= 24 {
            near = near.max(scaled);
        } else {
            far = far.max(scaled);
        }
    }
    if far > 1e6 * near.max(f64::MIN_POSITIVE) {
        return Err(Error::DivergenceSuspected(format!(
            "integrand does not decay at the stated rate {decay}: envelope grows from {near:e} to {far:e}"
        )));
    }
    Ok(2.0 * near.max(far).max(f64::MIN_POSITIVE))
}

/// Upper bound for `int_V^inf v^(p-1) e^(-decay v) dv`.
fn tail_bound(p: f64, decay: f64, v: f64) -> f64 {
    let lead = v.powf(p - 1.0) * (-decay * v).exp() / decay;
    if p <= 1.0 {
        lead
    } else {
        let slack = 1.0 - (p - 1.0) / (decay * v);
        if slack <= 0.0 {
            f64::INFINITY
        } else {
            lead / slack
        }
    }
}

/// `Q ~ int_0^inf v^(sigma-1) g(v) dv` where `|g(v)| <= C exp(-decay_rate v)`.
pub fn integrate_halfline<F>(
    g: F,
    weight: SingularWeight,
    decay_rate: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    F: Fn(f64) -> ComplexValue,
{
    cfg.validate()?;
    if !(decay_rate > 0.0 && decay_rate.is_finite()) {
        return Err(Error::DivergenceSuspected(format!(
            "decay rate {decay_rate} gives no exponential envelope on the half line"
        )));
    }
    let sigma = weight.sigma();
    let scale = envelope(&g, decay_rate)?;

    let head = (1.0 / decay_rate).min(1.0);
    let mut cut = (1.0 / cfg.truncation_margin).ln() / decay_rate;
    cut = cut.max(2.0 * head);
    while tail_bound(sigma.re, decay_rate, cut) > cfg.truncation_margin {
        cut *= 1.1;
    }
    let tail = scale * tail_bound(sigma.re, decay_rate, cut);

    let mut breaks = graded_breaks(head);
    let body = cut - head;
    let mut width = body / 16.0;
    if let Some(period) = cfg.oscillation_period_hint {
        width = width.min(0.5 * period);
    }
    let panels = (body / width).ceil().max(1.0) as usize;
    for j in 1..=panels {
        breaks.push(head + body * j as f64 / panels as f64);
    }

    let end = sliver(&g, sigma, breaks[0])?;
    let weighted = |v: f64| real_pow(v, sigma - 1.0) * g(v);
    let est = adaptive(&weighted, &breaks, end + Estimate::new(c(0.0, 0.0), tail), cfg)?;
    Ok(est)
}
