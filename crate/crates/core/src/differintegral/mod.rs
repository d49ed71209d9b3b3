//! Riemann-Liouville differintegrals with base point `-inf` (along a ray) or `0`.
//!
//! For base `-inf` the integral runs along the ray `u = t - r w`, `w = e^(-i theta)`,
//! `r in [0, inf)`. With `theta = 0` this is the horizontal ray to the left of `t`
//! with `arg(t - u) = 0`; for `theta` in `(0, pi)` the ray is tilted upwards, which
//! continues the horizontal-ray value analytically whenever the kernel is holomorphic
//! in the swept sector. Orders with `Re(alpha) >= 0` are reduced to integrals of the
//! kernel's `m`-th derivative, `m = floor(Re alpha) + 1`.

mod kernel;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use kernel::{KernelDerivative, KernelDescriptor};

use crate::complexfn::{c, falling, gamma, principal_pow, rgamma, ComplexValue};
use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_halfline, integrate_jacobi, Estimate, QuadratureConfig, SingularWeight,
};

/// Constant of differintegration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Base {
    MinusInfinity,
    Zero,
}

/// Integration path for base `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Contour {
    /// `arg(t - u) = 0`
    Horizontal,
    /// `arg(t - u) = -theta`, `|theta| < pi`
    Rotated(f64),
    /// Horizontal when the kernel decays there, otherwise the best tilted ray.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DifferintegralSpec {
    /// `alpha`: negative real part integrates, non-negative differentiates.
    pub order: ComplexValue,
    pub base: Base,
    pub kernel: KernelDescriptor,
    pub contour: Contour,
}

impl DifferintegralSpec {
    pub fn new(order: ComplexValue, base: Base, kernel: KernelDescriptor) -> Self {
        Self {
            order,
            base,
            kernel,
            contour: Contour::Auto,
        }
    }

    pub fn with_contour(mut self, contour: Contour) -> Self {
        self.contour = contour;
        self
    }
}

/// Splits an order into the derivative count `m` and the integral exponent `sigma = m - alpha`.
pub fn order_reduction(alpha: ComplexValue) -> Result<(usize, ComplexValue)> {
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(Error::NonFinite("differintegral order"));
    }
    if alpha.re < 0.0 {
        return Ok((0, -alpha));
    }
    let m = alpha.re.floor() as usize + 1;
    if m > KernelDescriptor::MAX_DERIVATIVE {
        return Err(Error::domain(format!(
            "order {alpha} needs {m} kernel derivatives; at most {} are supported",
            KernelDescriptor::MAX_DERIVATIVE
        )));
    }
    Ok((m, m as f64 - alpha))
}

/// Closed form `k^alpha e^(k t)` for base `-inf`.
pub fn rl_exp_closed(k: ComplexValue, alpha: ComplexValue, t: ComplexValue) -> Result<ComplexValue> {
    Ok(principal_pow(k, alpha)? * (k * t).exp())
}

/// Closed form `Gamma(beta+1) / Gamma(beta-alpha+1) t^(beta-alpha)` for base `0`.
pub fn rl_power_closed(
    beta: ComplexValue,
    alpha: ComplexValue,
    t: ComplexValue,
) -> Result<ComplexValue> {
    if beta.re <= -1.0 {
        return Err(Error::domain(format!("power exponent beta = {beta} needs Re(beta) > -1")));
    }
    let num = gamma(beta + 1.0)?;
    let den = gamma(beta - alpha + 1.0)?;
    Ok(num / den * principal_pow(t, beta - alpha)?)
}

fn resolve_angle(spec: &DifferintegralSpec, t: ComplexValue) -> Result<f64> {
    let theta = match spec.contour {
        Contour::Horizontal => 0.0,
        Contour::Rotated(theta) => theta,
        Contour::Auto => spec.kernel.auto_angle(t)?,
    };
    if !(theta.abs() < PI) {
        return Err(Error::domain(format!("ray angle {theta} must lie in (-pi, pi)")));
    }
    if let KernelDescriptor::Lerch { .. } = spec.kernel {
        if theta < 0.0 || (theta == 0.0 && t.im <= 0.0) || t.im < 0.0 {
            return Err(Error::domain(format!(
                "the Lerch kernel needs the ray from t = {t} to stay in Im(u) > 0 (angle {theta})"
            )));
        }
        if t.im == 0.0 && t.re == t.re.round() {
            return Err(Error::domain(format!("t = {t} is a pole of the Lerch kernel")));
        }
    }
    Ok(theta)
}

/// Numerical Riemann-Liouville differintegral of `spec.kernel` at `t`.
pub fn rl_numeric(
    spec: &DifferintegralSpec,
    t: ComplexValue,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    spec.kernel.validate()?;
    match spec.base {
        Base::MinusInfinity => ray_differintegral(spec, t, cfg),
        Base::Zero => segment_differintegral(spec, t, cfg),
    }
}

fn ray_differintegral(
    spec: &DifferintegralSpec,
    t: ComplexValue,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let theta = resolve_angle(spec, t)?;
    let direction = ComplexValue::from_polar(1.0, -theta);
    let rate = spec.kernel.decay_rate(direction).ok_or_else(|| {
        Error::domain(format!(
            "kernel {:?} does not decay along the ray of angle {theta} from t = {t}",
            spec.kernel
        ))
    })?;
    let (m, sigma) = order_reduction(spec.order)?;
    let derivative = spec.kernel.derivative(m)?;
    let hint = match (cfg.oscillation_period_hint, spec.kernel.period_hint(direction)) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let local = cfg.clone().with_period_hint(hint);
    let integral = integrate_halfline(
        |r| derivative.eval(t - direction * r),
        SingularWeight::new(sigma)?,
        rate,
        &local,
    )?;
    // (t - u)^(sigma-1) du = w^sigma r^(sigma-1) dr on the ray.
    let factor = (c(0.0, -theta) * sigma).exp() * rgamma(sigma)?;
    Ok(integral.scale(factor))
}

/// Base `0` along the segment `u = t w`, `w in [0, 1]`:
/// `D^alpha f(t) = Gamma(sigma)^-1 sum_j C(m, j) (sigma)_(m-j) t^(sigma-m+j) J_j(t)`,
/// `J_j(t) = int_0^1 (1-w)^(sigma-1) w^j f^(j)(t w) dw`.
fn segment_differintegral(
    spec: &DifferintegralSpec,
    t: ComplexValue,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let lambda = spec.kernel.origin_exponent()?;
    let (m, sigma) = order_reduction(spec.order)?;
    let weight = SingularWeight::new(sigma)?;
    let mut total = Estimate::new(c(0.0, 0.0), 0.0);
    let mut binom = 1.0;
    for j in 0..=m {
        let derivative = spec.kernel.derivative(j)?;
        let inner = integrate_jacobi(
            |w| derivative.regular_part(j, lambda, t, w),
            lambda,
            weight,
            cfg,
        )?;
        let coef = binom * falling(sigma, m - j) * principal_pow(t, sigma - m as f64 + j as f64)?;
        total = total + inner.scale(coef);
        binom = binom * (m - j) as f64 / (j + 1) as f64;
    }
    Ok(total.scale(rgamma(sigma)?))
}
