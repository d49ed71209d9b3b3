use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complexfn::{c, falling, on_branch_cut, principal_pow, real_pow, ComplexValue};
use crate::error::{Error, Result};

const TWO_PI_I: ComplexValue = ComplexValue::new(0.0, 2.0 * PI);

/// Functions the differintegral engine knows how to differentiate exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum KernelDescriptor {
    /// `e^(k u)`
    Exponential { k: ComplexValue },
    /// `u^beta`, principal branch
    Power { beta: ComplexValue },
    /// `e^(2 pi i u x) / (1 - e^(2 pi i u))`
    Lerch { x: ComplexValue },
    /// `sum_j e^(k_j u)`
    ExponentialSum { ks: Vec<ComplexValue> },
}

impl KernelDescriptor {
    pub fn validate(&self) -> Result<()> {
        match self {
            KernelDescriptor::Exponential { k } if on_branch_cut(*k) => Err(Error::domain(
                format!("exponential rate k = {k} lies on (-inf, 0]"),
            )),
            KernelDescriptor::Power { beta } if beta.re <= -1.0 => Err(Error::domain(format!(
                "power exponent beta = {beta} needs Re(beta) > -1"
            ))),
            KernelDescriptor::ExponentialSum { ks } if ks.is_empty() => {
                Err(Error::domain("empty exponential sum"))
            }
            _ => Ok(()),
        }
    }

    /// Largest derivative order the kernel supports.
    pub const MAX_DERIVATIVE: usize = 8;

    /// Prepared evaluator for the `m`-th derivative.
    pub fn derivative(&self, m: usize) -> Result<KernelDerivative> {
        if m > Self::MAX_DERIVATIVE {
            return Err(Error::domain(format!(
                "derivative order {m} exceeds the supported maximum {}",
                Self::MAX_DERIVATIVE
            )));
        }
        Ok(match self {
            KernelDescriptor::Exponential { k } => KernelDerivative::Exponential {
                k: *k,
                coef: k.powu(m as u32),
            },
            KernelDescriptor::Power { beta } => KernelDerivative::Power {
                coef: falling(*beta, m),
                exponent: *beta - m as f64,
            },
            KernelDescriptor::Lerch { x } => KernelDerivative::Lerch {
                x: *x,
                numerator: lerch_numerator(*x, m),
                order: m,
                scale: TWO_PI_I.powu(m as u32),
            },
            KernelDescriptor::ExponentialSum { ks } => KernelDerivative::ExponentialSum {
                terms: ks.iter().map(|k| (*k, k.powu(m as u32))).collect(),
            },
        })
    }

    /// Exponential decay rate of `|f(t - r w)|` in `r` along direction `w`, if any.
    pub fn decay_rate(&self, direction: ComplexValue) -> Option<f64> {
        let rate = match self {
            KernelDescriptor::Exponential { k } => (k * direction).re,
            KernelDescriptor::Lerch { x } => -2.0 * PI * (direction * x).im,
            KernelDescriptor::ExponentialSum { ks } => ks
                .iter()
                .map(|k| (k * direction).re)
                .fold(f64::INFINITY, f64::min),
            KernelDescriptor::Power { .. } => return None,
        };
        (rate > 0.0).then_some(rate)
    }

    /// Shortest oscillation period of the kernel along direction `w`.
    pub fn period_hint(&self, direction: ComplexValue) -> Option<f64> {
        let freq = match self {
            KernelDescriptor::Exponential { k } => (k * direction).im.abs() / (2.0 * PI),
            KernelDescriptor::Lerch { x } => (direction * x).re.abs().max(direction.re.abs()),
            KernelDescriptor::ExponentialSum { ks } => ks
                .iter()
                .map(|k| (k * direction).im.abs() / (2.0 * PI))
                .fold(0.0, f64::max),
            KernelDescriptor::Power { .. } => 0.0,
        };
        (freq > 1e-12).then(|| 1.0 / freq)
    }

    /// Exponent `lambda` of the algebraic behaviour `u^lambda` at `u = 0`, for
    /// kernels that are integrable there.
    pub(crate) fn origin_exponent(&self) -> Result<ComplexValue> {
        match self {
            KernelDescriptor::Power { beta } => Ok(*beta),
            KernelDescriptor::Exponential { .. } | KernelDescriptor::ExponentialSum { .. } => {
                Ok(c(0.0, 0.0))
            }
            KernelDescriptor::Lerch { .. } => Err(Error::domain(
                "the Lerch kernel has a pole at u = 0; base point 0 is not supported",
            )),
        }
    }

    /// Direction angle of a contour on which the kernel decays, preferring the
    /// horizontal ray when it is well-conditioned.
    pub(crate) fn auto_angle(&self, t: ComplexValue) -> Result<f64> {
        let min_rate = 1e-3;
        match self {
            KernelDescriptor::Lerch { x } => {
                let horizontal = -2.0 * PI * x.im;
                if t.im >= 0.25 && horizontal >= 1.0 {
                    return Ok(0.0);
                }
                let lo = if t.im >= 0.25 { 0.0 } else { PI / 8.0 };
                let arg = x.im.atan2(x.re);
                let theta = (arg + 0.5 * PI).clamp(lo, 0.9 * PI);
                let rate = -2.0 * PI * (ComplexValue::from_polar(1.0, -theta) * x).im;
                if rate < min_rate {
                    return Err(Error::domain(format!(
                        "no upward ray from t = {t} along which e^(2 pi i u x) decays for x = {x}"
                    )));
                }
                Ok(theta)
            }
            KernelDescriptor::Exponential { .. } | KernelDescriptor::ExponentialSum { .. } => {
                if self.decay_rate(c(1.0, 0.0)).is_some() {
                    return Ok(0.0);
                }
                let ks = match self {
                    KernelDescriptor::Exponential { k } => vec![*k],
                    KernelDescriptor::ExponentialSum { ks } => ks.clone(),
                    _ => unreachable!(),
                };
                let mean: ComplexValue = ks.iter().map(|k| k / k.norm()).sum();
                let theta = mean.im.atan2(mean.re).clamp(-0.9 * PI, 0.9 * PI);
                match self.decay_rate(ComplexValue::from_polar(1.0, -theta)) {
                    Some(r) if r >= min_rate => Ok(theta),
                    _ => Err(Error::domain("exponential kernel has no decaying ray direction")),
                }
            }
            KernelDescriptor::Power { .. } => Err(Error::domain(
                "power kernels are only supported with base point 0",
            )),
        }
    }
}

/// Coefficients of `P_m` in `f^(m)(u) = (2 pi i)^m e^(2 pi i u x) P_m(q) / (1 - q)^(m+1)`,
/// `q = e^(2 pi i u)`, from `P_{m+1} = (1 - q)(x P_m + q P_m') + (m + 1) q P_m`.
fn lerch_numerator(x: ComplexValue, m: usize) -> Vec<ComplexValue> {
    let mut p = vec![c(1.0, 0.0)];
    for k in 1..=m {
        let mut next = vec![c(0.0, 0.0); p.len() + 1];
        for (j, &a) in p.iter().enumerate() {
            // x P (1 - q)
            next[j] += x * a;
            next[j + 1] -= x * a;
            // q P' (1 - q): q P' has coefficient j a at q^j
            let d = a * j as f64;
            next[j] += d;
            next[j + 1] -= d;
            // k q P
            next[j + 1] += a * k as f64;
        }
        p = next;
    }
    p
}

/// The `m`-th derivative of a kernel, ready for repeated evaluation.
#[derive(Debug, Clone)]
pub enum KernelDerivative {
    Exponential {
        k: ComplexValue,
        coef: ComplexValue,
    },
    Power {
        coef: ComplexValue,
        exponent: ComplexValue,
    },
    Lerch {
        x: ComplexValue,
        numerator: Vec<ComplexValue>,
        order: usize,
        scale: ComplexValue,
    },
    ExponentialSum {
        terms: Vec<(ComplexValue, ComplexValue)>,
    },
}

impl KernelDerivative {
    pub fn eval(&self, u: ComplexValue) -> ComplexValue {
        match self {
            KernelDerivative::Exponential { k, coef } => coef * (k * u).exp(),
            KernelDerivative::Power { coef, exponent } => match principal_pow(u, *exponent) {
                Ok(p) => coef * p,
                Err(_) => c(f64::NAN, f64::NAN),
            },
            KernelDerivative::Lerch {
                x,
                numerator,
                order,
                scale,
            } => {
                let q = (TWO_PI_I * u).exp();
                let poly = numerator.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * q + a);
                let denom = (1.0 - q).powu(*order as u32 + 1);
                scale * (TWO_PI_I * u * x).exp() * poly / denom
            }
            KernelDerivative::ExponentialSum { terms } => {
                terms.iter().map(|(k, coef)| coef * (k * u).exp()).sum()
            }
        }
    }

    /// `w^(j - lambda) f^(j)(t w)` for `w` in `(0, 1]`: the part of the
    /// base-zero integrand that stays smooth at `w = 0`.
    pub(crate) fn regular_part(
        &self,
        j: usize,
        lambda: ComplexValue,
        t: ComplexValue,
        w: f64,
    ) -> ComplexValue {
        match self {
            // (t w)^(beta - j) w^(j - beta) = t^(beta - j) for w > 0.
            KernelDerivative::Power { coef, exponent } => match principal_pow(t, *exponent) {
                Ok(p) => coef * p,
                Err(_) => c(f64::NAN, f64::NAN),
            },
            _ => {
                let f = self.eval(t * w);
                if j == 0 && lambda == c(0.0, 0.0) {
                    f
                } else {
                    real_pow(w, c(j as f64, 0.0) - lambda) * f
                }
            }
        }
    }
}
