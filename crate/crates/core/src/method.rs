//! Named evaluation paths for `L(t, x, s)`, used by the verification suites and the CLI.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complexfn::c;
use crate::error::{Error, Result};
use crate::fracrep::{
    lerch_theorem1, lerch_theorem1_real_t, lerch_theorem2, riemann_halfpoint, riemann_limit,
    LimitContourConfig, LimitSequenceConfig,
};
use crate::lerch_ref::{hurwitz, lerch_series, EvaluationPoint, SeriesSum};
use crate::quadrature::{Estimate, QuadratureConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Series,
    Theorem1,
    Theorem1RealT,
    Theorem2,
    RiemannHalfpoint,
    RiemannLimit,
    Hurwitz,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Series,
        Method::Theorem1,
        Method::Theorem1RealT,
        Method::Theorem2,
        Method::RiemannHalfpoint,
        Method::RiemannLimit,
        Method::Hurwitz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Theorem1 => "theorem1",
            Method::Theorem1RealT => "theorem1-real-t",
            Method::Theorem2 => "theorem2",
            Method::RiemannHalfpoint => "riemann-halfpoint",
            Method::RiemannLimit => "riemann-limit",
            Method::Hurwitz => "hurwitz",
        }
    }

    /// Evaluates `L(t, x, s)` at `p`. The Riemann methods return `zeta(s)` and
    /// ignore `t` and `x`; `hurwitz` ignores `t`.
    pub fn evaluate(self, p: &EvaluationPoint, settings: &EvalSettings) -> Result<Estimate> {
        let cfg = &settings.quadrature;
        match self {
            Method::Series => {
                let r = lerch_series(p, settings.series_tol)?;
                Ok(series_estimate(r))
            }
            Method::Theorem1 => lerch_theorem1(p, cfg),
            Method::Theorem1RealT => {
                if p.t.im != 0.0 {
                    return Err(Error::domain(format!("theorem1-real-t needs real t, got {}", p.t)));
                }
                lerch_theorem1_real_t(p.t.re, p.x, p.s, &settings.limit, cfg)
            }
            Method::Theorem2 => {
                if p.x.im != 0.0 {
                    return Err(Error::domain(format!("theorem2 needs real x, got {}", p.x)));
                }
                lerch_theorem2(p.t, p.x.re, c(1.0, 0.0) - p.s, cfg)
            }
            Method::RiemannHalfpoint => riemann_halfpoint(p.s, &settings.limit, cfg),
            Method::RiemannLimit => riemann_limit(p.s, &settings.sequence, cfg),
            Method::Hurwitz => {
                let r = hurwitz(p.x, p.s, settings.series_tol)?;
                Ok(series_estimate(r))
            }
        }
    }
}

/// Tail bound plus a random-walk estimate of the rounding in `terms` additions.
fn series_estimate(r: SeriesSum) -> Estimate {
    let rounding = f64::EPSILON * (r.terms.max(1) as f64).sqrt() * r.value.norm();
    Estimate::new(r.value, r.tail_bound + rounding)
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Method::ALL.iter().map(|m| m.name()).collect();
                Error::domain(format!("unknown method {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Everything an evaluation path may need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSettings {
    pub quadrature: QuadratureConfig,
    pub limit: LimitContourConfig,
    pub sequence: LimitSequenceConfig,
    /// Relative tolerance for the series tails.
    pub series_tol: f64,
}

impl Default for EvalSettings {
    fn default() -> Self {
        Self {
            quadrature: QuadratureConfig::default(),
            limit: LimitContourConfig::default(),
            sequence: LimitSequenceConfig::default(),
            series_tol: 1e-14,
        }
    }
}

impl EvalSettings {
    /// Defaults with the quadrature tolerance taken from the environment.
    pub fn from_env() -> Self {
        Self {
            quadrature: QuadratureConfig::from_env(),
            ..Self::default()
        }
    }
}
