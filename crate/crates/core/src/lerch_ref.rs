//! Reference values of `L(t, x, s) = sum_n (n + x)^(-s) e^(2 pi i t n)` from the
//! defining series, with explicit bounds on the discarded tail.
//!
//! Three regimes:
//! * `Im t > 0`: geometric decay, bounded by a ratio test on term majorants.
//! * real non-integer `t`, `Re s > 1`: summation by parts, the partial sums of
//!   `e^(2 pi i t n)` being bounded by `1/|sin(pi t)|`.
//! * integer `t` (the Hurwitz case), `Re s > 1`: partial sum plus an
//!   Euler-Maclaurin tail with its remainder bound. Plain summation would need
//!   about `10^15` terms for full precision at `s = 2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complexfn::{c, sin_pi, ComplexValue};
use crate::error::{Error, Result};
use crate::method::{EvalSettings, Method};

/// Default cap on the number of series terms.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

/// A point `(t, x, s)` at which `L` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationPoint {
    pub t: ComplexValue,
    pub x: ComplexValue,
    pub s: ComplexValue,
}

impl EvaluationPoint {
    pub fn new(t: ComplexValue, x: ComplexValue, s: ComplexValue) -> Self {
        Self { t, x, s }
    }

    /// Where the defining series converges and has a computable tail bound.
    pub fn in_series_domain(&self) -> bool {
        self.x.re > 0.0 && (self.t.im > 0.0 || (self.t.im == 0.0 && self.s.re > 1.0))
    }

    /// Where the fractional representation with a ray from `t` applies.
    pub fn in_theorem1_domain(&self) -> bool {
        self.t.im > 0.0 && !crate::complexfn::on_branch_cut(self.x)
    }

    /// `(-conj t, conj x, conj s)`, at which `L` takes the conjugate value.
    pub fn conjugate_reflected(&self) -> Self {
        Self::new(-self.t.conj(), self.x.conj(), self.s.conj())
    }

    pub fn is_finite(&self) -> bool {
        [self.t, self.x, self.s]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// A truncated series value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: ComplexValue,
    /// Rigorous bound on the neglected tail, excluding rounding.
    pub tail_bound: f64,
    /// Number of terms summed explicitly.
    pub terms: usize,
}

/// `e^(2 pi i a n)` for real `a`, reducing `a n` modulo 1 without losing the
/// fractional part for large `n`.
fn unit_phase(a: f64, n: f64) -> ComplexValue {
    let k = (a * n).round();
    let frac = a.mul_add(n, -k);
    let (s, c_) = (2.0 * PI * frac).sin_cos();
    c(c_, s)
}

fn term(n: usize, p: &EvaluationPoint) -> ComplexValue {
    let base = p.x + n as f64;
    let power = (-p.s * base.ln()).exp();
    let decay = if p.t.im == 0.0 {
        1.0
    } else {
        (-2.0 * PI * p.t.im * n as f64).exp()
    };
    power * unit_phase(p.t.re, n as f64) * decay
}

/// `|(n + x)^(-s)|` bounded uniformly over `n' >= n`, excluding the modulus power.
fn arg_factor(p: &EvaluationPoint, n: usize) -> f64 {
    let base = p.x + n as f64;
    (p.s.im.abs() * base.im.atan2(base.re).abs()).exp()
}

/// Truncated defining series with tail below `tol * |value|`.
pub fn lerch_series(p: &EvaluationPoint, tol: f64) -> Result<SeriesSum> {
    lerch_series_capped(p, tol, DEFAULT_TERM_CAP)
}

pub fn lerch_series_capped(p: &EvaluationPoint, tol: f64, cap: usize) -> Result<SeriesSum> {
    if !p.is_finite() {
        return Err(Error::NonFinite("series evaluation point"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("series tolerance must be positive, got {tol}")));
    }
    if !p.in_series_domain() {
        return Err(Error::domain(format!(
            "the series needs Re(x) > 0 and either Im(t) > 0, or Im(t) = 0 with Re(s) > 1; got t = {}, x = {}, s = {}",
            p.t, p.x, p.s
        )));
    }
    let sum = if p.t.im > 0.0 {
        geometric(p, tol, cap)?
    } else if p.t.re == p.t.re.round() {
        euler_maclaurin(p, tol)?
    } else {
        summation_by_parts(p, tol, cap)?
    };
    if !(sum.value.re.is_finite() && sum.value.im.is_finite()) {
        return Err(Error::NonFinite("series sum"));
    }
    Ok(sum)
}

const CHECK_EVERY: usize = 64;

fn geometric(p: &EvaluationPoint, tol: f64, cap: usize) -> Result<SeriesSum> {
    let q = (-2.0 * PI * p.t.im).exp();
    let sigma = p.s.re;
    let mut sum = c(0.0, 0.0);
    let mut n = 0;
    loop {
        let stop = (n + CHECK_EVERY).min(cap);
        while n < stop {
            sum += term(n, p);
            n += 1;
        }
        // Majorant of |a_m|, m >= n: |m + x|^(-sigma) e^(|Im s| |arg(m + x)|) q^m.
        // Successive majorants shrink by at most rho.
        let modulus = (p.x + n as f64).norm();
        let growth = if sigma < 0.0 {
            (1.0 + 1.0 / modulus).powf(-sigma)
        } else {
            1.0
        };
        let rho = growth * q;
        if rho < 1.0 {
            let lead = modulus.powf(-sigma) * arg_factor(p, n) * q.powf(n as f64);
            let bound = lead / (1.0 - rho);
            if bound <= tol * sum.norm() || bound < f64::MIN_POSITIVE {
                return Ok(SeriesSum {
                    value: sum,
                    tail_bound: bound,
                    terms: n,
                });
            }
            if n >= cap {
                let needed = n as f64 + (bound / (tol * sum.norm())).ln() / -rho.ln();
                return Err(Error::Nonconvergence { terms: needed, cap });
            }
        } else if n >= cap {
            return Err(Error::Nonconvergence {
                terms: f64::INFINITY,
                cap,
            });
        }
    }
}

fn summation_by_parts(p: &EvaluationPoint, tol: f64, cap: usize) -> Result<SeriesSum> {
    // For m > n, |sum_{k=n+1}^{m} e^(2 pi i t k)| <= 1/|sin(pi t)|, hence
    // |tail| <= (1/|sin pi t|) (|a_(n)| + sum_(k>=n) |a_k - a_(k+1)|)
    //        <= (1/|sin pi t|) e^(|Im s| |arg|) (n + Re x)^(-sigma) (1 + |s| / sigma).
    let sigma = p.s.re;
    let partial_bound = 1.0 / sin_pi(p.t.re).abs();
    let factor = partial_bound * (1.0 + p.s.norm() / sigma);
    let mut sum = c(0.0, 0.0);
    let mut n = 0;
    loop {
        let stop = (n + 4 * CHECK_EVERY).min(cap);
        while n < stop {
            sum += term(n, p);
            n += 1;
        }
        let bound = factor * arg_factor(p, n) * (n as f64 + p.x.re).powf(-sigma);
        let target = tol * sum.norm();
        if bound <= target {
            return Ok(SeriesSum {
                value: sum,
                tail_bound: bound,
                terms: n,
            });
        }
        if n >= cap {
            let needed = n as f64 * (bound / target).powf(1.0 / sigma);
            return Err(Error::Nonconvergence { terms: needed, cap });
        }
    }
}

/// `B_2, B_4, ..., B_30`.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

fn euler_maclaurin(p: &EvaluationPoint, tol: f64) -> Result<SeriesSum> {
    let s = p.s;
    let sigma = s.re;
    let mut n = 16usize.max(s.norm().ceil() as usize + 8);
    loop {
        let mut head = c(0.0, 0.0);
        for k in 0..n {
            head += term(k, p);
        }
        let base = p.x + n as f64;
        let log_base = base.ln();
        let lead = (-s * log_base).exp();
        let mut value = head + base * lead / (s - 1.0) + lead * 0.5;

        // Correction k adds B_2k/(2k)! (s)_(2k-1) (N + x)^(-s-2k+1).
        let mut rising = s; // (s)_(2k-1)
        let mut power = lead / base; // (N + x)^(-s-2k+1)
        let mut fact = 2.0; // (2k)!
        let mut best = f64::INFINITY;
        for (i, b) in BERNOULLI_EVEN.iter().enumerate() {
            let k = i + 1;
            value += rising * power * (b / fact);
            // Remainder after k corrections, from the 2k-th derivative:
            // 2 |B_2k| / (2k)! |(s)_2k| e^(|Im s| |arg|) (N + Re x)^(1 - sigma - 2k) / (sigma + 2k - 1).
            let rising_next = rising * (s + (2 * k - 1) as f64);
            let e = (sigma + (2 * k) as f64 - 1.0).max(f64::MIN_POSITIVE);
            let bound = 2.0 * b.abs() / fact
                * rising_next.norm()
                * arg_factor(p, n)
                * (n as f64 + p.x.re).powf(1.0 - sigma - (2 * k) as f64)
                / e;
            best = best.min(bound);
            if bound <= tol * value.norm() {
                return Ok(SeriesSum {
                    value,
                    tail_bound: bound,
                    terms: n,
                });
            }
            if bound > best * 1e3 {
                break; // the asymptotic series has started to diverge
            }
            rising = rising_next * (s + (2 * k) as f64);
            power /= base * base;
            fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
        }
        if n > 1 << 16 {
            return Err(Error::Nonconvergence {
                terms: n as f64,
                cap: 1 << 16,
            });
        }
        n *= 4;
    }
}

/// Hurwitz zeta `zeta(x, s) = L(0, x, s)`.
pub fn hurwitz(x: ComplexValue, s: ComplexValue, tol: f64) -> Result<SeriesSum> {
    if s.re <= 1.0 || x.re <= 0.0 {
        return Err(Error::domain(format!(
            "the Hurwitz series needs Re(s) > 1 and Re(x) > 0; got x = {x}, s = {s}"
        )));
    }
    lerch_series(&EvaluationPoint::new(c(0.0, 0.0), x, s), tol)
}

/// Riemann zeta `zeta(s) = L(0, 1, s)`, `Re s > 1`.
pub fn riemann_series(s: ComplexValue, tol: f64) -> Result<SeriesSum> {
    hurwitz(c(1.0, 0.0), s, tol)
}

/// `|conj L(t, x, s) - L(-conj t, conj x, conj s)|`, both sides from `method`.
pub fn conjugation_residual(
    p: &EvaluationPoint,
    method: Method,
    settings: &EvalSettings,
) -> Result<f64> {
    let a = method.evaluate(p, settings)?.value;
    let b = method.evaluate(&p.conjugate_reflected(), settings)?.value;
    Ok((a.conj() - b).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(t: ComplexValue, x: f64, s: f64) -> EvaluationPoint {
        EvaluationPoint::new(t, c(x, 0.0), c(s, 0.0))
    }

    #[test]
    fn zeta_two() {
        let r = lerch_series(&pt(c(0.0, 0.0), 1.0, 2.0), 1e-15).unwrap();
        assert!((r.value - c(PI * PI / 6.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn large_s_first_term() {
        let r = lerch_series(&pt(c(0.1, 0.5), 2.0, 40.0), 1e-14).unwrap();
        assert!((r.value - c(2f64.powi(-40), 0.0)).norm() <= 2.0 * 3f64.powi(-40));
    }

    #[test]
    fn half_point_alternating() {
        let r = lerch_series(&pt(c(0.5, 0.0), 1.0, 2.0), 1e-12).unwrap();
        assert!((r.value.re - PI * PI / 12.0).abs() < 1e-11);
    }

    #[test]
    fn hurwitz_examples() {
        let z2 = PI * PI / 6.0;
        let cases = [(1.0, z2), (2.0, z2 - 1.0), (0.5, PI * PI / 2.0)];
        for (x, want) in cases {
            let r = hurwitz(c(x, 0.0), c(2.0, 0.0), 1e-15).unwrap();
            assert!((r.value.re - want).abs() < 2e-15 * want, "x = {x}");
            assert!(r.value.im.abs() < 1e-15);
        }
        assert!(hurwitz(c(1.0, 0.0), c(1.0, 0.0), 1e-12).is_err());
    }

    #[test]
    fn hurwitz_complex_arguments() {
        // zeta(3 + 2i) and zeta(0.3 + 0.2i, 2.5 - i), 30-digit references.
        let r = riemann_series(c(3.0, 2.0), 1e-15).unwrap();
        let want = c(0.97304196041894244856, -0.14769559300045379463);
        assert!((r.value - want).norm() < 1e-14, "{}", r.value);
        let r = hurwitz(c(0.3, 0.2), c(2.5, -1.0), 1e-15).unwrap();
        let want = c(-5.1319601300083438353, -4.1867210621900187306);
        assert!((r.value - want).norm() / want.norm() < 1e-14, "{}", r.value);
    }

    #[test]
    fn specialization_chain() {
        for s in [2.0, 3.0, 4.5] {
            let lerch = lerch_series(&pt(c(0.0, 0.0), 1.0, s), 1e-14).unwrap().value;
            // Independent plain sum with an integral tail correction.
            let n = 200_000;
            let mut direct = 0.0;
            for k in (1..=n).rev() {
                direct += (k as f64).powf(-s);
            }
            let nf = n as f64 + 0.5;
            direct += nf.powf(1.0 - s) / (s - 1.0);
            assert!((lerch.re - direct).abs() < 1e-12 * direct, "s = {s}");
        }
    }

    #[test]
    fn real_t_by_parts() {
        // L(1/3, 1, 3) from a 30-digit reference.
        let r = lerch_series(&pt(c(1.0 / 3.0, 0.0), 1.0, 3.0), 1e-12).unwrap();
        let want = c(0.93014161507024751154, 0.079878378483999036994);
        assert!((r.value - want).norm() < 1e-11 * want.norm(), "{}", r.value);
    }

    #[test]
    fn non_positive_real_part_of_s() {
        // L(0.2 + 0.6i, 0.7 - 0.4i, -0.5)
        let p = EvaluationPoint::new(c(0.2, 0.6), c(0.7, -0.4), c(-0.5, 0.0));
        let r = lerch_series(&p, 1e-14).unwrap();
        let want = c(0.87982299848623331497, -0.20221204160348300949);
        assert!((r.value - want).norm() < 1e-13, "{}", r.value);
    }

    #[test]
    fn domain_and_cap() {
        assert!(lerch_series(&pt(c(0.0, 0.0), 1.0, 1.0), 1e-10).unwrap_err().is_domain());
        assert!(lerch_series(&pt(c(0.2, 0.5), -1.0, 2.0), 1e-10).unwrap_err().is_domain());
        assert!(lerch_series(&pt(c(0.2, -0.1), 1.0, 2.0), 1e-10).unwrap_err().is_domain());
        let err = lerch_series_capped(&pt(c(0.3, 0.0), 1.0, 1.1), 1e-12, 1000).unwrap_err();
        assert!(matches!(err, Error::Nonconvergence { .. }));
    }

    #[test]
    fn doubling_past_cutoff_stays_within_tolerance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let tol = 1e-12;
        for _ in 0..50 {
            let p = EvaluationPoint::new(
                c(rng.gen_range(-1.0..1.0), rng.gen_range(0.05..1.0)),
                c(rng.gen_range(0.2..3.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(-2.0..5.0), rng.gen_range(-3.0..3.0)),
            );
            let r = lerch_series(&p, tol).unwrap();
            let mut longer = r.value;
            for n in r.terms..2 * r.terms {
                longer += term(n, &p);
            }
            assert!((longer - r.value).norm() <= tol * r.value.norm(), "{p:?}");
            assert!((longer - r.value).norm() <= r.tail_bound);
        }
    }

    #[test]
    fn conjugate_symmetry_of_series() {
        let p = EvaluationPoint::new(c(0.2, 0.6), c(1.3, 0.0), c(2.5, 0.0));
        let a = lerch_series(&p, 1e-15).unwrap().value;
        let b = lerch_series(&p.conjugate_reflected(), 1e-15).unwrap().value;
        assert!((a.conj() - b).norm() < 1e-12);
    }
}
