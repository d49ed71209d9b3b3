//! Complex gamma function and principal-branch elementary operations.
//!
//! All powers and logarithms use the principal branch with the argument in
//! `(-pi, pi]`; bases on the closed negative real axis are rejected rather
//! than silently mapped onto one side of the cut.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type ComplexValue = Complex64;

/// Default distance from a non-positive integer inside which `gamma` reports a pole.
pub const DEFAULT_POLE_RADIUS: f64 = 1e-12;

const LANCZOS_G: f64 = 607.0 / 128.0;

// Godfrey's coefficients for g = 607/128.
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

#[inline]
pub fn c(re: f64, im: f64) -> ComplexValue {
    Complex64::new(re, im)
}

/// Returns `z` unchanged if both components are finite.
pub fn ensure_finite(z: ComplexValue, what: &'static str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// `sin(pi x)` with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r > 0.75 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.75 {
        -(PI * (1.0 + r)).sin()
    } else if r > 0.0 {
        (PI * (0.5 - r)).cos()
    } else {
        -(PI * (0.5 + r)).cos()
    }
}

/// `cos(pi x)` with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// `sin(pi z)` for complex `z`.
pub fn sin_pi_c(z: ComplexValue) -> ComplexValue {
    let y = PI * z.im;
    c(sin_pi(z.re) * y.cosh(), cos_pi(z.re) * y.sinh())
}

/// True if `z` lies on the principal branch cut `(-inf, 0]`.
pub fn on_branch_cut(z: ComplexValue) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

/// Principal logarithm, `Arg` in `(-pi, pi)`.
pub fn principal_log(z: ComplexValue) -> Result<ComplexValue> {
    if on_branch_cut(z) {
        return Err(Error::BranchCut { base: z });
    }
    Ok(z.ln())
}

/// `base^exponent = exp(exponent * Log base)` on the principal branch.
pub fn principal_pow(base: ComplexValue, exponent: ComplexValue) -> Result<ComplexValue> {
    let log = principal_log(base)?;
    ensure_finite((exponent * log).exp(), "principal_pow")
}

/// `v^e` for a strictly positive real `v`; no branch question arises.
#[inline]
pub fn real_pow(v: f64, e: ComplexValue) -> ComplexValue {
    (e * v.ln()).exp()
}

fn check_pole(z: ComplexValue, radius: f64) -> Result<()> {
    let n = z.re.round();
    if n <= 0.0 && (z - c(n, 0.0)).norm() <= radius {
        return Err(Error::Pole { z, radius });
    }
    Ok(())
}

/// `ln Gamma(z)` for `Re z >= 0.5` via the Lanczos sum. Not branch-continuous in
/// the imaginary part; only used as an intermediate for `gamma`.
fn lanczos_log_gamma(z: ComplexValue) -> ComplexValue {
    let zm1 = z - 1.0;
    let mut sum = c(LANCZOS_COEF[0], 0.0);
    for (k, &coef) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += coef / (zm1 + k as f64);
    }
    let tt = zm1 + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm1 + 0.5) * tt.ln() - tt + sum.ln()
}

/// The gamma function with the default pole radius.
pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    gamma_with_radius(z, DEFAULT_POLE_RADIUS)
}

/// The gamma function. Points within `pole_radius` of `0, -1, -2, ...` are
/// reported as [`Error::Pole`].
pub fn gamma_with_radius(z: ComplexValue, pole_radius: f64) -> Result<ComplexValue> {
    ensure_finite(z, "gamma argument")?;
    check_pole(z, pole_radius)?;
    let value = if z.re < 0.5 {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
        let s = sin_pi_c(z);
        PI / (s * lanczos_log_gamma(1.0 - z).exp())
    } else {
        lanczos_log_gamma(z).exp()
    };
    ensure_finite(value, "gamma")
}

/// `1 / Gamma(z)`, which is entire: returns zero at the poles instead of an error.
pub fn rgamma(z: ComplexValue) -> Result<ComplexValue> {
    match gamma_with_radius(z, 0.0) {
        Ok(g) if g.norm() > 0.0 => Ok(1.0 / g),
        Ok(_) => Err(Error::NonFinite("rgamma")),
        Err(Error::Pole { .. }) => Ok(c(0.0, 0.0)),
        Err(Error::NonFinite(_)) if z.re < 0.5 && sin_pi_c(z).norm() == 0.0 => Ok(c(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

/// Falling factorial `a (a-1) ... (a-k+1)`.
pub fn falling(a: ComplexValue, k: usize) -> ComplexValue {
    (0..k).fold(c(1.0, 0.0), |acc, j| acc * (a - j as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel(a: ComplexValue, b: ComplexValue) -> f64 {
        (a - b).norm() / b.norm()
    }

    fn strip_grid(n: usize) -> Vec<ComplexValue> {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut out = Vec::new();
        while out.len() < n {
            let z = c(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            let n0 = z.re.round();
            if n0 <= 1.0 && (z - c(n0, 0.0)).norm() < 0.05 {
                continue;
            }
            out.push(z);
        }
        out
    }

    #[test]
    fn gamma_trivial_values() {
        assert!(rel(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-15);
        assert!(rel(gamma(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-15);
        assert!(rel(gamma(c(4.0, 0.0)).unwrap(), c(6.0, 0.0)) < 1e-14);
        assert!(rel(gamma(c(2.5, 0.0)).unwrap(), c(1.329_340_388_179_137, 0.0)) < 1e-14);
    }

    #[test]
    fn gamma_at_i_satisfies_reflection() {
        let z = c(0.0, 1.0);
        let g = gamma(z).unwrap();
        let g1 = gamma(1.0 - z).unwrap();
        let residual = (g * g1 * sin_pi_c(z) / PI - 1.0).norm();
        assert!(residual < 1e-12, "{residual}");
        // |Gamma(i)|^2 = pi / (sinh(pi))
        assert!((g.norm_sqr() - PI / PI.sinh()).abs() < 1e-14);
    }

    #[test]
    fn gamma_reference_values() {
        // Reference values from a 30-digit evaluation.
        let cases = [
            (c(0.3, 0.7), c(0.309_686_256_743_749_155_57, -0.856_787_752_939_270_572_54)),
            (c(-3.5, 2.0), c(-0.001_561_837_432_876_754_544_7, 0.000_461_194_272_084_374_030_9)),
            (c(10.0, -15.0), c(38.578_362_943_224_169_966, -0.473_431_696_379_995_009_23)),
            (c(-19.5, 19.5), c(-4.619_196_829_393_758_622_9e-41, -1.177_077_029_129_094_673_1e-40)),
            (c(20.0, 20.0), c(12_322_153_606_700.210_806, -9_813_622_771_582.521_151_6)),
        ];
        for (z, want) in cases {
            let got = gamma(z).unwrap();
            assert!(rel(got, want) < 1e-13, "gamma({z}) = {got}, want {want}");
        }
    }

    #[test]
    fn gamma_poles_are_errors() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma(c(n, 0.0)), Err(Error::Pole { .. })));
            assert!(matches!(gamma(c(n + 1e-13, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(gamma(c(-2.0 + 1e-9, 0.0)).is_ok());
        assert!(gamma_with_radius(c(-2.0 + 1e-9, 0.0), 1e-8).is_err());
    }

    #[test]
    fn gamma_recurrence_on_strip() {
        for z in strip_grid(100) {
            let g = gamma(z).unwrap();
            let g1 = gamma(z + 1.0).unwrap();
            assert!((g1 - z * g).norm() / g1.norm() <= 1e-12, "z = {z}");
        }
    }

    #[test]
    fn gamma_reflection_on_strip() {
        for z in strip_grid(100) {
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * sin_pi_c(z) / PI;
            assert!((lhs - 1.0).norm() <= 1e-11, "z = {z}");
        }
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        assert_eq!(rgamma(c(-3.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(rel(rgamma(c(3.0, 0.0)).unwrap(), c(0.5, 0.0)) < 1e-15);
    }

    #[test]
    fn principal_pow_examples() {
        let r = principal_pow(c(0.0, 1.0), c(0.5, 0.0)).unwrap();
        assert!(rel(r, c(0.5f64.sqrt(), 0.5f64.sqrt())) < 1e-15);
        assert!(rel(principal_pow(c(4.0, 0.0), c(0.5, 0.0)).unwrap(), c(2.0, 0.0)) < 1e-15);
        let r = principal_pow(c(0.0, 6.0 * PI), c(-2.0, 0.0)).unwrap();
        assert!(rel(r, c(-1.0 / (36.0 * PI * PI), 0.0)) < 1e-14);
    }

    #[test]
    fn principal_pow_rejects_cut() {
        for b in [c(0.0, 0.0), c(-1.0, 0.0), c(-3.5, 0.0)] {
            assert!(matches!(
                principal_pow(b, c(0.5, 0.0)),
                Err(Error::BranchCut { .. })
            ));
        }
        // Just above the cut is fine.
        assert!(principal_pow(c(-1.0, 1e-300), c(0.5, 0.0)).is_ok());
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        for n in -40..40 {
            assert_eq!(sin_pi(n as f64), 0.0);
            assert_eq!(sin_pi(n as f64 + 0.5).abs(), 1.0);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn base() -> impl Strategy<Value = ComplexValue> {
            (-10.0..10.0f64, -10.0..10.0f64)
                .prop_filter("off the cut", |(re, im)| !(im.abs() < 1e-3 && *re <= 0.0))
                .prop_filter("not tiny", |(re, im)| re.hypot(*im) > 1e-2)
                .prop_map(|(re, im)| c(re, im))
        }

        proptest! {
            #[test]
            fn integer_powers_match_multiplication(b in base(), m in -4i32..=4) {
                let p = principal_pow(b, c(m as f64, 0.0)).unwrap();
                let mut q = c(1.0, 0.0);
                for _ in 0..m.unsigned_abs() { q *= b; }
                if m < 0 { q = 1.0 / q; }
                prop_assert!((p - q).norm() / q.norm() <= 1e-13);
            }

            #[test]
            fn branch_containment(b in base(), er in -3.0..3.0f64, ei in -3.0..3.0f64) {
                let e = c(er, ei);
                let p = principal_pow(b, e).unwrap();
                let arg = p.im.atan2(p.re);
                prop_assert!(arg > -PI && arg <= PI);
                prop_assert_eq!(p, (e * b.ln()).exp());
            }
        }
    }
}
