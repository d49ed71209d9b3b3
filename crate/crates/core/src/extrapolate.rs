//! Richardson extrapolation of `V(h)` to `h -> 0` from samples on a geometric
//! ladder `h_k = h_0 / ratio^k`, for models `V(h) ~ V + sum_j a_j h^(p_j)`.
//!
//! Exponents may be complex and may repeat; a repeated exponent also removes
//! the matching `h^p log h` term.

use crate::complexfn::ComplexValue;
use crate::error::{Error, Result};

/// The diagonal `T_0[last], T_1[last], ...` of the extrapolation table; entry `j`
/// has eliminated the first `j` exponents.
pub fn richardson_diagonal(
    values: &[ComplexValue],
    ratio: f64,
    exponents: &[ComplexValue],
) -> Vec<ComplexValue> {
    let mut row = values.to_vec();
    let mut diagonal = Vec::with_capacity(values.len());
    if let Some(last) = row.last() {
        diagonal.push(*last);
    }
    for p in exponents.iter().take(values.len().saturating_sub(1)) {
        let f = (p * ratio.ln()).exp();
        row = row.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
        diagonal.push(*row.last().unwrap());
    }
    diagonal
}

/// Convergence test for an extrapolant sequence.
#[derive(Debug, Clone, Copy)]
pub struct CauchyCheck {
    /// Differences are taken between entries `stride` apart.
    pub stride: usize,
    /// Each difference must shrink by this factor relative to the one before.
    pub max_ratio: f64,
    /// Differences below this are treated as converged.
    pub noise_floor: f64,
    /// How many trailing ratios are checked.
    pub checked: usize,
}

/// Extrapolated limit with the size of the last step as its error.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolated {
    pub value: ComplexValue,
    pub error: f64,
    pub diagonal: Vec<ComplexValue>,
    /// `|d_(j+stride) - d_j|` along the diagonal.
    pub differences: Vec<f64>,
}

impl CauchyCheck {
    pub fn apply(&self, diagonal: Vec<ComplexValue>) -> Result<Extrapolated> {
        let stride = self.stride.max(1);
        if diagonal.len() < stride + 1 {
            return Err(Error::ExtrapolationUnstable(format!(
                "{} levels are too few for a convergence check",
                diagonal.len()
            )));
        }
        let differences: Vec<f64> = diagonal
            .iter()
            .zip(diagonal.iter().skip(stride))
            .map(|(a, b)| (b - a).norm())
            .collect();
        let ratios = differences.len().saturating_sub(stride);
        for j in ratios.saturating_sub(self.checked)..ratios {
            let (older, newer) = (differences[j], differences[j + stride]);
            if newer <= self.noise_floor {
                continue;
            }
            if !(newer <= self.max_ratio * older) {
                return Err(Error::ExtrapolationUnstable(format!(
                    "extrapolant differences {older:e} -> {newer:e} shrink by less than {}",
                    self.max_ratio
                )));
            }
        }
        let value = *diagonal.last().unwrap();
        let error = *differences.last().unwrap();
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonFinite("extrapolated limit"));
        }
        Ok(Extrapolated {
            value,
            error,
            diagonal,
            differences,
        })
    }
}
