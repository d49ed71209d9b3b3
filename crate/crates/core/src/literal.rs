//! Complex literals of the form `a`, `a+bi`, `a-bi`, `bi`, `i`, with optional
//! exponent notation and no spaces.

use crate::complexfn::{c, ComplexValue};
use crate::error::{Error, Result};

fn bad(text: &str) -> Error {
    Error::domain(format!(
        "cannot parse {text:?} as a complex number; expected forms like 1.5, 2-0.5i, 3e-2+1e1i, -i"
    ))
}

fn parse_real(text: &str, whole: &str) -> Result<f64> {
    let v: f64 = text.parse().map_err(|_| bad(whole))?;
    if v.is_finite() && !text.contains(|ch: char| ch.is_ascii_alphabetic() && ch != 'e' && ch != 'E') {
        Ok(v)
    } else {
        Err(bad(whole))
    }
}

/// Coefficient of `i`: empty or a bare sign means one.
fn parse_imag(text: &str, whole: &str) -> Result<f64> {
    match text {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(text, whole),
    }
}

pub fn parse_complex(text: &str) -> Result<ComplexValue> {
    let s = text.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(bad(text));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(c(parse_real(s, text)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    match split {
        Some(j) => Ok(c(parse_real(&body[..j], text)?, parse_imag(&body[j..], text)?)),
        None => Ok(c(0.0, parse_imag(body, text)?)),
    }
}

fn format_real(v: f64, decimals: Option<usize>) -> String {
    match decimals {
        Some(d) => format!("{v:.d$}"),
        None => format!("{v:.14e}"),
    }
}

/// Fifteen significant digits on the larger component, imaginary sign always shown.
pub fn format_complex(z: ComplexValue) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let scale = re.abs().max(im.abs());
    let decimals = if scale == 0.0 {
        Some(14)
    } else if !(1e-5..1e15).contains(&scale) {
        None
    } else {
        Some((14 - scale.log10().floor() as i64).max(0) as usize)
    };
    let re_text = format_real(re, decimals);
    let im_text = format_real(im.abs(), decimals);
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{re_text}{sign}{im_text}i")
}
