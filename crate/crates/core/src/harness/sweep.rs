//! Grid sweeps described by a TOML file, written as CSV or json-lines.
//!
//! ```toml
//! methods = ["series", "theorem1"]
//!
//! [t]
//! start = "0.2+0.6i"
//! stop = "0.2+0.6i"
//! count = 1
//!
//! [x]
//! start = "0.7-0.4i"
//! stop = "0.7-0.4i"
//! count = 1
//!
//! [s]
//! start = "1.5"
//! stop = "3.5"
//! count = 5
//! component = "re"
//!
//! [tolerances]
//! rel_tol = 1e-11
//! ```

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexfn::{c, ComplexValue};
use crate::error::{Error, Result};
use crate::lerch_ref::EvaluationPoint;
use crate::literal::parse_complex;
use crate::method::{EvalSettings, Method};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    /// Only the real part moves; the imaginary part is taken from `start`.
    Re,
    /// Only the imaginary part moves; the real part is taken from `start`.
    Im,
    /// Both parts move along the segment from `start` to `stop`.
    #[default]
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub start: String,
    pub stop: String,
    pub count: usize,
    #[serde(default)]
    pub component: Component,
}

impl Axis {
    pub fn values(&self) -> Result<Vec<ComplexValue>> {
        if self.count < 1 {
            return Err(Error::domain("axis count must be at least 1"));
        }
        let a = parse_complex(&self.start)?;
        let b = parse_complex(&self.stop)?;
        let b = match self.component {
            Component::Re => c(b.re, a.im),
            Component::Im => c(a.re, b.im),
            Component::Both => b,
        };
        Ok((0..self.count)
            .map(|j| {
                if self.count == 1 {
                    a
                } else {
                    let w = j as f64 / (self.count - 1) as f64;
                    a + (b - a) * w
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub series_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub t: Axis,
    pub x: Axis,
    pub s: Axis,
    pub methods: Vec<Method>,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
}

impl SweepSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: SweepSpec =
            toml::from_str(text).map_err(|e| Error::domain(format!("invalid sweep spec: {e}")))?;
        if spec.methods.is_empty() {
            return Err(Error::domain("sweep spec lists no methods"));
        }
        Ok(spec)
    }

    pub fn settings(&self, base: &EvalSettings) -> Result<EvalSettings> {
        let mut out = base.clone();
        if let Some(v) = self.tolerances.rel_tol {
            out.quadrature.rel_tol = v;
        }
        if let Some(v) = self.tolerances.abs_tol {
            out.quadrature.abs_tol = v;
        }
        if let Some(v) = self.tolerances.series_tol {
            out.series_tol = v;
        }
        out.quadrature.validate()?;
        if !(out.series_tol > 0.0) {
            return Err(Error::domain("series_tol must be positive"));
        }
        Ok(out)
    }

    /// Rows in order: `t` outermost, then `x`, `s`, method.
    pub fn rows(&self) -> Result<Vec<(EvaluationPoint, Method)>> {
        let (ts, xs, ss) = (self.t.values()?, self.x.values()?, self.s.values()?);
        let mut out = Vec::with_capacity(ts.len() * xs.len() * ss.len() * self.methods.len());
        for &t in &ts {
            for &x in &xs {
                for &s in &ss {
                    for &m in &self.methods {
                        out.push((EvaluationPoint::new(t, x, s), m));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    Skipped,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t_re: f64,
    pub t_im: f64,
    pub x_re: f64,
    pub x_im: f64,
    pub s_re: f64,
    pub s_im: f64,
    pub method: Method,
    pub val_re: Option<f64>,
    pub val_im: Option<f64>,
    pub err: Option<f64>,
    pub ms: f64,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

pub const CSV_COLUMNS: [&str; 11] = [
    "t_re", "t_im", "x_re", "x_im", "s_re", "s_im", "method", "val_re", "val_im", "err", "ms",
];

pub fn evaluate_row(p: EvaluationPoint, method: Method, settings: &EvalSettings) -> SweepRow {
    let start = Instant::now();
    let result = method.evaluate(&p, settings);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let (val, err, status, reason) = match result {
        Ok(e) => (Some(e.value), Some(e.error), RowStatus::Ok, None),
        Err(e) if e.is_domain() => (None, None, RowStatus::Skipped, Some(e.to_string())),
        Err(e) => (None, None, RowStatus::Failed, Some(e.to_string())),
    };
    SweepRow {
        t_re: p.t.re,
        t_im: p.t.im,
        x_re: p.x.re,
        x_im: p.x.im,
        s_re: p.s.re,
        s_im: p.s.im,
        method,
        val_re: val.map(|v| v.re),
        val_im: val.map(|v| v.im),
        err,
        ms,
        status,
        reason,
    }
}

/// Evaluates every row in parallel; the result is in row order.
pub fn run_sweep(spec: &SweepSpec, base: &EvalSettings) -> Result<Vec<SweepRow>> {
    let settings = spec.settings(base)?;
    let rows = spec.rows()?;
    Ok(rows
        .par_iter()
        .map(|&(p, m)| evaluate_row(p, m, &settings))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableFormat {
    Csv,
    JsonLines,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json-lines" | "jsonl" => Ok(TableFormat::JsonLines),
            _ => Err(Error::domain(format!("unknown table format {s:?}; expected csv or json-lines"))),
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_table<W: Write>(out: W, rows: &[SweepRow], format: TableFormat) -> std::io::Result<()> {
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for r in rows {
                w.write_record([
                    r.t_re.to_string(),
                    r.t_im.to_string(),
                    r.x_re.to_string(),
                    r.x_im.to_string(),
                    r.s_re.to_string(),
                    r.s_im.to_string(),
                    r.method.to_string(),
                    opt(r.val_re),
                    opt(r.val_im),
                    opt(r.err),
                    r.ms.to_string(),
                ])?;
            }
            w.flush()
        }
        TableFormat::JsonLines => {
            let mut out = out;
            for r in rows {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPEC: &str = r#"
methods = ["series", "theorem1"]

[t]
start = "0.2+0.6i"
stop = "0.2+0.6i"
count = 1

[x]
start = "0.7-0.4i"
stop = "0.7-0.4i"
count = 1

[s]
start = "1.5"
stop = "3.5"
count = 5
component = "re"
"#;

    #[test]
    fn axes_and_rows() {
        let spec = SweepSpec::from_toml(SPEC).unwrap();
        let s = spec.s.values().unwrap();
        assert_eq!(s, vec![c(1.5, 0.0), c(2.0, 0.0), c(2.5, 0.0), c(3.0, 0.0), c(3.5, 0.0)]);
        let rows = spec.rows().unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[1].1, Method::Theorem1);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(SweepSpec::from_toml("methods = []").is_err());
        let zero = SPEC.replace("count = 5", "count = 0");
        assert!(SweepSpec::from_toml(&zero).unwrap().rows().is_err());
        let typo = SPEC.replace("component = \"re\"", "componnet = \"re\"");
        assert!(SweepSpec::from_toml(&typo).is_err());
    }

    #[test]
    fn csv_header_order() {
        let mut buf = Vec::new();
        write_table(&mut buf, &[], TableFormat::Csv).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t_re,t_im,x_re,x_im,s_re,s_im,method,val_re,val_im,err,ms\n");
    }
}
