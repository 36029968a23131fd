//! Verification reports and their canonical JSON encoding: object keys
//! sorted, floats printed with 17 significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub samples: usize,
    pub seed: u64,
    pub max_residual: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FailureSample>,
}

/// The lowest-indexed sample whose residual exceeded the tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailureSample {
    pub index: usize,
    pub residual: f64,
    pub points: Vec<Vec<f64>>,
}

impl VerificationReport {
    /// Reduces per-sample residuals.  NaN counts as a failure.
    pub fn from_residuals(
        check: &str,
        seed: u64,
        tol: f64,
        residuals: &[f64],
        points: impl Fn(usize) -> Vec<Vec<f64>>,
    ) -> Self {
        let max_residual = residuals.iter().fold(0.0f64, |m, &r| if r.is_nan() { f64::INFINITY } else { m.max(r) });
        let first = residuals.iter().position(|&r| r.is_nan() || r >= tol);
        VerificationReport {
            check: check.to_string(),
            samples: residuals.len(),
            seed,
            max_residual,
            pass: first.is_none(),
            first_failure: first.map(|index| FailureSample {
                index,
                residual: residuals[index],
                points: points(index),
            }),
        }
    }
}

struct SciFloats;

impl Formatter for SciFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

/// Compact JSON with sorted keys and `{:.16e}` floats.
pub fn to_canonical_json<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    // `Value` objects are BTreeMaps, which gives the key order.
    let value = serde_json::to_value(v)?;
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFloats);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_sorted_and_floats_fixed_width() {
        let r = VerificationReport::from_residuals("lsb", 42, 1e-9, &[1e-12, 0.0], |_| vec![]);
        let s = to_canonical_json(&r).unwrap();
        assert_eq!(s, r#"{"check":"lsb","max_residual":9.9999999999999998e-13,"pass":true,"samples":2,"seed":42}"#);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["max_residual"].as_f64(), Some(1e-12));
    }

    #[test]
    fn first_failure_is_lowest_index() {
        let r = VerificationReport::from_residuals("x", 1, 0.5, &[0.1, 0.9, f64::NAN], |i| vec![vec![i as f64]]);
        assert!(!r.pass);
        assert_eq!(r.max_residual, f64::INFINITY);
        assert_eq!(r.first_failure.unwrap().index, 1);
    }
}
