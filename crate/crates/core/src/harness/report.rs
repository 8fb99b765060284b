//! Verification records and their CSV form.

use std::fmt::Write as _;
use std::time::Duration;

use num_complex::Complex64;

/// Hard checks decide the exit status; soft checks are reported only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Severity {
    Hard,
    Soft,
}

/// How `lhs` and `rhs` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    /// `lhs = rhs`: relative error, or absolute error when
    /// `|lhs| + |rhs| < 1`, against the tolerance.
    Equal,
    /// `|lhs| <= tolerance * |rhs|`; `rel_error` holds the ratio.
    AtMost,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub identity: String,
    /// Ordered `(key, value)` pairs.
    pub parameters: Vec<(String, String)>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub severity: Severity,
    pub passed: bool,
    /// Not serialized, so the CSV stays reproducible.
    pub wall_time: Duration,
}

/// Below this combined size an equality is judged by absolute error.
pub const NEAR_ZERO: f64 = 1.0;

impl VerificationReport {
    pub fn equality(
        identity: impl Into<String>,
        parameters: Vec<(String, String)>,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
        severity: Severity,
    ) -> Self {
        let abs_error = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel_error = if scale == 0.0 { 0.0 } else { abs_error / scale };
        let passed = if lhs.norm() + rhs.norm() < NEAR_ZERO {
            abs_error <= tolerance
        } else {
            rel_error <= tolerance
        };
        Self {
            suite: String::new(),
            identity: identity.into(),
            parameters,
            lhs,
            rhs,
            abs_error,
            rel_error,
            tolerance,
            comparison: Comparison::Equal,
            severity,
            passed,
            wall_time: Duration::ZERO,
        }
    }

    /// `value <= tolerance * bound`, with the ratio `value / bound` recorded.
    pub fn at_most(
        identity: impl Into<String>,
        parameters: Vec<(String, String)>,
        value: f64,
        bound: f64,
        tolerance: f64,
        severity: Severity,
    ) -> Self {
        let ratio = value.abs() / bound.abs();
        Self {
            suite: String::new(),
            identity: identity.into(),
            parameters,
            lhs: Complex64::new(value, 0.0),
            rhs: Complex64::new(bound, 0.0),
            abs_error: (value.abs() - bound.abs()).max(0.0),
            rel_error: ratio,
            tolerance,
            comparison: Comparison::AtMost,
            severity,
            passed: ratio <= tolerance,
            wall_time: Duration::ZERO,
        }
    }

    /// A failure raised by the computation itself.
    pub fn error(identity: impl Into<String>, parameters: Vec<(String, String)>, message: &str) -> Self {
        let mut parameters = parameters;
        parameters.push(("error".into(), message.replace([',', ';', '\n'], " ")));
        Self {
            suite: String::new(),
            identity: identity.into(),
            parameters,
            lhs: Complex64::new(f64::NAN, 0.0),
            rhs: Complex64::new(f64::NAN, 0.0),
            abs_error: f64::NAN,
            rel_error: f64::NAN,
            tolerance: 0.0,
            comparison: Comparison::Equal,
            severity: Severity::Hard,
            passed: false,
            wall_time: Duration::ZERO,
        }
    }

    pub fn hard_failure(&self) -> bool {
        !self.passed && self.severity == Severity::Hard
    }
}

/// Build a parameter list from `key => value` pairs.
#[macro_export]
macro_rules! params {
    ($($k:expr => $v:expr),* $(,)?) => {
        vec![$(($k.to_string(), $v.to_string())),*]
    };
}

/// 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// `re+imj` / `re-imj`.
pub fn fmt_complex(z: Complex64) -> String {
    let re = fmt_real(z.re);
    if z.im.is_sign_negative() && !z.im.is_nan() {
        format!("{re}-{}j", fmt_real(-z.im))
    } else {
        format!("{re}+{}j", fmt_real(z.im))
    }
}

pub const CSV_HEADER: &str =
    "suite,identity,parameters,lhs,rhs,abs_error,rel_error,tolerance,comparison,severity,passed";

/// Header line plus one line per report, LF-terminated.
pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::with_capacity(128 * (reports.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.suite,
            r.identity,
            params.join(";"),
            fmt_complex(r.lhs),
            fmt_complex(r.rhs),
            fmt_real(r.abs_error),
            fmt_real(r.rel_error),
            fmt_real(r.tolerance),
            match r.comparison {
                Comparison::Equal => "equal",
                Comparison::AtMost => "at_most",
            },
            match r.severity {
                Severity::Hard => "hard",
                Severity::Soft => "soft",
            },
            r.passed
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_format() {
        assert_eq!(
            fmt_complex(Complex64::new(1.0, -0.5)),
            "1.0000000000000000e0-5.0000000000000000e-1j"
        );
        assert_eq!(
            fmt_complex(Complex64::new(-2.0, 0.0)),
            "-2.0000000000000000e0+0.0000000000000000e0j"
        );
        let back: f64 = fmt_real(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }

    #[test]
    fn verdict_rules() {
        let small = VerificationReport::equality(
            "x",
            vec![],
            Complex64::new(1e-3, 0.0),
            Complex64::new(1.5e-3, 0.0),
            1e-3,
            Severity::Hard,
        );
        assert!(small.passed, "absolute rule near zero");
        let big = VerificationReport::equality(
            "x",
            vec![],
            Complex64::new(100.0, 0.0),
            Complex64::new(100.01, 0.0),
            1e-3,
            Severity::Hard,
        );
        assert!(big.passed);
        assert!((big.rel_error - 0.01 / 100.01).abs() < 1e-15);
        let bound = VerificationReport::at_most("b", params!("C" => 2), 3.0, 2.0, 1.0, Severity::Soft);
        assert!(!bound.passed && !bound.hard_failure());
        assert_eq!(bound.parameters, vec![("C".to_string(), "2".to_string())]);
    }

    #[test]
    fn csv_shape() {
        let r = VerificationReport::equality(
            "id",
            params!("p" => 3),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            1e-9,
            Severity::Hard,
        );
        let csv = to_csv(&[r]);
        let lines: Vec<&str> = csv.split('\n').collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1].split(',').count(), CSV_HEADER.split(',').count());
        assert!(!csv.contains('\r'));
    }
}
