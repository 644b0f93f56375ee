//! Verification report records and their JSON / CSV forms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Header line of the CSV form.
pub const CSV_HEADER: &str = "id,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tolerance,pass";

/// Report format version.
pub const REPORT_VERSION: &str = "1";

/// One checked identity or property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Free-form context: case kind, fitted constants, error messages.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl ReportEntry {
    /// Entry comparing `lhs` against `rhs`; passes when either the absolute
    /// or the relative error is within `tolerance`.
    pub fn compare(id: impl Into<String>, lhs: Complex64, rhs: Complex64, tolerance: f64) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = relative_error(abs_err, rhs.norm());
        Self {
            id: id.into(),
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            abs_err,
            rel_err,
            tolerance,
            pass: abs_err <= tolerance || rel_err <= tolerance,
            detail: String::new(),
        }
    }

    /// Entry for a computation that raised an error; always failing.
    pub fn failed(id: impl Into<String>, tolerance: f64, message: String) -> Self {
        Self {
            id: id.into(),
            lhs_re: 0.0,
            lhs_im: 0.0,
            rhs_re: 0.0,
            rhs_im: 0.0,
            abs_err: f64::MAX,
            rel_err: f64::MAX,
            tolerance,
            pass: false,
            detail: message,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        if self.detail.is_empty() {
            self.detail = detail;
        } else if !detail.is_empty() {
            self.detail = format!("{detail}; {}", self.detail);
        }
        self
    }

    pub fn lhs(&self) -> Complex64 {
        Complex64::new(self.lhs_re, self.lhs_im)
    }

    pub fn rhs(&self) -> Complex64 {
        Complex64::new(self.rhs_re, self.rhs_im)
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{}",
            csv_field(&self.id),
            self.lhs_re,
            self.lhs_im,
            self.rhs_re,
            self.rhs_im,
            self.abs_err,
            self.rel_err,
            self.tolerance,
            self.pass
        )
    }
}

pub(crate) fn relative_error(abs_err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        abs_err / scale
    } else if abs_err == 0.0 {
        0.0
    } else {
        f64::MAX
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Numerical configuration in force while the report was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub precision: String,
    pub quadrature_rule: String,
    pub pole_guard: f64,
    pub max_evaluations: usize,
    pub zeta_em_terms: usize,
    pub zeta_correction_order: usize,
    pub zeta_reflect_below: f64,
    pub package_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub environment: Environment,
    pub entries: Vec<ReportEntry>,
    pub overall_pass: bool,
}

impl VerificationReport {
    pub fn new(environment: Environment, entries: Vec<ReportEntry>) -> Self {
        let overall_pass = entries.iter().all(|e| e.pass);
        Self {
            version: REPORT_VERSION.to_string(),
            environment,
            entries,
            overall_pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are always serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for e in &self.entries {
            out.push_str(&e.csv_row());
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{:<6} {:<28} abs_err={:<12.3e} rel_err={:<12.3e} tol={:.1e}",
                if e.pass { "PASS" } else { "FAIL" },
                e.id,
                e.abs_err,
                e.rel_err,
                e.tolerance
            ));
            if !e.detail.is_empty() {
                out.push_str("  ");
                out.push_str(&e.detail);
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "overall: {} ({} entries)\n",
            if self.overall_pass { "PASS" } else { "FAIL" },
            self.entries.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule() {
        let e = ReportEntry::compare(
            "a",
            Complex64::new(1.0 + 1e-9, 0.0),
            Complex64::new(1.0, 0.0),
            1e-8,
        );
        assert!(e.pass);
        let e = ReportEntry::compare(
            "b",
            Complex64::new(1e3 + 1e-4, 0.0),
            Complex64::new(1e3, 0.0),
            1e-6,
        );
        // absolute error 1e-4 fails, relative 1e-7 passes
        assert!(e.pass);
        let e = ReportEntry::compare(
            "c",
            Complex64::new(1e-3, 0.0),
            Complex64::new(0.0, 0.0),
            1e-6,
        );
        assert!(!e.pass);
        assert_eq!(e.rel_err, f64::MAX);
        assert!(!ReportEntry::failed("d", 1.0, "boom".into()).pass);
    }

    #[test]
    fn csv_layout() {
        let r = VerificationReport::new(
            Environment {
                precision: "binary64".into(),
                quadrature_rule: "gk15".into(),
                pole_guard: 1e-6,
                max_evaluations: 10,
                zeta_em_terms: 20,
                zeta_correction_order: 12,
                zeta_reflect_below: 0.5,
                package_version: "0".into(),
            },
            vec![ReportEntry::compare(
                "x,y",
                Complex64::new(1.0, 2.0),
                Complex64::new(1.0, 2.0),
                1e-8,
            )],
        );
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let row = lines.next().unwrap();
        assert!(row.starts_with("\"x,y\",1e0,2e0"));
        assert!(row.ends_with(",true"));
        assert!(r.overall_pass);
    }
}
