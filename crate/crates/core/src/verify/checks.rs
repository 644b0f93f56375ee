use num_complex::Complex64;

use crate::contour::{
    integrate_real_improper, integrate_rectangle, integrate_vertical, ContourSettings,
    IntegrandFamily, RectangleSpec, VerticalLineSpec,
};
use crate::error::{Error, Result};
use crate::residues::{enumerate_poles, residue_at};
use crate::specfun::{bernoulli_f64, gamma};
use crate::zeta::{double_sum_oracle, hurwitz_zeta, riemann_zeta};

use super::config::CaseSpec;
use super::report::ReportEntry;

/// Absolute accuracy requested from quadrature when the comparison
/// tolerance is `tol` and the expected value has modulus `scale`.
pub(crate) fn quadrature_target(tol: f64, scale: f64) -> f64 {
    0.1 * tol * scale.max(1.0)
}

fn cpow(base: f64, exponent: Complex64) -> Complex64 {
    (exponent * base.ln()).exp()
}

fn line(f: &IntegrandFamily, c: f64, tol: f64, settings: &ContourSettings) -> Result<Complex64> {
    Ok(integrate_vertical(f, &VerticalLineSpec { c, tol }, settings)?.value)
}

/// `Γ(s)(1+u)^{-s}`.
pub fn binomial_closed_form(s: Complex64, u: f64) -> Result<Complex64> {
    Ok(gamma(s)? * cpow(1.0 + u, -s))
}

/// `Σ_{k<terms} Γ(s+k)(-u)^k / k!`, built by the ratio of consecutive terms.
pub fn binomial_partial_sum(s: Complex64, u: f64, terms: usize) -> Result<Complex64> {
    let mut term = gamma(s)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..terms {
        sum += term;
        term = term * (s + k as f64) * (-u / (k as f64 + 1.0));
    }
    Ok(sum)
}

/// `(1/2πi) ∫ Γ(z)Γ(s-z) a^{-z} b^{z-s} dz`, rewritten as a Gamma-power
/// line integral with the smaller of `a, b` in the numerator of `u`.
pub fn two_term_line(
    s: Complex64,
    a: f64,
    b: f64,
    c: f64,
    tol: f64,
    settings: &ContourSettings,
) -> Result<Complex64> {
    if !(a >= 1.0 && b >= 1.0) {
        return Err(Error::DomainViolation(format!(
            "two-term splitting needs a, b >= 1, got a = {a}, b = {b}"
        )));
    }
    // Γ(z)Γ(s-z) a^{-z} b^{z-s} = b^{-s} Γ(z)Γ(s-z) (a/b)^{-z}; for a > b the
    // substitution z -> s - z moves the line to Re z = Re s - c.
    let (big, small, abscissa) = if a <= b { (b, a, c) } else { (a, b, s.re - c) };
    let prefactor = cpow(big, -s);
    let f = IntegrandFamily::gamma_power(s, small / big)?;
    let norm = prefactor.norm();
    Ok(prefactor * line(&f, abscissa, tol / norm.max(f64::MIN_POSITIVE), settings)?)
}

/// `Σ_{n<terms} B_{2n} x^{2n} / (2n)!`.
pub fn coth_partial_sum(x: f64, terms: usize) -> Result<f64> {
    let mut sum = 0.0;
    let mut power_over_fact = 1.0;
    for n in 0..terms {
        if n > 0 {
            let m = 2 * n;
            power_over_fact *= x * x / ((m - 1) as f64 * m as f64);
        }
        sum += bernoulli_f64(2 * n)? * power_over_fact;
    }
    Ok(sum)
}

/// `(x/2) coth(x/2)`, with the removable singularity at 0 filled in.
pub fn half_coth(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let h = 0.5 * x;
        h / h.tanh()
    }
}

/// Evaluates one identity case: the left side by quadrature or series, the
/// right side by closed form or an independent oracle.
pub fn check_identity(
    case: &CaseSpec,
    tol: f64,
    settings: &ContourSettings,
) -> Result<ReportEntry> {
    let id = case.id();
    let entry = match *case {
        CaseSpec::MbPower { s, u, c, .. } => {
            let rhs = binomial_closed_form(s.0, u)?;
            let f = IntegrandFamily::gamma_power(s.0, u)?;
            let lhs = line(&f, c, quadrature_target(tol, rhs.norm()), settings)?;
            ReportEntry::compare(id, lhs, rhs, tol)
        }
        CaseSpec::BinomialSeries { s, u, terms, .. } => {
            let rhs = binomial_closed_form(s.0, u)?;
            let lhs = binomial_partial_sum(s.0, u, terms)?;
            ReportEntry::compare(id, lhs, rhs, tol)
        }
        CaseSpec::TwoTerm { s, a, b, c, .. } => {
            let rhs = gamma(s.0)? * cpow(a + b, -s.0);
            let lhs = two_term_line(s.0, a, b, c, quadrature_target(tol, rhs.norm()), settings)?;
            ReportEntry::compare(id, lhs, rhs, tol)
        }
        CaseSpec::DoubleSum { s, c, .. } => {
            let g = gamma(s.0)?;
            let oracle_tol = 0.01 * tol / g.norm().max(1.0);
            let rhs = g * double_sum_oracle(s.0, oracle_tol)?;
            let f = IntegrandFamily::zeta_zeta_gamma(s.0)?;
            let lhs = line(&f, c, quadrature_target(tol, rhs.norm()), settings)?;
            ReportEntry::compare(id, lhs, rhs, tol)
        }
        CaseSpec::HurwitzKernel { s, a, c, .. } => {
            let rhs = gamma(s.0)? * hurwitz_zeta(s.0, a, &settings.zeta)?;
            let f = IntegrandFamily::zeta_gamma_power(s.0, a)?;
            let lhs = line(&f, c, quadrature_target(tol, rhs.norm()), settings)?;
            ReportEntry::compare(id, lhs, rhs, tol)
        }
        CaseSpec::AppIntegral { s, .. } => {
            let z = &settings.zeta;
            let rhs = gamma(s.0)? * (riemann_zeta(s.0 - 1.0, z)? - riemann_zeta(s.0, z)?);
            let lhs =
                integrate_real_improper(s.0, quadrature_target(tol, rhs.norm()), settings)?.value;
            ReportEntry::compare(id, lhs, rhs, tol)
        }
        CaseSpec::CothExpansion { x, terms, .. } => {
            let lhs = coth_partial_sum(x, terms)?;
            let rhs = half_coth(x);
            ReportEntry::compare(id, lhs.into(), rhs.into(), tol)
        }
        CaseSpec::Rectangle {
            family,
            right,
            left,
            half_height,
            ..
        } => {
            let f = family.build()?;
            let rect = RectangleSpec::from_edges(right, left, half_height);
            check_rectangle(id, &f, &rect, tol, settings)?
        }
        _ => return Err(Error::UnknownCaseKind(case.kind().to_string())),
    };
    Ok(entry)
}

/// Boundary integral of `rect` against the sum of the residues it encloses.
pub fn check_rectangle(
    id: &str,
    f: &IntegrandFamily,
    rect: &RectangleSpec,
    tol: f64,
    settings: &ContourSettings,
) -> Result<ReportEntry> {
    let poles = enumerate_poles(f, rect, settings)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    for p in &poles {
        rhs += residue_at(f, p, settings)?.value;
    }
    let lhs = integrate_rectangle(f, rect, quadrature_target(tol, rhs.norm()), settings)?.value;
    let positions: Vec<String> = poles.iter().map(|p| p.position.to_string()).collect();
    Ok(ReportEntry::compare(id, lhs, rhs, tol)
        .with_detail(format!("poles [{}]", positions.join(" "))))
}
