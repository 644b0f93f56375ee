//! Pole sets and residues of the integrand families, a small-circle
//! residue oracle, and the study of the (divergent) residue series
//! `-Σ_m ζ(-2m-1) ζ(s+2m+1) Γ(s+2m+1) / (2m+1)!`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::contour::{ContourSettings, IntegrandFamily, RectangleSpec};
use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::specfun::log_gamma;
use crate::zeta::{riemann_zeta, zeta_negative_integer};

/// Default circle radius for [`numerical_residue`].
pub const DEFAULT_RADIUS: f64 = 0.3;
/// Default absolute target for [`numerical_residue`].
pub const DEFAULT_RESIDUE_TOL: f64 = 1e-10;
/// Largest index accepted by [`asymptotic_tail_terms`].
pub const MAX_TAIL_INDEX: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleKind {
    /// `z = 1`, from `ζ(z)`.
    ZetaPole,
    /// `z = -n`, from `Γ(z)` alone.
    GammaPole,
    /// `z = -(2m+1)`, where `ζ(z)` is nonzero and `Γ(z)` has its pole.
    OddCombined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleLocation {
    pub position: i64,
    pub kind: PoleKind,
}

impl PoleLocation {
    /// Classifies the integer `n` as a pole of `f`, if it is one.
    pub fn classify(f: &IntegrandFamily, n: i64) -> Option<Self> {
        if !f.is_left_pole(n) {
            return None;
        }
        let kind = match (f.has_zeta(), n) {
            (false, _) => PoleKind::GammaPole,
            (true, 1) => PoleKind::ZetaPole,
            (true, 0) => PoleKind::GammaPole,
            (true, _) => PoleKind::OddCombined,
        };
        Some(Self { position: n, kind })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.position as f64, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueTerm {
    pub location: PoleLocation,
    pub value: Complex64,
}

/// Poles of `f` strictly inside `rect`, ascending by position.
pub fn enumerate_poles(
    f: &IntegrandFamily,
    rect: &RectangleSpec,
    settings: &ContourSettings,
) -> Result<Vec<PoleLocation>> {
    rect.validate(f, settings.pole_guard).map_err(|e| match e {
        Error::PoleOnPath { pole } => Error::PoleOnBoundary { pole },
        other => other,
    })?;
    if let Some(p) = f
        .right_poles(rect.left(), rect.c)
        .into_iter()
        .find(|p| rect.strictly_contains(*p))
    {
        return Err(Error::DomainViolation(format!(
            "rectangle encloses the pole {p} of the Γ(s - z) side"
        )));
    }
    if rect.t <= 0.0 {
        return Ok(Vec::new());
    }
    let lo = rect.left().floor() as i64;
    let hi = (rect.c.ceil() as i64).min(1);
    Ok((lo..=hi)
        .filter(|&n| rect.strictly_contains(Complex64::new(n as f64, 0.0)))
        .filter_map(|n| PoleLocation::classify(f, n))
        .collect())
}

fn ln_factorial(n: u64) -> f64 {
    log_gamma(Complex64::new(n as f64 + 1.0, 0.0))
        .expect("positive argument")
        .re
}

/// Closed-form residue of `f` at `p`.
pub fn residue_at(
    f: &IntegrandFamily,
    p: &PoleLocation,
    settings: &ContourSettings,
) -> Result<ResidueTerm> {
    let n = p.position;
    match PoleLocation::classify(f, n) {
        Some(expected) if expected.kind == p.kind => {}
        _ => return Err(Error::NotAPole(n)),
    }
    let zcfg = &settings.zeta;
    let value = match *f {
        IntegrandFamily::GammaPower { s, u } => {
            let k = (-n) as u64;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (log_gamma(s + k as f64)? + k as f64 * u.ln() - ln_factorial(k)).exp() * sign
        }
        IntegrandFamily::ZetaZetaGamma { s } => match n {
            1 => riemann_zeta(s - 1.0, zcfg)? * log_gamma(s - 1.0)?.exp(),
            0 => -0.5 * riemann_zeta(s, zcfg)? * log_gamma(s)?.exp(),
            _ => {
                let j = (-n) as u64; // 2m + 1
                let zneg = zeta_negative_integer(j as usize)?
                    .to_f64()
                    .ok_or(Error::NonFinite("ζ at a negative integer"))?;
                let shifted = s + j as f64;
                -zneg * riemann_zeta(shifted, zcfg)? * (log_gamma(shifted)? - ln_factorial(j)).exp()
            }
        },
        IntegrandFamily::ZetaGammaPower { s, a } => {
            let ln_base = (a - 1.0).ln();
            match n {
                1 => (log_gamma(s - 1.0)? + (1.0 - s) * ln_base).exp(),
                0 => -0.5 * (log_gamma(s)? - s * ln_base).exp(),
                _ => {
                    let j = (-n) as u64;
                    let zneg = zeta_negative_integer(j as usize)?
                        .to_f64()
                        .ok_or(Error::NonFinite("ζ at a negative integer"))?;
                    let shifted = s + j as f64;
                    -zneg * (log_gamma(shifted)? - shifted * ln_base - ln_factorial(j)).exp()
                }
            }
        }
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(ResidueTerm {
            location: *p,
            value,
        })
    } else {
        Err(Error::NonFinite("residue"))
    }
}

/// `(1/2πi) ∮ F(z) dz` over the counterclockwise circle `|z - z0| = radius`.
///
/// The disk may contain no pole other than (possibly) `z0` itself.
pub fn numerical_residue(
    f: &IntegrandFamily,
    z0: Complex64,
    radius: f64,
    tol: f64,
    settings: &ContourSettings,
) -> Result<Complex64> {
    Ok(numerical_residue_with_error(f, z0, radius, tol, settings)?.0)
}

/// As [`numerical_residue`], also returning the quadrature error estimate.
pub fn numerical_residue_with_error(
    f: &IntegrandFamily,
    z0: Complex64,
    radius: f64,
    tol: f64,
    settings: &ContourSettings,
) -> Result<(Complex64, f64)> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::DomainViolation(format!(
            "radius must be positive, got {radius}"
        )));
    }
    for p in f.poles_in_strip(z0.re - radius - 1.0, z0.re + radius + 1.0) {
        let d = (p - z0).norm();
        if (d - radius).abs() <= settings.pole_guard {
            return Err(Error::PoleOnCircle { pole: p });
        }
        if d < radius && d > settings.pole_guard {
            return Err(Error::DomainViolation(format!(
                "the disk around {z0} also contains the pole {p}"
            )));
        }
    }
    let two_pi = 2.0 * PI;
    // dz = i r e^{iθ} dθ, so the 1/(2πi) normalization leaves r e^{iθ} / 2π
    let r = integrate(
        |theta| {
            let e = Complex64::from_polar(1.0, theta);
            Ok(f.eval(z0 + e * radius, settings)? * e * (radius / two_pi))
        },
        0.0,
        two_pi,
        tol,
        &settings.quad,
    )?;
    Ok((r.value, r.err_estimate))
}

/// Terms `t_m` of the residue series and where they turn upward.
#[derive(Debug, Clone, PartialEq)]
pub struct TailStudy {
    pub terms: Vec<Complex64>,
    /// Index of the smallest `|t_m|`.
    pub min_index: usize,
    /// Smallest `m0` with `|t_m|` strictly increasing for all `m ≥ m0` in range.
    pub growth_onset: usize,
}

impl TailStudy {
    pub fn magnitudes(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.norm()).collect()
    }

    /// `|t_M| / |t_{M-1}|` for the last computed pair.
    pub fn last_ratio(&self) -> Option<f64> {
        let n = self.terms.len();
        (n >= 2).then(|| self.terms[n - 1].norm() / self.terms[n - 2].norm())
    }
}

/// `t_m = ζ(-2m-1) ζ(s+2m+1) Γ(s+2m+1) / (2m+1)!` for `m = 0..=max_index`.
pub fn asymptotic_tail_terms(
    s: Complex64,
    max_index: usize,
    settings: &ContourSettings,
) -> Result<TailStudy> {
    if s.re <= 2.0 {
        return Err(Error::DomainViolation(format!(
            "tail study needs Re(s) > 2, got s = {s}"
        )));
    }
    if max_index > MAX_TAIL_INDEX {
        return Err(Error::DomainViolation(format!(
            "tail study index {max_index} exceeds {MAX_TAIL_INDEX}"
        )));
    }
    let mut terms = Vec::with_capacity(max_index + 1);
    for m in 0..=max_index {
        let j = 2 * m + 1;
        let zneg = zeta_negative_integer(j)?
            .to_f64()
            .ok_or(Error::NonFinite("ζ at a negative integer"))?;
        let shifted = s + j as f64;
        let t = zneg
            * riemann_zeta(shifted, &settings.zeta)?
            * (log_gamma(shifted)? - ln_factorial(j as u64)).exp();
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::NonFinite("tail term"));
        }
        terms.push(t);
    }
    let mags: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
    let min_index = mags
        .iter()
        .enumerate()
        .fold(0, |best, (i, &v)| if v < mags[best] { i } else { best });
    let mut growth_onset = max_index;
    while growth_onset > 0 && mags[growth_onset] > mags[growth_onset - 1] {
        growth_onset -= 1;
    }
    Ok(TailStudy {
        terms,
        min_index,
        growth_onset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::integrate_rectangle;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn settings() -> ContourSettings {
        ContourSettings::default()
    }

    fn positions(v: &[PoleLocation]) -> Vec<i64> {
        v.iter().map(|p| p.position).collect()
    }

    #[test]
    fn enumerate_examples() {
        let s = settings();
        let g = IntegrandFamily::gamma_power(c(3.0, 0.0), 0.5).unwrap();
        let poles = enumerate_poles(&g, &RectangleSpec::from_edges(0.8, -3.5, 5.0), &s).unwrap();
        assert_eq!(positions(&poles), vec![-3, -2, -1, 0]);
        assert!(poles.iter().all(|p| p.kind == PoleKind::GammaPole));

        let z = IntegrandFamily::zeta_zeta_gamma(c(4.0, 0.0)).unwrap();
        let poles = enumerate_poles(&z, &RectangleSpec::from_edges(1.5, -4.5, 5.0), &s).unwrap();
        assert_eq!(positions(&poles), vec![-3, -1, 0, 1]);
        assert_eq!(poles[0].kind, PoleKind::OddCombined);
        assert_eq!(poles[2].kind, PoleKind::GammaPole);
        assert_eq!(poles[3].kind, PoleKind::ZetaPole);

        let poles = enumerate_poles(&z, &RectangleSpec::from_edges(1.4, 1.2, 5.0), &s).unwrap();
        assert!(poles.is_empty());
    }

    #[test]
    fn enumerate_errors() {
        let s = settings();
        let z = IntegrandFamily::zeta_zeta_gamma(c(4.0, 0.0)).unwrap();
        assert!(matches!(
            enumerate_poles(&z, &RectangleSpec::from_edges(1.5, -1.0, 5.0), &s),
            Err(Error::PoleOnBoundary { .. })
        ));
        assert!(matches!(
            enumerate_poles(&z, &RectangleSpec::from_edges(3.5, 0.5, 5.0), &s),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn residue_examples() {
        let s = settings();
        let z = IntegrandFamily::zeta_zeta_gamma(c(4.0, 0.0)).unwrap();
        let at = |f: &IntegrandFamily, n| {
            residue_at(f, &PoleLocation::classify(f, n).unwrap(), &s)
                .unwrap()
                .value
        };
        assert!((at(&z, 1) - c(2.404_113_806_319_188_6, 0.0)).norm() < 1e-12);
        assert!((at(&z, 0) - c(-3.246_969_701_133_414_6, 0.0)).norm() < 1e-12);
        // -ζ(-1) ζ(5) Γ(5) = 2 ζ(5)
        assert!((at(&z, -1) - c(2.073_855_510_286_739_9, 0.0)).norm() < 1e-12);
        let g = IntegrandFamily::gamma_power(c(3.0, 0.0), 0.5).unwrap();
        assert!((at(&g, -2) - c(3.0, 0.0)).norm() < 1e-12);
        assert!((at(&g, 0) - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn residue_rejects_regular_points() {
        let s = settings();
        let z = IntegrandFamily::zeta_zeta_gamma(c(4.0, 0.0)).unwrap();
        let fake = PoleLocation {
            position: -2,
            kind: PoleKind::GammaPole,
        };
        assert_eq!(residue_at(&z, &fake, &s).unwrap_err(), Error::NotAPole(-2));
        let wrong_kind = PoleLocation {
            position: 1,
            kind: PoleKind::GammaPole,
        };
        assert!(residue_at(&z, &wrong_kind, &s).is_err());
    }

    #[test]
    fn circle_oracle_examples() {
        let s = settings();
        let z = IntegrandFamily::zeta_zeta_gamma(c(4.0, 0.0)).unwrap();
        let r = numerical_residue(&z, c(0.5, 0.0), 0.3, 1e-10, &s).unwrap();
        assert!(r.norm() < 1e-10);
        let r = numerical_residue(&z, c(1.0, 0.0), 0.3, 1e-10, &s).unwrap();
        assert!((r - c(2.404_113_806_319_188_6, 0.0)).norm() < 1e-9);
        let g = IntegrandFamily::gamma_power(c(3.0, 0.0), 0.5).unwrap();
        let r = numerical_residue(&g, c(0.0, 0.0), 0.3, 1e-10, &s).unwrap();
        assert!((r - c(2.0, 0.0)).norm() < 1e-9);
        assert!(matches!(
            numerical_residue(&g, c(0.5, 0.0), 0.5, 1e-10, &s),
            Err(Error::PoleOnCircle { .. })
        ));
    }

    #[test]
    fn tail_study_for_s4() {
        let t = asymptotic_tail_terms(c(4.0, 0.0), 20, &settings()).unwrap();
        let m = t.magnitudes();
        assert!((m[0] - 2.073_855_510_286_74).abs() < 1e-10);
        assert!((m[1] - 1.008_349_277_381_923).abs() < 1e-10);
        assert!((m[2] - 1.336_011_190_434_776).abs() < 1e-10);
        assert_eq!(t.min_index, 1);
        assert!(t.growth_onset <= 2);
        assert!(t.last_ratio().unwrap() > 1.5);
        assert!(t.min_index <= t.growth_onset);
        assert!(asymptotic_tail_terms(c(4.0, 0.0), 31, &settings()).is_err());
        assert!(asymptotic_tail_terms(c(2.0, 0.0), 5, &settings()).is_err());
    }

    #[test]
    fn rectangle_matches_residue_sum() {
        let s = settings();
        let z = IntegrandFamily::zeta_zeta_gamma(c(4.0, 0.0)).unwrap();
        let rect = RectangleSpec::from_edges(1.5, -0.5, 10.0);
        let lhs = integrate_rectangle(&z, &rect, 1e-8, &s).unwrap().value;
        let rhs: Complex64 = enumerate_poles(&z, &rect, &s)
            .unwrap()
            .iter()
            .map(|p| residue_at(&z, p, &s).unwrap().value)
            .sum();
        assert!((rhs - c(-0.842_855_894_814_226, 0.0)).norm() < 1e-12);
        assert!((lhs - rhs).norm() < 1e-7);
    }
}
