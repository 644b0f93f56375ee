use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contour::{integrate_segment, integrate_shifted_line, ContourSettings, IntegrandFamily};
use crate::error::{Error, Result};
use crate::residues::asymptotic_tail_terms;
use crate::specfun::gamma;
use crate::zeta::riemann_zeta;

use super::config::{BoundKind, DecayMode, EnvelopeRange};
use super::report::ReportEntry;

/// Magnitudes produced by [`decay_study`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayStudy {
    pub mode: DecayMode,
    pub steps: Vec<f64>,
    pub magnitudes: Vec<f64>,
    pub threshold: f64,
}

impl DecayStudy {
    pub fn strictly_decreasing(&self) -> bool {
        self.magnitudes.windows(2).all(|w| w[1] < w[0])
    }

    /// Number of consecutive pairs that fail to decrease.
    pub fn increases(&self) -> usize {
        self.magnitudes.windows(2).filter(|w| w[1] >= w[0]).count()
    }

    pub fn final_magnitude(&self) -> f64 {
        self.magnitudes.last().copied().unwrap_or(f64::INFINITY)
    }

    pub fn passed(&self) -> bool {
        self.strictly_decreasing() && self.final_magnitude() < self.threshold
    }

    /// Report form: the final magnitude as the real part and the count of
    /// non-decreasing steps as the imaginary part, compared with zero.
    pub fn to_entry(&self, id: &str) -> ReportEntry {
        let lhs = Complex64::new(self.final_magnitude(), self.increases() as f64);
        let mags: Vec<String> = self.magnitudes.iter().map(|m| format!("{m:.6e}")).collect();
        ReportEntry::compare(id, lhs, Complex64::new(0.0, 0.0), self.threshold)
            .with_detail(format!("magnitudes [{}]", mags.join(" ")))
    }
}

/// Magnitudes of the pieces of contour that are discarded when the line is
/// closed into a rectangle.
///
/// `Horizontal`: `|∫|` along `[c+iT, c-k+iT]` for each `T` in `steps`.
/// `VerticalShift`: `|∫|` along `Re z = c - k` for each `k` in `steps`.
pub fn decay_study(
    mode: DecayMode,
    f: &IntegrandFamily,
    c: f64,
    k: Option<f64>,
    steps: &[f64],
    threshold: f64,
    settings: &ContourSettings,
) -> Result<DecayStudy> {
    if steps.is_empty() {
        return Err(Error::DomainViolation(
            "decay study needs at least one step".into(),
        ));
    }
    // absolute accuracy well below the smallest magnitude that matters
    let tol = threshold * 1e-3;
    let mut magnitudes = Vec::with_capacity(steps.len());
    for &step in steps {
        let value = match mode {
            DecayMode::Horizontal => {
                let k = k.ok_or_else(|| {
                    Error::DomainViolation("horizontal decay needs the left extent k".into())
                })?;
                integrate_segment(
                    f,
                    Complex64::new(c, step),
                    Complex64::new(c - k, step),
                    tol,
                    settings,
                )?
            }
            DecayMode::VerticalShift => integrate_shifted_line(f, c - step, tol, settings)?,
        };
        magnitudes.push(value.value.norm());
    }
    Ok(DecayStudy {
        mode,
        steps: steps.to_vec(),
        magnitudes,
        threshold,
    })
}

/// Outcome of an envelope fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeFit {
    pub bound_kind: BoundKind,
    pub sigma_range: [f64; 2],
    pub fit_range: [f64; 2],
    pub test_range: [f64; 2],
    /// Largest `|f| / envelope` over the fit grid.
    pub constant: f64,
    /// Largest `|f| / envelope` over the test grid.
    pub test_max_ratio: f64,
    /// Test samples with `|f| > constant · envelope`.
    pub violations: usize,
}

impl EnvelopeFit {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_entry(&self, id: &str) -> ReportEntry {
        ReportEntry::compare(
            id,
            Complex64::new(self.violations as f64, 0.0),
            Complex64::new(0.0, 0.0),
            0.5,
        )
        .with_detail(format!(
            "C = {:.6e}, max test ratio = {:.6e}",
            self.constant, self.test_max_ratio
        ))
    }
}

fn linspace(r: [f64; 2], n: usize) -> impl Iterator<Item = f64> {
    let step = (r[1] - r[0]) / (n - 1) as f64;
    (0..n).map(move |i| {
        if i + 1 == n {
            r[1]
        } else {
            r[0] + step * i as f64
        }
    })
}

/// `|f(σ+it)| / envelope(σ, t)` for the given bound.
fn envelope_ratio(
    kind: BoundKind,
    delta: f64,
    sigma: f64,
    t: f64,
    settings: &ContourSettings,
) -> Result<f64> {
    let z = Complex64::new(sigma, t);
    let t = t.abs();
    Ok(match kind {
        BoundKind::GammaExp => gamma(z)?.norm() / (-t).exp(),
        BoundKind::ZetaLeft => riemann_zeta(z, &settings.zeta)?.norm() / t.powf(0.5 - sigma),
        BoundKind::ZetaStrip => riemann_zeta(z, &settings.zeta)?.norm() / t.powf(1.0 - delta),
    })
}

/// Fits the envelope constant on `range.fit` and counts violations of the
/// fitted bound on `range.test`, each over a `grid × grid` sample.
pub fn fit_envelope(
    kind: BoundKind,
    range: &EnvelopeRange,
    settings: &ContourSettings,
) -> Result<EnvelopeFit> {
    range.validate().map_err(|e| match e {
        Error::ConfigError(m) => Error::DomainViolation(m),
        other => other,
    })?;
    let delta = range.delta.unwrap_or(0.25);
    if kind == BoundKind::ZetaStrip && !(delta > 0.0 && delta < 1.0) {
        return Err(Error::DomainViolation(format!(
            "δ must lie in (0, 1), got {delta}"
        )));
    }
    let sample = |ts: [f64; 2]| -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(range.grid * range.grid);
        for sigma in linspace(range.sigma, range.grid) {
            for t in linspace(ts, range.grid) {
                out.push(envelope_ratio(kind, delta, sigma, t, settings)?);
            }
        }
        Ok(out)
    };
    let fit = sample(range.fit)?;
    let test = sample(range.test)?;
    let constant = fit.iter().copied().fold(0.0, f64::max);
    let test_max_ratio = test.iter().copied().fold(0.0, f64::max);
    let violations = test.iter().filter(|&&r| r > constant).count();
    Ok(EnvelopeFit {
        bound_kind: kind,
        sigma_range: range.sigma,
        fit_range: range.fit,
        test_range: range.test,
        constant,
        test_max_ratio,
        violations,
    })
}

/// Checks that the residue-series terms turn upward early and keep growing.
pub fn tail_entry(
    id: &str,
    s: Complex64,
    max_index: usize,
    max_onset: usize,
    min_last_ratio: f64,
    settings: &ContourSettings,
) -> Result<ReportEntry> {
    let study = asymptotic_tail_terms(s, max_index, settings)?;
    let ratio = study.last_ratio().unwrap_or(0.0);
    let violations =
        usize::from(study.growth_onset > max_onset) + usize::from(ratio < min_last_ratio);
    let mags = study.magnitudes();
    let head: Vec<String> = mags.iter().take(4).map(|m| format!("{m:.6}")).collect();
    Ok(ReportEntry::compare(
        id,
        Complex64::new(violations as f64, 0.0),
        Complex64::new(0.0, 0.0),
        0.5,
    )
    .with_detail(format!(
        "|t0..t3| = [{}], minimum at m = {}, growth from m = {}, last ratio = {:.3}",
        head.join(" "),
        study.min_index,
        study.growth_onset,
        ratio
    )))
}
