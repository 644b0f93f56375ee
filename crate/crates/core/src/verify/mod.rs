//! Identity verification harness.
//!
//! A suite is a list of cases read from [`SuiteConfig`]. Identity cases
//! compare a quadrature or series value with a closed form or an independent
//! oracle; the study cases (decay, envelope, tail) are encoded as entries
//! whose left side counts violations, so every entry obeys the same rule:
//! it passes when its absolute or relative error is within its tolerance.
//!
//! Cases run in parallel and the report keeps configuration order.

mod checks;
mod config;
mod report;
mod studies;

use rayon::prelude::*;

pub use checks::{
    binomial_closed_form, binomial_partial_sum, check_identity, check_rectangle, coth_partial_sum,
    half_coth, two_term_line,
};
pub use config::{
    default_battery, BoundKind, CValue, CaseSpec, DecayMode, EnvelopeRange, FamilySpec, Method,
    QuadratureConfig, SuiteConfig, Tolerances, CASE_KINDS,
};
pub use report::{Environment, ReportEntry, VerificationReport, CSV_HEADER, REPORT_VERSION};
pub use studies::{decay_study, fit_envelope, tail_entry, DecayStudy, EnvelopeFit};

use crate::contour::ContourSettings;
use crate::error::Result;

/// Runs one case. Numerical failures become failed entries carrying the
/// error message rather than aborting the suite.
pub fn run_case(case: &CaseSpec, config: &SuiteConfig, settings: &ContourSettings) -> ReportEntry {
    let tol = case.tolerance(&config.tolerances);
    let outcome = match case {
        CaseSpec::Decay {
            id,
            mode,
            family,
            c,
            k,
            steps,
            threshold,
        } => family
            .build()
            .and_then(|f| decay_study(*mode, &f, *c, *k, steps, *threshold, settings))
            .map(|d| d.to_entry(id)),
        CaseSpec::Envelope { id, bound, range } => {
            let range = range.unwrap_or_else(|| config.envelope_range(*bound));
            fit_envelope(*bound, &range, settings).map(|fit| fit.to_entry(id))
        }
        CaseSpec::Tail {
            id,
            s,
            max_index,
            max_onset,
            min_last_ratio,
        } => tail_entry(id, s.0, *max_index, *max_onset, *min_last_ratio, settings),
        _ => check_identity(case, tol, settings),
    };
    outcome.unwrap_or_else(|e| ReportEntry::failed(case.id(), tol, e.to_string()))
}

pub fn environment(config: &SuiteConfig) -> Environment {
    let settings = config.settings();
    Environment {
        precision: "binary64".into(),
        quadrature_rule: "adaptive Gauss-Kronrod 7/15".into(),
        pole_guard: settings.pole_guard,
        max_evaluations: settings.quad.max_evaluations,
        zeta_em_terms: settings.zeta.em_terms,
        zeta_correction_order: settings.zeta.correction_order,
        zeta_reflect_below: settings.zeta.reflect_below,
        package_version: env!("CARGO_PKG_VERSION").into(),
    }
}

/// Validates `config`, runs every case and assembles the report.
pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    config.validate()?;
    let settings = config.settings();
    let entries: Vec<ReportEntry> = config
        .cases
        .par_iter()
        .map(|case| run_case(case, config, &settings))
        .collect();
    Ok(VerificationReport::new(environment(config), entries))
}
