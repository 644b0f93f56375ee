//! Suite configuration: the JSON document accepted by the runner.
//!
//! ```json
//! {
//!   "tolerances": {"gamma": 1e-8, "zeta": 1e-6, "series": 1e-10},
//!   "cases": [{"kind": "mb_power", "id": "mb1", "s": [3, 0], "u": 0.5, "c": 1.2}],
//!   "envelope_ranges": {"gamma_exp": {"sigma": [0.5, 3], "fit": [1, 10], "test": [10, 40]}},
//!   "quadrature": {"pole_guard": 1e-6, "max_evaluations": 2000000}
//! }
//! ```
//!
//! Complex parameters are written either as a bare number or as `[re, im]`.
//! A missing `cases` field selects the default battery; an empty list runs nothing.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::contour::{ContourSettings, FamilyTag, IntegrandFamily};
use crate::error::{Error, Result};
use crate::quad::QuadSettings;
use crate::zeta::ZetaEvalConfig;

/// Complex parameter as it appears in configuration files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CValue(pub Complex64);

impl CValue {
    pub fn real(re: f64) -> Self {
        Self(Complex64::new(re, 0.0))
    }

    pub fn new(re: f64, im: f64) -> Self {
        Self(Complex64::new(re, im))
    }
}

impl Serialize for CValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Real(f64),
            Pair([f64; 2]),
        }
        Ok(match Raw::deserialize(deserializer)? {
            Raw::Real(re) => CValue::real(re),
            Raw::Pair([re, im]) => CValue::new(re, im),
        })
    }
}

/// Default tolerances, applied to cases that do not carry their own.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Gamma-only identities.
    pub gamma: f64,
    /// Identities with zeta factors.
    pub zeta: f64,
    /// Pure series checks.
    pub series: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gamma: 1e-8,
            zeta: 1e-6,
            series: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub pole_guard: f64,
    pub max_evaluations: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let s = ContourSettings::default();
        Self {
            pole_guard: s.pole_guard,
            max_evaluations: s.quad.max_evaluations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `|Γ(x+iy)| ≤ C e^{-|y|}` on a strip right of 1/2.
    GammaExp,
    /// `|ζ(σ+it)| ≤ C |t|^{1/2-σ}` left of the critical strip.
    ZetaLeft,
    /// `|ζ(σ+it)| ≤ C |t|^{1-δ}` inside the critical strip.
    ZetaStrip,
}

/// Sampling ranges for an envelope fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeRange {
    /// Real-part interval sampled.
    pub sigma: [f64; 2],
    /// `|t|` interval on which the constant is fitted.
    pub fit: [f64; 2],
    /// `|t|` interval on which the fitted bound is checked.
    pub test: [f64; 2],
    /// Points per axis of each sample grid.
    #[serde(default = "default_grid")]
    pub grid: usize,
    /// `δ` of the critical-strip bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

fn default_grid() -> usize {
    20
}

impl EnvelopeRange {
    pub fn default_for(kind: BoundKind) -> Self {
        match kind {
            BoundKind::GammaExp => Self {
                sigma: [0.5, 3.0],
                fit: [1.0, 10.0],
                test: [10.0, 40.0],
                grid: 20,
                delta: None,
            },
            BoundKind::ZetaLeft => Self {
                sigma: [-2.0, -0.5],
                fit: [5.0, 20.0],
                test: [20.0, 60.0],
                grid: 20,
                delta: None,
            },
            BoundKind::ZetaStrip => Self {
                sigma: [0.25, 0.75],
                fit: [5.0, 20.0],
                test: [20.0, 60.0],
                grid: 20,
                delta: Some(0.25),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ordered = |r: [f64; 2]| r[0].is_finite() && r[1].is_finite() && r[0] <= r[1];
        if !(ordered(self.sigma) && ordered(self.fit) && ordered(self.test)) {
            return Err(Error::ConfigError(
                "envelope ranges must be finite and ordered".into(),
            ));
        }
        if self.fit[0] <= 0.0 {
            return Err(Error::ConfigError(
                "envelope |t| ranges must be positive".into(),
            ));
        }
        if self.test[0] < self.fit[1] {
            return Err(Error::ConfigError(
                "envelope test range must lie above the fit range".into(),
            ));
        }
        if self.grid < 2 {
            return Err(Error::ConfigError(
                "envelope grid needs at least 2 points".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayMode {
    /// `|∫ F|` along `[c+iT, c-k+iT]` for each `T`.
    Horizontal,
    /// `|∫ F|` along `Re z = c - k` for each `k`.
    VerticalShift,
}

/// Family selector plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(rename = "family")]
    pub tag: FamilyTag,
    pub s: CValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
}

impl FamilySpec {
    pub fn build(&self) -> Result<IntegrandFamily> {
        let s = self.s.0;
        match self.tag {
            FamilyTag::GammaPower => IntegrandFamily::gamma_power(
                s,
                self.u
                    .ok_or_else(|| Error::ConfigError("gamma_power needs u".into()))?,
            ),
            FamilyTag::ZetaZetaGamma => IntegrandFamily::zeta_zeta_gamma(s),
            FamilyTag::ZetaGammaPower => IntegrandFamily::zeta_gamma_power(
                s,
                self.a
                    .ok_or_else(|| Error::ConfigError("zeta_gamma_power needs a".into()))?,
            ),
        }
    }
}

/// How the right-hand side of an identity is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Oracle,
    Rectangle,
}

/// One entry of the suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseSpec {
    /// Line integral of `Γ(z)Γ(s-z)u^{-z}` against `Γ(s)(1+u)^{-s}`.
    MbPower {
        id: String,
        s: CValue,
        u: f64,
        c: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    /// Partial sum of `Σ Γ(s+k)(-u)^k / k!` against `Γ(s)(1+u)^{-s}`.
    BinomialSeries {
        id: String,
        s: CValue,
        u: f64,
        terms: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    /// Line integral of `Γ(z)Γ(s-z) a^{-z} b^{z-s}` against `Γ(s)/(a+b)^s`.
    TwoTerm {
        id: String,
        s: CValue,
        a: f64,
        b: f64,
        c: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    /// Line integral of `ζ(z)ζ(s-z)Γ(z)Γ(s-z)` against `Γ(s)` times the double-sum oracle.
    DoubleSum {
        id: String,
        s: CValue,
        c: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    /// Line integral of `ζ(z)Γ(z)Γ(s-z)(a-1)^{z-s}` against `Γ(s)ζ(s,a)`.
    HurwitzKernel {
        id: String,
        s: CValue,
        a: f64,
        c: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    /// `∫_0^∞ t^{s-1}/(e^t-1)^2 dt` against `Γ(s)(ζ(s-1) - ζ(s))`.
    AppIntegral {
        id: String,
        s: CValue,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    /// `Σ_{n<terms} B_{2n} x^{2n}/(2n)!` against `(x/2) coth(x/2)`.
    CothExpansion {
        id: String,
        x: f64,
        terms: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    /// Rectangle integral against the sum of enclosed residues.
    Rectangle {
        id: String,
        #[serde(flatten)]
        family: FamilySpec,
        right: f64,
        left: f64,
        #[serde(rename = "T")]
        half_height: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    /// Magnitudes that must fall strictly and end below `threshold`.
    Decay {
        id: String,
        mode: DecayMode,
        #[serde(flatten)]
        family: FamilySpec,
        c: f64,
        /// Left extent of horizontal segments.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<f64>,
        /// Heights `T` (horizontal) or shifts `k` (vertical_shift).
        steps: Vec<f64>,
        threshold: f64,
    },
    /// Envelope constant fitted on one range and checked on another.
    Envelope {
        id: String,
        bound: BoundKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        range: Option<EnvelopeRange>,
    },
    /// Growth of the residue-series terms.
    Tail {
        id: String,
        s: CValue,
        max_index: usize,
        #[serde(default = "default_max_onset")]
        max_onset: usize,
        #[serde(default = "default_min_ratio")]
        min_last_ratio: f64,
    },
}

fn default_max_onset() -> usize {
    2
}

fn default_min_ratio() -> f64 {
    1.5
}

pub const CASE_KINDS: [&str; 11] = [
    "mb_power",
    "binomial_series",
    "two_term",
    "double_sum",
    "hurwitz_kernel",
    "app_integral",
    "coth_expansion",
    "rectangle",
    "decay",
    "envelope",
    "tail",
];

impl CaseSpec {
    pub fn id(&self) -> &str {
        match self {
            Self::MbPower { id, .. }
            | Self::BinomialSeries { id, .. }
            | Self::TwoTerm { id, .. }
            | Self::DoubleSum { id, .. }
            | Self::HurwitzKernel { id, .. }
            | Self::AppIntegral { id, .. }
            | Self::CothExpansion { id, .. }
            | Self::Rectangle { id, .. }
            | Self::Decay { id, .. }
            | Self::Envelope { id, .. }
            | Self::Tail { id, .. } => id,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::MbPower { .. } => "mb_power",
            Self::BinomialSeries { .. } => "binomial_series",
            Self::TwoTerm { .. } => "two_term",
            Self::DoubleSum { .. } => "double_sum",
            Self::HurwitzKernel { .. } => "hurwitz_kernel",
            Self::AppIntegral { .. } => "app_integral",
            Self::CothExpansion { .. } => "coth_expansion",
            Self::Rectangle { .. } => "rectangle",
            Self::Decay { .. } => "decay",
            Self::Envelope { .. } => "envelope",
            Self::Tail { .. } => "tail",
        }
    }

    /// Identity cases report how their right-hand side is produced.
    pub fn method(&self) -> Option<Method> {
        match self {
            Self::MbPower { .. }
            | Self::BinomialSeries { .. }
            | Self::TwoTerm { .. }
            | Self::CothExpansion { .. } => Some(Method::ClosedForm),
            Self::DoubleSum { .. } | Self::HurwitzKernel { .. } | Self::AppIntegral { .. } => {
                Some(Method::Oracle)
            }
            Self::Rectangle { .. } => Some(Method::Rectangle),
            _ => None,
        }
    }

    /// The tolerance this case is judged against.
    pub fn tolerance(&self, defaults: &Tolerances) -> f64 {
        match self {
            Self::MbPower { tolerance, .. }
            | Self::BinomialSeries { tolerance, .. }
            | Self::TwoTerm { tolerance, .. } => tolerance.unwrap_or(defaults.gamma),
            Self::DoubleSum { tolerance, .. }
            | Self::HurwitzKernel { tolerance, .. }
            | Self::AppIntegral { tolerance, .. } => tolerance.unwrap_or(defaults.zeta),
            Self::CothExpansion { tolerance, .. } => tolerance.unwrap_or(defaults.series),
            Self::Rectangle {
                tolerance, family, ..
            } => tolerance.unwrap_or(if family.tag == FamilyTag::GammaPower {
                defaults.gamma
            } else {
                defaults.zeta
            }),
            Self::Decay { threshold, .. } => *threshold,
            // count-valued entries: zero violations required
            Self::Envelope { .. } | Self::Tail { .. } => 0.5,
        }
    }

    fn validate(&self, defaults: &Tolerances) -> Result<()> {
        let tol = self.tolerance(defaults);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::ConfigError(format!(
                "case {}: tolerance must be positive",
                self.id()
            )));
        }
        match self {
            Self::Decay {
                threshold, steps, ..
            } => {
                if !(*threshold < 1.0) {
                    return Err(Error::ConfigError(format!(
                        "case {}: decay threshold must be below 1",
                        self.id()
                    )));
                }
                if steps.is_empty() {
                    return Err(Error::ConfigError(format!(
                        "case {}: no decay steps",
                        self.id()
                    )));
                }
            }
            Self::Envelope {
                range: Some(range), ..
            } => range.validate()?,
            Self::BinomialSeries { terms, .. } | Self::CothExpansion { terms, .. }
                if *terms == 0 =>
            {
                return Err(Error::ConfigError(format!(
                    "case {}: terms must be positive",
                    self.id()
                )));
            }
            _ => {}
        }
        Ok(())
    }
}

/// Full suite configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub tolerances: Tolerances,
    pub cases: Vec<CaseSpec>,
    pub envelope_ranges: BTreeMap<BoundKind, EnvelopeRange>,
    pub quadrature: QuadratureConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            cases: default_battery(),
            envelope_ranges: BTreeMap::new(),
            quadrature: QuadratureConfig::default(),
        }
    }
}

impl SuiteConfig {
    /// Parses and validates a JSON configuration.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::ConfigError(e.to_string()))?;
        if let Some(cases) = value.get("cases").and_then(|c| c.as_array()) {
            for case in cases {
                match case.get("kind").and_then(|k| k.as_str()) {
                    Some(kind) if CASE_KINDS.contains(&kind) => {}
                    Some(kind) => return Err(Error::UnknownCaseKind(kind.to_string())),
                    None => return Err(Error::ConfigError("case without a \"kind\" field".into())),
                }
            }
        }
        let cfg: SuiteConfig =
            serde_json::from_value(value).map_err(|e| Error::ConfigError(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration is always serializable")
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        if !(t.gamma > 0.0 && t.zeta > 0.0 && t.series > 0.0) {
            return Err(Error::ConfigError(
                "default tolerances must be positive".into(),
            ));
        }
        if !(self.quadrature.pole_guard > 0.0 && self.quadrature.pole_guard < 0.5) {
            return Err(Error::ConfigError("pole_guard must lie in (0, 0.5)".into()));
        }
        if self.quadrature.max_evaluations < 15 {
            return Err(Error::ConfigError(
                "max_evaluations must be at least 15".into(),
            ));
        }
        for r in self.envelope_ranges.values() {
            r.validate()?;
        }
        let mut seen = std::collections::HashSet::new();
        for case in &self.cases {
            if !seen.insert(case.id()) {
                return Err(Error::ConfigError(format!(
                    "duplicate case id {}",
                    case.id()
                )));
            }
            case.validate(t)?;
        }
        Ok(())
    }

    pub fn settings(&self) -> ContourSettings {
        ContourSettings {
            zeta: ZetaEvalConfig::default(),
            quad: QuadSettings {
                max_evaluations: self.quadrature.max_evaluations,
            },
            pole_guard: self.quadrature.pole_guard,
        }
    }

    pub fn envelope_range(&self, kind: BoundKind) -> EnvelopeRange {
        self.envelope_ranges
            .get(&kind)
            .copied()
            .unwrap_or_else(|| EnvelopeRange::default_for(kind))
    }
}

/// The standard battery: every identity kind at three or more parameter
/// points, three rectangles, both decay studies, three envelope fits and
/// one tail study.
pub fn default_battery() -> Vec<CaseSpec> {
    let mut cases = Vec::new();
    let r = CValue::real;
    for (i, (s, u, c)) in [
        (r(3.0), 0.5, 1.2),
        (r(4.5), 0.25, 1.5),
        (CValue::new(3.0, 1.0), 0.7, 1.2),
    ]
    .into_iter()
    .enumerate()
    {
        cases.push(CaseSpec::MbPower {
            id: format!("mb_power_{}", i + 1),
            s,
            u,
            c,
            tolerance: None,
        });
    }
    for (i, (s, u, terms)) in [
        (r(3.0), 0.5, 60),
        (r(4.5), 0.25, 40),
        (CValue::new(3.0, 1.0), 0.7, 120),
    ]
    .into_iter()
    .enumerate()
    {
        cases.push(CaseSpec::BinomialSeries {
            id: format!("binomial_series_{}", i + 1),
            s,
            u,
            terms,
            tolerance: None,
        });
    }
    for (i, (s, a, b, c)) in [
        (r(3.5), 2.0, 3.0, 1.2),
        (r(4.0), 5.0, 1.5, 1.5),
        (CValue::new(3.0, 2.0), 1.0, 1.0, 1.0),
    ]
    .into_iter()
    .enumerate()
    {
        cases.push(CaseSpec::TwoTerm {
            id: format!("two_term_{}", i + 1),
            s,
            a,
            b,
            c,
            tolerance: None,
        });
    }
    for (i, (s, c)) in [
        (r(3.0), 1.5),
        (r(4.0), 1.5),
        (r(6.5), 2.5),
        (CValue::new(4.0, 2.0), 1.5),
    ]
    .into_iter()
    .enumerate()
    {
        cases.push(CaseSpec::DoubleSum {
            id: format!("double_sum_{}", i + 1),
            s,
            c,
            tolerance: None,
        });
    }
    for (i, (s, a, c)) in [
        (r(4.0), 2.0, 1.5),
        (r(5.5), 3.0, 2.0),
        (CValue::new(4.0, 1.0), 2.5, 1.5),
    ]
    .into_iter()
    .enumerate()
    {
        cases.push(CaseSpec::HurwitzKernel {
            id: format!("hurwitz_kernel_{}", i + 1),
            s,
            a,
            c,
            tolerance: None,
        });
    }
    for (i, s) in [r(3.0), r(4.0), r(10.0)].into_iter().enumerate() {
        cases.push(CaseSpec::AppIntegral {
            id: format!("app_integral_{}", i + 1),
            s,
            tolerance: None,
        });
    }
    for (i, (x, terms)) in [(0.5, 10), (1.0, 10), (2.0, 20)].into_iter().enumerate() {
        cases.push(CaseSpec::CothExpansion {
            id: format!("coth_expansion_{}", i + 1),
            x,
            terms,
            tolerance: None,
        });
    }
    let zz4 = FamilySpec {
        tag: FamilyTag::ZetaZetaGamma,
        s: r(4.0),
        u: None,
        a: None,
    };
    let gp3 = FamilySpec {
        tag: FamilyTag::GammaPower,
        s: r(3.0),
        u: Some(0.5),
        a: None,
    };
    let zg4 = FamilySpec {
        tag: FamilyTag::ZetaGammaPower,
        s: r(4.0),
        u: None,
        a: Some(2.0),
    };
    cases.push(CaseSpec::Rectangle {
        id: "rectangle_zeta_zeta_gamma".into(),
        family: zz4,
        right: 1.5,
        left: -4.5,
        half_height: 30.0,
        tolerance: Some(1e-6),
    });
    cases.push(CaseSpec::Rectangle {
        id: "rectangle_gamma_power".into(),
        family: gp3,
        right: 0.8,
        left: -3.5,
        half_height: 20.0,
        tolerance: Some(1e-6),
    });
    cases.push(CaseSpec::Rectangle {
        id: "rectangle_pole_free".into(),
        family: zg4,
        right: 1.4,
        left: 1.2,
        half_height: 5.0,
        tolerance: Some(1e-6),
    });
    cases.push(CaseSpec::Decay {
        id: "decay_vertical_shift".into(),
        mode: DecayMode::VerticalShift,
        family: gp3,
        c: 0.5,
        k: None,
        steps: vec![10.0, 20.0, 30.0],
        threshold: 1e-6,
    });
    cases.push(CaseSpec::Decay {
        id: "decay_horizontal_gamma_power".into(),
        mode: DecayMode::Horizontal,
        family: gp3,
        c: 0.8,
        k: Some(8.0),
        steps: vec![10.0, 20.0, 30.0],
        threshold: 1e-8,
    });
    cases.push(CaseSpec::Decay {
        id: "decay_horizontal".into(),
        mode: DecayMode::Horizontal,
        family: zz4,
        c: 1.5,
        k: Some(8.0),
        steps: vec![10.0, 20.0, 30.0],
        threshold: 1e-6,
    });
    for (id, bound) in [
        ("envelope_gamma_exp", BoundKind::GammaExp),
        ("envelope_zeta_left", BoundKind::ZetaLeft),
        ("envelope_zeta_strip", BoundKind::ZetaStrip),
    ] {
        cases.push(CaseSpec::Envelope {
            id: id.into(),
            bound,
            range: None,
        });
    }
    cases.push(CaseSpec::Tail {
        id: "tail_divergence".into(),
        s: r(4.0),
        max_index: 20,
        max_onset: 2,
        min_last_ratio: 1.5,
    });
    cases
}
