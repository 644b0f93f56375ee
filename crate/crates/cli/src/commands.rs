use std::fmt;

use mbzeta::contour::{
    integrate_rectangle, integrate_vertical, ContourSettings, IntegrandFamily, RectangleSpec,
    VerticalLineSpec,
};
use mbzeta::residues::{
    asymptotic_tail_terms, enumerate_poles, numerical_residue, residue_at, DEFAULT_RADIUS,
    DEFAULT_RESIDUE_TOL,
};
use mbzeta::specfun::{gamma, log_gamma};
use mbzeta::verify::{run_suite, SuiteConfig, VerificationReport};
use mbzeta::zeta::{hurwitz_zeta, riemann_zeta, ZetaEvalConfig};
use mbzeta::{Complex64, Error};
use serde_json::Value;

use crate::args::{
    EvalArgs, Family, FamilyArgs, Function, IntegrateArgs, RectArgs, TailArgs, VerifyArgs,
};
use crate::output::{Output, Record};

/// Environment variable naming the suite configuration used when
/// `verify` is run without `--config`.
pub const CONFIG_ENV: &str = "MBZETA_CONFIG";

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Bad flags or parameters; exit code 2.
    Usage(String),
    /// A computation failed or a check did not hold; exit code 1.
    Failed(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Failed(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Failed(m) => f.write_str(m),
        }
    }
}

/// Parameter problems are reported against `flags`; everything else is a
/// numerical failure.
fn classify(flags: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| match e {
        Error::DomainViolation(_)
        | Error::PoleProximity { .. }
        | Error::PoleOnPath { .. }
        | Error::PoleOnBoundary { .. }
        | Error::PoleOnCircle { .. }
        | Error::SectorViolation { .. } => Failure::Usage(format!("{flags}: {e}")),
        other => Failure::Failed(other.to_string()),
    }
}

fn positive_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--tol must be positive, got {tol}")))
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::GammaPower => "gammapower",
        Family::ZetaZeta => "zetazeta",
        Family::ZetaGamma => "zetagamma",
    }
}

pub fn build_family(args: &FamilyArgs) -> Result<IntegrandFamily, Failure> {
    let name = family_name(args.family);
    let unused = |flag: &str| Failure::Usage(format!("{flag} does not apply to --family {name}"));
    let required = |flag: &str| Failure::Usage(format!("{flag} is required for --family {name}"));
    match args.family {
        Family::GammaPower => {
            if args.a.is_some() {
                return Err(unused("--a"));
            }
            let u = args.u.ok_or_else(|| required("--u"))?;
            IntegrandFamily::gamma_power(args.s, u).map_err(classify("--u"))
        }
        Family::ZetaZeta => {
            if args.u.is_some() {
                return Err(unused("--u"));
            }
            if args.a.is_some() {
                return Err(unused("--a"));
            }
            IntegrandFamily::zeta_zeta_gamma(args.s).map_err(classify("--s"))
        }
        Family::ZetaGamma => {
            if args.u.is_some() {
                return Err(unused("--u"));
            }
            let a = args.a.ok_or_else(|| required("--a"))?;
            IntegrandFamily::zeta_gamma_power(args.s, a).map_err(classify("--s/--a"))
        }
    }
}

fn family_record(args: &FamilyArgs) -> Record {
    let mut r = Record::new()
        .field("family", family_name(args.family))
        .complex("s_re", "s_im", args.s);
    if let Some(u) = args.u {
        r = r.field("u", u);
    }
    if let Some(a) = args.a {
        r = r.field("a", a);
    }
    r
}

pub fn eval(args: &EvalArgs) -> Result<Output, Failure> {
    let s = args.s;
    let fine = ZetaEvalConfig {
        em_terms: 2 * ZetaEvalConfig::default().em_terms,
        ..ZetaEvalConfig::default()
    };
    let cfg = ZetaEvalConfig::default();
    let on_s = classify("--s");
    if args.function != Function::Hurwitz && args.a.is_some() {
        return Err(Failure::Usage("--a only applies to hurwitz".into()));
    }
    // second, independent route to the same value gives the error estimate
    let (value, check) = match args.function {
        Function::Gamma => {
            let v = gamma(s).map_err(&on_s)?;
            (v, gamma(s + 1.0).map_err(&on_s)? / s)
        }
        Function::LogGamma => {
            let v = log_gamma(s).map_err(&on_s)?;
            (v, log_gamma(s + 1.0).map_err(&on_s)? - s.ln())
        }
        Function::Zeta => (
            riemann_zeta(s, &cfg).map_err(&on_s)?,
            riemann_zeta(s, &fine).map_err(&on_s)?,
        ),
        Function::Hurwitz => {
            let a = args
                .a
                .ok_or_else(|| Failure::Usage("--a is required for hurwitz".into()))?;
            let on = classify("--s/--a");
            (
                hurwitz_zeta(s, a, &cfg).map_err(&on)?,
                hurwitz_zeta(s, a, &fine).map_err(&on)?,
            )
        }
    };
    let name = match args.function {
        Function::Gamma => "gamma",
        Function::LogGamma => "log_gamma",
        Function::Zeta => "zeta",
        Function::Hurwitz => "hurwitz",
    };
    let mut r = Record::new()
        .field("function", name)
        .complex("s_re", "s_im", s);
    if let Some(a) = args.a {
        r = r.field("a", a);
    }
    Ok(Output::Single(
        r.complex("value_re", "value_im", value)
            .field("error_estimate", (value - check).norm()),
    ))
}

pub fn integrate(args: &IntegrateArgs) -> Result<Output, Failure> {
    positive_tol(args.tol)?;
    let f = build_family(&args.family)?;
    let line = VerticalLineSpec {
        c: args.c,
        tol: args.tol,
    };
    line.validate(&f).map_err(classify("--c"))?;
    let q = integrate_vertical(&f, &line, &ContourSettings::default()).map_err(classify("--c"))?;
    Ok(Output::Single(
        family_record(&args.family)
            .field("c", args.c)
            .complex("value_re", "value_im", q.value)
            .field("err_estimate", q.err_estimate)
            .field("tail_bound", q.tail_bound)
            .field("evaluations", q.evaluations),
    ))
}

fn rectangle(args: &RectArgs) -> Result<RectangleSpec, Failure> {
    positive_tol(args.tol)?;
    if !(args.right > args.left) {
        return Err(Failure::Usage(format!(
            "--left must be below --right, got left = {}, right = {}",
            args.left, args.right
        )));
    }
    if !(args.half_height > 0.0) {
        return Err(Failure::Usage(format!(
            "--T must be positive, got {}",
            args.half_height
        )));
    }
    Ok(RectangleSpec::from_edges(
        args.right,
        args.left,
        args.half_height,
    ))
}

const RECT_FLAGS: &str = "--right/--left/--T";

/// Boundary integral and residue sum; a mismatch beyond ten times the
/// tolerance is a failed check.
pub fn rect(args: &RectArgs) -> Result<(Output, bool), Failure> {
    let f = build_family(&args.family)?;
    let spec = rectangle(args)?;
    let settings = ContourSettings::default();
    let poles = enumerate_poles(&f, &spec, &settings).map_err(classify(RECT_FLAGS))?;
    let mut sum = Complex64::new(0.0, 0.0);
    for p in &poles {
        sum += residue_at(&f, p, &settings)
            .map_err(classify(RECT_FLAGS))?
            .value;
    }
    let q = integrate_rectangle(&f, &spec, args.tol, &settings).map_err(classify(RECT_FLAGS))?;
    let diff = (q.value - sum).norm();
    let matched = diff <= 10.0 * args.tol;
    let positions: Vec<String> = poles.iter().map(|p| p.position.to_string()).collect();
    let record = family_record(&args.family)
        .field("right", args.right)
        .field("left", args.left)
        .field("T", args.half_height)
        .complex("contour_re", "contour_im", q.value)
        .complex("residue_sum_re", "residue_sum_im", sum)
        .field("abs_diff", diff)
        .field("err_estimate", q.err_estimate)
        .field("poles", positions.join(" "))
        .field("match", matched);
    Ok((Output::Single(record), matched))
}

pub fn residues(args: &RectArgs) -> Result<Output, Failure> {
    let f = build_family(&args.family)?;
    let spec = rectangle(args)?;
    let settings = ContourSettings::default();
    let poles = enumerate_poles(&f, &spec, &settings).map_err(classify(RECT_FLAGS))?;
    let mut rows = Vec::with_capacity(poles.len());
    for p in &poles {
        let closed = residue_at(&f, p, &settings)
            .map_err(classify(RECT_FLAGS))?
            .value;
        let numeric = numerical_residue(&f, p.z(), DEFAULT_RADIUS, DEFAULT_RESIDUE_TOL, &settings)
            .map_err(|e| Failure::Failed(e.to_string()))?;
        let kind = serde_json::to_value(p.kind).unwrap_or(Value::Null);
        rows.push(
            Record::new()
                .field("position", p.position)
                .field("kind", kind)
                .complex("residue_re", "residue_im", closed)
                .complex("numerical_re", "numerical_im", numeric)
                .field("abs_diff", (closed - numeric).norm()),
        );
    }
    Ok(Output::Rows(rows))
}

pub fn tail(args: &TailArgs) -> Result<Output, Failure> {
    let study = asymptotic_tail_terms(args.s, args.max_index, &ContourSettings::default())
        .map_err(classify("--s/--max-index"))?;
    let rows = study
        .terms
        .iter()
        .enumerate()
        .map(|(m, t)| {
            Record::new()
                .field("m", m)
                .complex("term_re", "term_im", *t)
                .field("magnitude", t.norm())
        })
        .collect();
    Ok(Output::Rows(rows))
}

/// Picks the configuration: `--config`, then the environment variable,
/// then the built-in battery. The literal `default` selects the battery.
pub fn load_config(flag: Option<&str>, env: Option<&str>) -> Result<SuiteConfig, Failure> {
    let (source, path) = match (flag, env.filter(|v| !v.is_empty())) {
        (Some(p), _) => ("--config", p),
        (None, Some(p)) => (CONFIG_ENV, p),
        (None, None) => return Ok(SuiteConfig::default()),
    };
    if path == "default" {
        return Ok(SuiteConfig::default());
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{source}: cannot read {path}: {e}")))?;
    SuiteConfig::from_json(&text).map_err(|e| Failure::Usage(format!("{source}: {path}: {e}")))
}

pub fn verify(args: &VerifyArgs) -> Result<VerificationReport, Failure> {
    let env = std::env::var(CONFIG_ENV).ok();
    let config = load_config(args.config.as_deref(), env.as_deref())?;
    run_suite(&config).map_err(|e| Failure::Usage(format!("--config: {e}")))
}
