//! End-to-end acceptance criteria. Runs without the libtest harness so
//! that each criterion prints exactly one PASS/FAIL line; the process
//! exits non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use mbzeta::contour::{
    integrate_real_improper, integrate_vertical, ContourSettings, IntegrandFamily, RectangleSpec,
    VerticalLineSpec,
};
use mbzeta::residues::{asymptotic_tail_terms, numerical_residue, residue_at, PoleLocation};
use mbzeta::specfun::{gamma, nearest_gamma_pole};
use mbzeta::verify::{
    check_rectangle, coth_partial_sum, decay_study, fit_envelope, half_coth, BoundKind, DecayMode,
    EnvelopeRange,
};
use mbzeta::zeta::{double_sum_oracle, riemann_zeta};
use mbzeta::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::f64::consts::PI;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn settings() -> ContourSettings {
    ContourSettings::default()
}

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn line(f: &IntegrandFamily, c: f64, tol: f64) -> Complex64 {
    integrate_vertical(f, &VerticalLineSpec { c, tol }, &settings())
        .unwrap()
        .value
}

fn power_identity() -> Outcome {
    let mut worst = 0.0f64;
    for (s, u, cc) in [
        (c(3.0, 0.0), 0.5, 1.2),
        (c(4.5, 0.0), 0.25, 1.5),
        (c(3.0, 1.0), 0.7, 1.2),
    ] {
        let f = IntegrandFamily::gamma_power(s, u).unwrap();
        let rhs = gamma(s).unwrap() * ((-s) * (1.0 + u).ln()).exp();
        worst = worst.max(rel(line(&f, cc, 1e-11), rhs));
    }
    ensure(worst < 1e-8, format!("worst relative error {worst:.2e}"))?;
    Ok(format!("worst relative error {worst:.2e}"))
}

fn double_sum_triangle() -> Outcome {
    let z = settings().zeta;
    let mut worst = 0.0f64;
    let mut at_four = Complex64::default();
    for (s, cc) in [
        (c(3.0, 0.0), 1.5),
        (c(4.0, 0.0), 1.5),
        (c(6.5, 0.0), 2.5),
        (c(4.0, 2.0), 1.5),
    ] {
        let g = gamma(s).unwrap();
        let f = IntegrandFamily::zeta_zeta_gamma(s).unwrap();
        let a = line(&f, cc, 1e-10);
        let b = g * double_sum_oracle(s, 1e-12).unwrap();
        let d = g * (riemann_zeta(s - 1.0, &z).unwrap() - riemann_zeta(s, &z).unwrap());
        worst = worst.max(rel(a, b)).max(rel(a, d)).max(rel(b, d));
        if s == c(4.0, 0.0) {
            at_four = a;
        }
    }
    ensure(
        worst < 1e-6,
        format!("worst pairwise relative error {worst:.2e}"),
    )?;
    ensure(
        (at_four.re - 0.718402016690736563).abs() < 1e-9,
        format!("s = 4 line integral {at_four}"),
    )?;
    Ok(format!(
        "worst pairwise relative error {worst:.2e}; s = 4 gives {:.10}",
        at_four.re
    ))
}

fn rectangles() -> Outcome {
    let s = settings();
    let cases = [
        (
            IntegrandFamily::zeta_zeta_gamma(c(4.0, 0.0)).unwrap(),
            (1.5, -4.5, 30.0),
            0.222650338090591022,
        ),
        (
            IntegrandFamily::gamma_power(c(3.0, 0.0), 0.5).unwrap(),
            (0.8, -3.5, 20.0),
            -0.5,
        ),
        (
            IntegrandFamily::zeta_zeta_gamma(c(4.0, 0.0)).unwrap(),
            (1.4, 1.2, 5.0),
            0.0,
        ),
    ];
    let mut worst = 0.0f64;
    for (f, (r, l, t), expected_sum) in cases {
        let e = check_rectangle("rect", &f, &RectangleSpec::from_edges(r, l, t), 1e-6, &s).unwrap();
        worst = worst.max(e.abs_err);
        ensure(
            (e.rhs_re - expected_sum).abs() < 1e-12,
            format!("residue sum {} differs from {expected_sum}", e.rhs_re),
        )?;
    }
    ensure(
        worst < 1e-6,
        format!("worst |contour - residues| {worst:.2e}"),
    )?;
    Ok(format!("worst |contour - residues| {worst:.2e}"))
}

fn residue_oracle() -> Outcome {
    let s = settings();
    let sv = c(3.5, 0.0);
    let fams = [
        IntegrandFamily::gamma_power(sv, 0.5).unwrap(),
        IntegrandFamily::zeta_zeta_gamma(sv).unwrap(),
        IntegrandFamily::zeta_gamma_power(sv, 2.0).unwrap(),
    ];
    let mut worst = 0.0f64;
    let mut count = 0;
    for f in &fams {
        for n in -5..=5 {
            let Some(p) = PoleLocation::classify(f, n) else {
                continue;
            };
            let closed = residue_at(f, &p, &s).unwrap().value;
            let numeric = numerical_residue(f, p.z(), 0.3, 1e-10, &s).unwrap();
            worst = worst.max((closed - numeric).norm());
            count += 1;
        }
    }
    ensure(worst < 1e-8, format!("worst residue mismatch {worst:.2e}"))?;
    let mut regular = 0.0f64;
    for f in &fams[1..] {
        for n in [-2.0, -4.0] {
            regular = regular.max(
                numerical_residue(f, c(n, 0.0), 0.3, 1e-12, &s)
                    .unwrap()
                    .norm(),
            );
        }
    }
    ensure(
        regular < 1e-9,
        format!("largest residue at a trivial zero {regular:.2e}"),
    )?;
    Ok(format!(
        "{count} poles, worst mismatch {worst:.2e}; trivial zeros {regular:.2e}"
    ))
}

fn shifted_line_decay() -> Outcome {
    let f = IntegrandFamily::gamma_power(c(3.0, 0.0), 0.5).unwrap();
    let d = decay_study(
        DecayMode::VerticalShift,
        &f,
        0.5,
        None,
        &[10.0, 20.0, 30.0],
        1e-6,
        &settings(),
    )
    .unwrap();
    let frozen = [0.0808738425925926, 2.8454815899884e-4, 6.0280715977704e-7];
    for (m, e) in d.magnitudes.iter().zip(frozen) {
        ensure(
            (m - e).abs() < 1e-3 * e,
            format!("magnitude {m:e} differs from {e:e}"),
        )?;
    }
    ensure(d.passed(), format!("magnitudes {:?}", d.magnitudes))?;
    Ok(format!(
        "magnitudes {:.3e} {:.3e} {:.3e}",
        d.magnitudes[0], d.magnitudes[1], d.magnitudes[2]
    ))
}

fn horizontal_decay() -> Outcome {
    let f = IntegrandFamily::zeta_zeta_gamma(c(4.0, 0.0)).unwrap();
    let d = decay_study(
        DecayMode::Horizontal,
        &f,
        1.5,
        Some(8.0),
        &[10.0, 20.0, 30.0],
        1e-6,
        &settings(),
    )
    .unwrap();
    ensure(d.passed(), format!("magnitudes {:?}", d.magnitudes))?;
    Ok(format!(
        "magnitudes {:.3e} {:.3e} {:.3e}",
        d.magnitudes[0], d.magnitudes[1], d.magnitudes[2]
    ))
}

fn gamma_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut recurrence = 0.0f64;
    let mut sampled = 0;
    while sampled < 10_000 {
        let z = c(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let dist = |w: Complex64| (w - nearest_gamma_pole(w)).norm();
        if z.norm() > 50.0 || dist(z) < 1e-3 || dist(z + 1.0) < 1e-3 {
            continue;
        }
        sampled += 1;
        let (g, g1) = (gamma(z).unwrap(), gamma(z + 1.0).unwrap());
        if g.norm().is_normal() && g1.norm().is_normal() {
            recurrence = recurrence.max(rel(z * g, g1));
        }
    }
    ensure(
        recurrence < 1e-11,
        format!("recurrence defect {recurrence:.2e}"),
    )?;

    let mut reflection = 0.0f64;
    let mut duplication = 0.0f64;
    for i in 0..40 {
        for j in 0..21 {
            let z = c(-4.9 + 0.25 * i as f64, -5.0 + 0.5 * j as f64);
            let r = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (z * PI).sin() / PI;
            reflection = reflection.max((r - 1.0).norm());
            let lhs = gamma(2.0 * z).unwrap();
            let rhs = ((2.0 * z - 1.0) * std::f64::consts::LN_2).exp() / PI.sqrt()
                * gamma(z).unwrap()
                * gamma(z + 0.5).unwrap();
            duplication = duplication.max(rel(lhs, rhs));
        }
    }
    ensure(
        reflection < 1e-10,
        format!("reflection defect {reflection:.2e}"),
    )?;
    ensure(
        duplication < 1e-10,
        format!("duplication defect {duplication:.2e}"),
    )?;

    let mut window = 0.0f64;
    for t in [20.0f64, 40.0, 80.0] {
        for i in 0..=16 {
            let sigma = -1.0 + 0.25 * i as f64;
            let g = gamma(c(sigma, t)).unwrap().norm();
            let model = (2.0 * PI).sqrt() * t.powf(sigma - 0.5) * (-PI * t / 2.0).exp();
            // |ratio - 1| as a fraction of the allowed 5/|t|
            window = window.max((g / model - 1.0).abs() * t / 5.0);
        }
    }
    ensure(
        window <= 1.0,
        format!("modulus-law ratio uses {window:.2} of its window"),
    )?;
    Ok(format!(
        "recurrence {recurrence:.1e}, reflection {reflection:.1e}, duplication {duplication:.1e}, modulus window {:.0}% used",
        window * 100.0
    ))
}

fn envelopes() -> Outcome {
    let mut lines = Vec::new();
    let mut failed = false;
    for kind in [
        BoundKind::GammaExp,
        BoundKind::ZetaLeft,
        BoundKind::ZetaStrip,
    ] {
        let fit = fit_envelope(kind, &EnvelopeRange::default_for(kind), &settings()).unwrap();
        failed |= !fit.passed();
        lines.push(format!(
            "{kind:?}: C = {:.4}, test max {:.4}, {} violations",
            fit.constant, fit.test_max_ratio, fit.violations
        ));
    }
    let msg = lines.join("; ");
    if failed {
        Err(msg)
    } else {
        Ok(msg)
    }
}

fn application_integral() -> Outcome {
    let s = settings();
    let mut worst = 0.0f64;
    for sv in [3.0, 4.0, 10.0] {
        let z = c(sv, 0.0);
        let rhs = gamma(z).unwrap()
            * (riemann_zeta(z - 1.0, &s.zeta).unwrap() - riemann_zeta(z, &s.zeta).unwrap());
        let lhs = integrate_real_improper(z, 1e-9 * rhs.norm(), &s)
            .unwrap()
            .value;
        worst = worst.max(rel(lhs, rhs));
    }
    ensure(worst < 1e-6, format!("worst relative error {worst:.2e}"))?;
    let mut coth = 0.0f64;
    for x in [0.5, 1.0] {
        coth = coth.max((coth_partial_sum(x, 10).unwrap() - half_coth(x)).abs());
    }
    ensure(coth < 1e-10, format!("coth expansion error {coth:.2e}"))?;
    Ok(format!("integral {worst:.1e} relative; coth {coth:.1e}"))
}

fn divergence_witness() -> Outcome {
    let study = asymptotic_tail_terms(c(4.0, 0.0), 20, &settings()).unwrap();
    let m = study.magnitudes();
    for (i, want) in [2.0738555102867404, 1.0083492773819227, 1.3360111904347776]
        .into_iter()
        .enumerate()
    {
        ensure(
            (m[i] - want).abs() < 1e-4,
            format!("|t{i}| = {} vs {want}", m[i]),
        )?;
    }
    ensure(
        m[2..].windows(2).all(|w| w[1] > w[0]),
        "growth not strict from m = 2".into(),
    )?;
    Ok(format!(
        "|t0..t2| = {:.4} {:.4} {:.4}, |t20|/|t19| = {:.2}",
        m[0],
        m[1],
        m[2],
        m[20] / m[19]
    ))
}

fn cli_end_to_end() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_mbzeta");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("MBZETA_CONFIG")
            .output()
            .expect("binary runs")
    };
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut problems = Vec::new();

    let default_run = run(&["verify", "--config", "default"]);
    let report: Value = serde_json::from_slice(&default_run.stdout).unwrap_or(Value::Null);
    if !validator.is_valid(&report) {
        problems.push("default report does not match the schema".to_string());
    }
    if default_run.status.code() != Some(0) || report["overall_pass"] != Value::Bool(true) {
        let failing: Vec<&str> = report["entries"]
            .as_array()
            .map(|es| {
                es.iter()
                    .filter(|e| e["pass"] == Value::Bool(false))
                    .filter_map(|e| e["id"].as_str())
                    .collect()
            })
            .unwrap_or_default();
        problems.push(format!(
            "default verify exited {:?} with failing entries {failing:?}",
            default_run.status.code()
        ));
    }

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.json");
    std::fs::write(
        &cfg,
        r#"{"cases": [{"kind": "mb_power", "id": "tight", "s": 3, "u": 0.5, "c": 1.2, "tolerance": 1e-30}]}"#,
    )
    .unwrap();
    let tight = run(&["verify", "--config", cfg.to_str().unwrap()]);
    if tight.status.code() != Some(1) {
        problems.push(format!(
            "impossible tolerance exited {:?}",
            tight.status.code()
        ));
    }
    let tight_report: Value = serde_json::from_slice(&tight.stdout).unwrap_or(Value::Null);
    if !validator.is_valid(&tight_report) {
        problems.push("failing report does not match the schema".to_string());
    }
    for args in [
        &["eval", "zeta", "--s", "x"][..],
        &[
            "integrate",
            "--family",
            "zetazeta",
            "--s",
            "4,0",
            "--c",
            "0.5",
        ],
    ] {
        let code = run(args).status.code();
        if code != Some(2) {
            problems.push(format!("{args:?} exited {code:?}"));
        }
    }
    if problems.is_empty() {
        Ok("exit codes 0/1/2 and report schema as expected".into())
    } else {
        Err(problems.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("power-function line integral", power_identity),
        ("double-sum triangle", double_sum_triangle),
        ("rectangle bookkeeping", rectangles),
        ("residue oracle", residue_oracle),
        ("shifted-line decay", shifted_line_decay),
        ("horizontal-segment decay", horizontal_decay),
        ("Gamma identities", gamma_identities),
        ("envelope bounds", envelopes),
        ("application integral", application_integral),
        ("divergence witness", divergence_witness),
        ("CLI end to end", cli_end_to_end),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name}: {detail}", i + 1);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
