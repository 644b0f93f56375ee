//! Riemann and Hurwitz zeta on complex arguments.
//!
//! Both use Euler–Maclaurin on the Dirichlet series: `N` terms summed
//! directly, then the integral, half-term and Bernoulli corrections at
//! `x = N + a`. Left of `reflect_below` the Riemann zeta is obtained from
//! the functional equation
//! `ζ(s) = 2 (2π)^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::specfun::{bernoulli, bernoulli_f64, log_gamma, BERNOULLI_CAPACITY, POLE_GUARD};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Euler–Maclaurin parameters.
///
/// The number of directly summed terms is `max(em_terms, ceil(2 |Im s|))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEvalConfig {
    pub em_terms: usize,
    /// Number of Bernoulli correction terms `B_2 .. B_{2K}`; must be even.
    pub correction_order: usize,
    pub reflect_below: f64,
    /// Largest `|Im s|` accepted before reporting an overflow regime.
    pub max_imag: f64,
}

impl Default for ZetaEvalConfig {
    fn default() -> Self {
        Self {
            em_terms: 20,
            correction_order: 12,
            reflect_below: 0.5,
            max_imag: 400.0,
        }
    }
}

impl ZetaEvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.em_terms < 1 {
            return Err(Error::ConfigError("em_terms must be at least 1".into()));
        }
        if self.correction_order % 2 != 0 || 2 * self.correction_order > BERNOULLI_CAPACITY {
            return Err(Error::ConfigError(format!(
                "correction_order must be even and at most {}",
                BERNOULLI_CAPACITY / 2
            )));
        }
        if !(self.reflect_below <= 0.5) {
            return Err(Error::ConfigError(
                "reflect_below must not exceed 1/2".into(),
            ));
        }
        if !(self.max_imag > 0.0 && self.max_imag.is_finite()) {
            return Err(Error::ConfigError("max_imag must be positive".into()));
        }
        Ok(())
    }

    fn direct_terms(&self, s: Complex64) -> usize {
        self.em_terms.max((2.0 * s.im.abs()).ceil() as usize)
    }
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `Σ_{n≥0} (n + a)^{-s}` by Euler–Maclaurin, valid wherever the
/// continuation of the tail is (any `s ≠ 1`).
fn em_power_sum(s: Complex64, a: f64, n_direct: usize, corrections: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    // smallest terms first
    for n in (0..n_direct).rev() {
        let y = (-s * (n as f64 + a).ln()).exp() - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let x = n_direct as f64 + a;
    let lnx = x.ln();
    let x_pow = (-s * lnx).exp(); // x^{-s}
    let mut tail = x_pow * x / (s - 1.0) + x_pow * 0.5;
    // (s)_{2k-1} x^{-s-2k+1}
    let mut rising = s;
    let mut term_pow = x_pow / x;
    let mut fact = 2.0; // (2k)!
    for k in 1..=corrections {
        let b = bernoulli_f64(2 * k).expect("correction order validated against the table");
        tail += rising * term_pow * (b / fact);
        let kf = k as f64;
        rising *= (s + (2.0 * kf - 1.0)) * (s + 2.0 * kf);
        term_pow /= x * x;
        fact *= (2.0 * kf + 1.0) * (2.0 * kf + 2.0);
    }
    sum + tail
}

/// `ln sin(w)` without overflow for large `|Im w|`; any branch.
fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im.abs() < 30.0 {
        w.sin().ln()
    } else if w.im > 0.0 {
        // sin w = e^{-iw}(1 - e^{2iw}) / (2i)
        -i * w + (1.0 - (2.0 * i * w).exp()).ln() - (2.0 * i).ln()
    } else {
        // sin w = -e^{iw}(1 - e^{-2iw}) / (2i)
        i * w + (1.0 - (-2.0 * i * w).exp()).ln() - (-2.0 * i).ln()
    }
}

/// Riemann zeta `ζ(s)`.
pub fn riemann_zeta(s: Complex64, cfg: &ZetaEvalConfig) -> Result<Complex64> {
    if !finite(s) {
        return Err(Error::NonFinite("riemann_zeta argument"));
    }
    cfg.validate()?;
    if (s - 1.0).norm() <= POLE_GUARD {
        return Err(Error::PoleProximity {
            z: s,
            pole: Complex64::new(1.0, 0.0),
        });
    }
    if s.im.abs() > cfg.max_imag {
        return Err(Error::OverflowRegime {
            imag: s.im.abs(),
            limit: cfg.max_imag,
        });
    }
    // near s = 0 the reflected side would sit on the pole of ζ(1 - s);
    // the Euler–Maclaurin continuation is accurate there
    let value = if s.re >= cfg.reflect_below || s.norm() < 0.25 {
        em_power_sum(s, 1.0, cfg.direct_terms(s), cfg.correction_order)
    } else {
        if s.im == 0.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let one_minus = 1.0 - s;
        let reflected = em_power_sum(
            one_minus,
            1.0,
            cfg.direct_terms(one_minus),
            cfg.correction_order,
        );
        let log_factor = std::f64::consts::LN_2
            + (s - 1.0) * LN_2PI
            + log_gamma(one_minus)?
            + ln_sin(s * (PI / 2.0));
        log_factor.exp() * reflected
    };
    if finite(value) {
        Ok(value)
    } else {
        Err(Error::NonFinite("riemann_zeta"))
    }
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n + a)^{-s}` for `Re s > 1`, `a ≥ 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64, cfg: &ZetaEvalConfig) -> Result<Complex64> {
    if !finite(s) || !a.is_finite() {
        return Err(Error::NonFinite("hurwitz_zeta argument"));
    }
    cfg.validate()?;
    if s.re <= 1.0 {
        return Err(Error::DomainViolation(format!(
            "hurwitz_zeta requires Re(s) > 1, got s = {s}"
        )));
    }
    if a < 1.0 {
        return Err(Error::DomainViolation(format!(
            "hurwitz_zeta requires a >= 1, got a = {a}"
        )));
    }
    if s.im.abs() > cfg.max_imag {
        return Err(Error::OverflowRegime {
            imag: s.im.abs(),
            limit: cfg.max_imag,
        });
    }
    let value = em_power_sum(s, a, cfg.direct_terms(s), cfg.correction_order);
    if finite(value) {
        Ok(value)
    } else {
        Err(Error::NonFinite("hurwitz_zeta"))
    }
}

/// Exact `ζ(-n) = (-1)^n B_{n+1} / (n + 1)`.
pub fn zeta_negative_integer(n: usize) -> Result<BigRational> {
    let b = bernoulli(n + 1)?;
    let v = b / BigRational::from_integer(BigInt::from(n + 1));
    Ok(if n % 2 == 0 { v } else { -v })
}

/// Independent evaluation of `Σ_{m,n≥1} (m+n)^{-s} = Σ_{k≥2} (k-1) k^{-s}`.
///
/// Sums `k = 2..=K` directly and closes the tail with an Euler–Maclaurin
/// expansion of `x^{1-s} - x^{-s}`; `K` doubles until the last retained
/// correction is below `tol / 4`.
pub fn double_sum_oracle(s: Complex64, tol: f64) -> Result<Complex64> {
    if !finite(s) {
        return Err(Error::NonFinite("double_sum_oracle argument"));
    }
    if s.re <= 2.0 {
        return Err(Error::DomainViolation(format!(
            "double sum converges only for Re(s) > 2, got s = {s}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::DomainViolation("tolerance must be positive".into()));
    }
    const CORRECTIONS: usize = 6;
    const MAX_K: usize = 1 << 24;
    let mut k_max = 16usize;
    loop {
        let (tail, last) = double_sum_tail(s, k_max, CORRECTIONS);
        if last <= tol / 4.0 || k_max >= MAX_K {
            if last > tol / 4.0 {
                return Err(Error::ToleranceUnreachable {
                    requested: tol,
                    achieved: 4.0 * last,
                    evaluations: k_max,
                });
            }
            let mut sum = Complex64::new(0.0, 0.0);
            let mut comp = Complex64::new(0.0, 0.0);
            for k in (2..=k_max).rev() {
                let kf = k as f64;
                let y = (kf - 1.0) * (-s * kf.ln()).exp() - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            return Ok(sum + tail);
        }
        k_max *= 2;
    }
}

/// Tail `Σ_{k>K} (k^{1-s} - k^{-s})` and the magnitude of its last correction.
fn double_sum_tail(s: Complex64, k_max: usize, corrections: usize) -> (Complex64, f64) {
    let x = (k_max + 1) as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut last = 0.0f64;
    for (p, sign) in [(s - 1.0, 1.0), (s, -1.0)] {
        let xp = (-p * x.ln()).exp();
        let mut part = xp * x / (p - 1.0) + xp * 0.5;
        let mut rising = p;
        let mut pow = xp / x;
        let mut fact = 2.0;
        let mut term = Complex64::new(0.0, 0.0);
        for j in 1..=corrections {
            let b = bernoulli_f64(2 * j).expect("small index");
            term = rising * pow * (b / fact);
            part += term;
            let jf = j as f64;
            rising *= (p + 2.0 * jf - 1.0) * (p + 2.0 * jf);
            pow /= x * x;
            fact *= (2.0 * jf + 1.0) * (2.0 * jf + 2.0);
        }
        last = last.max(term.norm());
        total += part * sign;
    }
    (total, last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zeta(s: Complex64) -> Complex64 {
        riemann_zeta(s, &ZetaEvalConfig::default()).unwrap()
    }

    #[test]
    fn known_values() {
        assert_relative_eq!(
            zeta(c(2.0, 0.0)).re,
            1.644_934_066_848_226_4,
            max_relative = 1e-13
        );
        assert!((zeta(c(0.0, 0.0)) - c(-0.5, 0.0)).norm() < 1e-13);
        assert_eq!(zeta(c(-2.0, 0.0)), c(0.0, 0.0));
        assert_relative_eq!(zeta(c(-1.0, 0.0)).re, -1.0 / 12.0, max_relative = 1e-12);
        assert_relative_eq!(
            zeta(c(3.0, 0.0)).re,
            1.202_056_903_159_594_3,
            max_relative = 1e-13
        );
    }

    #[test]
    fn pole_and_window_errors() {
        let cfg = ZetaEvalConfig::default();
        assert!(matches!(
            riemann_zeta(c(1.0 + 1e-7, 0.0), &cfg),
            Err(Error::PoleProximity { .. })
        ));
        assert!(matches!(
            riemann_zeta(c(0.5, 1000.0), &cfg),
            Err(Error::OverflowRegime { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let bad = ZetaEvalConfig {
            correction_order: 11,
            ..Default::default()
        };
        assert!(matches!(bad.validate(), Err(Error::ConfigError(_))));
        let bad = ZetaEvalConfig {
            em_terms: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = ZetaEvalConfig {
            reflect_below: 0.7,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn critical_line_value() {
        // ζ(1/2 + 14.134725141734695i) is the first nontrivial zero
        let z = zeta(c(0.5, 14.134_725_141_734_695));
        assert!(z.norm() < 1e-12);
    }

    #[test]
    fn hurwitz_values() {
        let cfg = ZetaEvalConfig::default();
        let h3 = hurwitz_zeta(c(3.0, 0.0), 1.0, &cfg).unwrap();
        assert!((h3 - zeta(c(3.0, 0.0))).norm() < 1e-14);
        let h32 = hurwitz_zeta(c(3.0, 0.0), 2.0, &cfg).unwrap();
        assert_relative_eq!(h32.re, 0.202_056_903_159_594_3, max_relative = 1e-12);
        let h42 = hurwitz_zeta(c(4.0, 0.0), 2.0, &cfg).unwrap();
        assert_relative_eq!(h42.re, 0.082_323_233_711_138_19, max_relative = 1e-12);
        assert!(matches!(
            hurwitz_zeta(c(1.0, 3.0), 2.0, &cfg),
            Err(Error::DomainViolation(_))
        ));
        assert!(matches!(
            hurwitz_zeta(c(3.0, 0.0), 0.5, &cfg),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn negative_integers_exact() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(zeta_negative_integer(1).unwrap(), r(-1, 12));
        assert_eq!(zeta_negative_integer(2).unwrap(), r(0, 1));
        assert_eq!(zeta_negative_integer(3).unwrap(), r(1, 120));
        assert_eq!(zeta_negative_integer(5).unwrap(), r(-1, 252));
        assert!(matches!(
            zeta_negative_integer(64),
            Err(Error::IndexBeyondTable { .. })
        ));
    }

    #[test]
    fn double_sum_values() {
        let v4 = double_sum_oracle(c(4.0, 0.0), 1e-13).unwrap();
        assert!((v4.re - 0.119_733_669_448_456_09).abs() < 2e-13);
        let v3 = double_sum_oracle(c(3.0, 0.0), 1e-13).unwrap();
        assert!((v3.re - 0.442_877_163_688_632_15).abs() < 2e-13);
        let v30 = double_sum_oracle(c(30.0, 0.0), 1e-20).unwrap();
        assert_relative_eq!(v30.re, 9.313_322_910_933_808e-10, max_relative = 1e-10);
        assert!(matches!(
            double_sum_oracle(c(2.0, 1.0), 1e-10),
            Err(Error::DomainViolation(_))
        ));
    }
}
