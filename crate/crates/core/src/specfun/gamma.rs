//! Complex Gamma and log-Gamma.
//!
//! `log_gamma` shifts the argument right until `Re(w) >= 15` and applies the
//! Stirling series with twelve Bernoulli corrections there, then walks back
//! with `ln Γ(z) = ln Γ(z + N) - Σ ln(z + k)`. Summing principal logarithms
//! yields the branch of `ln Γ` that is continuous on the plane cut along
//! `(-∞, 0]` and real on the positive axis.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::bernoulli_f64;
use crate::error::{Error, Result};

/// Minimum complex distance from a pole before evaluation is refused.
pub const POLE_GUARD: f64 = 1e-6;

/// Angular margin `δ` kept from the negative real axis by the Stirling main term.
pub const SECTOR_DELTA: f64 = 1e-2;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;
const STIRLING_SHIFT: f64 = 15.0;
const STIRLING_TERMS: usize = 12;

/// Nearest member of `{0, -1, -2, ...}` to `z`.
pub fn nearest_gamma_pole(z: Complex64) -> f64 {
    z.re.round().min(0.0)
}

fn check_gamma_pole(z: Complex64) -> Result<()> {
    let pole = nearest_gamma_pole(z);
    if (z - pole).norm() <= POLE_GUARD {
        return Err(Error::PoleProximity {
            z,
            pole: Complex64::new(pole, 0.0),
        });
    }
    Ok(())
}

fn stirling_series(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    let mut corr = Complex64::new(0.0, 0.0);
    for k in 1..=STIRLING_TERMS {
        let b = bernoulli_f64(2 * k).expect("table covers the Stirling terms");
        let kf = k as f64;
        corr += power * (b / (2.0 * kf * (2.0 * kf - 1.0)));
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + corr
}

/// Principal continuous branch of `ln Γ(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("log_gamma argument"));
    }
    check_gamma_pole(z)?;
    let shift = if z.re < STIRLING_SHIFT {
        (STIRLING_SHIFT - z.re).ceil() as usize
    } else {
        0
    };
    let w = z + shift as f64;
    let mut value = stirling_series(w);
    // compensated subtraction of Σ ln(z + k)
    let mut comp = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        let y = -(z + k as f64).ln() - comp;
        let t = value + y;
        comp = (t - value) - y;
        value = t;
    }
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("log_gamma"))
    }
}

/// `Γ(z)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    let v = log_gamma(z)?.exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("gamma"))
    }
}

/// `(z - 1/2) ln z - z + ln √(2π)`, the leading Stirling approximation to `ln Γ(z)`.
pub fn stirling_main_term(z: Complex64) -> Result<Complex64> {
    stirling_main_term_in_sector(z, SECTOR_DELTA)
}

pub fn stirling_main_term_in_sector(z: Complex64, delta: f64) -> Result<Complex64> {
    if z.norm() == 0.0 || z.arg().abs() >= PI - delta {
        return Err(Error::SectorViolation { z });
    }
    Ok((z - 0.5) * z.ln() - z + LN_SQRT_2PI)
}

/// Residue of `Γ` at `-n`: `(-1)^n / n!`.
pub fn gamma_pole_residue(n: u32) -> f64 {
    let mut fact = 1.0;
    for k in 2..=n {
        fact *= k as f64;
    }
    if n % 2 == 0 {
        1.0 / fact
    } else {
        -1.0 / fact
    }
}

/// `B(x, y) = Γ(x)Γ(y)/Γ(x+y)`.
pub fn beta(x: Complex64, y: Complex64) -> Result<Complex64> {
    let v = (log_gamma(x)? + log_gamma(y)? - log_gamma(x + y)?).exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("beta"))
    }
}
