//! Mellin–Barnes and zeta-function contour integrals, checked against
//! closed forms, series oracles and residue sums.
//!
//! * [`specfun`]: complex Gamma, log-Gamma, Beta, exact Bernoulli numbers.
//! * [`zeta`]: Riemann and Hurwitz zeta, exact values at negative integers,
//!   and a direct double-sum oracle.
//! * [`quad`]: adaptive Gauss–Kronrod quadrature for complex-valued integrands.
//! * [`contour`]: the three integrand families and their line, segment,
//!   rectangle and real-axis integrals.
//! * [`residues`]: pole enumeration, closed-form and numerical residues,
//!   and the divergent residue-series study.
//! * [`verify`]: identity checks, decay studies, envelope fits and the suite runner.

pub mod contour;
pub mod error;
pub mod quad;
pub mod residues;
pub mod specfun;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;
