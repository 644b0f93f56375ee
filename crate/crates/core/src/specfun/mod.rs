//! Gamma function family and exact Bernoulli numbers.

mod bernoulli;
mod gamma;

pub use bernoulli::{
    bernoulli, bernoulli_f64, bernoulli_table, BernoulliTable, BERNOULLI_CAPACITY,
};
pub use gamma::{
    beta, gamma, gamma_pole_residue, log_gamma, nearest_gamma_pole, stirling_main_term,
    stirling_main_term_in_sector, POLE_GUARD, SECTOR_DELTA,
};
