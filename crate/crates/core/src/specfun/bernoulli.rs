//! Exact Bernoulli numbers from the binomial recurrence
//! `sum_{j=0}^{n} C(n+1, j) B_j = 0`, with the convention `B_1 = -1/2`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Highest index held by the shared table.
pub const BERNOULLI_CAPACITY: usize = 64;

#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
    floats: Vec<f64>,
}

impl BernoulliTable {
    /// Builds `B_0 ..= B_n_max`.
    pub fn new(n_max: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(n_max + 1);
        values.push(BigRational::one());
        // row holds C(n+1, j) for j = 0..=n+1
        let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        for n in 1..=n_max {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(BigInt::one());
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::one());
            row = next;

            if n >= 3 && n % 2 == 1 {
                values.push(BigRational::zero());
                continue;
            }
            let mut acc = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += BigRational::from_integer(row[j].clone()) * b;
                }
            }
            let denom = BigRational::from_integer(row[n].clone());
            values.push(-acc / denom);
        }
        let floats = values.iter().map(rational_to_f64).collect();
        Self { values, floats }
    }

    pub fn capacity(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&BigRational> {
        self.values.get(n).ok_or(Error::IndexBeyondTable {
            index: n,
            capacity: self.capacity(),
        })
    }

    pub fn get_f64(&self, n: usize) -> Result<f64> {
        self.floats.get(n).copied().ok_or(Error::IndexBeyondTable {
            index: n,
            capacity: self.capacity(),
        })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        return v;
    }
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// The process-wide table, built on first use.
pub fn bernoulli_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(BERNOULLI_CAPACITY))
}

/// Exact `B_n`.
pub fn bernoulli(n: usize) -> Result<BigRational> {
    bernoulli_table().get(n).cloned()
}

/// `B_n` rounded to binary64.
pub fn bernoulli_f64(n: usize) -> Result<f64> {
    bernoulli_table().get_f64(n)
}
