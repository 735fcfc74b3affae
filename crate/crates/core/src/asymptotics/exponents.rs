//! Exact exponent calculators.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Error term `x^exponent log^log_power x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentResult {
    pub exponent: BigRational,
    pub log_power: u32,
}

impl fmt::Display for ExponentResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} log^{}", self.exponent, self.log_power)
    }
}

/// Landau error exponent `(d - 1)/(d + 1)` for a series of degree `d` with a
/// pole of order `k`, plus the `log^{k-1}` power.
pub fn landau_exponent(degree: u32, pole_order: u32) -> Result<ExponentResult> {
    if degree < 2 || pole_order < 1 {
        return Err(Error::InvalidArgument(format!(
            "degree {degree} must be at least 2 and pole order {pole_order} at least 1"
        )));
    }
    let d = i64::from(degree);
    Ok(ExponentResult { exponent: ratio(d - 1, d + 1), log_power: pole_order - 1 })
}

/// Perron truncation balance: `g = theta - 1 + sum (m + 1)/4`, `T = x^{(1/2)/(1 + g)}`,
/// error `x^{1 - (1/2)/(1 + g)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerronBalance {
    pub g: BigRational,
    pub t_exponent: BigRational,
    pub error_exponent: BigRational,
}

pub fn perron_balance(theta: &BigRational, moment_degrees: &[u32]) -> Result<PerronBalance> {
    if theta.is_negative() {
        return Err(Error::InvalidArgument(format!("theta = {theta} must be nonnegative")));
    }
    let moments = moment_degrees
        .iter()
        .fold(BigRational::zero(), |acc, &m| acc + ratio(i64::from(m) + 1, 4));
    let g = theta - BigRational::one() + moments;
    let one_plus_g = &g + BigRational::one();
    if !one_plus_g.is_positive() {
        return Err(Error::InvalidArgument(format!("g = {g} must exceed -1")));
    }
    let t_exponent = ratio(1, 2) / one_plus_g;
    let error_exponent = BigRational::one() - &t_exponent;
    Ok(PerronBalance { g, t_exponent, error_exponent })
}
