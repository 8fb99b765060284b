//! Exponent bookkeeping in exact rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentMode {
    /// `eta = 1/14` as chosen in the text; exponent `max(9/10 + 9 eta/20, 1 - eta/2)`.
    Paper,
    /// `eta` solving `9/10 + 9 eta/20 = 1 - eta/2`.
    Balanced,
    /// `19/20 + (202/100) theta`.
    HTheta,
}

impl fmt::Display for ExponentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExponentMode::Paper => "paper",
            ExponentMode::Balanced => "balanced",
            ExponentMode::HTheta => "h_theta",
        })
    }
}

impl FromStr for ExponentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(ExponentMode::Paper),
            "balanced" => Ok(ExponentMode::Balanced),
            "h_theta" => Ok(ExponentMode::HTheta),
            other => Err(Error::Config(format!("unknown exponent mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSolution {
    pub mode: ExponentMode,
    pub theta: BigRational,
    pub eta: BigRational,
    pub q1_exp: BigRational,
    pub q3_exp: BigRational,
    pub q4_exp: BigRational,
    pub final_exponent: BigRational,
    /// Largest admissible `Q1` exponent, `2/5 + eta/5 - (12/25) theta (eta + 2)`.
    pub q1_limit: BigRational,
    pub q1_feasible: bool,
}

impl ExponentSolution {
    pub fn final_f64(&self) -> f64 {
        self.final_exponent.to_f64().unwrap_or(f64::NAN)
    }
}

/// The two competing terms `9/10 + 9 eta/20` and `1 - eta/2`.
pub fn competing_terms(eta: &BigRational) -> (BigRational, BigRational) {
    (rat(9, 10) + rat(9, 20) * eta, rat(1, 1) - eta / BigInt::from(2))
}

/// Parse `a/b`, an integer, or a finite decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Config(format!("cannot parse `{s}` as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let den = BigInt::from(10).pow(frac.len() as u32);
        return Ok(BigRational::new(digits, den));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

pub fn exponent_calculator(theta: &BigRational, mode: ExponentMode) -> Result<ExponentSolution> {
    if theta < &BigRational::zero() || theta >= &rat(1, 5) {
        return Err(Error::Domain(format!("theta = {theta} must lie in [0, 1/5)")));
    }
    let eta = match mode {
        ExponentMode::Paper | ExponentMode::HTheta => rat(1, 14),
        // 9/10 + 9 eta/20 = 1 - eta/2  <=>  19 eta / 20 = 1/10
        ExponentMode::Balanced => rat(1, 10) / rat(19, 20),
    };
    let q1_exp = rat(1, 5) + &eta / BigInt::from(10);
    let q3_exp = rat(2, 5) + &eta / BigInt::from(5);
    let q4_exp = q3_exp.clone();
    let (lhs, rhs) = competing_terms(&eta);
    let final_exponent = match mode {
        ExponentMode::Paper | ExponentMode::Balanced => lhs.max(rhs),
        ExponentMode::HTheta => rat(19, 20) + rat(202, 100) * theta,
    };
    let q1_limit = rat(2, 5) + &eta / BigInt::from(5) - rat(12, 25) * theta * (&eta + rat(2, 1));
    let q1_feasible = q1_exp <= q1_limit;
    Ok(ExponentSolution {
        mode,
        theta: theta.clone(),
        eta,
        q1_exp,
        q3_exp,
        q4_exp,
        final_exponent,
        q1_limit,
        q1_feasible,
    })
}

/// Note printed alongside the calculator output.
pub const DISCREPANCY_NOTE: &str = "equating 9/10 + 9eta/20 with 1 - eta/2 gives eta = 2/19 and exponent 18/19; \
the text's eta = 1/14 gives 27/28; the H_theta formula gives 19/20 at theta = 0";
