//! Exact Fourier coefficient tables for the level-one normalized cusp
//! eigenforms of weights 12, 16, 18, 20, 22 and 26, and their normalized
//! Hecke eigenvalues.
//!
//! Every such space is one-dimensional, spanned by `Delta * E4^a * E6^b`.
//! `Delta` is built as `q * (eta^3 / q^{1/8})^8`, using the lacunary Jacobi
//! series for `eta^3`, and the products are carried out exactly.

mod modular;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use modular::{crt_symmetric, transform_fields, Field, MAX_LOG_LEN};

/// Weights with a one-dimensional space of level-one cusp forms.
pub const SUPPORTED_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// Default upper bound on table length.
pub const DEFAULT_TABLE_CAP: usize = 1_000_000;

/// A normalized level-one Hecke eigenform with an exact coefficient table.
#[derive(Debug, Clone)]
pub struct CuspForm {
    weight: u32,
    /// `raw[n] = a(n)`; `raw[0]` is the (zero) constant term.
    raw: Vec<BigInt>,
    normalized: OnceLock<Vec<f64>>,
}

impl CuspForm {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Largest tabled index.
    pub fn n_max(&self) -> usize {
        self.raw.len() - 1
    }

    /// Exact coefficient `a(n)`.
    pub fn coefficient(&self, n: u64) -> Result<&BigInt> {
        self.check_index(n)?;
        Ok(&self.raw[n as usize])
    }

    /// The whole exact table, indexed by `n` (entry 0 is the constant term).
    pub fn coefficients(&self) -> &[BigInt] {
        &self.raw
    }

    /// Normalized eigenvalue `lambda(n) = a(n) n^{-(k-1)/2}`.
    pub fn lambda(&self, n: u64) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.lambdas()[n as usize])
    }

    /// All normalized eigenvalues, indexed by `n` (entry 0 is 0.0).
    /// Computed on first use.
    pub fn lambdas(&self) -> &[f64] {
        self.normalized.get_or_init(|| {
            let half = (self.weight as f64 - 1.0) / 2.0;
            self.raw
                .iter()
                .enumerate()
                .map(|(n, a)| {
                    if n == 0 {
                        0.0
                    } else {
                        a.to_f64().unwrap_or(f64::NAN) * (n as f64).powf(-half)
                    }
                })
                .collect()
        })
    }

    /// Errors unless indices up to `required` are tabled.
    pub fn require(&self, required: u64) -> Result<()> {
        if required as usize > self.n_max() {
            return Err(Error::TableTooShort {
                required,
                available: self.n_max(),
            });
        }
        Ok(())
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 || n as usize > self.n_max() {
            return Err(Error::OutOfRange { n, n_max: self.n_max() });
        }
        Ok(())
    }
}

/// `Delta = q prod (1 - q^n)^24` to `n_max` coefficients, capped at
/// [`DEFAULT_TABLE_CAP`].
pub fn build_delta(n_max: usize) -> Result<CuspForm> {
    build_form(12, n_max)
}

/// The normalized cusp form of the given weight, capped at
/// [`DEFAULT_TABLE_CAP`].
pub fn build_form(weight: u32, n_max: usize) -> Result<CuspForm> {
    build_form_capped(weight, n_max, DEFAULT_TABLE_CAP)
}

/// Exponents `(a, b)` with `f = Delta * E4^a * E6^b`.
pub fn eisenstein_exponents(weight: u32) -> Result<(u32, u32)> {
    match weight {
        12 => Ok((0, 0)),
        16 => Ok((1, 0)),
        18 => Ok((0, 1)),
        20 => Ok((2, 0)),
        22 => Ok((1, 1)),
        26 => Ok((2, 1)),
        w => Err(Error::UnsupportedWeight(w)),
    }
}

pub fn build_form_capped(weight: u32, n_max: usize, cap: usize) -> Result<CuspForm> {
    let (e4_pow, e6_pow) = eisenstein_exponents(weight)?;
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let hard_limit = 1usize << (MAX_LOG_LEN - 1);
    if n_max > cap || n_max >= hard_limit {
        return Err(Error::TableCapExceeded {
            requested: n_max,
            cap: cap.min(hard_limit - 1),
        });
    }

    let len = n_max + 1;
    let fields = transform_fields(primes_needed(n_max, e4_pow, e6_pow));
    let residues: Vec<Vec<u32>> = fields
        .iter()
        .map(|f| {
            let series = form_mod(f, len, e4_pow, e6_pow);
            series.into_iter().map(|x| f.leave(x)).collect()
        })
        .collect();
    let raw = crt_symmetric(&fields, &residues);
    debug_assert!(raw[0] == BigInt::from(0));

    Ok(CuspForm {
        weight,
        raw,
        normalized: OnceLock::new(),
    })
}

/// Coefficients of the cusp form modulo one prime, Montgomery form.
fn form_mod(f: &Field, len: usize, e4_pow: u32, e6_pow: u32) -> Vec<u32> {
    // (prod (1 - q^n))^3 = sum_j (-1)^j (2j+1) q^{j(j+1)/2}
    let mut eta3 = vec![0u32; len];
    let mut j = 0i64;
    loop {
        let idx = (j * (j + 1) / 2) as usize;
        if idx >= len {
            break;
        }
        let c = if j % 2 == 0 { 2 * j + 1 } else { -(2 * j + 1) };
        eta3[idx] = f.reduce_i64(c);
        j += 1;
    }
    // shift by one for the leading q of Delta
    let inner = len - 1;
    let p2 = f.mul_series(&eta3, &eta3, inner);
    let p4 = f.mul_series(&p2, &p2, inner);
    let p8 = f.mul_series(&p4, &p4, inner);
    let mut series = Vec::with_capacity(len);
    series.push(0);
    series.extend_from_slice(&p8);

    if e4_pow > 0 {
        let e4 = eisenstein_mod(f, len, 3, 240);
        for _ in 0..e4_pow {
            series = f.mul_series(&series, &e4, len);
        }
    }
    if e6_pow > 0 {
        let e6 = eisenstein_mod(f, len, 5, -504);
        for _ in 0..e6_pow {
            series = f.mul_series(&series, &e6, len);
        }
    }
    series
}

/// `1 + scale * sum sigma_k(n) q^n` modulo the field prime.
fn eisenstein_mod(f: &Field, len: usize, k: u32, scale: i64) -> Vec<u32> {
    let mut sigma = vec![0u32; len];
    for d in 1..len {
        let dk = f.small_pow(d as u64, k);
        for m in (d..len).step_by(d) {
            sigma[m] = f.add(sigma[m], dk);
        }
    }
    let s = f.reduce_i64(scale);
    let mut out: Vec<u32> = sigma.into_iter().map(|x| f.mul(x, s)).collect();
    out[0] = f.reduce_i64(1);
    out
}

/// Number of transform primes whose product exceeds twice a rigorous bound
/// on every output coefficient. The bound is the crude convolution estimate
/// `max|A*B| <= len * max|A| * max|B|`, applied step by step.
fn primes_needed(n_max: usize, e4_pow: u32, e6_pow: u32) -> usize {
    let n = n_max as f64;
    let len = (n + 1.0).log2();
    let j_max = ((2.0 * n).sqrt() + 1.0).ceil();
    let eta3 = (2.0 * j_max + 1.0).log2();
    let p2 = len + 2.0 * eta3;
    let p4 = len + 2.0 * p2;
    let mut bits = len + 2.0 * p4;
    let e4 = (240.0 * 1.21 * n.powi(3) + 1.0).log2();
    let e6 = (504.0 * 1.04 * n.powi(5) + 1.0).log2();
    for _ in 0..e4_pow {
        bits += len + e4;
    }
    for _ in 0..e6_pow {
        bits += len + e6;
    }
    // sign bit, plus slack for the float estimate
    let needed = bits + 1.0 + 8.0;
    (needed / 30.0).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_small_values() {
        let d = build_delta(12).unwrap();
        let expect = [
            1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944,
        ];
        for (n, &t) in expect.iter().enumerate() {
            assert_eq!(d.coefficient(n as u64 + 1).unwrap(), &BigInt::from(t));
        }
        assert_eq!(d.lambda(1).unwrap(), 1.0);
        assert!((d.lambda(2).unwrap() + 24.0 * 2f64.powf(-5.5)).abs() < 1e-15);
    }

    #[test]
    fn eisenstein_twists() {
        assert_eq!(build_form(16, 3).unwrap().coefficient(2).unwrap(), &BigInt::from(216));
        assert_eq!(build_form(18, 3).unwrap().coefficient(2).unwrap(), &BigInt::from(-528));
        assert_eq!(
            build_form(12, 40).unwrap().coefficients(),
            build_delta(40).unwrap().coefficients()
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(build_form(14, 10), Err(Error::UnsupportedWeight(14))));
        assert!(matches!(
            build_form_capped(12, 101, 100),
            Err(Error::TableCapExceeded {
                requested: 101,
                cap: 100
            })
        ));
        let d = build_delta(10).unwrap();
        assert!(matches!(d.lambda(11), Err(Error::OutOfRange { n: 11, n_max: 10 })));
        assert!(matches!(d.lambda(0), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn recursion_at_four() {
        // a(4) = a(2)^2 - 2^11
        let d = build_delta(4).unwrap();
        assert_eq!(d.coefficient(4).unwrap(), &BigInt::from(-1472));
        let l2 = d.lambda(2).unwrap();
        assert!((d.lambda(4).unwrap() - (l2 * l2 - 1.0)).abs() < 1e-14);
    }
}
