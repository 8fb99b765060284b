//! Elementary arithmetic shared by the number-theoretic modules.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};

/// The unit exponential `e(x) = exp(2 pi i x)`.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let (s, c) = (TAU * x).sin_cos();
    Complex64::new(c, s)
}

/// `e(num / den)` with the numerator reduced exactly before the float
/// conversion, so large numerators lose no phase accuracy.
#[inline]
pub fn e_frac(num: i64, den: u64) -> Complex64 {
    debug_assert!(den > 0);
    let r = (num as i128).rem_euclid(den as i128) as f64;
    e(r / den as f64)
}

pub fn gcd(a: i64, b: i64) -> u64 {
    a.unsigned_abs().gcd(&b.unsigned_abs())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n > 2 && is_prime(n)
}

/// Prime factorization as (prime, exponent) pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Moebius function.
pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Number of divisors `d(n)`.
pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, k)| u64::from(k) + 1).product()
}

/// Multiplicative inverse of `a` modulo `q` by the extended Euclidean
/// algorithm, returned in `[1, q)`; the inverse modulo 1 is 0.
pub fn mod_inverse(a: i64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::NotInvertible { a, q });
    }
    if q == 1 {
        return Ok(0);
    }
    let m = q as i128;
    let (mut r0, mut r1) = (m, (a as i128).rem_euclid(m));
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { a, q });
    }
    Ok(s0.rem_euclid(m) as u64)
}

/// All primes in the closed real interval `[lo, hi]`, ascending.
pub fn primes_between(lo: f64, hi: f64) -> Vec<u64> {
    if hi < 2.0 || hi < lo {
        return Vec::new();
    }
    let start = lo.max(2.0).ceil() as u64;
    let end = hi.floor() as u64;
    (start..=end).filter(|&n| is_prime(n)).collect()
}

/// Neumaier-compensated complex sum; the accumulation order is the
/// iteration order, so results are reproducible.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl FromIterator<Complex64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = KahanSum::new();
        for z in iter {
            s.add(z);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(1, 9).unwrap(), 1);
        assert_eq!(mod_inverse(-1, 9).unwrap(), 8);
        assert_eq!(mod_inverse(5, 1).unwrap(), 0);
        assert!(matches!(mod_inverse(2, 4), Err(Error::NotInvertible { a: 2, q: 4 })));
    }

    #[test]
    fn multiplicative_functions() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!((2..=10).filter(|q| q % 7 != 0).map(totient).sum::<u64>(), 25);
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisor_count(360), 24);
    }

    #[test]
    fn primes() {
        assert!(is_odd_prime(3));
        assert!(!is_odd_prime(2));
        assert!(!is_odd_prime(91));
        assert_eq!(primes_between(1.5, 11.0), vec![2, 3, 5, 7, 11]);
        assert!(primes_between(24.0, 28.0).is_empty());
    }

    #[test]
    fn exact_phase_reduction() {
        let z = e_frac(1_000_000_000_007, 7);
        let w = e((1_000_000_000_007i64 % 7) as f64 / 7.0);
        assert!((z - w).norm() < 1e-15);
        assert!((e_frac(-1, 4) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }
}
