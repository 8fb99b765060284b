//! Dirichlet characters modulo an odd prime, represented by a discrete
//! logarithm against the least primitive root.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::arith::{self, e_frac, KahanSum};
use crate::error::{Error, Result};

/// Least primitive root modulo the odd prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !arith::is_odd_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    let phi = p - 1;
    let factors: Vec<u64> = arith::factorize(phi).into_iter().map(|(f, _)| f).collect();
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, phi / f, p) != 1))
        .ok_or_else(|| Error::Internal(format!("no primitive root found mod {p}")))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Shared per-modulus data: the discrete-log table.
#[derive(Debug)]
struct LogTable {
    p: u64,
    g: u64,
    /// `log[n] = t` with `g^t = n`, for `1 <= n < p`
    log: Vec<u64>,
}

impl LogTable {
    fn new(p: u64) -> Result<Self> {
        let g = primitive_root(p)?;
        let mut log = vec![0u64; p as usize];
        let mut x = 1u64;
        for t in 0..p - 1 {
            log[x as usize] = t;
            x = x * g % p;
        }
        Ok(Self { p, g, log })
    }
}

/// A Dirichlet character modulo an odd prime `p`:
/// `chi(g^t) = e(j t / (p - 1))`.
#[derive(Clone)]
pub struct DirichletCharacter {
    table: Arc<LogTable>,
    index: u64,
    /// `values[n]` for `0 <= n < p`
    values: Arc<[Complex64]>,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("modulus", &self.table.p)
            .field("generator", &self.table.g)
            .field("index", &self.index)
            .finish()
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.table.p == other.table.p && self.index == other.index
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    /// The character of index `j` (taken mod `p - 1`).
    pub fn new(p: u64, j: u64) -> Result<Self> {
        Ok(Self::from_table(Arc::new(LogTable::new(p)?), j))
    }

    fn from_table(table: Arc<LogTable>, j: u64) -> Self {
        let p = table.p;
        let order = p - 1;
        let index = j % order;
        let values: Vec<Complex64> = (0..p)
            .map(|n| {
                if n == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    let t = table.log[n as usize];
                    e_frac(((index * t) % order) as i64, order)
                }
            })
            .collect();
        Self {
            table,
            index,
            values: values.into(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.table.p
    }

    pub fn generator(&self) -> u64 {
        self.table.g
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// For a prime modulus every nontrivial character is primitive.
    pub fn is_primitive(&self) -> bool {
        self.index != 0
    }

    /// `chi(n)`, zero when `p | n`.
    #[inline]
    pub fn chi(&self, n: i64) -> Complex64 {
        self.values[n.rem_euclid(self.table.p as i64) as usize]
    }

    /// Discrete log of `n` against the generator; `None` when `p | n`.
    pub fn log(&self, n: i64) -> Option<u64> {
        let r = n.rem_euclid(self.table.p as i64) as usize;
        (r != 0).then(|| self.table.log[r])
    }

    /// The conjugate character, index `j -> p - 1 - j`.
    pub fn conjugate(&self) -> Self {
        let order = self.table.p - 1;
        Self::from_table(self.table.clone(), (order - self.index) % order)
    }

    /// `chi(-1)`, either `1` or `-1`.
    pub fn parity(&self) -> i32 {
        if self.index.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Gauss sum `sum_{b=1}^{p-1} chi(b) e(b/p)` by direct summation.
    pub fn gauss_sum(&self) -> Result<Complex64> {
        self.require_primitive()?;
        let p = self.table.p;
        Ok((1..p)
            .map(|b| self.values[b as usize] * e_frac(b as i64, p))
            .collect::<KahanSum>()
            .value())
    }

    /// `chi(m)` rebuilt from additive characters,
    /// `(1 / tau(chi-bar)) sum_b chi-bar(b) e(b m / p)`.
    pub fn additive_expansion(&self, m: i64) -> Result<Complex64> {
        self.require_primitive()?;
        let bar = self.conjugate();
        let tau_bar = bar.gauss_sum()?;
        let p = self.table.p;
        let s = (1..p)
            .map(|b| bar.values[b as usize] * e_frac(b as i64 * m.rem_euclid(p as i64), p))
            .collect::<KahanSum>()
            .value();
        Ok(s / tau_bar)
    }

    fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NonPrimitiveCharacter {
                modulus: self.table.p,
                index: self.index,
            })
        }
    }
}

/// All `p - 1` characters modulo `p`, by index.
pub fn enumerate_characters(p: u64) -> Result<Vec<DirichletCharacter>> {
    let table = Arc::new(LogTable::new(p)?);
    Ok((0..p - 1)
        .map(|j| DirichletCharacter::from_table(table.clone(), j))
        .collect())
}

/// The `p - 2` primitive characters modulo `p`.
pub fn primitive_characters(p: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(enumerate_characters(p)?
        .into_iter()
        .filter(DirichletCharacter::is_primitive)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_oracle(g: u64, p: u64) -> u64 {
        let mut x = g % p;
        let mut k = 1;
        while x != 1 {
            x = x * g % p;
            k += 1;
        }
        k
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(3).unwrap(), 2);
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        for p in (3..200).filter(|&p| arith::is_odd_prime(p)) {
            let g = primitive_root(p).unwrap();
            assert_eq!(order_oracle(g, p), p - 1);
            assert!((2..g).all(|h| order_oracle(h, p) < p - 1));
        }
        assert_eq!(primitive_root(2), Err(Error::InvalidModulus(2)));
        assert_eq!(primitive_root(9), Err(Error::InvalidModulus(9)));
    }

    #[test]
    fn enumeration_counts() {
        for (p, n) in [(3, 2), (5, 4), (7, 6)] {
            let all = enumerate_characters(p).unwrap();
            assert_eq!(all.len(), n);
            assert_eq!(all.iter().filter(|c| c.is_primitive()).count(), n - 1);
        }
    }

    #[test]
    fn values() {
        let chi = DirichletCharacter::new(5, 2).unwrap();
        assert!((chi.chi(2) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(chi.chi(10), Complex64::new(0.0, 0.0));
        assert!((chi.chi(1) - 1.0).norm() < 1e-15);
        assert!((chi.chi(-1) - 1.0).norm() < 1e-15);
        let chi = DirichletCharacter::new(7, 1).unwrap();
        for m in -20..20 {
            for n in -20..20 {
                assert!((chi.chi(m * n) - chi.chi(m) * chi.chi(n)).norm() < 1e-12);
            }
        }
        assert_eq!(chi.conjugate().index(), 5);
        assert_eq!(chi.parity(), -1);
    }

    #[test]
    fn gauss_sums() {
        let t3 = DirichletCharacter::new(3, 1).unwrap().gauss_sum().unwrap();
        let oracle = e_frac(1, 3) - e_frac(2, 3);
        assert!((t3 - oracle).norm() < 1e-14);
        assert!((t3 - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-14);
        let t5 = DirichletCharacter::new(5, 2).unwrap().gauss_sum().unwrap();
        assert!((t5 - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-14);
        assert!(matches!(
            DirichletCharacter::new(5, 0).unwrap().gauss_sum(),
            Err(Error::NonPrimitiveCharacter { modulus: 5, index: 0 })
        ));
    }

    #[test]
    fn additive_expansion_reconstructs() {
        for p in [3, 5, 7, 11] {
            for chi in primitive_characters(p).unwrap() {
                for m in 0..=3 * p as i64 {
                    let back = chi.additive_expansion(m).unwrap();
                    assert!((back - chi.chi(m)).norm() < 1e-10);
                }
            }
        }
    }
}
