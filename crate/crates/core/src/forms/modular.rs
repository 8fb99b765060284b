//! Exact integer power-series products by number-theoretic transforms over
//! several word-sized primes, recombined by the Chinese remainder theorem.
//!
//! All series here are truncated at a fixed length `len` (coefficients of
//! `q^0 .. q^{len-1}`). Reduction mod a prime is a ring homomorphism, so only
//! the final coefficients need to fit inside the CRT modulus.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Largest supported transform length (log2). Primes are `c * 2^21 + 1`.
pub(crate) const MAX_LOG_LEN: u32 = 21;

/// Montgomery arithmetic modulo an odd prime below 2^31.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Field {
    pub p: u32,
    /// `-p^{-1} mod 2^32`
    neg_inv: u32,
    /// `2^64 mod p`
    r2: u32,
    /// primitive root of unity of order 2^MAX_LOG_LEN, Montgomery form
    root: u32,
}

impl Field {
    fn new(p: u32) -> Self {
        let mut inv: u32 = 1;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r2 = ((1u128 << 64) % p as u128) as u32;
        let mut f = Field {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
            root: 0,
        };
        let g = primitive_root(p);
        let order = 1u64 << MAX_LOG_LEN;
        let w = pow_plain(g as u64, (p as u64 - 1) / order, p as u64) as u32;
        f.root = f.enter(w);
        f
    }

    #[inline]
    fn reduce(&self, t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(self.neg_inv);
        let u = ((t + m as u64 * self.p as u64) >> 32) as u32;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn enter(&self, a: u32) -> u32 {
        self.mul(a % self.p, self.r2)
    }

    #[inline]
    pub fn leave(&self, a: u32) -> u32 {
        self.reduce(a as u64)
    }

    /// Residue of a signed integer, in Montgomery form.
    pub fn reduce_i64(&self, v: i64) -> u32 {
        self.enter(v.rem_euclid(self.p as i64) as u32)
    }

    /// `base^k` for a plain (non-Montgomery) base, result in Montgomery form.
    pub fn small_pow(&self, base: u64, k: u32) -> u32 {
        self.pow(self.enter((base % self.p as u64) as u32), u64::from(k))
    }

    fn pow(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = self.enter(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn ntt(&self, a: &mut [u32], inverse: bool) {
        let n = a.len();
        let log_n = n.trailing_zeros();
        debug_assert!(n.is_power_of_two() && log_n <= MAX_LOG_LEN);
        let mut j = 0usize;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let mut w_len = self.pow(self.root, (1u64 << MAX_LOG_LEN) / len as u64);
            if inverse {
                w_len = self.pow(w_len, self.p as u64 - 2);
            }
            let half = len / 2;
            let mut twiddles = Vec::with_capacity(half);
            let mut w = self.enter(1);
            for _ in 0..half {
                twiddles.push(w);
                w = self.mul(w, w_len);
            }
            for chunk in a.chunks_exact_mut(len) {
                let (lo, hi) = chunk.split_at_mut(half);
                for ((x, y), &tw) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                    let u = *x;
                    let v = self.mul(*y, tw);
                    *x = self.add(u, v);
                    *y = self.sub(u, v);
                }
            }
            len <<= 1;
        }
        if inverse {
            let n_inv = self.pow(self.enter(n as u32), self.p as u64 - 2);
            for x in a.iter_mut() {
                *x = self.mul(*x, n_inv);
            }
        }
    }

    /// Truncated product of two series in Montgomery form.
    pub fn mul_series(&self, a: &[u32], b: &[u32], len: usize) -> Vec<u32> {
        let a = &a[..a.len().min(len)];
        let b = &b[..b.len().min(len)];
        if a.is_empty() || b.is_empty() {
            return vec![0; len];
        }
        let full = a.len() + b.len() - 1;
        // schoolbook when one factor is lacunary or tiny
        let nz_a = a.iter().filter(|&&x| x != 0).count();
        let nz_b = b.iter().filter(|&&x| x != 0).count();
        if nz_a.min(nz_b) <= 64 || full <= 256 {
            let (sparse, dense) = if nz_a <= nz_b { (a, b) } else { (b, a) };
            let mut out = vec![0u32; len];
            for (i, &s) in sparse.iter().enumerate() {
                if s == 0 {
                    continue;
                }
                for (o, &d) in out[i..].iter_mut().zip(dense) {
                    *o = self.add(*o, self.mul(s, d));
                }
            }
            return out;
        }
        let size = full.next_power_of_two();
        let mut fa = vec![0u32; size];
        fa[..a.len()].copy_from_slice(a);
        self.ntt(&mut fa, false);
        if std::ptr::eq(a, b) {
            for x in fa.iter_mut() {
                *x = self.mul(*x, *x);
            }
        } else {
            let mut fb = vec![0u32; size];
            fb[..b.len()].copy_from_slice(b);
            self.ntt(&mut fb, false);
            for (x, y) in fa.iter_mut().zip(&fb) {
                *x = self.mul(*x, *y);
            }
        }
        self.ntt(&mut fa, true);
        fa.truncate(len);
        fa.resize(len, 0);
        fa
    }
}

fn pow_plain(mut b: u64, mut e: u64, m: u64) -> u64 {
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

fn primitive_root(p: u32) -> u32 {
    let phi = p as u64 - 1;
    let factors: Vec<u64> = crate::arith::factorize(phi).into_iter().map(|(f, _)| f).collect();
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_plain(g as u64, phi / f, p as u64) != 1))
        .expect("every prime has a primitive root")
}

/// The first `count` primes of the form `c * 2^21 + 1` below 2^31, largest first.
pub(crate) fn transform_fields(count: usize) -> Vec<Field> {
    let step = 1u64 << MAX_LOG_LEN;
    let mut out = Vec::with_capacity(count);
    let mut c = ((1u64 << 31) - 1) / step;
    while out.len() < count && c > 0 {
        let p = c * step + 1;
        if p < (1 << 31) && crate::arith::is_prime(p) {
            out.push(Field::new(p as u32));
        }
        c -= 1;
    }
    assert_eq!(out.len(), count, "ran out of transform primes");
    out
}

/// Recombine per-prime residues (plain form, not Montgomery) into signed
/// integers in the symmetric range of the product modulus (Garner).
pub(crate) fn crt_symmetric(fields: &[Field], residues: &[Vec<u32>]) -> Vec<BigInt> {
    let k = fields.len();
    let len = residues[0].len();
    // inv[i][j] = p_j^{-1} mod p_i for j < i
    let inv: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let pi = fields[i].p as u64;
            (0..i).map(|j| pow_plain(fields[j].p as u64 % pi, pi - 2, pi)).collect()
        })
        .collect();
    let modulus: BigUint = fields.iter().fold(BigUint::one(), |acc, f| acc * f.p);
    let half = &modulus >> 1u32;
    let modulus = BigInt::from(modulus);
    let half = BigInt::from(half);

    let mut digits = vec![0u64; k];
    (0..len)
        .map(|idx| {
            for i in 0..k {
                let pi = fields[i].p as u64;
                let mut x = residues[i][idx] as u64;
                for j in 0..i {
                    x = (x + pi - digits[j] % pi) % pi * inv[i][j] % pi;
                }
                digits[i] = x;
            }
            let mut value = BigInt::zero();
            for i in (0..k).rev() {
                value = value * fields[i].p + digits[i];
            }
            if value > half {
                value - &modulus
            } else {
                value
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_product_matches_schoolbook() {
        let f = transform_fields(1)[0];
        let a: Vec<i64> = (0..700).map(|i| (i * 7919 % 1013) as i64 - 500).collect();
        let b: Vec<i64> = (0..650).map(|i| (i * 104729 % 997) as i64 - 498).collect();
        let len = 900;
        let am: Vec<u32> = a.iter().map(|&v| f.reduce_i64(v)).collect();
        let bm: Vec<u32> = b.iter().map(|&v| f.reduce_i64(v)).collect();
        let got: Vec<u32> = f.mul_series(&am, &bm, len).into_iter().map(|x| f.leave(x)).collect();
        for n in 0..len {
            let mut s: i64 = 0;
            for i in 0..=n.min(a.len() - 1) {
                if n - i < b.len() {
                    s += a[i] * b[n - i];
                }
            }
            assert_eq!(got[n] as i64, s.rem_euclid(f.p as i64), "coefficient {n}");
        }
    }

    #[test]
    fn crt_recovers_signed_values() {
        let fields = transform_fields(3);
        let values: Vec<i128> = vec![0, 1, -1, 123_456_789_012_345, -987_654_321_098_765_432];
        let residues: Vec<Vec<u32>> = fields
            .iter()
            .map(|f| values.iter().map(|&v| v.rem_euclid(f.p as i128) as u32).collect())
            .collect();
        let back = crt_symmetric(&fields, &residues);
        for (v, b) in values.iter().zip(&back) {
            assert_eq!(BigInt::from(*v), *b);
        }
    }
}
