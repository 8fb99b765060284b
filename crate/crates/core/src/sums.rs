//! Ramanujan sums, the character sum of the twisted dual side, shifted
//! convolution sums, short twisted sums and the first index separating two
//! twisted coefficient sequences.

use num_complex::Complex64;

use crate::arith::{self, e_frac, mod_inverse, KahanSum};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::forms::CuspForm;
use crate::special::{window, WindowKind};
pub use crate::voronoi::Convention;

/// `c_q(n) = sum_{d | (q, n)} d mu(q/d)`, with `(q, 0) = q`.
pub fn ramanujan_sum(q: u64, n: i64) -> i64 {
    assert!(q >= 1, "Ramanujan sum needs q >= 1");
    let g = if n == 0 { q } else { arith::gcd(q as i64, n) };
    arith::divisors(g)
        .into_iter()
        .map(|d| d as i64 * arith::mobius(q / d))
        .sum()
}

/// One instance of
/// `C = sum*_{a mod q} sum*_{b mod p} chi-bar(b) e(c'm/(pq)) e(-a'n/q)`,
/// `c = ap +- bq`, `c c' = 1 mod pq`, `a a' = 1 mod q`.
#[derive(Debug, Clone)]
pub struct CharSumInstance {
    p: u64,
    q: u64,
    chi: DirichletCharacter,
    m: i64,
    n: i64,
    convention: Convention,
}

impl CharSumInstance {
    pub fn new(chi: DirichletCharacter, q: u64, m: i64, n: i64, convention: Convention) -> Result<Self> {
        let p = chi.modulus();
        if !chi.is_primitive() {
            return Err(Error::NonPrimitiveCharacter {
                modulus: p,
                index: chi.index(),
            });
        }
        if q == 0 || arith::gcd(q as i64, p as i64) != 1 {
            return Err(Error::Coprimality(format!("need q >= 1 coprime to {p}, got {q}")));
        }
        Ok(Self {
            p,
            q,
            chi,
            m,
            n,
            convention,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }
}

/// Direct double sum.
pub fn char_sum_bruteforce(inst: &CharSumInstance) -> Result<Complex64> {
    let (p, q) = (inst.p as i64, inst.q as i64);
    let pq = (p * q) as u64;
    let bar = inst.chi.conjugate();
    let mut acc = KahanSum::new();
    for a in (0..q).filter(|&a| arith::gcd(a, q) == 1) {
        let a_bar = mod_inverse(a, inst.q)? as i64;
        let outer = e_frac(-a_bar * inst.n, inst.q);
        for b in 1..p {
            let c = a * p + inst.convention.sign() * b * q;
            let c_bar =
                mod_inverse(c, pq).map_err(|_| Error::Internal(format!("c = {c} not invertible mod {pq}")))? as i64;
            acc.add(bar.chi(b) * e_frac(((c_bar as i128 * inst.m as i128) % pq as i128) as i64, pq) * outer);
        }
    }
    Ok(acc.value())
}

/// Closed-form evaluations of [`char_sum_bruteforce`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// `chi-bar(+-1) tau(chi) chi-bar(m) chi(q^2) c_q(m - p^2 n)`; agrees
    /// with the direct sum for every character and both conventions.
    Verified,
    /// `tau(chi-bar) chi-bar(m) chi-bar(q^2) c_q(m - p^2 n)`
    LemmaStatement,
    /// `tau(chi-bar) chi(m) chi-bar(q^2) c_q(m - p^2 n)`
    DerivationEnd,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 3] = [
        ClosedForm::Verified,
        ClosedForm::LemmaStatement,
        ClosedForm::DerivationEnd,
    ];
}

impl std::fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClosedForm::Verified => "verified",
            ClosedForm::LemmaStatement => "lemma_statement",
            ClosedForm::DerivationEnd => "derivation_end",
        })
    }
}

/// [`ClosedForm::Verified`].
pub fn char_sum_closed(inst: &CharSumInstance) -> Result<Complex64> {
    char_sum_closed_variant(inst, ClosedForm::Verified)
}

pub fn char_sum_closed_variant(inst: &CharSumInstance, form: ClosedForm) -> Result<Complex64> {
    let chi = &inst.chi;
    let bar = chi.conjugate();
    let q = inst.q as i64;
    let p = inst.p as i64;
    let shift = inst.m - p * p * inst.n;
    let c_q = ramanujan_sum(inst.q, shift) as f64;
    if c_q == 0.0 {
        return Ok(Complex64::default());
    }
    let value = match form {
        ClosedForm::Verified => bar.chi(inst.convention.sign()) * chi.gauss_sum()? * bar.chi(inst.m) * chi.chi(q * q),
        ClosedForm::LemmaStatement => bar.gauss_sum()? * bar.chi(inst.m) * bar.chi(q * q),
        ClosedForm::DerivationEnd => bar.gauss_sum()? * chi.chi(inst.m) * bar.chi(q * q),
    };
    Ok(value * c_q)
}

/// `sum_{q1' u - q1 v = shift} lambda(u) lambda(v) W(u/M) V(v/M)` with
/// `W = V` the plateau window on `[1/2, 3]`.
pub fn shifted_convolution(g: &CuspForm, q1: u64, q1p: u64, shift: i64, m: u64) -> Result<f64> {
    if q1 == 0 || q1p == 0 {
        return Err(Error::Domain("q1 and q1' must be positive".into()));
    }
    if m == 0 {
        return Ok(0.0);
    }
    g.require(3 * m)?;
    let w = window(WindowKind::BumpUnit);
    let lambdas = g.lambdas();
    let mf = m as f64;
    let (lo, hi) = (m.div_ceil(2), 3 * m);
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for u in lo..=hi {
        let num = q1p as i64 * u as i64 - shift;
        if num % q1 as i64 != 0 {
            continue;
        }
        let v = num / q1 as i64;
        if v < lo as i64 || v > hi as i64 {
            continue;
        }
        let term =
            lambdas[u as usize] * lambdas[v as usize] * w.eval_scaled(u as f64, mf) * w.eval_scaled(v as f64, mf);
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    Ok(acc)
}

/// `(q1' M + q1 M)^{1/2 + theta}`.
pub fn shifted_convolution_bound(q1: u64, q1p: u64, m: u64, theta: f64) -> f64 {
    ((q1p + q1) as f64 * m as f64).powf(0.5 + theta)
}

/// `sum_r lambda(r) chi(r) W(r / M0)`, `W` the plateau window on `[1/2, 3]`.
pub fn short_twisted_sum(g: &CuspForm, chi: &DirichletCharacter, m0: u64) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::NonPrimitiveCharacter {
            modulus: chi.modulus(),
            index: chi.index(),
        });
    }
    if m0 == 0 {
        return Ok(Complex64::default());
    }
    g.require(3 * m0)?;
    let w = window(WindowKind::BumpUnit);
    let lambdas = g.lambdas();
    let mf = m0 as f64;
    Ok((m0.div_ceil(2)..3 * m0)
        .map(|r| chi.chi(r as i64) * (lambdas[r as usize] * w.eval_scaled(r as f64, mf)))
        .collect::<KahanSum>()
        .value())
}

/// Threshold above which two normalized coefficients count as different.
pub const DISTINGUISH_TOL: f64 = 1e-9;

/// Least `n <= n_max` coprime to `p` with
/// `|lambda_f(n) - lambda_g(n) chi(n)| > 1e-9`.
pub fn first_distinguishing_index(
    f: &CuspForm,
    g: &CuspForm,
    chi: &DirichletCharacter,
    n_max: u64,
) -> Result<Option<u64>> {
    f.require(n_max)?;
    g.require(n_max)?;
    let p = chi.modulus();
    let (lf, lg) = (f.lambdas(), g.lambdas());
    Ok((1..=n_max).find(|&n| {
        n % p != 0
            && (Complex64::new(lf[n as usize], 0.0) - chi.chi(n as i64) * lg[n as usize]).norm() > DISTINGUISH_TOL
    }))
}
