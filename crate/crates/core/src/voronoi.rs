//! Both sides of the level-one Voronoi summation formula
//!
//! `sum lambda(n) e(an/q) v(n) = (2 pi i^k / q) sum lambda(n) e(-a'n/q) V(n)`,
//! `V(n) = int v(y) J_{k-1}(4 pi sqrt(ny)/q) dy`, `a a' = 1 mod q`,
//!
//! and of its twisted form obtained by expanding `chi` additively.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{self, e, e_frac, KahanSum};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::forms::CuspForm;
use crate::special::bessel::bessel_j_unchecked;
use crate::special::{window, Quadrature, SmoothWindow, WindowKind};

pub use crate::arith::mod_inverse;

/// Default multiplier of the dual-sum length unit `ceil(q^2 log(qY) / Y)`.
pub const DEFAULT_TRUNCATION: u64 = 3000;

/// Default multiplier of the twisted dual length unit
/// `ceil((pq)^2 log(pqN) / N)`.
pub const DEFAULT_TWISTED_TRUNCATION: u64 = 500;

/// Absolute tolerance of each transform integral.
pub const TRANSFORM_TOL: f64 = 1e-11;

/// `i^k` for even `k`.
fn i_pow(k: u32) -> f64 {
    if k.is_multiple_of(4) {
        1.0
    } else {
        -1.0
    }
}

/// One instance of the untwisted identity.
#[derive(Debug, Clone)]
pub struct VoronoiJob<'a> {
    form: &'a CuspForm,
    a: i64,
    q: u64,
    y: f64,
    window: SmoothWindow,
    x_shift: f64,
    truncation: u64,
}

impl<'a> VoronoiJob<'a> {
    /// `v(y) = h(y / Y)` with `h` the bump on `[1, 2]`.
    pub fn new(form: &'a CuspForm, a: i64, q: u64, y: f64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("modulus q must be positive".into()));
        }
        if arith::gcd(a, q as i64) != 1 {
            return Err(Error::Coprimality(format!("gcd({a}, {q}) != 1")));
        }
        if y.is_nan() || y < 1.0 {
            return Err(Error::Domain(format!("window scale Y = {y} must be >= 1")));
        }
        Ok(Self {
            form,
            a,
            q,
            y,
            window: window(WindowKind::Bump12),
            x_shift: 0.0,
            truncation: DEFAULT_TRUNCATION,
        })
    }

    pub fn with_window(mut self, kind: WindowKind) -> Self {
        self.window = window(kind);
        self
    }

    /// Extra additive twist `e(x n)` on the direct side.
    pub fn with_shift(mut self, x: f64) -> Self {
        self.x_shift = x;
        self
    }

    pub fn with_truncation(mut self, truncation: u64) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    /// Dual length `truncation * ceil(q^2 log(qY) / Y)`.
    pub fn dual_length(&self) -> u64 {
        self.truncation * dual_unit(self.q, self.y)
    }

    fn transform_key(&self) -> TransformKey {
        TransformKey {
            weight: self.form.weight(),
            q: self.q,
            y: self.y,
            window: self.window,
            x_shift: self.x_shift,
        }
    }
}

/// `ceil(q^2 log(qY) / Y)`, at least 1.
pub fn dual_unit(q: u64, y: f64) -> u64 {
    let qf = q as f64;
    let v = (qf * qf * (qf * y).ln().max(1.0) / y).ceil();
    v.max(1.0) as u64
}

/// `sum lambda(n) e(an/q) e(xn) v(n)` over the integers in the window.
pub fn direct_side(job: &VoronoiJob<'_>) -> Result<Complex64> {
    let (lo, hi) = job.window.support();
    let first = (lo * job.y).floor() as u64 + 1;
    let last = ((hi * job.y).ceil() as u64).saturating_sub(1);
    if last < first {
        return Ok(Complex64::default());
    }
    job.form.require(last)?;
    let lambdas = job.form.lambdas();
    Ok((first..=last)
        .map(|n| {
            let v = job.window.eval_scaled(n as f64, job.y);
            e_frac(job.a * n as i64, job.q) * e(job.x_shift * n as f64) * (lambdas[n as usize] * v)
        })
        .collect::<KahanSum>()
        .value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct TransformKey {
    weight: u32,
    q: u64,
    y: f64,
    window: SmoothWindow,
    x_shift: f64,
}

/// Table of `V(n) = int v(y) e(xy) J_{k-1}(4 pi sqrt(ny)/q) dy`.
///
/// The transform depends on neither `a` nor the coefficients, so one table
/// serves every residue and every form of the same weight.
#[derive(Debug, Clone)]
pub struct HankelTable {
    key: TransformKey,
    values: Vec<Complex64>,
}

impl HankelTable {
    pub fn for_job(job: &VoronoiJob<'_>, len: u64) -> Result<Self> {
        let key = job.transform_key();
        let values = transform_values(
            key.weight,
            len,
            |n| 4.0 * PI * (n as f64).sqrt() / key.q as f64,
            key.window,
            key.y,
            key.x_shift,
        )?;
        Ok(Self { key, values })
    }

    /// Tabled length.
    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `V(n)` for `1 <= n <= len`.
    pub fn value(&self, n: u64) -> Complex64 {
        self.values[n as usize - 1]
    }

    fn matches(&self, job: &VoronoiJob<'_>) -> bool {
        self.key == job.transform_key()
    }
}

/// `int w(y/scale) e(shift y) J_{k-1}(freq(n) sqrt(y)) dy` for `n = 1..=len`.
fn transform_values<F>(
    weight: u32,
    len: u64,
    freq: F,
    w: SmoothWindow,
    scale: f64,
    shift: f64,
) -> Result<Vec<Complex64>>
where
    F: Fn(u64) -> f64 + Sync,
{
    let (lo, hi) = w.support();
    let (a, b) = (lo * scale, hi * scale);
    let order = weight - 1;
    (1..=len)
        .into_par_iter()
        .map(|n| {
            let c = freq(n);
            // one panel per Bessel half-period across the support
            let swing = c * (b.sqrt() - a.sqrt()) / PI;
            let quad = Quadrature {
                tol: TRANSFORM_TOL,
                max_subdivisions: 200_000,
                initial_panels: (swing.ceil() as usize).max(2),
            };
            quad.integrate(
                |y| {
                    let v = w.eval_scaled(y, scale);
                    if v == 0.0 {
                        return Complex64::default();
                    }
                    e(shift * y) * (v * bessel_j_unchecked(order, c * y.sqrt()))
                },
                a,
                b,
            )
        })
        .collect()
}

/// `(2 pi i^k / q) sum_{n <= T} lambda(n) e(-a'n/q) V(n)`.
pub fn hankel_side(job: &VoronoiJob<'_>) -> Result<Complex64> {
    let table = HankelTable::for_job(job, job.dual_length())?;
    hankel_side_with(job, &table)
}

/// [`hankel_side`] reusing a precomputed transform table; the dual sum runs
/// to `min(job.dual_length(), table.len())`.
pub fn hankel_side_with(job: &VoronoiJob<'_>, table: &HankelTable) -> Result<Complex64> {
    if !table.matches(job) {
        return Err(Error::Internal("transform table built for different parameters".into()));
    }
    let partial = hankel_partial_sums(job, table, job.dual_length().min(table.len()))?;
    Ok(partial.last().copied().unwrap_or_default())
}

/// Running values of the dual side after `1, 2, ..., len` terms.
pub fn hankel_partial_sums(job: &VoronoiJob<'_>, table: &HankelTable, len: u64) -> Result<Vec<Complex64>> {
    let len = len.min(table.len());
    job.form.require(len)?;
    let lambdas = job.form.lambdas();
    let a_bar = mod_inverse(job.a, job.q)? as i64;
    let k = job.form.weight();
    let factor = 2.0 * PI * i_pow(k) / job.q as f64;
    let mut acc = KahanSum::new();
    Ok((1..=len)
        .map(|n| {
            acc.add(e_frac(-a_bar * n as i64, job.q) * table.value(n) * lambdas[n as usize]);
            acc.value() * factor
        })
        .collect())
}

/// Sign in `c = ap +- bq` in the twisted dual sum
/// `sum*_b chi-bar(b) sum_m lambda(m) e(c' m / pq) u(m)`, `c c' = 1 mod pq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    Plus,
    Minus,
}

impl Convention {
    pub fn sign(self) -> i64 {
        match self {
            Convention::Plus => 1,
            Convention::Minus => -1,
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Convention::Plus => "plus",
            Convention::Minus => "minus",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(Convention::Plus),
            "minus" => Ok(Convention::Minus),
            other => Err(Error::Config(format!("unknown convention `{other}`"))),
        }
    }
}

/// The convention under which the twisted dual sum reproduces the direct
/// sum (cross-validated in the tests).
pub const TWISTED_CONVENTION: Convention = Convention::Minus;

/// Parameters of a twisted sum `T(a, q, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistedParams {
    pub a: i64,
    pub q: u64,
    pub x: f64,
    pub n: u64,
}

fn check_twisted(g: &CuspForm, chi: &DirichletCharacter, t: &TwistedParams) -> Result<()> {
    let p = chi.modulus();
    if t.q == 0 {
        return Err(Error::Domain("modulus q must be positive".into()));
    }
    if arith::gcd(t.a, t.q as i64) != 1 {
        return Err(Error::Coprimality(format!("gcd({}, {}) != 1", t.a, t.q)));
    }
    if arith::gcd(t.q as i64, p as i64) != 1 {
        return Err(Error::Coprimality(format!("gcd({}, {p}) != 1", t.q)));
    }
    g.require(3 * t.n)?;
    Ok(())
}

/// `T = sum lambda(m) chi(m) e(-am/q) e(-xm) h*(m/N)`.
pub fn twisted_t_direct(g: &CuspForm, chi: &DirichletCharacter, t: TwistedParams) -> Result<Complex64> {
    check_twisted(g, chi, &t)?;
    if t.n == 0 {
        return Ok(Complex64::default());
    }
    let w = window(WindowKind::PlateauHalf52);
    let lambdas = g.lambdas();
    let nf = t.n as f64;
    Ok((1..3 * t.n)
        .filter_map(|m| {
            let v = w.eval_scaled(m as f64, nf);
            (v != 0.0).then(|| {
                chi.chi(m as i64) * e_frac(-t.a * m as i64, t.q) * e(-t.x * m as f64) * (lambdas[m as usize] * v)
            })
        })
        .collect::<KahanSum>()
        .value())
}

/// Twisted dual length `truncation * ceil((pq)^2 log(pqN) / N)`.
pub fn twisted_dual_length(p: u64, q: u64, n: u64, truncation: u64) -> u64 {
    truncation * dual_unit(p * q, n as f64)
}

/// Table of `u(m) = int h*(y/N) e(-xy) J_{k-1}(4 pi sqrt(my)/(pq)) dy`.
#[derive(Debug, Clone)]
pub struct TwistedTable {
    weight: u32,
    pq: u64,
    x: f64,
    n: u64,
    values: Vec<Complex64>,
}

impl TwistedTable {
    pub fn new(weight: u32, pq: u64, x: f64, n: u64, len: u64) -> Result<Self> {
        let values = transform_values(
            weight,
            len,
            |m| 4.0 * PI * (m as f64).sqrt() / pq as f64,
            window(WindowKind::PlateauHalf52),
            n as f64,
            -x,
        )?;
        Ok(Self {
            weight,
            pq,
            x,
            n,
            values,
        })
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `(2 pi i^k / (tau(chi-bar) pq)) sum*_b chi-bar(b) sum_{m <= M} lambda(m)
/// e(c'm / pq) u(m)` with `c = ap +- bq` per `convention`.
pub fn twisted_t_voronoi(
    g: &CuspForm,
    chi: &DirichletCharacter,
    t: TwistedParams,
    truncation: u64,
    convention: Convention,
) -> Result<Complex64> {
    let p = chi.modulus();
    let len = twisted_dual_length(p, t.q, t.n, truncation);
    check_twisted(g, chi, &t)?;
    if t.n == 0 {
        return Ok(Complex64::default());
    }
    let table = TwistedTable::new(g.weight(), p * t.q, t.x, t.n, len)?;
    twisted_t_voronoi_with(g, chi, t, &table, len, convention)
}

/// [`twisted_t_voronoi`] over the first `len` entries of a precomputed table.
pub fn twisted_t_voronoi_with(
    g: &CuspForm,
    chi: &DirichletCharacter,
    t: TwistedParams,
    table: &TwistedTable,
    len: u64,
    convention: Convention,
) -> Result<Complex64> {
    check_twisted(g, chi, &t)?;
    let p = chi.modulus();
    let pq = p * t.q;
    if table.weight != g.weight() || table.pq != pq || table.x != t.x || table.n != t.n {
        return Err(Error::Internal("twisted table built for different parameters".into()));
    }
    let len = len.min(table.len());
    g.require(len)?;
    if t.n == 0 {
        return Ok(Complex64::default());
    }
    let bar = chi.conjugate();
    let tau_bar = bar.gauss_sum()?;
    // weights per residue class of m mod pq: sum_b chi-bar(b) e(c'm/pq)
    let pq_i = pq as i64;
    let mut class = vec![Complex64::default(); pq as usize];
    for b in 1..p as i64 {
        let c = t.a * p as i64 + convention.sign() * b * t.q as i64;
        let c_bar = mod_inverse(c, pq).map_err(|_| Error::Internal(format!("c = {c} not invertible mod {pq}")))? as i64;
        let wb = bar.chi(b);
        for (r, slot) in class.iter_mut().enumerate() {
            *slot += wb * e_frac(c_bar * r as i64, pq);
        }
    }
    let lambdas = g.lambdas();
    let sum = (1..=len)
        .map(|m| class[(m as i64 % pq_i) as usize] * table.values[m as usize - 1] * lambdas[m as usize])
        .collect::<KahanSum>()
        .value();
    let k = g.weight();
    Ok(sum * (2.0 * PI * i_pow(k)) / (tau_bar * pq as f64))
}
