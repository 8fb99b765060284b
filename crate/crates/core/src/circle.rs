//! Jutila's circle method: moduli families, the arc approximant to the
//! indicator of `[0, 1]`, its exact mean-square error, and the approximate
//! bilinear sum built from it.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{self, KahanSum};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::forms::CuspForm;
use crate::special::{window, GaussLegendre, WindowKind};

/// Disjoint prime lists whose products form the moduli.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductStructure {
    pub phi1: Vec<u64>,
    pub phi3: Vec<u64>,
    pub phi4: Vec<u64>,
    /// Window left ends `Q1, Q3, Q4`; each list lies in `[Q_i, 2 Q_i]`.
    pub centers: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuliFamily {
    p_avoid: u64,
    phi: Vec<u64>,
    delta: f64,
    l: u64,
    q_scale: f64,
    product: Option<ProductStructure>,
}

impl ModuliFamily {
    pub fn p_avoid(&self) -> u64 {
        self.p_avoid
    }

    /// Sorted distinct moduli.
    pub fn moduli(&self) -> &[u64] {
        &self.phi
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `L = sum phi(q)`, the number of arcs.
    pub fn l(&self) -> u64 {
        self.l
    }

    /// Nominal size `Q` with the moduli in `[Q, 2Q]` (for a product family,
    /// `Q1 Q3 Q4`).
    pub fn q_scale(&self) -> f64 {
        self.q_scale
    }

    pub fn product_structure(&self) -> Option<&ProductStructure> {
        self.product.as_ref()
    }

    /// `Q^2 / (delta L^2)`, the mean-square error scale.
    pub fn l2_bound_scale(&self) -> f64 {
        self.q_scale * self.q_scale / (self.delta * (self.l as f64).powi(2))
    }

    /// Every arc `(d, q)` with `0 <= d < q`, `gcd(d, q) = 1`.
    pub fn arcs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.phi.iter().flat_map(|&q| {
            (0..q)
                .filter(move |&d| arith::gcd(d as i64, q as i64) == 1)
                .map(move |d| (d, q))
        })
    }

    fn new(p_avoid: u64, mut phi: Vec<u64>, delta: f64, q_scale: f64) -> Self {
        phi.sort_unstable();
        phi.dedup();
        let l = phi.iter().map(|&q| arith::totient(q)).sum();
        Self {
            p_avoid,
            phi,
            delta,
            l,
            q_scale,
            product: None,
        }
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta <= 0.5 {
        Ok(())
    } else {
        Err(Error::Domain(format!("delta = {delta} must lie in (0, 1/2]")))
    }
}

/// All `q` in `[q_min, q_max]` coprime to `p`.
pub fn build_family(p: u64, q_min: u64, q_max: u64, delta: f64) -> Result<ModuliFamily> {
    if !arith::is_odd_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    if q_min == 0 || q_min > q_max {
        return Err(Error::Domain(format!(
            "need 1 <= q_min <= q_max, got [{q_min}, {q_max}]"
        )));
    }
    check_delta(delta)?;
    let phi: Vec<u64> = (q_min..=q_max).filter(|q| q % p != 0).collect();
    if phi.is_empty() {
        return Err(Error::EmptyFamily { p, q_min, q_max });
    }
    Ok(ModuliFamily::new(p, phi, delta, q_min as f64))
}

/// Exponents of `Q1` and `Q3 = Q4` as powers of `p`.
pub fn product_exponents(eta: f64) -> (f64, f64) {
    (0.2 + eta / 10.0, 0.4 + eta / 5.0)
}

/// Moduli `q1 q3 q4` with primes `q_i` from `[Q_i, 2 Q_i]`, coprime to `p`,
/// the three lists disjoint. Primes are dealt round-robin (list 1, 3, 4),
/// each list taking the smallest unused prime in its window.
pub fn build_product_family(p: u64, eta: f64, delta: f64) -> Result<ModuliFamily> {
    if !arith::is_odd_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    if p < 11 {
        return Err(Error::Domain(format!("product family needs p >= 11, got {p}")));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Domain(format!("eta = {eta} must lie in (0, 1)")));
    }
    check_delta(delta)?;
    let (e1, e3) = product_exponents(eta);
    let pf = p as f64;
    let centers = [pf.powf(e1), pf.powf(e3), pf.powf(e3)];
    let pools: Vec<Vec<u64>> = centers
        .iter()
        .map(|&c| {
            arith::primes_between(c, 2.0 * c)
                .into_iter()
                .filter(|&l| l != p)
                .collect()
        })
        .collect();
    let mut lists: [Vec<u64>; 3] = Default::default();
    let mut used = std::collections::BTreeSet::new();
    loop {
        let mut progressed = false;
        for (list, pool) in lists.iter_mut().zip(&pools) {
            if let Some(&l) = pool.iter().find(|l| !used.contains(*l)) {
                used.insert(l);
                list.push(l);
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    for (list, &c) in lists.iter().zip(&centers) {
        if list.is_empty() {
            return Err(Error::InsufficientPrimes { lo: c, hi: 2.0 * c });
        }
    }
    let [phi1, phi3, phi4] = lists;
    let mut phi = Vec::with_capacity(phi1.len() * phi3.len() * phi4.len());
    for &a in &phi1 {
        for &b in &phi3 {
            for &c in &phi4 {
                phi.push(a * b * c);
            }
        }
    }
    let q_scale = centers.iter().product();
    let mut family = ModuliFamily::new(p, phi, delta, q_scale);
    family.product = Some(ProductStructure {
        phi1,
        phi3,
        phi4,
        centers,
    });
    Ok(family)
}

/// `(1 / 2 delta L) #{(d, q) : |x - d/q| <= delta}` over reduced `0 <= d < q`.
pub fn i_tilde(family: &ModuliFamily, x: f64) -> f64 {
    let delta = family.delta;
    let mut count = 0u64;
    for &q in &family.phi {
        let qf = q as f64;
        let lo = ((x - delta) * qf).floor().max(0.0) as u64;
        let hi = ((x + delta) * qf).ceil().min(qf - 1.0).max(0.0) as u64;
        for d in lo..=hi {
            if d < q && arith::gcd(d as i64, q as i64) == 1 && (x - d as f64 / qf).abs() <= delta {
                count += 1;
            }
        }
    }
    count as f64 / (2.0 * delta * family.l as f64)
}

/// Piecewise-constant pieces of the approximant: `(left, right, arc count)`.
fn sweep(family: &ModuliFamily) -> Vec<(f64, f64, i64)> {
    let delta = family.delta;
    let mut events: Vec<(f64, i64)> = family
        .arcs()
        .flat_map(|(d, q)| {
            let c = d as f64 / q as f64;
            [(c - delta, 1), (c + delta, -1)]
        })
        .collect();
    events.push((0.0, 0));
    events.push((1.0, 0));
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut pieces = Vec::with_capacity(events.len());
    let mut count = 0i64;
    for w in 0..events.len() {
        count += events[w].1;
        if let Some(next) = events.get(w + 1) {
            if next.0 > events[w].0 {
                pieces.push((events[w].0, next.0, count));
            }
        }
    }
    pieces
}

/// Exact `int_R |I_[0,1] - I~|^2 dx` by a sweep over arc endpoints.
pub fn l2_error(family: &ModuliFamily) -> f64 {
    let height = 1.0 / (2.0 * family.delta * family.l as f64);
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for (a, b, count) in sweep(family) {
        let ind = if a >= 0.0 && b <= 1.0 { 1.0 } else { 0.0 };
        let diff = ind - count as f64 * height;
        // Kahan
        let y = diff * diff * (b - a) - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    // [0, 1] minus the swept range contributes nothing: 0 and 1 are breakpoints
    acc
}

/// `int I~ dx` by the same sweep; equals 1 up to rounding.
pub fn i_tilde_mass(family: &ModuliFamily) -> f64 {
    let height = 1.0 / (2.0 * family.delta * family.l as f64);
    sweep(family)
        .into_iter()
        .map(|(a, b, c)| c as f64 * height * (b - a))
        .sum()
}

/// Nonzero coefficients `(n, c_n)` of a windowed sum over `n`.
fn windowed<F: Fn(u64) -> Complex64>(
    kind: WindowKind,
    scale: u64,
    table_len: usize,
    coeff: F,
) -> Result<Vec<(u64, Complex64)>> {
    let w = window(kind);
    let (lo, hi) = w.support();
    let s = scale as f64;
    let first = (lo * s).floor() as u64 + 1;
    let last = ((hi * s).ceil() as u64).saturating_sub(1);
    if scale == 0 || last < first {
        return Ok(Vec::new());
    }
    if last as usize > table_len {
        return Err(Error::TableTooShort {
            required: last,
            available: table_len,
        });
    }
    Ok((first..=last)
        .filter_map(|n| {
            let v = w.eval_scaled(n as f64, s);
            (v != 0.0).then(|| (n, coeff(n) * v))
        })
        .collect())
}

/// `sum_n c_n e(x n)` with the phase advanced by rotation and re-anchored
/// every 64 terms.
fn exp_sum(terms: &[(u64, Complex64)], x: f64) -> Complex64 {
    let mut acc = KahanSum::new();
    let step = arith::e(x);
    let mut phase = Complex64::default();
    let mut prev = u64::MAX;
    for (i, &(n, c)) in terms.iter().enumerate() {
        if i % 64 == 0 || n != prev.wrapping_add(1) {
            phase = arith::e((x * n as f64).fract());
        } else {
            phase *= step;
        }
        prev = n;
        acc.add(c * phase);
    }
    acc.value()
}

/// `S(N) = sum lambda_f(n) lambda_g(n) chi(n) h(n/N)`, `h` = bump on `[1, 2]`.
pub fn s_direct(f: &CuspForm, g: &CuspForm, chi: &DirichletCharacter, n: u64) -> Result<Complex64> {
    let lf = f.lambdas();
    let lg = g.lambdas();
    let len = f.n_max().min(g.n_max());
    let terms = windowed(WindowKind::Bump12, n, len, |k| {
        chi.chi(k as i64) * (lf[k as usize] * lg[k as usize])
    })?;
    Ok(terms.into_iter().map(|(_, c)| c).collect::<KahanSum>().value())
}

/// The circle-method approximation
/// `(1/2 delta L) sum_q sum*_a int_{-delta}^{delta} A(a/q + t) B(a/q + t) dt`
/// with `A(x) = sum lambda_f(n) e(xn) h(n/N)` and
/// `B(x) = sum lambda_g(m) chi(m) e(-xm) h*(m/N)`, each arc integral by a
/// `nodes`-point Gauss-Legendre rule.
pub fn s_tilde(
    f: &CuspForm,
    g: &CuspForm,
    chi: &DirichletCharacter,
    n: u64,
    family: &ModuliFamily,
    nodes: usize,
) -> Result<Complex64> {
    let rule = GaussLegendre::new(nodes)?;
    let lf = f.lambdas();
    let lg = g.lambdas();
    let a_terms = windowed(WindowKind::Bump12, n, f.n_max(), |k| {
        Complex64::new(lf[k as usize], 0.0)
    })?;
    let b_terms = windowed(WindowKind::PlateauHalf52, n, g.n_max(), |k| {
        chi.chi(k as i64) * lg[k as usize]
    })?;
    if a_terms.is_empty() || b_terms.is_empty() {
        return Ok(Complex64::default());
    }
    let delta = family.delta;
    let arcs: Vec<(u64, u64)> = family.arcs().collect();
    let per_arc: Vec<Complex64> = arcs
        .par_iter()
        .map(|&(d, q)| {
            let centre = d as f64 / q as f64;
            rule.mapped(-delta, delta)
                .map(|(t, w)| {
                    let x = centre + t;
                    exp_sum(&a_terms, x) * exp_sum(&b_terms, -x) * w
                })
                .collect::<KahanSum>()
                .value()
        })
        .collect();
    let total = per_arc.into_iter().collect::<KahanSum>().value();
    Ok(total / (2.0 * delta * family.l as f64))
}
