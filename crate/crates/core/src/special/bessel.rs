//! `J_n(x)` for integer `0 <= n <= 30` and `0 <= x <= 1e4`.
//!
//! Three branches: the ascending series while its terms decrease
//! monotonically (`x^2/4 <= n + 1`), Miller's backward recurrence normalized
//! by `J_0 + 2 sum J_{2k} = 1` up to the seam `max(20, 2n)`, and the Hankel
//! asymptotic expansion beyond it.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 30;

/// Largest argument with a tested accuracy guarantee.
pub const MAX_ARG: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Series,
    Recurrence,
    Asymptotic,
}

/// Argument from which the asymptotic branch is used.
pub fn seam(order: u32) -> f64 {
    f64::max(20.0, 2.0 * order as f64)
}

pub fn branch(order: u32, x: f64) -> Branch {
    if x > seam(order) {
        Branch::Asymptotic
    } else if x * x <= 4.0 * (order as f64 + 1.0) {
        Branch::Series
    } else {
        Branch::Recurrence
    }
}

pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::Domain(format!("Bessel order {order} exceeds {MAX_ORDER}")));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("Bessel argument {x} must be finite and >= 0")));
    }
    Ok(bessel_j_unchecked(order, x))
}

/// [`bessel_j`] without argument checks, for inner loops.
#[inline]
pub fn bessel_j_unchecked(order: u32, x: f64) -> f64 {
    match branch(order, x) {
        Branch::Series => series(order, x),
        Branch::Recurrence => miller(order, x),
        Branch::Asymptotic => hankel(order, x),
    }
}

/// Ascending series `sum (-1)^k (x/2)^{2k+n} / (k! (k+n)!)`.
pub fn series(order: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = 1.0;
    for i in 1..=order {
        term *= h / i as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let h2 = h * h;
    let mut sum = term;
    let mut k = 1u32;
    loop {
        term *= -h2 / (k as f64 * (k + order) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            return sum;
        }
        k += 1;
        if k > 500 {
            return sum;
        }
    }
}

/// Miller backward recurrence.
pub fn miller(order: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let top = f64::max(order as f64, x);
    let mut start = (top + 20.0 + (50.0 * top).sqrt()) as u32;
    start += start % 2;
    let two_over_x = 2.0 / x;
    let (mut next, mut cur) = (0.0f64, 1e-300f64);
    let mut norm = 0.0f64;
    let mut wanted = 0.0f64;
    // cur = J_k, next = J_{k+1}
    let mut k = start;
    loop {
        if k == order {
            wanted = cur;
        }
        if k.is_multiple_of(2) {
            norm += if k == 0 { cur } else { 2.0 * cur };
        }
        if k == 0 {
            break;
        }
        let prev = k as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        k -= 1;
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            wanted *= 1e-250;
        }
    }
    wanted / norm
}

/// Hankel asymptotic expansion
/// `sqrt(2/(pi x)) (P cos w - Q sin w)`, `w = x - (2n+1) pi / 4`, summed to
/// the smallest term.
pub fn hankel(order: u32, x: f64) -> f64 {
    let mu = 4.0 * (order as f64) * (order as f64);
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..400u32 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * eight_x);
        let size = term.abs();
        if size == 0.0 {
            break;
        }
        // past the turning point the expansion diverges
        if odd * odd > mu && size > last {
            break;
        }
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if size < 1e-17 * (p.abs() + q.abs()) {
            break;
        }
        last = size;
    }
    let (s, c) = x.sin_cos();
    // w = x - phase * pi/4, phase reduced mod 8 for exact trig values
    let (sp, cp) = quarter_turn((2 * order + 1) % 8);
    let cos_w = c * cp + s * sp;
    let sin_w = s * cp - c * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_w - q * sin_w)
}

/// `(sin, cos)` of `m * pi / 4` for `m` odd in `0..8`.
fn quarter_turn(m: u32) -> (f64, f64) {
    let r = FRAC_1_SQRT_2;
    match m {
        1 => (r, r),
        3 => (r, -r),
        5 => (-r, -r),
        7 => (-r, r),
        _ => unreachable!("phase index is odd"),
    }
}
