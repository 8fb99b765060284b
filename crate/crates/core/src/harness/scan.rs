//! Empirical scan of `sup_N |S(N)| / sqrt(N)` over primitive characters.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::arith;
use crate::characters::primitive_characters;
use crate::circle::s_direct;
use crate::error::{Error, Result};
use crate::forms::CuspForm;
use crate::harness::report::fmt_real;

/// Values of `N` visited for each prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanGrid {
    /// `8, 16, 32, ...` up to `p^2`.
    Dyadic,
    Explicit(Vec<u64>),
}

impl ScanGrid {
    pub fn points(&self, p: u64) -> Vec<u64> {
        match self {
            ScanGrid::Dyadic => std::iter::successors(Some(8u64), |n| Some(n * 2))
                .take_while(|&n| n <= p * p)
                .collect(),
            ScanGrid::Explicit(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub p: u64,
    pub chi_index: u64,
    pub grid_points: usize,
    /// `sup |S(N)| / sqrt(N)` over the grid.
    pub sup_value: f64,
    pub argmax_n: u64,
    /// `sup_value / p^{27/28}`.
    pub ratio: f64,
}

pub const SCAN_HEADER: &str = "p,chi_index,grid_points,sup_abs_s_over_sqrt_n,argmax_n,ratio_to_p_27_28";

/// Largest coefficient index a scan touches.
pub fn required_table(p_list: &[u64], grid: &ScanGrid) -> u64 {
    p_list.iter().flat_map(|&p| grid.points(p)).max().map_or(0, |n| 2 * n)
}

pub fn subconvexity_scan(f: &CuspForm, g: &CuspForm, p_list: &[u64], grid: &ScanGrid) -> Result<Vec<ScanRow>> {
    let required = required_table(p_list, grid);
    let available = f.n_max().min(g.n_max());
    if required as usize > available {
        return Err(Error::TableTooShort { required, available });
    }
    let mut jobs = Vec::new();
    for &p in p_list {
        if !arith::is_odd_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        for chi in primitive_characters(p)? {
            jobs.push((p, chi));
        }
    }
    jobs.par_iter()
        .map(|(p, chi)| {
            let points = grid.points(*p);
            let mut best = (f64::NEG_INFINITY, 0u64);
            for &n in &points {
                if n == 0 {
                    continue;
                }
                let v = s_direct(f, g, chi, n)?.norm() / (n as f64).sqrt();
                if v > best.0 {
                    best = (v, n);
                }
            }
            let sup = if points.is_empty() { 0.0 } else { best.0.max(0.0) };
            Ok(ScanRow {
                p: *p,
                chi_index: chi.index(),
                grid_points: points.len(),
                sup_value: sup,
                argmax_n: best.1,
                ratio: sup / (*p as f64).powf(27.0 / 28.0),
            })
        })
        .collect()
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.p,
            r.chi_index,
            r.grid_points,
            fmt_real(r.sup_value),
            r.argmax_n,
            fmt_real(r.ratio)
        );
    }
    out
}

/// `max ratio` across rows.
pub fn ratio_constant(rows: &[ScanRow]) -> f64 {
    rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
}
