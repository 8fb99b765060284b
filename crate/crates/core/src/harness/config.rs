//! Run configuration: defaults, then a `key=value` file, then environment
//! variables (`RSTWIST_<KEY>`), then explicit overrides.

use std::path::Path;

use crate::error::{Error, Result};
use crate::forms::DEFAULT_TABLE_CAP;
use crate::voronoi::{DEFAULT_TRUNCATION, DEFAULT_TWISTED_TRUNCATION};

pub const ENV_PREFIX: &str = "RSTWIST_";

/// Default Gauss-Legendre order per arc.
pub const DEFAULT_QUAD_NODES: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub table_cap: usize,
    /// Voronoi dual length multiplier.
    pub truncation: u64,
    pub twisted_truncation: u64,
    /// Gauss-Legendre points per arc in the circle method.
    pub quad_nodes: usize,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
    pub tol_voronoi: f64,
    pub tol_twisted: f64,
    pub tol_charsum: f64,
    pub tol_gauss: f64,
    pub tol_bessel: f64,
    /// Suites to run; empty means all.
    pub only: Vec<String>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            table_cap: DEFAULT_TABLE_CAP,
            truncation: DEFAULT_TRUNCATION,
            twisted_truncation: DEFAULT_TWISTED_TRUNCATION,
            quad_nodes: DEFAULT_QUAD_NODES,
            threads: 0,
            tol_voronoi: 1e-6,
            tol_twisted: 1e-5,
            tol_charsum: 1e-9,
            tol_gauss: 1e-10,
            tol_bessel: 1e-9,
            only: Vec::new(),
        }
    }
}

pub const KEYS: [&str; 11] = [
    "table_cap",
    "truncation",
    "twisted_truncation",
    "quad_nodes",
    "threads",
    "tol_voronoi",
    "tol_twisted",
    "tol_charsum",
    "tol_gauss",
    "tol_bessel",
    "only",
];

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad value `{value}` for `{key}`")))
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "table_cap" => self.table_cap = parse(key, value)?,
            "truncation" => self.truncation = parse(key, value)?,
            "twisted_truncation" => self.twisted_truncation = parse(key, value)?,
            "quad_nodes" => self.quad_nodes = parse(key, value)?,
            "threads" => self.threads = parse(key, value)?,
            "tol_voronoi" => self.tol_voronoi = parse(key, value)?,
            "tol_twisted" => self.tol_twisted = parse(key, value)?,
            "tol_charsum" => self.tol_charsum = parse(key, value)?,
            "tol_gauss" => self.tol_gauss = parse(key, value)?,
            "tol_bessel" => self.tol_bessel = parse(key, value)?,
            "only" => {
                self.only = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            }
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Apply `key=value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.apply_text(&text)
    }

    /// Apply `RSTWIST_<KEY>` entries from an environment listing.
    pub fn apply_env<I, K, V>(&mut self, vars: I) -> Result<()>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        for (k, v) in vars {
            if let Some(key) = k.as_ref().strip_prefix(ENV_PREFIX) {
                let key = key.to_ascii_lowercase();
                if KEYS.contains(&key.as_str()) {
                    self.set(&key, v.as_ref())?;
                }
            }
        }
        Ok(())
    }

    /// Defaults, then the optional file, then the process environment.
    pub fn load(file: Option<&Path>) -> Result<Self> {
        let mut c = Self::default();
        if let Some(path) = file {
            c.apply_file(path)?;
        }
        c.apply_env(std::env::vars())?;
        Ok(c)
    }

    pub fn selects(&self, suite: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|s| s == suite)
    }
}
