//! Verification harness: reports, configuration, suites, scans and exponents.

pub mod config;
pub mod exponent;
pub mod report;
pub mod scan;
pub mod suite;
