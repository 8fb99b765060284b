//! Numerical kernels: integer-order Bessel functions of the first kind,
//! adaptive quadrature and the compactly supported test windows.

pub mod bessel;
pub mod quadrature;
pub mod windows;

pub use bessel::{bessel_j, MAX_ORDER};
pub use quadrature::{integrate, GaussLegendre, Quadrature};
pub use windows::{window, SmoothWindow, WindowKind};
