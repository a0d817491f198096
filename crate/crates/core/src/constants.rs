//! CODATA physical constants (SI) and ⁸⁷Rb defaults.

use std::f64::consts::PI;

pub const HBAR: f64 = 1.054_571_817e-34;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Mass of ⁸⁷Rb in kg.
pub const RB87_MASS: f64 = 1.4432e-25;
/// Rb D1 line wavelength in m.
pub const RB87_D1_WAVELENGTH: f64 = 794.8e-9;
/// Natural linewidth of the D1 line, rad/s.
pub const RB87_D1_LINEWIDTH: f64 = 2.0 * PI * 6.0e6;
