use std::f64::consts::PI;

use crate::geometry::MagnetSpec;

/// A dimensionless result to convert.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    /// Energy in units of `πa³B²/(18μ₀)`.
    Energy(f64),
    /// Angular frequency, already in rad/s.
    Frequency(f64),
}

/// Joules per unit of dimensionless energy.
pub fn energy_scale(spec: &MagnetSpec) -> f64 {
    PI * spec.a.powi(3) * spec.b * spec.b / (18.0 * spec.mu0)
}

/// Converts to SI units.
pub fn redimensionalize(q: Quantity, spec: &MagnetSpec) -> f64 {
    match q {
        Quantity::Energy(e) => e * energy_scale(spec),
        Quantity::Frequency(w) => w,
    }
}
