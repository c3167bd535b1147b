//! Exact dipole sums over a discrete chain.

mod energy;
mod field;
mod gradient;
mod optimize;
mod units;

pub use energy::{per_magnet_energies, per_magnet_energy, total_energy};
pub use field::{
    dipole_field_at, regularized_field_at, regularized_fields, total_field_at, SINGULAR_DISTANCE,
};
pub use gradient::orientation_gradient;
pub use optimize::{max_angle_to, optimize_orientations, OptimizeOptions, OptimizeOutcome};
pub use units::{energy_scale, redimensionalize, Quantity};
