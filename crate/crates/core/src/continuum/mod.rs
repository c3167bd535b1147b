//! Asymptotic continuum model: lattice sums, amplitudes, finite-part
//! quadrature, the continuum field and the energy functionals.

mod amplitudes;
mod energy;
mod field;
mod lattice;
pub mod quadrature;

pub use amplitudes::{phi_amplitudes, PhiAmplitudes};
pub use energy::{
    continuum_total_energy, energy_density, ring_energy_closed_form, EnergyBreakdown, OUTER_NODES,
};
pub use field::{continuum_field, FieldMode, BOUNDARY_LAYER_GAPS};
pub use lattice::{lattice_sum, regularized_limit, LatticeSumValue, LATTICE_TRUNCATION};
pub use quadrature::{finite_part, finite_part_power, LocalExpansion};
