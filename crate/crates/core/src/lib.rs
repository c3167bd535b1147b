//! Discrete and asymptotic continuum models of chains and rings of spherical
//! dipole magnets.
//!
//! Lengths are measured in units of the chain length `2an`, so neighbouring
//! centres sit `1/n` apart. Fields are in units of `B/24` and energies in
//! units of `πa³B²/(18μ₀)`.
//!
//! * [`geometry`]: chain configurations and smooth centre-line curves.
//! * [`discrete`]: exact dipole sums, the orientation optimizer and units.
//! * [`continuum`]: lattice sums, finite-part quadrature and the asymptotic
//!   field and energy.
//! * [`ring`]: perturbed-ring functionals, kernels and vibration modes.
//! * [`harness`]: experiments and record output used by the CLI.

pub mod continuum;
pub mod discrete;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod ring;
pub mod series;
pub mod summation;
pub mod vec3;

pub use error::{Error, Result};
pub use geometry::{ChainConfig, ContinuumCurve, MagnetSpec, RingPerturbation, Topology};
pub use vec3::Vec3;

/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Dimensionless energy, in units of `πa³B²/(18μ₀)`.
pub type EnergyValue = f64;

/// Dimensionless magnetic field, in units of `B/24`.
pub type FieldValue = Vec3;
