//! Chain configurations, smooth centre-line curves and their validation.

mod chain;
mod curve;
mod io;
mod magnet;
mod perturbation;
mod validate;

pub use chain::{
    build_circular_ring, build_perturbed_ring, build_straight_chain, ring_radius, ChainConfig,
    Topology, GAP_TOLERANCE, UNIT_TOLERANCE,
};
pub use curve::{make_curve, ContinuumCurve, CurveFamily, CurveJet};
pub use io::{read_chain_csv, write_chain_csv, CHAIN_CSV_HEADER};
pub use magnet::MagnetSpec;
pub use perturbation::{FourierMode, RingPerturbation};
pub use validate::{validate_chain, ValidationReport};
