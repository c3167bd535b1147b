//! Fixtures shared by the benchmarks.

use magchain_core::geometry::{build_circular_ring, make_curve, CurveFamily, RingPerturbation};
use magchain_core::{ChainConfig, ContinuumCurve};

pub fn ring(n: usize) -> ChainConfig {
    build_circular_ring(n).expect("valid ring size")
}

pub fn circle_curve(n: usize) -> ContinuumCurve {
    make_curve(CurveFamily::Circle { n }).expect("valid ring size")
}

/// Mixed two-mode deformation used by the ring functional benchmarks.
pub fn mixed_perturbation() -> RingPerturbation {
    use magchain_core::geometry::FourierMode;
    RingPerturbation::new(
        0.05,
        vec![FourierMode { k: 2, a: 1.0, b: 0.2 }, FourierMode { k: 3, a: -0.5, b: 0.0 }],
    )
    .expect("valid perturbation")
}
