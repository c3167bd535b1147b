use serde::Serialize;

use crate::geometry::{ContinuumCurve, CurveJet};
use crate::vec3::Vec3;

/// Slowly varying amplitudes of the `|s−η|⁻³`, `sgn·|s−η|⁻²` and
/// `|s−η|⁻¹` parts of the single-magnet field expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiAmplitudes {
    pub phi1: Vec3,
    pub phi2: Vec3,
    pub phi3: Vec3,
}

/// Moment jet carried by a curve: the unit tangent.
pub(crate) fn tangent_jet<const N: usize>(pos: &CurveJet<N>) -> CurveJet<N> {
    pos.differentiate().normalized()
}

/// Amplitudes at `s` for tangential moments.
pub fn phi_amplitudes(curve: &ContinuumCurve, s: f64, n: usize) -> PhiAmplitudes {
    let pos = curve.jet::<8>(s);
    let mj = tangent_jet(&pos);
    let r1 = pos.derivative(1);
    let r2 = pos.derivative(2);
    let r3 = pos.derivative(3);
    let m = mj.derivative(0);
    let m1 = mj.derivative(1);
    let m2 = mj.derivative(2);
    phi_from_derivatives(r1, r2, r3, m, m1, m2, n)
}

pub(crate) fn phi_from_derivatives(
    r1: Vec3,
    r2: Vec3,
    r3: Vec3,
    m: Vec3,
    m1: Vec3,
    m2: Vec3,
    n: usize,
) -> PhiAmplitudes {
    let n2 = (n as f64).powi(-2);
    let k2 = r2.norm_squared();
    let r1m = r1.dot(m);

    let phi3 = r1 * (3.0 * r1m) - m + (r1 * (-5.0 * k2 * r1m / 8.0) + m * (k2 / 8.0)) * n2;

    let phi2 = r1 * (-1.5 * r2.dot(m)) - r1 * (3.0 * r1.dot(m1)) - r2 * (1.5 * r1m) + m1;

    let phi1 = r1 * (0.5 * r3.dot(m))
        + r1 * (1.5 * r1.dot(m2))
        + r3 * (0.5 * r1m)
        + r1 * (1.5 * r2.dot(m1))
        + r2 * (0.75 * r2.dot(m))
        + r2 * (1.5 * r1.dot(m1))
        + r1 * (5.0 * k2 * r1m / 8.0)
        - m2 * 0.5
        - m * (k2 / 8.0);

    PhiAmplitudes { phi1, phi2, phi3 }
}
