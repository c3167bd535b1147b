use serde::{Deserialize, Serialize};

use crate::continuum::amplitudes::tangent_jet;
use crate::continuum::quadrature::{finite_part, LocalExpansion, DEFAULT_TOLERANCE};
use crate::continuum::{lattice_sum, phi_amplitudes};
use crate::error::{Error, Result};
use crate::geometry::{ContinuumCurve, CurveJet};
use crate::series::{Scalar, Series};
use crate::vec3::Vec3;
use crate::{FieldValue, EULER_GAMMA, ZETA3};

/// Jet length used for local expansions of the dipole kernel.
const JET: usize = 14;

/// Open curves are evaluated only this many spacings away from an end.
pub const BOUNDARY_LAYER_GAPS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    /// Including the rapidly oscillating lattice terms.
    Full,
    /// With the self-field of the magnet at `s` removed.
    Regularized,
}

pub(crate) fn check_interior(curve: &ContinuumCurve, s: f64, n: usize) -> Result<()> {
    if !curve.is_closed() {
        let w = BOUNDARY_LAYER_GAPS / n as f64;
        if !(s >= w && s <= 1.0 - w) {
            return Err(Error::BoundaryLayerDomain { s, n });
        }
    }
    Ok(())
}

fn kernel(delta: Vec3, m: Vec3) -> Vec3 {
    let r2 = delta.norm_squared();
    (delta * (3.0 * delta.dot(m)) - m * r2) / (r2 * r2 * r2.sqrt())
}

/// Laurent data of `[3(Δ·m)Δ − |Δ|²m]/|Δ|⁵` in `d = s − η`, returned as
/// numerator coefficients over `|d|³`.
fn kernel_expansion(pos: &CurveJet<JET>, moment: &CurveJet<JET>) -> Vec<[f64; 3]> {
    let q = pos.reflect();
    let d_jet = CurveJet(q.0.map(|c| (Series::<JET>::from_coeffs(&[c.c[0]]) - c).shift_down()));
    let m = moment.reflect();
    let dd = d_jet.dot(&d_jet);
    let dm = d_jet.dot(&m);
    let inv = dd.powf(-2.5);
    let h: [Series<JET>; 3] =
        std::array::from_fn(|i| (d_jet.0[i] * dm * 3.0 - m.0[i] * dd) * inv);
    // the top coefficient is lost to the division by d
    (0..JET - 1).map(|j| [h[0].c[j], h[1].c[j], h[2].c[j]]).collect()
}

fn domain(curve: &ContinuumCurve, s: f64) -> (f64, f64) {
    if curve.is_closed() {
        (s - 0.5, s + 0.5)
    } else {
        (0.0, 1.0)
    }
}

/// `⨍ [3(Δ·m(η))Δ − |Δ|²m(η)]/|Δ|⁵ dη` with `Δ = r(s) − r(η)`.
/// The moments are the unit tangents of the curve.
pub(crate) fn kernel_integral(curve: &ContinuumCurve, s: f64) -> Result<Vec3> {
    let pos = curve.jet::<JET>(s);
    let mj = tangent_jet(&pos);
    let coeffs = kernel_expansion(&pos, &mj);
    let expansion = LocalExpansion { p: 3, coeffs };
    let rs = pos.derivative(0);
    let f = |eta: f64| {
        let d = curve.jet::<2>(eta);
        let m = d.derivative(1).normalized().unwrap_or(Vec3::X);
        kernel(rs - d.derivative(0), m).to_array()
    };
    let (lo, hi) = domain(curve, s);
    Ok(Vec3::from_array(finite_part(f, &expansion, s, lo, hi, DEFAULT_TOLERANCE)?))
}

/// `r'(s) · ⨍ kernel[m = r'] dη`, the nonlocal part of the energy density.
pub(crate) fn energy_kernel_integral(curve: &ContinuumCurve, s: f64) -> Result<f64> {
    let pos = curve.jet::<JET>(s);
    let vel = pos.differentiate();
    let r1 = pos.derivative(1);
    let coeffs = kernel_expansion(&pos, &vel)
        .into_iter()
        .map(|h| [Vec3::from_array(h).dot(r1)])
        .collect();
    let expansion = LocalExpansion { p: 3, coeffs };
    let rs = pos.derivative(0);
    let f = |eta: f64| {
        let d = curve.jet::<2>(eta);
        [r1.dot(kernel(rs - d.derivative(0), d.derivative(1)))]
    };
    let (lo, hi) = domain(curve, s);
    Ok(finite_part(f, &expansion, s, lo, hi, DEFAULT_TOLERANCE)?[0])
}

/// Asymptotic field at parameter `s` of a chain of `n` gaps laid along
/// `curve` with tangential moments.
pub fn continuum_field(curve: &ContinuumCurve, s: f64, n: usize, mode: FieldMode) -> Result<FieldValue> {
    if n < 1 {
        return Err(Error::invalid("n must be positive"));
    }
    check_interior(curve, s, n)?;
    let nf = n as f64;
    let n2 = nf.powi(-2);
    let phi = phi_amplitudes(curve, s, n);
    let integral = kernel_integral(curve, s)?;
    let b = match mode {
        FieldMode::Regularized => {
            phi.phi3 * (2.0 * ZETA3) + phi.phi1 * (2.0 * n2 * (nf.ln() + EULER_GAMMA)) + integral * n2
        }
        FieldMode::Full => {
            let x = s * nf;
            let l3 = lattice_sum(3, x)?.value;
            let l2 = lattice_sum(2, x)?.value;
            let l1 = lattice_sum(1, x)?.value;
            phi.phi3 * l3
                + phi.phi2 * (l2 / nf)
                + phi.phi1 * (n2 * (2.0 * nf.ln() + l1))
                + integral * n2
        }
    };
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::{regularized_field_at, total_field_at};
    use crate::geometry::{build_circular_ring, build_straight_chain, make_curve, CurveFamily};

    #[test]
    fn straight_chain_midpoint() {
        let c = make_curve(CurveFamily::Straight).unwrap();
        for n in [20, 100] {
            let b = continuum_field(&c, 0.5, n, FieldMode::Regularized).unwrap();
            let expected = 4.0 * ZETA3 - 8.0 / (n * n) as f64;
            assert!((b - Vec3::X * expected).norm() < 1e-10);
        }
        // against the exact sum
        let n = 200;
        let b = continuum_field(&c, 0.5, n, FieldMode::Regularized).unwrap();
        let exact = regularized_field_at(&build_straight_chain(n).unwrap(), n / 2).unwrap();
        // the neglected tail terms are O(n⁻³)
        assert!((b - exact).norm() < 20.0 / (n * n * n) as f64, "{:?}", b - exact);
    }

    #[test]
    fn open_curve_boundary_layer_is_rejected() {
        let c = make_curve(CurveFamily::Straight).unwrap();
        let r = continuum_field(&c, 0.01, 100, FieldMode::Regularized);
        assert!(matches!(r, Err(Error::BoundaryLayerDomain { .. })));
    }

    #[test]
    fn ring_regularized_field_matches_discrete() {
        let n = 64;
        let c = make_curve(CurveFamily::Circle { n }).unwrap();
        let ring = build_circular_ring(n).unwrap();
        let b = continuum_field(&c, 0.0, n, FieldMode::Regularized).unwrap();
        let exact = regularized_field_at(&ring, 0).unwrap();
        assert!((b - exact).norm() < 1e-3 * exact.norm(), "{b:?} vs {exact:?}");
    }

    #[test]
    fn ring_full_field_between_magnets() {
        let n = 64;
        let c = make_curve(CurveFamily::Circle { n }).unwrap();
        let ring = build_circular_ring(n).unwrap();
        let s = 0.5 / n as f64;
        let b = continuum_field(&c, s, n, FieldMode::Full).unwrap();
        let exact = total_field_at(&ring, c.position(s)).unwrap();
        assert!((b - exact).norm() <= 1e-2 * exact.norm(), "{b:?} vs {exact:?}");
    }
}
