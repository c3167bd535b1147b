use std::f64::consts::PI;

use serde::Serialize;

use crate::continuum::field::{check_interior, energy_kernel_integral};
use crate::error::{Error, Result};
use crate::geometry::ContinuumCurve;
use crate::summation::pairwise_sum;
use crate::{EnergyValue, ZETA3};

/// Nodes of the periodic trapezoid rule for the outer integral.
pub const OUTER_NODES: usize = 64;

/// Decomposition of the asymptotic total energy of a ring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyBreakdown {
    /// `−2ζ(3) n`.
    pub ground: f64,
    /// `n⁻¹ (ζ(3)/4) ∫ |r''|² ds`.
    pub local: f64,
    /// `−½ n⁻¹ ∫⨍ (dipole kernel of the tangent field) dη ds`.
    pub nonlocal: f64,
    pub total: f64,
}

/// Asymptotic energy density `Ẽ(s)` of tangential moments along `curve`.
///
/// The curve is first rescaled to unit length so that `s` is arc length;
/// the model only fixes its length to `1 + O(n⁻²)`.
pub fn energy_density(curve: &ContinuumCurve, s: f64, n: usize) -> Result<EnergyValue> {
    if n < 1 {
        return Err(Error::invalid("n must be positive"));
    }
    check_interior(curve, s, n)?;
    let c = curve.unit_length();
    let (local, nonlocal) = density_parts(&c, s)?;
    let n2 = (n as f64).powi(-2);
    Ok(-4.0 * ZETA3 + n2 * (0.5 * ZETA3 * local - nonlocal))
}

/// `(|r''|², r'·⨍K[r'])` at `s`.
fn density_parts(curve: &ContinuumCurve, s: f64) -> Result<(f64, f64)> {
    let k2 = curve.derivatives(s)[2].norm_squared();
    Ok((k2, energy_kernel_integral(curve, s)?))
}

/// Ground, local and nonlocal parts of the total energy of a closed chain.
pub fn continuum_total_energy(curve: &ContinuumCurve, n: usize) -> Result<EnergyBreakdown> {
    if !curve.is_closed() {
        return Err(Error::DivergentFunctional(
            "the nonlocal energy integral does not converge for a chain with free ends".into(),
        ));
    }
    if n < 3 {
        return Err(Error::invalid("ring needs n >= 3"));
    }
    let c = curve.unit_length();
    let m = OUTER_NODES;
    let mut locals = Vec::with_capacity(m);
    let mut nonlocals = Vec::with_capacity(m);
    for j in 0..m {
        let (l, nl) = density_parts(&c, j as f64 / m as f64)?;
        locals.push(l);
        nonlocals.push(nl);
    }
    let nf = n as f64;
    let ground = -2.0 * ZETA3 * nf;
    let local = 0.25 * ZETA3 * pairwise_sum(&locals) / (m as f64 * nf);
    let nonlocal = -0.5 * pairwise_sum(&nonlocals) / (m as f64 * nf);
    Ok(EnergyBreakdown {
        ground,
        local,
        nonlocal,
        total: ground + local + nonlocal,
    })
}

/// `−2ζ(3) n + (ζ(3) + 1/6) π² / n`.
pub fn ring_energy_closed_form(n: usize) -> Result<EnergyValue> {
    if n < 3 {
        return Err(Error::invalid("ring needs n >= 3"));
    }
    let nf = n as f64;
    Ok(-2.0 * ZETA3 * nf + (ZETA3 + 1.0 / 6.0) * PI * PI / nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_curve, CurveFamily};

    #[test]
    fn closed_form_values() {
        assert!((ring_energy_closed_form(10).unwrap() + 22.690_262_046_328_684).abs() < 1e-12);
        assert!((ring_energy_closed_form(20).unwrap() + 47.406_838_117_952_17).abs() < 1e-12);
        let big = 1_000_000;
        assert!((ring_energy_closed_form(big).unwrap() / big as f64 + 2.404_113_806_319_189).abs() < 1e-9);
        assert!(ring_energy_closed_form(2).is_err());
    }

    #[test]
    fn circle_total_matches_closed_form() {
        for n in [10, 32] {
            let c = make_curve(CurveFamily::Circle { n }).unwrap();
            let e = continuum_total_energy(&c, n).unwrap();
            assert!((e.total - ring_energy_closed_form(n).unwrap()).abs() < 1e-8, "n={n}: {e:?}");
            assert!((e.ground + e.local + e.nonlocal - e.total).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_density_is_uniform_and_consistent() {
        let n = 10;
        let c = make_curve(CurveFamily::Circle { n }).unwrap();
        let total = continuum_total_energy(&c, n).unwrap().total;
        for s in [0.0, 0.21, 0.5] {
            let e = energy_density(&c, s, n).unwrap();
            assert!((0.5 * n as f64 * e - total).abs() < 1e-9);
        }
    }

    #[test]
    fn straight_density() {
        let c = make_curve(CurveFamily::Straight).unwrap();
        let n = 50;
        for s in [0.2, 0.5, 0.8] {
            let e = energy_density(&c, s, n).unwrap();
            let expected = -4.0 * ZETA3 + (1.0 / (s * s) + 1.0 / ((1.0 - s) * (1.0 - s))) / (n * n) as f64;
            assert!((e - expected).abs() < 1e-10);
        }
        assert!(matches!(
            continuum_total_energy(&c, n),
            Err(Error::DivergentFunctional(_))
        ));
    }
}
