use std::f64::consts::PI;

use serde::Serialize;

use crate::discrete::total_energy;
use crate::error::{Error, Result};
use crate::geometry::{build_perturbed_ring, FourierMode, MagnetSpec, RingPerturbation};
use crate::ring::functionals::BENDING_STIFFNESS;
use crate::ZETA3;

/// Amplitude step of the stiffness fit.
pub const FIT_EPSILON: f64 = 1e-3;
const FIT_RELATIVE: f64 = 0.05;
const FIT_ABSOLUTE: f64 = 1e-4;

/// Angular frequencies `ω_k` in rad/s for `k = 1..=k_max`. Each mode is
/// `A_k cos(kθ + φ_k) cos(ω_k t + τ_k)`; the amplitudes and phases are
/// free and not stored.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeSpectrum {
    pub n: usize,
    pub frequencies: Vec<f64>,
}

impl ModeSpectrum {
    /// `ω_k`, or `None` outside `1..=k_max`.
    pub fn omega(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.frequencies.get(i).copied())
    }
}

fn mode_factor(k: f64) -> f64 {
    k * k * (k * k - 1.0).powi(2) / (k * k + 1.0)
}

/// Closed-form lowest frequency `ω₂`.
pub fn omega2_closed_form(spec: &MagnetSpec, n: usize) -> Result<f64> {
    spec.validate()?;
    let nf = n as f64;
    Ok(PI * PI * spec.b / (spec.a * nf * nf) * ((6.0 * ZETA3 + 1.0) / (10.0 * spec.mu0 * spec.rho)).sqrt())
}

pub fn mode_frequencies(spec: &MagnetSpec, n: usize, k_max: usize) -> Result<ModeSpectrum> {
    spec.validate()?;
    if n < 3 {
        return Err(Error::invalid("ring needs n >= 3"));
    }
    if k_max < 2 {
        return Err(Error::invalid("k_max must be at least 2"));
    }
    let nf = n as f64;
    let pre = PI.powi(4) * spec.b * spec.b / (3.0 * spec.mu0 * spec.a * spec.a * spec.rho * nf.powi(4));
    let frequencies: Vec<f64> = (1..=k_max)
        .map(|k| (pre * BENDING_STIFFNESS * mode_factor(k as f64)).sqrt())
        .collect();
    let w2 = omega2_closed_form(spec, n)?;
    if (frequencies[1] - w2).abs() > 1e-12 * w2 {
        return Err(Error::NumericalFailure(format!(
            "spectrum ω₂ = {} disagrees with closed form {w2}",
            frequencies[1]
        )));
    }
    Ok(ModeSpectrum { n, frequencies })
}

fn ring_energy(n: usize, k: u32, amplitude: f64) -> Result<f64> {
    let pert = RingPerturbation::new(
        amplitude.abs(),
        vec![FourierMode {
            k,
            a: amplitude.signum(),
            b: 0.0,
        }],
    )?;
    total_energy(&build_perturbed_ring(n, &pert)?)
}

/// Estimates `ω_k` from the discrete model. The coefficient of `ε²` in the
/// ring energy is fitted from a symmetric five-point stencil and combined
/// with the modal mass `∝ k² + 1` of the inextensible ring.
pub fn discrete_mode_frequency(n: usize, k: usize, spec: &MagnetSpec) -> Result<f64> {
    spec.validate()?;
    if n < 16 {
        return Err(Error::invalid("discrete mode fit needs n >= 16"));
    }
    if k < 1 || 4 * k > n {
        return Err(Error::invalid(format!("mode number must satisfy 1 <= k <= n/4, got k = {k}")));
    }
    let h = FIT_EPSILON;
    let kk = k as u32;
    let e0 = total_energy(&crate::geometry::build_circular_ring(n)?)?;
    let [em2, em1, ep1, ep2] = [-2.0, -1.0, 1.0, 2.0].map(|s| ring_energy(n, kk, s * h));
    let (em2, em1, ep1, ep2) = (em2?, em1?, ep1?, ep2?);
    let c5 = (-ep2 + 16.0 * ep1 - 30.0 * e0 + 16.0 * em1 - em2) / (24.0 * h * h);
    let c3 = (ep1 + em1 - 2.0 * e0) / (2.0 * h * h);
    if (c5 - c3).abs() > FIT_RELATIVE * c5.abs() + FIT_ABSOLUTE {
        return Err(Error::NumericalFailure(format!(
            "stiffness fit unstable for n = {n}, k = {k}: {c5} vs {c3}"
        )));
    }
    if c5 <= 0.0 {
        if c5.abs() <= FIT_ABSOLUTE {
            return Ok(0.0);
        }
        return Err(Error::NumericalFailure(format!(
            "negative stiffness {c5} for n = {n}, k = {k}"
        )));
    }
    let nf = n as f64;
    let kf = k as f64;
    let omega2 = PI * PI * spec.b * spec.b * c5
        / (6.0 * spec.mu0 * spec.a * spec.a * spec.rho * nf.powi(3) * (kf * kf + 1.0));
    Ok(omega2.sqrt())
}
