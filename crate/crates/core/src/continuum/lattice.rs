use serde::Serialize;

use crate::error::{Error, Result};
use crate::{EULER_GAMMA, ZETA3};

/// Terms summed explicitly before the asymptotic tail.
pub const LATTICE_TRUNCATION: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeSumValue {
    pub k: u32,
    #[serde(rename = "X")]
    pub x: f64,
    pub value: f64,
}

/// `Σ_{i≥0} (q+i)^{-s}` for `q ∈ (0, 1]`, `s ∈ {2, 3}`.
fn hurwitz(s: i32, q: f64) -> f64 {
    let m = LATTICE_TRUNCATION;
    // small terms first
    let head: f64 = (0..m).rev().map(|i| (q + i as f64).powi(-s)).sum();
    let z = q + m as f64;
    let sf = s as f64;
    let tail = z.powi(1 - s) / (sf - 1.0) + 0.5 * z.powi(-s) + sf * z.powi(-s - 1) / 12.0
        - sf * (sf + 1.0) * (sf + 2.0) * z.powi(-s - 3) / 720.0;
    head + tail
}

/// `−ψ(q)` via the same truncation and the asymptotic digamma series.
fn neg_digamma(q: f64) -> f64 {
    let m = LATTICE_TRUNCATION;
    let head: f64 = (0..m).rev().map(|i| 1.0 / (q + i as f64)).sum();
    let z = q + m as f64;
    head - z.ln() + 0.5 / z + 1.0 / (12.0 * z * z) - 1.0 / (120.0 * z.powi(4))
}

/// Periodic lattice sum `Λ_k(X)`:
///
/// * `Λ₃ = Σ |X−i|⁻³`
/// * `Λ₂ = Σ sgn(X−i) |X−i|⁻²`
/// * `Λ₁ = lim (Σ_{|i|≤K} |X−i|⁻¹ − 2 log K)`
pub fn lattice_sum(k: u32, x: f64) -> Result<LatticeSumValue> {
    if !x.is_finite() {
        return Err(Error::invalid("lattice sum argument must be finite"));
    }
    let frac = x - x.floor();
    if frac == 0.0 {
        return Err(Error::SingularEvaluation(format!(
            "Λ_{k} is singular at integer X = {x}; use regularized_limit"
        )));
    }
    let (a, b) = (frac, 1.0 - frac);
    let value = match k {
        3 => hurwitz(3, a) + hurwitz(3, b),
        2 => hurwitz(2, a) - hurwitz(2, b),
        1 => neg_digamma(a) + neg_digamma(b),
        _ => return Err(Error::invalid(format!("lattice sum order must be 1, 2 or 3, got {k}"))),
    };
    Ok(LatticeSumValue { k, x, value })
}

/// `lim_{X→i} (Λ_k(X) − local singular term)`.
pub fn regularized_limit(k: u32) -> Result<f64> {
    match k {
        3 => Ok(2.0 * ZETA3),
        2 => Ok(0.0),
        1 => Ok(2.0 * EULER_GAMMA),
        _ => Err(Error::invalid(format!("lattice sum order must be 1, 2 or 3, got {k}"))),
    }
}
