use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Scalar, Series};

/// The six meromorphic kernels of the nonlocal ring functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    K00,
    K01,
    K11,
    K02,
    K12,
    K22,
}

impl KernelKind {
    pub const ALL: [KernelKind; 6] = [
        KernelKind::K00,
        KernelKind::K01,
        KernelKind::K11,
        KernelKind::K02,
        KernelKind::K12,
        KernelKind::K22,
    ];

    /// Derivative orders `(i, j)` of `w` paired by this kernel.
    pub fn orders(self) -> (u32, u32) {
        match self {
            KernelKind::K00 => (0, 0),
            KernelKind::K01 => (0, 1),
            KernelKind::K11 => (1, 1),
            KernelKind::K02 => (0, 2),
            KernelKind::K12 => (1, 2),
            KernelKind::K22 => (2, 2),
        }
    }

    /// Power of `sin(t/2)` in the denominator.
    pub fn singular_order(self) -> usize {
        match self {
            KernelKind::K02 | KernelKind::K22 => 3,
            _ => 5,
        }
    }

    fn denominator(self) -> f64 {
        match self {
            KernelKind::K00 | KernelKind::K11 => 128.0,
            KernelKind::K01 => 64.0,
            KernelKind::K12 => 32.0,
            KernelKind::K02 | KernelKind::K22 => 8.0,
        }
    }

    /// Numerator divided by its constant denominator.
    pub(crate) fn numerator<T: Scalar>(self, t: T) -> T {
        let c1 = t.cos();
        let s1 = t.sin();
        let two = t * 2.0;
        let num = match self {
            KernelKind::K00 => c1 * 76.0 + two.cos() + 115.0,
            KernelKind::K01 => (s1 * 22.0 + two.sin()) * 3.0,
            KernelKind::K11 => (two.cos() * 3.0 + -35.0) * 3.0,
            KernelKind::K02 => c1 + 3.0,
            KernelKind::K12 => (s1 * -6.0 + two.sin()) * 3.0,
            KernelKind::K22 => c1 * -1.0 + 3.0,
        };
        num * (1.0 / self.denominator())
    }
}

/// A kernel `K̄` together with a derivative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelId {
    pub kind: KernelKind,
    pub derivative: u32,
}

impl KernelId {
    pub fn new(kind: KernelKind, derivative: u32) -> Result<Self> {
        if derivative > MAX_KERNEL_DERIVATIVE {
            return Err(Error::invalid(format!(
                "kernel derivative order must be at most {MAX_KERNEL_DERIVATIVE}, got {derivative}"
            )));
        }
        Ok(KernelId { kind, derivative })
    }
}

pub const MAX_KERNEL_DERIVATIVE: u32 = 4;
/// Closest approach to the singular endpoints of `(0, 2π)`.
pub const KERNEL_MIN_DISTANCE: f64 = 1e-6;
/// Window on which the identity residual is evaluated.
pub const IDENTITY_MARGIN: f64 = 0.3;

/// Taylor jet of `K̄(t₀ + x)`.
fn kernel_jet(kind: KernelKind, t: f64) -> Series<5> {
    let x = Series::<5>::variable(t);
    let half = (x * 0.5).sin();
    let mut den = half;
    for _ in 1..kind.singular_order() {
        den = den * half;
    }
    kind.numerator(x) / den
}

fn check_open_period(t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 || t >= 2.0 * PI {
        return Err(Error::invalid(format!("kernel argument {t} is outside (0, 2π)")));
    }
    if t < KERNEL_MIN_DISTANCE || 2.0 * PI - t < KERNEL_MIN_DISTANCE {
        return Err(Error::SingularEvaluation(format!(
            "kernel argument {t} is within {KERNEL_MIN_DISTANCE:e} of a pole"
        )));
    }
    Ok(())
}

/// `K̄ = numerator / sin^p(t/2)` or one of its derivatives, for `t ∈ (0, 2π)`.
pub fn kernel_eval(id: KernelId, t: f64) -> Result<f64> {
    check_open_period(t)?;
    if id.derivative > MAX_KERNEL_DERIVATIVE {
        return Err(Error::invalid("kernel derivative order must be at most 4"));
    }
    Ok(kernel_jet(id.kind, t).derivative_at(id.derivative as usize))
}

/// `K̄₀₀ + K̄₀₁′ − K̄₁₁″ + K̄₀₂″ − K̄₁₂‴ + K̄₂₂⁗`, which vanishes identically.
pub fn kernel_identity_residual(t: f64) -> Result<f64> {
    if !(IDENTITY_MARGIN..=2.0 * PI - IDENTITY_MARGIN).contains(&t) {
        return Err(Error::invalid(format!(
            "identity residual is evaluated on [0.3, 2π − 0.3], got {t}"
        )));
    }
    let d = |kind, k| kernel_jet(kind, t).derivative_at(k);
    use KernelKind::*;
    let terms = [
        d(K00, 0),
        d(K01, 1),
        -d(K11, 2),
        d(K02, 2),
        -d(K12, 3),
        d(K22, 4),
    ];
    Ok(crate::summation::pairwise_sum(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(kind: KernelKind, t: f64) -> f64 {
        kind.numerator(t) / (t / 2.0).sin().powi(kind.singular_order() as i32)
    }

    /// Eighth-order central difference of the `k`th derivative.
    fn central(kind: KernelKind, k: u32, t: f64, h: f64) -> f64 {
        if k == 0 {
            return plain(kind, t);
        }
        let w = [1.0 / 280.0, -4.0 / 105.0, 1.0 / 5.0, -4.0 / 5.0, 0.0, 4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
        w.iter()
            .enumerate()
            .map(|(i, c)| c * central(kind, k - 1, t + (i as f64 - 4.0) * h, h))
            .sum::<f64>()
            / h
    }

    #[test]
    fn values_at_pi() {
        let at = |kind| kernel_eval(KernelId::new(kind, 0).unwrap(), PI).unwrap();
        assert!((at(KernelKind::K00) - 5.0 / 16.0).abs() < 1e-15);
        assert!((at(KernelKind::K22) - 0.5).abs() < 1e-15);
        assert!((at(KernelKind::K11) + 0.75).abs() < 1e-15);
        assert!((at(KernelKind::K02) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for kind in KernelKind::ALL {
            for k in 1..=4 {
                for t in [0.7, 2.0, PI, 4.4] {
                    let a = kernel_eval(KernelId::new(kind, k).unwrap(), t).unwrap();
                    let b = central(kind, k, t, 0.02);
                    assert!((a - b).abs() < 1e-5 * (1.0 + a.abs()), "{kind:?} k={k} t={t}: {a} {b}");
                }
            }
        }
    }

    #[test]
    fn identity_holds_at_sample_points() {
        for t in [1.0, PI / 2.0, PI] {
            assert!(kernel_identity_residual(t).unwrap().abs() < 1e-6);
        }
        // individual terms are far from zero
        assert!(kernel_eval(KernelId::new(KernelKind::K22, 4).unwrap(), 1.0).unwrap().abs() > 1.0);
    }

    #[test]
    fn identity_holds_on_fine_grid() {
        let (lo, hi) = (IDENTITY_MARGIN, 2.0 * PI - IDENTITY_MARGIN);
        for i in 0..100 {
            let t = lo + (hi - lo) * i as f64 / 99.0;
            let r = kernel_identity_residual(t).unwrap();
            assert!(r.abs() < 1e-6, "t={t} residual={r}");
        }
    }

    #[test]
    fn rejects_poles_and_bad_windows() {
        let id = KernelId::new(KernelKind::K00, 0).unwrap();
        assert!(matches!(kernel_eval(id, 1e-8), Err(Error::SingularEvaluation(_))));
        assert!(matches!(kernel_eval(id, -1.0), Err(Error::InvalidParameter(_))));
        assert!(kernel_identity_residual(0.1).is_err());
        assert!(KernelId::new(KernelKind::K12, 5).is_err());
    }
}
