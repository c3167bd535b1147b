use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Scalar;

/// One term `a cos kθ + b sin kθ` of the circumferential displacement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierMode {
    pub k: u32,
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
}

/// Amplitude `ε` and Fourier series of the circumferential displacement
/// `w(θ)` of a ring. The radial displacement `u(θ)` follows from
/// inextensibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingPerturbation {
    pub epsilon: f64,
    pub modes: Vec<FourierMode>,
}

impl RingPerturbation {
    pub fn new(epsilon: f64, modes: Vec<FourierMode>) -> Result<Self> {
        let p = RingPerturbation { epsilon, modes };
        p.validate()?;
        Ok(p)
    }

    pub fn zero() -> Self {
        RingPerturbation {
            epsilon: 0.0,
            modes: Vec::new(),
        }
    }

    /// `w = cos kθ` with amplitude `ε`.
    pub fn cosine(epsilon: f64, k: u32) -> Result<Self> {
        Self::new(epsilon, vec![FourierMode { k, a: 1.0, b: 0.0 }])
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::invalid(format!(
                "perturbation amplitude must be finite and non-negative, got {}",
                self.epsilon
            )));
        }
        if self.modes.iter().any(|m| !(m.a.is_finite() && m.b.is_finite())) {
            return Err(Error::invalid("Fourier coefficients must be finite"));
        }
        Ok(())
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        RingPerturbation {
            epsilon,
            modes: self.modes.clone(),
        }
    }

    /// The displacement `w(θ + c)`.
    pub fn shifted(&self, c: f64) -> Self {
        let modes = self
            .modes
            .iter()
            .map(|m| {
                let (s, co) = (m.k as f64 * c).sin_cos();
                // a cos(kθ + kc) + b sin(kθ + kc)
                FourierMode {
                    k: m.k,
                    a: m.a * co + m.b * s,
                    b: m.b * co - m.a * s,
                }
            })
            .collect();
        RingPerturbation {
            epsilon: self.epsilon,
            modes,
        }
    }

    /// Largest wavenumber present.
    pub fn max_wavenumber(&self) -> u32 {
        self.modes.iter().map(|m| m.k).max().unwrap_or(0)
    }

    /// `d^order w / dθ^order` at `theta`, for any order.
    pub fn w<T: Scalar>(&self, order: u32, theta: T) -> T {
        let mut acc = T::constant(0.0);
        for m in &self.modes {
            let k = m.k as f64;
            let (c, s) = if m.k == 0 {
                (T::constant(1.0), T::constant(0.0))
            } else {
                let kt = theta * k;
                (kt.cos(), kt.sin())
            };
            // derivatives of (cos, sin) cycle with period four
            let (dc, ds) = match order % 4 {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            };
            let scale = k.powi(order as i32);
            if scale == 0.0 {
                continue;
            }
            acc = acc + (dc * m.a + ds * m.b) * scale;
        }
        acc
    }

    /// `u = w' + ε(−w'² + w''²/2)`.
    pub fn u<T: Scalar>(&self, theta: T) -> T {
        let w1 = self.w(1, theta);
        let w2 = self.w(2, theta);
        w1 + (w2 * w2 * 0.5 - w1 * w1) * self.epsilon
    }

    /// Exact value of `∫₀^{2π} (w^{(order)})² dθ`.
    pub fn mean_square_integral(&self, order: u32) -> f64 {
        let pi = std::f64::consts::PI;
        let mut by_k = std::collections::BTreeMap::<u32, (f64, f64)>::new();
        for m in &self.modes {
            let e = by_k.entry(m.k).or_insert((0.0, 0.0));
            e.0 += m.a;
            e.1 += m.b;
        }
        by_k.iter()
            .map(|(&k, &(a, b))| {
                if k == 0 {
                    if order == 0 {
                        2.0 * pi * a * a
                    } else {
                        0.0
                    }
                } else {
                    pi * (k as f64).powi(2 * order as i32) * (a * a + b * b)
                }
            })
            .sum()
    }

    /// `∫₀^{2π} w'² − 2w''² + w'''² dθ`, evaluated mode by mode as
    /// `π k²(k²−1)²(a²+b²)`.
    pub fn bending_integral(&self) -> f64 {
        self.mean_square_integral(1) - 2.0 * self.mean_square_integral(2)
            + self.mean_square_integral(3)
    }
}
