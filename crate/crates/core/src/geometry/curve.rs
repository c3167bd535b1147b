use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ring_radius, RingPerturbation};
use crate::series::{Scalar, Series};
use crate::vec3::Vec3;

const MIN_SAMPLES: usize = 8;

/// Which smooth centre line to build.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum CurveFamily {
    /// `r(s) = s x̂` on `[0, 1]`.
    Straight,
    /// Circle of radius `n⁻¹ / (2 sin(π/n))`.
    Circle { n: usize },
    /// Circle displaced circumferentially by `w` and radially by `u`.
    PerturbedCircle { n: usize, perturbation: RingPerturbation },
    /// Closed curve through equispaced samples `r(j/N)`, trigonometric
    /// interpolation per coordinate.
    Sampled { points: Vec<Vec3> },
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Straight,
    Circle { radius: f64 },
    Perturbed { radius: f64, pert: RingPerturbation },
    Trig { coeffs: Vec<(Vec3, Vec3)> },
}

/// Smooth parametric centre line `r(s)` for `s ∈ [0, 1]` with tangential
/// moments `m = r'/|r'|`. Closed curves are 1-periodic.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumCurve {
    family: CurveFamily,
    shape: Shape,
    scale: f64,
}

/// Taylor coefficients of the three coordinates about a parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet<const N: usize>(pub [Series<N>; 3]);

impl<const N: usize> CurveJet<N> {
    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> Vec3 {
        Vec3::new(
            self.0[0].derivative_at(k),
            self.0[1].derivative_at(k),
            self.0[2].derivative_at(k),
        )
    }

    pub fn differentiate(&self) -> Self {
        CurveJet(self.0.map(|c| c.differentiate()))
    }

    pub fn reflect(&self) -> Self {
        CurveJet(self.0.map(|c| c.reflect()))
    }

    pub fn dot(&self, o: &Self) -> Series<N> {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn scale(&self, f: Series<N>) -> Self {
        CurveJet(self.0.map(|c| c * f))
    }

    /// `self / |self|`, requiring a nonzero constant term.
    pub fn normalized(&self) -> Self {
        let inv = self.dot(self).powf(-0.5);
        self.scale(inv)
    }
}

impl ContinuumCurve {
    pub fn family(&self) -> &CurveFamily {
        &self.family
    }

    pub fn is_closed(&self) -> bool {
        !matches!(self.shape, Shape::Straight)
    }

    /// Uniform scale factor applied on top of the family definition.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The same curve multiplied by `factor`.
    pub fn rescaled(&self, factor: f64) -> Self {
        ContinuumCurve {
            scale: self.scale * factor,
            ..self.clone()
        }
    }

    /// Total arc length over one period (or of `[0, 1]` for open curves).
    pub fn length(&self) -> f64 {
        match &self.shape {
            Shape::Straight => self.scale,
            Shape::Circle { radius } => 2.0 * PI * radius * self.scale,
            _ => {
                // periodic trapezoid converges spectrally
                let m = 512;
                (0..m)
                    .map(|j| self.derivatives(j as f64 / m as f64)[1].norm())
                    .sum::<f64>()
                    / m as f64
            }
        }
    }

    /// The curve rescaled so that its length is one.
    pub fn unit_length(&self) -> Self {
        self.rescaled(1.0 / self.length())
    }

    /// Coordinates at `s`, generic over plain values and Taylor series.
    pub fn eval<T: Scalar>(&self, s: T) -> [T; 3] {
        let k = self.scale;
        let zero = T::constant(0.0);
        match &self.shape {
            Shape::Straight => [s * k, zero, zero],
            Shape::Circle { radius } => {
                let th = s * (2.0 * PI);
                let r = radius * k;
                [th.cos() * r, th.sin() * r, zero]
            }
            Shape::Perturbed { radius, pert } => {
                let th = s * (2.0 * PI);
                let rad = (pert.u(th) * (-pert.epsilon) + 1.0) * (radius * k);
                let phi = th + pert.w(0, th) * pert.epsilon;
                [phi.cos() * rad, phi.sin() * rad, zero]
            }
            Shape::Trig { coeffs } => {
                let th = s * (2.0 * PI);
                let (c1, s1) = (th.cos(), th.sin());
                let (mut ck, mut sk) = (T::constant(1.0), zero);
                let mut out = [zero; 3];
                for (idx, (a, b)) in coeffs.iter().enumerate() {
                    if idx > 0 {
                        let next_c = ck * c1 - sk * s1;
                        sk = sk * c1 + ck * s1;
                        ck = next_c;
                    }
                    out[0] = out[0] + ck * (a.x * k) + sk * (b.x * k);
                    out[1] = out[1] + ck * (a.y * k) + sk * (b.y * k);
                    out[2] = out[2] + ck * (a.z * k) + sk * (b.z * k);
                }
                out
            }
        }
    }

    pub fn position(&self, s: f64) -> Vec3 {
        Vec3::from_array(self.eval(s))
    }

    /// Taylor jet of `r` about `s`.
    pub fn jet<const N: usize>(&self, s: f64) -> CurveJet<N> {
        CurveJet(self.eval(Series::<N>::variable(s)))
    }

    /// `[r, r', r'', r''', r'''']` at `s`.
    pub fn derivatives(&self, s: f64) -> [Vec3; 5] {
        let j = self.jet::<5>(s);
        [0, 1, 2, 3, 4].map(|k| j.derivative(k))
    }

    /// Unit tangent, the moment direction carried by the curve.
    pub fn tangent(&self, s: f64) -> Vec3 {
        self.derivatives(s)[1].normalized().unwrap_or(Vec3::X)
    }
}

/// Builds a curve of the requested family.
pub fn make_curve(family: CurveFamily) -> Result<ContinuumCurve> {
    let shape = match &family {
        CurveFamily::Straight => Shape::Straight,
        CurveFamily::Circle { n } => {
            check_ring_n(*n)?;
            Shape::Circle {
                radius: ring_radius(*n),
            }
        }
        CurveFamily::PerturbedCircle { n, perturbation } => {
            check_ring_n(*n)?;
            perturbation.validate()?;
            Shape::Perturbed {
                radius: ring_radius(*n),
                pert: perturbation.clone(),
            }
        }
        CurveFamily::Sampled { points } => {
            if points.len() < MIN_SAMPLES {
                return Err(Error::invalid(format!(
                    "sampled curve needs at least {MIN_SAMPLES} samples, got {}",
                    points.len()
                )));
            }
            if points.iter().any(|p| !p.is_finite()) {
                return Err(Error::invalid("sampled curve has non-finite points"));
            }
            Shape::Trig {
                coeffs: trig_coefficients(points),
            }
        }
    };
    Ok(ContinuumCurve {
        family,
        shape,
        scale: 1.0,
    })
}

fn check_ring_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::invalid("ring curves need n >= 3"));
    }
    Ok(())
}

/// `(a_k, b_k)` with `r(s) = Σ a_k cos 2πks + b_k sin 2πks`.
fn trig_coefficients(points: &[Vec3]) -> Vec<(Vec3, Vec3)> {
    let m = points.len();
    let kmax = m / 2;
    (0..=kmax)
        .map(|k| {
            let mut a = Vec3::ZERO;
            let mut b = Vec3::ZERO;
            for (j, p) in points.iter().enumerate() {
                let (s, c) = (2.0 * PI * ((k * j) % m) as f64 / m as f64).sin_cos();
                a += *p * c;
                b += *p * s;
            }
            let nyquist = m.is_multiple_of(2) && k == kmax;
            if k == 0 || nyquist {
                (a / m as f64, Vec3::ZERO)
            } else {
                (a * (2.0 / m as f64), b * (2.0 / m as f64))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::FourierMode;

    #[test]
    fn circle_quarter_point() {
        let c = make_curve(CurveFamily::Circle { n: 10 }).unwrap();
        let p = c.position(0.25);
        assert!(p.x.abs() < 1e-15);
        assert!((p.y - ring_radius(10)).abs() < 1e-15);
    }

    #[test]
    fn circle_curvature_vector_has_constant_length() {
        let c = make_curve(CurveFamily::Circle { n: 20 }).unwrap();
        let expected = (2.0 * PI).powi(2) * ring_radius(20);
        for s in [0.0, 0.1, 0.33, 0.9] {
            assert!((c.derivatives(s)[2].norm() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn straight_has_no_curvature() {
        let c = make_curve(CurveFamily::Straight).unwrap();
        let d = c.derivatives(0.4);
        assert_eq!(d[2], Vec3::ZERO);
        assert_eq!(d[1], Vec3::X);
        assert!(!c.is_closed());
    }

    #[test]
    fn built_in_families_are_nearly_arc_length() {
        for n in [16, 32, 64] {
            let pert = RingPerturbation::cosine(1e-3, 2).unwrap();
            for fam in [
                CurveFamily::Circle { n },
                CurveFamily::PerturbedCircle { n, perturbation: pert },
            ] {
                let c = make_curve(fam).unwrap();
                for j in 0..17 {
                    let speed = c.derivatives(j as f64 / 17.0)[1].norm();
                    // 2πR = 1 + π²/(6n²) + O(n⁻⁴)
                    assert!((speed - 1.0).abs() <= 2.0 / (n * n) as f64);
                }
            }
        }
    }

    #[test]
    fn sampled_fourier_mode_derivatives_are_spectral() {
        let m = 64;
        let f = |s: f64| Vec3::new((2.0 * PI * 3.0 * s).cos(), (2.0 * PI * s).sin(), 0.5);
        let pts: Vec<Vec3> = (0..m).map(|j| f(j as f64 / m as f64)).collect();
        let c = make_curve(CurveFamily::Sampled { points: pts }).unwrap();
        let w = 2.0 * PI;
        for s in [0.013, 0.4, 0.77] {
            let d = c.derivatives(s);
            let exact = [
                f(s),
                Vec3::new(-3.0 * w * (3.0 * w * s).sin(), w * (w * s).cos(), 0.0),
                Vec3::new(-9.0 * w * w * (3.0 * w * s).cos(), -w * w * (w * s).sin(), 0.0),
                Vec3::new(27.0 * w.powi(3) * (3.0 * w * s).sin(), -w.powi(3) * (w * s).cos(), 0.0),
                Vec3::new(81.0 * w.powi(4) * (3.0 * w * s).cos(), w.powi(4) * (w * s).sin(), 0.0),
            ];
            for k in 0..5 {
                assert!((d[k] - exact[k]).norm() < 1e-8 * (1.0 + exact[k].norm()), "k={k}");
            }
        }
    }

    #[test]
    fn sampled_needs_eight_points() {
        let pts = vec![Vec3::ZERO; 7];
        assert!(make_curve(CurveFamily::Sampled { points: pts }).is_err());
    }

    #[test]
    fn closed_curves_are_periodic() {
        let pert = RingPerturbation::new(
            0.05,
            vec![FourierMode { k: 3, a: 0.4, b: -0.2 }],
        )
        .unwrap();
        let c = make_curve(CurveFamily::PerturbedCircle { n: 20, perturbation: pert }).unwrap();
        let a = c.derivatives(0.2);
        let b = c.derivatives(1.2);
        for k in 0..5 {
            assert!((a[k] - b[k]).norm() < 1e-10 * (1.0 + a[k].norm()));
        }
    }

    #[test]
    fn unit_length_rescaling() {
        let c = make_curve(CurveFamily::Circle { n: 10 }).unwrap().unit_length();
        assert!((c.length() - 1.0).abs() < 1e-14);
        let pert = RingPerturbation::cosine(0.05, 2).unwrap();
        let p = make_curve(CurveFamily::PerturbedCircle { n: 10, perturbation: pert })
            .unwrap()
            .unit_length();
        assert!((p.length() - 1.0).abs() < 1e-12);
    }
}
