use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::RingPerturbation;
use crate::vec3::Vec3;

/// Allowed deviation of a neighbour distance from `1/n`.
pub const GAP_TOLERANCE: f64 = 1e-10;
/// Allowed deviation of a moment norm from one.
pub const UNIT_TOLERANCE: f64 = 1e-12;

const PROJECTION_TOLERANCE: f64 = 1e-14;
const MAX_SWEEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// `n + 1` magnets with free ends.
    Open,
    /// `n` magnets, the last touching the first.
    Ring,
}

/// Positions and unit moments of a chain of touching magnets, in units
/// where neighbouring centres are `1/n` apart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    n: usize,
    topology: Topology,
    positions: Vec<Vec3>,
    moments: Vec<Vec3>,
}

impl ChainConfig {
    /// Checks the magnet count, unit moments and contact gaps.
    pub fn new(n: usize, topology: Topology, positions: Vec<Vec3>, moments: Vec<Vec3>) -> Result<Self> {
        let expected = match topology {
            Topology::Open => {
                if n < 1 {
                    return Err(Error::invalid("open chain needs n >= 1"));
                }
                n + 1
            }
            Topology::Ring => {
                if n < 3 {
                    return Err(Error::invalid("ring needs n >= 3"));
                }
                n
            }
        };
        if positions.len() != expected || moments.len() != expected {
            return Err(Error::invalid(format!(
                "{topology:?} chain with n = {n} needs {expected} magnets, got {} positions and {} moments",
                positions.len(),
                moments.len()
            )));
        }
        let config = ChainConfig {
            n,
            topology,
            positions,
            moments,
        };
        config.check_invariants()?;
        Ok(config)
    }

    fn check_invariants(&self) -> Result<()> {
        for (i, (p, m)) in self.positions.iter().zip(&self.moments).enumerate() {
            if !p.is_finite() || !m.is_finite() {
                return Err(Error::invalid(format!("magnet {i} has non-finite data")));
            }
            if (m.norm() - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::invalid(format!("moment {i} has norm {}", m.norm())));
            }
        }
        let gap = self.max_gap_deviation();
        if gap > GAP_TOLERANCE {
            return Err(Error::invalid(format!(
                "neighbour distance deviates from 1/n by {gap:e}"
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn moments(&self) -> &[Vec3] {
        &self.moments
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// Neighbour index pairs, cyclic for rings.
    pub fn bonds(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.len();
        let count = match self.topology {
            Topology::Open => m - 1,
            Topology::Ring => m,
        };
        (0..count).map(move |i| (i, (i + 1) % m))
    }

    pub fn max_gap_deviation(&self) -> f64 {
        let h = self.spacing();
        self.bonds()
            .map(|(i, j)| ((self.positions[j] - self.positions[i]).norm() - h).abs())
            .fold(0.0, f64::max)
    }

    /// Replaces the moments, normalizing each one.
    pub fn with_moments(&self, moments: Vec<Vec3>) -> Result<Self> {
        if moments.len() != self.len() {
            return Err(Error::invalid("moment count does not match magnet count"));
        }
        let moments = moments
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.normalized().ok_or_else(|| Error::invalid(format!("moment {i} is zero"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainConfig {
            moments,
            ..self.clone()
        })
    }

    /// Applies `f` to every position and moment; `f` must be an isometry
    /// for the result to remain valid.
    pub fn map_rigid(&self, pos: impl Fn(Vec3) -> Vec3, dir: impl Fn(Vec3) -> Vec3) -> Result<Self> {
        let positions = self.positions.iter().map(|&p| pos(p)).collect();
        let moments = self.moments.iter().map(|&m| dir(m)).collect();
        ChainConfig::new(self.n, self.topology, positions, moments)
    }

    /// Normalized average of the adjacent chords at each magnet (a single
    /// chord at open ends).
    pub fn polygon_tangents(&self) -> Vec<Vec3> {
        polygon_tangents(&self.positions, self.topology)
    }
}

pub(crate) fn polygon_tangents(p: &[Vec3], topology: Topology) -> Vec<Vec3> {
    let m = p.len();
    (0..m)
        .map(|i| {
            let prev = match (topology, i) {
                (Topology::Open, 0) => None,
                _ => Some(p[i] - p[(i + m - 1) % m]),
            };
            let next = match topology {
                Topology::Open if i + 1 == m => None,
                _ => Some(p[(i + 1) % m] - p[i]),
            };
            let unit = |v: Vec3| v.normalized().unwrap_or(Vec3::X);
            let t = match (prev, next) {
                (Some(a), Some(b)) => unit(a) + unit(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => Vec3::X,
            };
            t.normalized().unwrap_or(Vec3::X)
        })
        .collect()
}

/// `n + 1` magnets on the x axis with moments along `+x`.
pub fn build_straight_chain(n: usize) -> Result<ChainConfig> {
    if n < 1 {
        return Err(Error::invalid("straight chain needs n >= 1"));
    }
    let h = 1.0 / n as f64;
    let positions = (0..=n).map(|i| Vec3::new(i as f64 * h, 0.0, 0.0)).collect();
    ChainConfig::new(n, Topology::Open, positions, vec![Vec3::X; n + 1])
}

/// Radius of the circle through `n` points spaced `1/n` apart.
pub fn ring_radius(n: usize) -> f64 {
    let h = 1.0 / n as f64;
    h / (2.0 * (PI * h).sin())
}

/// Regular `n`-gon of touching magnets with tangential moments.
pub fn build_circular_ring(n: usize) -> Result<ChainConfig> {
    if n < 3 {
        return Err(Error::invalid("ring needs n >= 3"));
    }
    let r = ring_radius(n);
    let mut positions = Vec::with_capacity(n);
    let mut moments = Vec::with_capacity(n);
    for i in 0..n {
        let (s, c) = (2.0 * PI * i as f64 / n as f64).sin_cos();
        positions.push(Vec3::new(r * c, r * s, 0.0));
        moments.push(Vec3::new(-s, c, 0.0));
    }
    ChainConfig::new(n, Topology::Ring, positions, moments)
}

/// Ring displaced by `pert`, projected back onto the contact constraints,
/// with polygon-tangent moments.
pub fn build_perturbed_ring(n: usize, pert: &RingPerturbation) -> Result<ChainConfig> {
    if n < 3 {
        return Err(Error::invalid("ring needs n >= 3"));
    }
    pert.validate()?;
    if pert.epsilon == 0.0 || pert.modes.is_empty() {
        return build_circular_ring(n);
    }
    let r = ring_radius(n);
    let eps = pert.epsilon;
    let mut p: Vec<Vec3> = (0..n)
        .map(|i| {
            let th = 2.0 * PI * i as f64 / n as f64;
            let rad = r * (1.0 - eps * pert.u(th));
            let phi = th + eps * pert.w(0, th);
            Vec3::new(rad * phi.cos(), rad * phi.sin(), 0.0)
        })
        .collect();
    project_ring_gaps(&mut p, 1.0 / n as f64)?;
    let moments = polygon_tangents(&p, Topology::Ring);
    ChainConfig::new(n, Topology::Ring, p, moments)
}

/// Symmetric forward/backward sweeps that restore every cyclic gap to `h`.
fn project_ring_gaps(p: &mut [Vec3], h: f64) -> Result<()> {
    let m = p.len();
    let mut residual = f64::INFINITY;
    for sweep in 0..MAX_SWEEPS {
        residual = 0.0;
        let fix = |i: usize, p: &mut [Vec3]| {
            let j = (i + 1) % m;
            let d = p[j] - p[i];
            let len = d.norm();
            let c = 0.5 * (len - h) / len;
            p[i] += d * c;
            p[j] -= d * c;
            (len - h).abs()
        };
        for i in 0..m {
            residual = f64::max(residual, fix(i, p));
        }
        for i in (0..m).rev() {
            residual = f64::max(residual, fix(i, p));
        }
        if residual < PROJECTION_TOLERANCE * h.max(1.0) {
            return Ok(());
        }
        if !residual.is_finite() {
            return Err(Error::ConstraintFailure {
                sweeps: sweep + 1,
                residual,
            });
        }
    }
    Err(Error::ConstraintFailure {
        sweeps: MAX_SWEEPS,
        residual,
    })
}
