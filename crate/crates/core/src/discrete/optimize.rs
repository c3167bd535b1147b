use crate::discrete::{orientation_gradient, total_energy};
use crate::error::{Error, Result};
use crate::geometry::ChainConfig;
use crate::vec3::Vec3;

const ARMIJO_C: f64 = 1e-4;
const SHRINK: f64 = 0.5;
const MIN_STEP: f64 = 1e-14;

/// Projected gradient descent on the product of unit spheres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions {
    /// Stop once the largest component of the projected gradient is below this.
    pub tol: f64,
    pub max_steps: usize,
    pub initial_step: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            tol: 1e-10,
            max_steps: 100_000,
            initial_step: 0.1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub config: ChainConfig,
    pub energy: f64,
    pub iterations: usize,
    pub gradient_norm: f64,
}

fn inf_norm(g: &[Vec3]) -> f64 {
    g.iter().map(|v| v.max_abs()).fold(0.0, f64::max)
}

fn retract(config: &ChainConfig, g: &[Vec3], step: f64) -> Result<ChainConfig> {
    let moments = config
        .moments()
        .iter()
        .zip(g)
        .map(|(m, gi)| *m - *gi * step)
        .collect();
    config.with_moments(moments)
}

impl OptimizeOptions {
    pub fn run(&self, config: &ChainConfig) -> Result<OptimizeOutcome> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::invalid("optimizer tolerance must be positive"));
        }
        let mut current = config.clone();
        let mut energy = total_energy(&current)?;
        let mut step = self.initial_step;
        for it in 0..self.max_steps {
            let g = orientation_gradient(&current)?;
            let gnorm = inf_norm(&g);
            if gnorm < self.tol {
                return Ok(OptimizeOutcome {
                    config: current,
                    energy,
                    iterations: it,
                    gradient_norm: gnorm,
                });
            }
            let g2: f64 = g.iter().map(|v| v.norm_squared()).sum();
            loop {
                let trial = retract(&current, &g, step)?;
                let e = total_energy(&trial)?;
                if e < energy && e <= energy - ARMIJO_C * step * g2 {
                    current = trial;
                    energy = e;
                    step *= 2.0;
                    break;
                }
                // near the minimum the decrease drowns in round-off; fall
                // back to requiring a smaller gradient
                let noise = 64.0 * f64::EPSILON * energy.abs().max(1.0);
                if e <= energy + noise && inf_norm(&orientation_gradient(&trial)?) < gnorm {
                    current = trial;
                    energy = e;
                    step *= 2.0;
                    break;
                }
                step *= SHRINK;
                if step < MIN_STEP {
                    // line search stalled at round-off
                    return Err(Error::NonConvergence {
                        iterations: it,
                        gradient_norm: gnorm,
                        best: Box::new(current),
                    });
                }
            }
        }
        let gnorm = inf_norm(&orientation_gradient(&current)?);
        if gnorm < self.tol {
            return Ok(OptimizeOutcome {
                config: current,
                energy,
                iterations: self.max_steps,
                gradient_norm: gnorm,
            });
        }
        Err(Error::NonConvergence {
            iterations: self.max_steps,
            gradient_norm: gnorm,
            best: Box::new(current),
        })
    }
}

/// Minimizes the total energy over the moments with the positions held
/// fixed. Moving positions are not supported.
pub fn optimize_orientations(config: &ChainConfig, fixed_positions: bool, tol: f64) -> Result<ChainConfig> {
    if !fixed_positions {
        return Err(Error::invalid(
            "only fixed-position orientation optimization is supported",
        ));
    }
    let opts = OptimizeOptions {
        tol,
        ..OptimizeOptions::default()
    };
    Ok(opts.run(config)?.config)
}

/// Largest angle between corresponding directions, treating `v` and `−v`
/// as equal when `modulo_pi` is set.
pub fn max_angle_to(moments: &[Vec3], reference: &[Vec3], modulo_pi: bool) -> f64 {
    moments
        .iter()
        .zip(reference)
        .map(|(m, r)| {
            let a = m.angle_to(*r);
            if modulo_pi {
                a.min(std::f64::consts::PI - a)
            } else {
                a
            }
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_circular_ring, build_straight_chain};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
        loop {
            let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let n = v.norm();
            if n > 0.1 && n <= 1.0 {
                return v / n;
            }
        }
    }

    #[test]
    fn two_magnets_align_head_to_tail() {
        let c = build_straight_chain(1).unwrap();
        let c = c.with_moments(vec![Vec3::new(0.3, 0.9, 0.1), Vec3::new(0.8, -0.5, 0.2)]).unwrap();
        let out = OptimizeOptions::default().run(&c).unwrap();
        assert!((out.energy + 2.0).abs() < 1e-9);
        assert!(max_angle_to(out.config.moments(), &[Vec3::X, Vec3::X], true) < 1e-4);
    }

    #[test]
    fn tilted_ring_returns_to_tangents() {
        let c = build_circular_ring(24).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tilted: Vec<Vec3> = c
            .moments()
            .iter()
            .map(|m| m.rotate_about(random_unit(&mut rng).cross(*m).normalized().unwrap(), 0.3))
            .collect();
        let start = c.with_moments(tilted).unwrap();
        let out = optimize_orientations(&start, true, 1e-8).unwrap();
        assert!(max_angle_to(out.moments(), c.moments(), true) <= 0.02);
    }

    #[test]
    fn straight_chain_from_random_start() {
        let c = build_straight_chain(8).unwrap();
        for seed in 0..4 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ms: Vec<Vec3> = (0..c.len()).map(|_| random_unit(&mut rng)).collect();
            let out = optimize_orientations(&c.with_moments(ms).unwrap(), true, 1e-10).unwrap();
            let sign = out.moments()[0].x.signum();
            let target = vec![Vec3::X * sign; c.len()];
            assert!(max_angle_to(out.moments(), &target, false) < 1e-3, "seed {seed}");
        }
    }

    #[test]
    fn rejects_moving_positions() {
        let c = build_straight_chain(2).unwrap();
        assert!(optimize_orientations(&c, false, 1e-6).is_err());
        assert!(optimize_orientations(&c, true, 0.0).is_err());
    }
}
