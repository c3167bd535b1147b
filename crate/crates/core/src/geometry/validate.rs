use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::ChainConfig;
use crate::vec3::Vec3;

/// Above this magnet count the global radius is estimated from random
/// triples.
const EXHAUSTIVE_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 100_000;
const TRIPLE_SEED: u64 = 0x6d61_6763;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub max_gap_deviation: f64,
    /// Smallest distance between magnets that are not neighbours
    /// (infinite when every pair is adjacent).
    pub min_nonneighbour_distance: f64,
    /// Minimum circumradius over point triples; infinite if all collinear.
    pub global_radius: f64,
    pub overlap: bool,
    /// The global radius is below three spacings.
    pub curvature_violation: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !self.overlap && !self.curvature_violation
    }
}

fn circumradius(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let ab = b - a;
    let ac = c - a;
    let cross = ab.cross(ac).norm();
    let (la, lb, lc) = ((b - c).norm(), ac.norm(), ab.norm());
    if cross <= 1e-14 * ab.norm() * ac.norm() {
        return f64::INFINITY;
    }
    la * lb * lc / (2.0 * cross)
}

pub fn validate_chain(config: &ChainConfig) -> ValidationReport {
    let p = config.positions();
    let m = p.len();
    let h = config.spacing();
    let ring = config.topology() == crate::geometry::Topology::Ring;
    let adjacent = |i: usize, j: usize| {
        let d = i.abs_diff(j);
        d == 1 || (ring && d == m - 1)
    };

    let mut min_dist = f64::INFINITY;
    for i in 0..m {
        for j in i + 1..m {
            if !adjacent(i, j) {
                min_dist = min_dist.min((p[i] - p[j]).norm());
            }
        }
    }

    let mut radius = f64::INFINITY;
    if m <= EXHAUSTIVE_LIMIT {
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    radius = radius.min(circumradius(p[i], p[j], p[k]));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(TRIPLE_SEED);
        for _ in 0..SAMPLED_TRIPLES {
            let i = rng.gen_range(0..m);
            let j = rng.gen_range(0..m);
            let k = rng.gen_range(0..m);
            if i != j && j != k && i != k {
                radius = radius.min(circumradius(p[i], p[j], p[k]));
            }
        }
    }

    ValidationReport {
        max_gap_deviation: config.max_gap_deviation(),
        min_nonneighbour_distance: min_dist,
        global_radius: radius,
        overlap: min_dist < h * (1.0 - 1e-12),
        curvature_violation: radius < 3.0 * h,
    }
}
