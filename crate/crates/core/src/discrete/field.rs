use crate::error::{Error, Result};
use crate::geometry::ChainConfig;
use crate::summation::pairwise_sum_vec;
use crate::vec3::Vec3;
use crate::FieldValue;

/// Evaluation closer than this to a centre is rejected.
pub const SINGULAR_DISTANCE: f64 = 1e-9;

fn dipole_kernel(delta: Vec3, m: Vec3) -> Vec3 {
    let r2 = delta.norm_squared();
    let r = r2.sqrt();
    (delta * (3.0 * delta.dot(m)) - m * r2) / (r2 * r2 * r)
}

/// Field of one dipole, `n⁻³ [3(Δ·m)Δ − |Δ|²m] / |Δ|⁵` with
/// `Δ = point − source`.
pub fn dipole_field_at(source: Vec3, moment: Vec3, point: Vec3, n: usize) -> Result<FieldValue> {
    let delta = point - source;
    if delta.norm() < SINGULAR_DISTANCE {
        return Err(Error::SingularEvaluation(format!(
            "field point {point:?} coincides with a dipole centre"
        )));
    }
    let n3 = (n as f64).powi(3);
    Ok(dipole_kernel(delta, moment) / n3)
}

fn field_excluding(config: &ChainConfig, point: Vec3, skip: Option<usize>) -> Result<FieldValue> {
    let n = config.n();
    let terms = config
        .positions()
        .iter()
        .zip(config.moments())
        .enumerate()
        .filter(|(j, _)| Some(*j) != skip)
        .map(|(_, (&p, &m))| dipole_field_at(p, m, point, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum_vec(&terms))
}

/// Field at magnet `i` from every other magnet.
pub fn regularized_field_at(config: &ChainConfig, i: usize) -> Result<FieldValue> {
    if i >= config.len() {
        return Err(Error::invalid(format!(
            "magnet index {i} out of range for {} magnets",
            config.len()
        )));
    }
    field_excluding(config, config.positions()[i], Some(i))
}

/// Regularized field at every magnet.
pub fn regularized_fields(config: &ChainConfig) -> Result<Vec<FieldValue>> {
    (0..config.len()).map(|i| regularized_field_at(config, i)).collect()
}

/// Field of the whole chain at an arbitrary point away from the centres.
pub fn total_field_at(config: &ChainConfig, point: Vec3) -> Result<FieldValue> {
    field_excluding(config, point, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_straight_chain;
    use crate::ZETA3;

    #[test]
    fn axial_and_equatorial_fields() {
        let n = 3;
        let n3 = 27.0;
        let d = 0.7;
        let ax = dipole_field_at(Vec3::ZERO, Vec3::X, Vec3::new(d, 0.0, 0.0), n).unwrap();
        assert!((ax - Vec3::X * (2.0 / (n3 * d * d * d))).norm() < 1e-15);
        let eq = dipole_field_at(Vec3::ZERO, Vec3::X, Vec3::new(0.0, d, 0.0), n).unwrap();
        assert!((eq + Vec3::X * (1.0 / (n3 * d * d * d))).norm() < 1e-15);
        let s = d / 2f64.sqrt();
        let diag = dipole_field_at(Vec3::ZERO, Vec3::X, Vec3::new(s, s, 0.0), n).unwrap();
        let expected = Vec3::new(0.5, 1.5, 0.0) / (n3 * d * d * d);
        assert!((diag - expected).norm() < 1e-14);
    }

    #[test]
    fn coincident_point_is_singular() {
        let r = dipole_field_at(Vec3::X, Vec3::X, Vec3::X, 4);
        assert!(matches!(r, Err(Error::SingularEvaluation(_))));
    }

    #[test]
    fn three_magnet_chain() {
        let c = build_straight_chain(2).unwrap();
        let mid = regularized_field_at(&c, 1).unwrap();
        assert!((mid - Vec3::X * 4.0).norm() < 1e-13);
        let end = regularized_field_at(&c, 0).unwrap();
        assert!((end - Vec3::X * 2.25).norm() < 1e-13);
        assert!(regularized_field_at(&c, 3).is_err());
    }

    #[test]
    fn long_chain_interior_tends_to_four_zeta3() {
        let n = 2000;
        let c = build_straight_chain(n).unwrap();
        let b = regularized_field_at(&c, n / 2).unwrap();
        // the missing tail beyond ±n/2 is about 2/(n/2)²
        assert!((b.x - 4.0 * ZETA3).abs() < 3.0 / ((n / 2) as f64).powi(2));
    }
}
