use crate::discrete::regularized_fields;
use crate::error::Result;
use crate::geometry::ChainConfig;
use crate::vec3::Vec3;

/// Gradient of the total energy with respect to each moment, projected onto
/// the tangent plane of its unit sphere. The unprojected gradient is
/// `−B_reg(r_i)`.
pub fn orientation_gradient(config: &ChainConfig) -> Result<Vec<Vec3>> {
    let fields = regularized_fields(config)?;
    Ok(fields
        .iter()
        .zip(config.moments())
        .map(|(b, m)| {
            let g = -*b;
            g - *m * g.dot(*m)
        })
        .collect())
}
