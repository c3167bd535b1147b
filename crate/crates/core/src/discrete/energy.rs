use crate::discrete::regularized_fields;
use crate::error::Result;
use crate::geometry::ChainConfig;
use crate::summation::pairwise_sum;
use crate::EnergyValue;

/// `E_i = −m_i · B_reg(r_i)`.
pub fn per_magnet_energy(config: &ChainConfig, i: usize) -> Result<EnergyValue> {
    let b = crate::discrete::regularized_field_at(config, i)?;
    Ok(-config.moments()[i].dot(b))
}

pub fn per_magnet_energies(config: &ChainConfig) -> Result<Vec<EnergyValue>> {
    let fields = regularized_fields(config)?;
    Ok(fields
        .iter()
        .zip(config.moments())
        .map(|(b, m)| -m.dot(*b))
        .collect())
}

/// `½ Σ_i E_i`, each pair counted once.
pub fn total_energy(config: &ChainConfig) -> Result<EnergyValue> {
    Ok(0.5 * pairwise_sum(&per_magnet_energies(config)?))
}
