use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of one spherical magnet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MagnetSpec {
    /// Sphere radius in metres.
    pub a: f64,
    /// Characteristic field strength in tesla.
    #[serde(rename = "B")]
    pub b: f64,
    /// Density in kg/m³.
    pub rho: f64,
    /// Permeability of free space in T·m/A.
    #[serde(default = "MagnetSpec::vacuum_permeability")]
    pub mu0: f64,
}

impl MagnetSpec {
    pub fn new(a: f64, b: f64, rho: f64, mu0: f64) -> Result<Self> {
        let spec = MagnetSpec { a, b, rho, mu0 };
        spec.validate()?;
        Ok(spec)
    }

    /// `μ₀ = 4π·10⁻⁷`.
    pub fn vacuum_permeability() -> f64 {
        4.0 * std::f64::consts::PI * 1e-7
    }

    /// 1 mm NdFeB sphere with a 1 T characteristic field.
    pub fn reference() -> Self {
        MagnetSpec {
            a: 1e-3,
            b: 1.0,
            rho: 7500.0,
            mu0: Self::vacuum_permeability(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("B", self.b), ("rho", self.rho), ("mu0", self.mu0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

impl Default for MagnetSpec {
    fn default() -> Self {
        Self::reference()
    }
}
