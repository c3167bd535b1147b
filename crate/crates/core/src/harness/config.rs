use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{MagnetSpec, RingPerturbation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Discrete ring energy against the closed form over a range of `n`.
    Sweep,
    /// Discrete against continuum regularized field around a ring.
    CompareField,
    /// Orientation optimizer from seeded random starts.
    Align,
    /// Closed-form against fitted discrete vibration frequencies.
    Modes,
    /// Energy breakdown of a single ring.
    RingEnergy,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::Sweep,
        ExperimentKind::CompareField,
        ExperimentKind::Align,
        ExperimentKind::Modes,
        ExperimentKind::RingEnergy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Sweep => "sweep",
            ExperimentKind::CompareField => "compare-field",
            ExperimentKind::Align => "align",
            ExperimentKind::Modes => "modes",
            ExperimentKind::RingEnergy => "ring-energy",
        }
    }

    /// Default values of `n` for this experiment.
    pub fn default_ns(self) -> Vec<usize> {
        match self {
            ExperimentKind::Sweep => vec![8, 12, 16, 24, 32, 48, 64],
            ExperimentKind::CompareField => vec![64],
            ExperimentKind::Align => vec![24],
            ExperimentKind::Modes => vec![40],
            ExperimentKind::RingEnergy => vec![10],
        }
    }

    /// Default pass threshold of the experiment's check.
    pub fn default_tolerance(self) -> f64 {
        match self {
            // on |slope + 4|
            ExperimentKind::Sweep => 0.3,
            ExperimentKind::CompareField => 1e-3,
            ExperimentKind::Align => 0.02,
            ExperimentKind::Modes => 0.05,
            // coefficient of n⁻³ in the total-energy gap
            ExperimentKind::RingEnergy => 40.0,
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown experiment {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::invalid(format!("unknown output format {s:?}"))),
        }
    }
}

/// Parameters of one experiment run. Every field except `kind` has a
/// default, so `{"kind": "sweep"}` is a complete config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Chain sizes; defaults depend on the kind.
    #[serde(default)]
    pub ns: Vec<usize>,
    /// Overrides the kind's default pass threshold.
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub spec: MagnetSpec,
    /// Ring shape for `align`.
    #[serde(default = "RingPerturbation::zero")]
    pub perturbation: RingPerturbation,
    #[serde(default)]
    pub seed: u64,
    /// Random starts per `n` for `align`.
    #[serde(default = "default_runs")]
    pub runs: usize,
    /// Largest tilt of the random starts, radians.
    #[serde(default = "default_tilt")]
    pub tilt: f64,
    /// Sample points around the ring for `compare-field`.
    #[serde(default = "default_points")]
    pub points: usize,
    /// Highest mode number for `modes`.
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_runs() -> usize {
    5
}

fn default_tilt() -> f64 {
    0.3
}

fn default_points() -> usize {
    16
}

fn default_k_max() -> usize {
    3
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentConfig {
            kind,
            ns: Vec::new(),
            tolerance: None,
            spec: MagnetSpec::default(),
            perturbation: RingPerturbation::zero(),
            seed: 0,
            runs: default_runs(),
            tilt: default_tilt(),
            points: default_points(),
            k_max: default_k_max(),
            out: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Sizes to run, falling back to the kind's defaults.
    pub fn effective_ns(&self) -> Vec<usize> {
        if self.ns.is_empty() {
            self.kind.default_ns()
        } else {
            self.ns.clone()
        }
    }

    pub fn effective_tolerance(&self) -> f64 {
        self.tolerance.unwrap_or_else(|| self.kind.default_tolerance())
    }

    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        self.perturbation.validate()?;
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::invalid(format!("tolerance must be positive, got {t}")));
            }
        }
        let ns = self.effective_ns();
        let min_n = match self.kind {
            ExperimentKind::Modes => 16,
            _ => 3,
        };
        if let Some(&bad) = ns.iter().find(|&&n| n < min_n) {
            return Err(Error::invalid(format!("{} needs n >= {min_n}, got {bad}", self.kind)));
        }
        if self.kind == ExperimentKind::Sweep && ns.iter().filter(|&&n| n >= 8).count() < 2 {
            return Err(Error::invalid("sweep needs at least two sizes with n >= 8 to fit a slope"));
        }
        if self.runs == 0 || self.points == 0 {
            return Err(Error::invalid("runs and points must be positive"));
        }
        if !(self.tilt.is_finite() && self.tilt >= 0.0) {
            return Err(Error::invalid("tilt must be finite and non-negative"));
        }
        if self.kind == ExperimentKind::Modes {
            if self.k_max < 2 {
                return Err(Error::invalid("k_max must be at least 2"));
            }
            if let Some(&n) = ns.iter().find(|&&n| 4 * self.k_max > n) {
                return Err(Error::invalid(format!("k_max = {} exceeds n/4 for n = {n}", self.k_max)));
            }
        }
        Ok(())
    }
}
