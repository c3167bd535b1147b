use std::path::PathBuf;

use thiserror::Error;

use crate::geometry::ChainConfig;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular evaluation: {0}")]
    SingularEvaluation(String),

    #[error("constraint projection did not converge after {sweeps} sweeps (max gap residual {residual:e})")]
    ConstraintFailure { sweeps: usize, residual: f64 },

    #[error("orientation optimizer stopped after {iterations} steps with projected gradient {gradient_norm:e}")]
    NonConvergence {
        iterations: usize,
        gradient_norm: f64,
        best: Box<ChainConfig>,
    },

    #[error("s = {s} is inside the end boundary layer of an open chain with n = {n}")]
    BoundaryLayerDomain { s: f64, n: usize },

    #[error("divergent functional: {0}")]
    DivergentFunctional(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularEvaluation(_)
                | Error::ConstraintFailure { .. }
                | Error::NonConvergence { .. }
                | Error::NumericalFailure(_)
                | Error::DivergentFunctional(_)
        )
    }
}
