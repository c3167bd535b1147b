//! Experiment configuration, orchestration and record output.

mod config;
mod experiments;
mod output;
mod records;

pub use config::{ExperimentConfig, ExperimentKind, OutputFormat};
pub use experiments::{
    log_log_slope, run_experiment, tilted_moments, ExperimentFailure, ALIGN_OPTIMIZER_TOL,
    SWEEP_GAP_COEFFICIENT,
};
pub use output::{render_records, write_records};
pub use records::{
    columns, value_columns, Check, ResultRecord, RowKind, ALIGN_COLUMNS, CHECK_COLUMNS,
    COMPARE_FIELD_COLUMNS, KEY_COLUMNS, MODES_COLUMNS, RING_ENERGY_COLUMNS, SWEEP_COLUMNS,
};
