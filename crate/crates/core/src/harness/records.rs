use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::harness::ExperimentKind;

/// Leading columns shared by every experiment.
pub const KEY_COLUMNS: [&str; 4] = ["kind", "row", "n", "index"];
/// Trailing columns shared by every experiment.
pub const CHECK_COLUMNS: [&str; 3] = ["check_value", "tolerance", "passed"];

pub const SWEEP_COLUMNS: &[&str] = &[
    "discrete_energy",
    "closed_form_energy",
    "per_magnet_error",
    "slope",
];
pub const COMPARE_FIELD_COLUMNS: &[&str] = &[
    "s",
    "discrete_bx",
    "discrete_by",
    "discrete_bz",
    "continuum_bx",
    "continuum_by",
    "continuum_bz",
    "relative_error",
];
pub const ALIGN_COLUMNS: &[&str] = &[
    "initial_max_angle",
    "final_max_angle",
    "energy",
    "iterations",
    "gradient_norm",
];
pub const MODES_COLUMNS: &[&str] = &["omega_closed_form", "omega_discrete", "relative_error"];
pub const RING_ENERGY_COLUMNS: &[&str] = &[
    "discrete_energy",
    "closed_form_energy",
    "gap",
    "ground",
    "local",
    "nonlocal",
    "continuum_total",
    "discrete_energy_joules",
];

/// Kind-specific value columns, in output order.
pub fn value_columns(kind: ExperimentKind) -> &'static [&'static str] {
    match kind {
        ExperimentKind::Sweep => SWEEP_COLUMNS,
        ExperimentKind::CompareField => COMPARE_FIELD_COLUMNS,
        ExperimentKind::Align => ALIGN_COLUMNS,
        ExperimentKind::Modes => MODES_COLUMNS,
        ExperimentKind::RingEnergy => RING_ENERGY_COLUMNS,
    }
}

/// Every output column of `kind`, in order.
pub fn columns(kind: ExperimentKind) -> Vec<&'static str> {
    KEY_COLUMNS
        .iter()
        .chain(value_columns(kind))
        .chain(CHECK_COLUMNS.iter())
        .copied()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Point,
    Summary,
}

impl RowKind {
    pub fn name(self) -> &'static str {
        match self {
            RowKind::Point => "point",
            RowKind::Summary => "summary",
        }
    }
}

/// A scalar compared against a declared threshold; passes when
/// `value <= tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Check {
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(value: f64, tolerance: f64) -> Self {
        Check {
            value,
            tolerance,
            passed: Self::evaluate(value, tolerance),
        }
    }

    fn evaluate(value: f64, tolerance: f64) -> bool {
        value <= tolerance
    }

    /// The verdict implied by the stored scalars.
    pub fn recompute(&self) -> bool {
        Self::evaluate(self.value, self.tolerance)
    }
}

/// One output row.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub kind: ExperimentKind,
    pub row: RowKind,
    pub n: usize,
    /// Mode number, seed or sample index; zero when unused.
    pub index: u64,
    /// Aligned with [`value_columns`]; `None` is written as an empty cell.
    pub values: Vec<Option<f64>>,
    pub check: Check,
}

impl ResultRecord {
    pub fn new(kind: ExperimentKind, row: RowKind, n: usize, index: u64, check: Check) -> Self {
        ResultRecord {
            kind,
            row,
            n,
            index,
            values: vec![None; value_columns(kind).len()],
            check,
        }
    }

    /// Sets a named value column; unknown names are a programming error.
    pub fn with(mut self, column: &str, value: f64) -> Self {
        let i = value_columns(self.kind)
            .iter()
            .position(|c| *c == column)
            .unwrap_or_else(|| panic!("{} has no column {column}", self.kind));
        self.values[i] = Some(value);
        self
    }

    pub fn get(&self, column: &str) -> Option<f64> {
        value_columns(self.kind)
            .iter()
            .position(|c| *c == column)
            .and_then(|i| self.values[i])
    }

    /// Ordering used before writing.
    pub fn sort_key(&self) -> (ExperimentKind, RowKind, usize, u64) {
        (self.kind, self.row, self.n, self.index)
    }

    /// Cells in column order, floats with 17 significant digits.
    pub fn csv_cells(&self) -> Vec<String> {
        let mut cells = vec![
            self.kind.name().to_string(),
            self.row.name().to_string(),
            self.n.to_string(),
            self.index.to_string(),
        ];
        cells.extend(self.values.iter().map(|v| v.map(format_float).unwrap_or_default()));
        cells.push(format_float(self.check.value));
        cells.push(format_float(self.check.tolerance));
        cells.push(self.check.passed.to_string());
        cells
    }
}

pub(crate) fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn json_float(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl Serialize for ResultRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let cols = value_columns(self.kind);
        let mut map = s.serialize_map(Some(KEY_COLUMNS.len() + cols.len() + CHECK_COLUMNS.len()))?;
        map.serialize_entry("kind", self.kind.name())?;
        map.serialize_entry("row", self.row.name())?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("index", &self.index)?;
        for (c, v) in cols.iter().zip(&self.values) {
            map.serialize_entry(c, &v.and_then(json_float))?;
        }
        map.serialize_entry("check_value", &json_float(self.check.value))?;
        map.serialize_entry("tolerance", &json_float(self.check.tolerance))?;
        map.serialize_entry("passed", &self.check.passed)?;
        map.end()
    }
}
