use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::records::{columns, ResultRecord};
use crate::harness::{ExperimentKind, OutputFormat};

/// Renders records of one experiment kind. CSV always carries the header;
/// JSON is an array of objects with keys in column order. Both end with a
/// newline.
pub fn render_records(kind: ExperimentKind, records: &[ResultRecord], format: OutputFormat) -> Result<String> {
    if let Some(r) = records.iter().find(|r| r.kind != kind) {
        return Err(Error::invalid(format!("{} record in {kind} output", r.kind)));
    }
    let mut sorted: Vec<&ResultRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.sort_key());
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            let err = |e: csv::Error| Error::invalid(format!("csv: {e}"));
            w.write_record(columns(kind)).map_err(err)?;
            for r in sorted {
                w.write_record(r.csv_cells()).map_err(err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
            String::from_utf8(bytes).map_err(|e| Error::invalid(format!("csv: {e}")))
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&sorted).map_err(|e| Error::invalid(format!("json: {e}")))?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn write_records(kind: ExperimentKind, records: &[ResultRecord], path: &Path, format: OutputFormat) -> Result<()> {
    let text = render_records(kind, records, format)?;
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::records::{Check, RowKind, SWEEP_COLUMNS};

    fn sample() -> Vec<ResultRecord> {
        vec![
            ResultRecord::new(ExperimentKind::Sweep, RowKind::Summary, 0, 0, Check::new(0.01, 0.3)).with("slope", -3.99),
            ResultRecord::new(ExperimentKind::Sweep, RowKind::Point, 8, 0, Check::new(1e-4, 1e-2))
                .with("discrete_energy", -19.0)
                .with("closed_form_energy", -18.9)
                .with("per_magnet_error", -0.0125),
        ]
    }

    #[test]
    fn empty_csv_is_header_only() {
        let s = render_records(ExperimentKind::Sweep, &[], OutputFormat::Csv).unwrap();
        assert_eq!(s.lines().count(), 1);
        assert!(s.ends_with('\n'));
        assert_eq!(s.trim_end().split(',').count(), 4 + SWEEP_COLUMNS.len() + 3);
    }

    #[test]
    fn rows_are_sorted_and_complete() {
        let s = render_records(ExperimentKind::Sweep, &sample(), OutputFormat::Csv).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("sweep,point,8,0,"));
        assert!(lines[2].starts_with("sweep,summary,0,0,"));
        let width = lines[0].split(',').count();
        assert!(lines.iter().all(|l| l.split(',').count() == width));
    }

    #[test]
    fn json_keeps_column_order() {
        let s = render_records(ExperimentKind::Sweep, &sample(), OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v[0]["per_magnet_error"], -0.0125);
        assert!(v[1]["discrete_energy"].is_null());
        assert!(s.find("\"kind\"").unwrap() < s.find("\"passed\"").unwrap());
    }

    #[test]
    fn writes_identical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
        let mut recs = sample();
        write_records(ExperimentKind::Sweep, &recs, &a, OutputFormat::Csv).unwrap();
        recs.reverse();
        write_records(ExperimentKind::Sweep, &recs, &b, OutputFormat::Csv).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        let bad = dir.path().join("missing").join("x.csv");
        assert!(matches!(
            write_records(ExperimentKind::Sweep, &recs, &bad, OutputFormat::Csv),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn rejects_mixed_kinds() {
        let r = ResultRecord::new(ExperimentKind::Align, RowKind::Point, 8, 0, Check::new(0.0, 1.0));
        assert!(render_records(ExperimentKind::Sweep, &[r], OutputFormat::Csv).is_err());
    }
}
