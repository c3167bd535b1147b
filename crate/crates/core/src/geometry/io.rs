use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::geometry::{ChainConfig, Topology};
use crate::vec3::Vec3;

pub const CHAIN_CSV_HEADER: [&str; 7] = ["i", "x", "y", "z", "mx", "my", "mz"];

fn csv_err(e: csv::Error) -> Error {
    Error::invalid(format!("chain csv: {e}"))
}

/// Writes one row per magnet with 17 significant digits.
pub fn write_chain_csv<W: Write>(config: &ChainConfig, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CHAIN_CSV_HEADER).map_err(csv_err)?;
    for (i, (p, m)) in config.positions().iter().zip(config.moments()).enumerate() {
        let mut row = vec![i.to_string()];
        row.extend([p.x, p.y, p.z, m.x, m.y, m.z].iter().map(|v| format!("{v:.16e}")));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| csv_err(e.into()))?;
    Ok(())
}

/// Reads a chain written by [`write_chain_csv`]. The topology and `n` are
/// not stored in the file and must be supplied.
pub fn read_chain_csv<R: Read>(input: R, n: usize, topology: Topology) -> Result<ChainConfig> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().ne(CHAIN_CSV_HEADER) {
        return Err(Error::invalid(format!("unexpected chain csv header {header:?}")));
    }
    let mut positions = Vec::new();
    let mut moments = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let v: Vec<f64> = rec
            .iter()
            .skip(1)
            .map(|f| f.trim().parse::<f64>().map_err(|e| Error::invalid(format!("bad number {f:?}: {e}"))))
            .collect::<Result<_>>()?;
        if v.len() != 6 {
            return Err(Error::invalid("chain csv rows need 7 columns"));
        }
        positions.push(Vec3::new(v[0], v[1], v[2]));
        moments.push(Vec3::new(v[3], v[4], v[5]));
    }
    ChainConfig::new(n, topology, positions, moments)
}
