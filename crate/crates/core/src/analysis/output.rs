//! CSV emission for experiment records.

use crate::error::Result;
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Writes one header row and one row per record.
pub fn write_csv<T: Serialize, W: Write>(records: &[T], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in records {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv_file<T: Serialize>(records: &[T], path: &Path) -> Result<()> {
    write_csv(records, BufWriter::new(File::create(path)?))
}
