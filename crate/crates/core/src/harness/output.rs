use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use super::run::TrialResult;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::invalid(format!("unknown output format '{s}'"))),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

fn format_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Format { path: path.to_path_buf(), message: e.to_string() }
}

/// Serializes rows to `writer`. CSV gets a header line; JSON is one array.
pub fn write_results<W: Write>(rows: &[TrialResult], writer: W, format: OutputFormat) -> std::result::Result<(), String> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(writer);
            for r in rows {
                w.serialize(r).map_err(|e| e.to_string())?;
            }
            w.flush().map_err(|e| e.to_string())
        }
        OutputFormat::Json => {
            let mut writer = writer;
            serde_json::to_writer_pretty(&mut writer, rows).map_err(|e| e.to_string())?;
            writeln!(writer).map_err(|e| e.to_string())
        }
    }
}

/// Writes rows to `path`, creating or truncating it.
pub fn emit_results(rows: &[TrialResult], path: &Path, format: OutputFormat) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    write_results(rows, &mut out, format).map_err(|e| format_err(path, e))?;
    out.flush().map_err(io_err(path))
}

/// Reads back a file produced by [`emit_results`].
pub fn read_results(path: &Path, format: OutputFormat) -> Result<Vec<TrialResult>> {
    let file = File::open(path).map_err(io_err(path))?;
    match format {
        OutputFormat::Csv => csv::Reader::from_reader(file)
            .deserialize()
            .collect::<std::result::Result<Vec<TrialResult>, _>>()
            .map_err(|e| format_err(path, e)),
        OutputFormat::Json => serde_json::from_reader(file).map_err(|e| format_err(path, e)),
    }
}
