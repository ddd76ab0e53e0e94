//! Sweep tables as CSV.
//!
//! Header `t,fidelity_target,fidelity_ghz,fidelity_w,phase_arg`, one row per
//! grid point, every value in `%.15e` form (16 significant digits).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use tripartite_core::analysis::SweepRow;

pub const HEADER: [&str; 5] = [
    "t",
    "fidelity_target",
    "fidelity_ghz",
    "fidelity_w",
    "phase_arg",
];

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error("no rows to write")]
    Empty,
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{}: line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
}

fn field(x: f64) -> String {
    format!("{x:.15e}")
}

/// Writes `rows` to any sink. `label` names the sink in errors.
pub fn write_rows<W: Write>(rows: &[SweepRow], sink: W, label: &Path) -> Result<(), CsvError> {
    if rows.is_empty() {
        return Err(CsvError::Empty);
    }
    let wrap = |source| CsvError::Csv {
        path: label.to_path_buf(),
        source,
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(HEADER).map_err(wrap)?;
    for r in rows {
        w.write_record([
            field(r.t),
            field(r.fidelity_target),
            field(r.fidelity_ghz),
            field(r.fidelity_w),
            field(r.phase_arg),
        ])
        .map_err(wrap)?;
    }
    w.flush().map_err(|source| CsvError::Io {
        path: label.to_path_buf(),
        source,
    })
}

pub fn write_csv(rows: &[SweepRow], destination: &Path) -> Result<(), CsvError> {
    if rows.is_empty() {
        return Err(CsvError::Empty);
    }
    let file = File::create(destination).map_err(|source| CsvError::Io {
        path: destination.to_path_buf(),
        source,
    })?;
    write_rows(rows, BufWriter::new(file), destination)
}

pub fn read_csv(source: &Path) -> Result<Vec<SweepRow>, CsvError> {
    let mut r = csv::Reader::from_path(source).map_err(|e| CsvError::Csv {
        path: source.to_path_buf(),
        source: e,
    })?;
    let parse_err = |line: u64, message: String| CsvError::Parse {
        path: source.to_path_buf(),
        line,
        message,
    };
    let header = r.headers().map_err(|e| CsvError::Csv {
        path: source.to_path_buf(),
        source: e,
    })?;
    if header.iter().ne(HEADER) {
        return Err(parse_err(1, format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| CsvError::Csv {
            path: source.to_path_buf(),
            source: e,
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let mut values = [0.0; 5];
        for (slot, text) in values.iter_mut().zip(record.iter()) {
            *slot = text
                .parse()
                .map_err(|e| parse_err(line, format!("`{text}`: {e}")))?;
        }
        if record.len() != 5 {
            return Err(parse_err(
                line,
                format!("expected 5 fields, got {}", record.len()),
            ));
        }
        let [t, fidelity_target, fidelity_ghz, fidelity_w, phase_arg] = values;
        rows.push(SweepRow {
            t,
            fidelity_target,
            fidelity_ghz,
            fidelity_w,
            phase_arg,
        });
    }
    Ok(rows)
}
