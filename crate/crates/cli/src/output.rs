use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Row sink: CSV with a header row, or one JSON object per line.
pub enum Emitter<W: Write> {
    Csv(Box<csv::Writer<W>>),
    Json(W),
}

impl<W: Write> Emitter<W> {
    pub fn new(format: OutputFormat, sink: W) -> Self {
        match format {
            OutputFormat::Csv => Emitter::Csv(Box::new(csv::Writer::from_writer(sink))),
            OutputFormat::Json => Emitter::Json(sink),
        }
    }

    pub fn row<T: Serialize>(&mut self, row: &T) -> io::Result<()> {
        match self {
            Emitter::Csv(w) => w.serialize(row).map_err(csv_to_io),
            Emitter::Json(w) => {
                serde_json::to_writer(&mut *w, row)?;
                w.write_all(b"\n")
            }
        }
    }

    pub fn finish(self) -> io::Result<()> {
        match self {
            Emitter::Csv(mut w) => w.flush(),
            Emitter::Json(mut w) => w.flush(),
        }
    }
}

fn csv_to_io(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    }
}

/// `Some(x)` when finite; overflowed values become empty CSV cells or JSON null.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}
