//! CSV and JSON writers shared by all subcommands.
//!
//! CSV output starts with a `# seed=<seed>` line for randomized commands and
//! then one header row. JSON output is a single object with a `rows` array,
//! plus `seed` for randomized commands and any command-specific fields.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn open(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub struct Table<'a, T> {
    pub seed: Option<u64>,
    pub rows: &'a [T],
    /// Extra top-level JSON fields, ignored in CSV.
    pub extra: Vec<(&'static str, Value)>,
    /// CSV header written when there are no rows to derive it from.
    pub empty_header: &'static [&'static str],
}

impl<T: Serialize> Table<'_, T> {
    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let mut w = open(out)?;
        match format {
            Format::Csv => {
                if let Some(s) = self.seed {
                    writeln!(w, "# seed={s}")?;
                }
                let mut csv = csv::Writer::from_writer(&mut w);
                if self.rows.is_empty() && !self.empty_header.is_empty() {
                    csv.write_record(self.empty_header)?;
                }
                for r in self.rows {
                    csv.serialize(r)?;
                }
                csv.flush()?;
            }
            Format::Json => {
                let mut obj = Map::new();
                if let Some(s) = self.seed {
                    obj.insert("seed".into(), s.into());
                }
                for (k, v) in &self.extra {
                    obj.insert((*k).into(), v.clone());
                }
                obj.insert("rows".into(), serde_json::to_value(self.rows)?);
                serde_json::to_writer_pretty(&mut w, &obj)?;
                writeln!(w)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Writes a document verbatim, followed by a newline.
pub fn write_document(text: &str, out: Option<&Path>) -> Result<()> {
    let mut w = open(out)?;
    writeln!(w, "{text}")?;
    w.flush()?;
    Ok(())
}
