use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliResult;

/// The command-line spelling of a value enum variant.
pub fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Context {
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Context {
    pub fn writer(&self) -> CliResult<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    pub fn header_line(&self, command: &str, extra: &[(&str, String)]) -> String {
        let mut line = format!("# zipfmix {command} seed={}", self.seed);
        for (k, v) in extra {
            line.push_str(&format!(" {k}={v}"));
        }
        line
    }

    /// CSV gets a `# zipfmix <command> seed=...` comment line and a header row;
    /// JSON gets one object with `command`, `seed`, the extras and `records`.
    pub fn emit<T: Serialize>(&self, command: &str, extra: &[(&str, String)], records: &[T]) -> CliResult {
        let mut out = self.writer()?;
        match self.format {
            Format::Csv => {
                writeln!(out, "{}", self.header_line(command, extra))?;
                let mut w = csv::Writer::from_writer(&mut out);
                for r in records {
                    w.serialize(r)?;
                }
                w.flush()?;
            }
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("command".into(), Value::from(command));
                obj.insert("seed".into(), Value::from(self.seed));
                for (k, v) in extra {
                    obj.insert((*k).into(), Value::from(v.as_str()));
                }
                obj.insert("records".into(), serde_json::to_value(records)?);
                serde_json::to_writer_pretty(&mut out, &Value::Object(obj))?;
                writeln!(out)?;
            }
        }
        out.flush()?;
        Ok(())
    }
}
