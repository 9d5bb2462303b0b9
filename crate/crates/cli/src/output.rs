//! File and stdout emission. Floats are written with Rust's shortest
//! round-trip formatting, so reruns with the same seed produce identical
//! bytes.

use pppkit_core::error::{Error, Result};
use std::fmt::Write as _;

pub fn write_file(path: &str, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::Config(format!("cannot write {path}: {e}")))
}

/// A CSV table with one header row.
pub struct Csv {
    buf: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self { buf: format!("{}\n", header.join(",")), columns: header.len() }
    }

    pub fn row(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.columns, "csv row width mismatch");
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            let _ = write!(self.buf, "{v}");
        }
        self.buf.push('\n');
    }

    /// Row with leading string cells (for keyed tables).
    pub fn mixed_row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns, "csv row width mismatch");
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Print the run summary as JSON or as key,value CSV lines.
pub fn print_summary(json: bool, value: &serde_json::Value) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else if let Some(map) = value.as_object() {
        for (k, v) in map {
            println!("{k},{v}");
        }
    } else {
        println!("value,{value}");
    }
}
